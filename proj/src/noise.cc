#include "ldplab/noise.h"

#include <cmath>
#include <string>

#include "ldplab/error.h"

namespace ldplab {

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e

// Initial guess for W_{-1}: series in sqrt(2(1 + e x)) near the branch point,
// log-based asymptote towards 0^-.
double LambertInitialGuess(double x) {
  const double branch_offset = 1.0 + M_E * x;
  if (branch_offset < 0.25) {
    const double s = std::sqrt(2.0 * branch_offset);
    return -1.0 - s - s * s / 3.0 - 11.0 * s * s * s / 72.0;
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double LambertWMinus1(double x) {
  if (!(x >= -kInvE) || !(x < 0.0)) {
    throw InvalidParameterError("LambertWMinus1 domain is [-1/e, 0), got " +
                                std::to_string(x));
  }
  if (x == -kInvE) return -1.0;
  double w = LambertInitialGuess(x);
  const double tol = 1e-14 * std::max(std::abs(x), 1e-300);
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double r = w * ew - x;
    if (std::abs(r) <= tol) break;
    // Halley step.
    const double dr = ew * (w + 1.0);
    const double d2r = ew * (w + 2.0);
    double step = r / (dr - r * d2r / (2.0 * dr));
    double next = w - step;
    if (next >= -1.0) next = 0.5 * (w - 1.0);  // keep on the lower branch
    w = next;
  }
  return w;
}

GeoBudget GeoBudget::FromLevelRadius(double l, double r) {
  if (!(l > 0.0) || !(r > 0.0)) {
    throw InvalidParameterError("GeoBudget needs l > 0 and r > 0");
  }
  return GeoBudget{l / r};
}

PlanarPoint PlanarLaplace(PlanarPoint loc, const GeoBudget& budget, Rng& rng) {
  if (!(budget.epsilon > 0.0)) {
    throw InvalidParameterError("geo epsilon must be positive");
  }
  const double theta = rng.UniformDouble() * 2.0 * M_PI;
  const double p = rng.UniformDouble();
  const double radius =
      -(LambertWMinus1((p - 1.0) / M_E) + 1.0) / budget.epsilon;
  return {loc.x + radius * std::cos(theta), loc.y + radius * std::sin(theta)};
}

double PlanarLaplaceRadiusCdf(double epsilon, double r) {
  if (r <= 0.0) return 0.0;
  return 1.0 - (1.0 + epsilon * r) * std::exp(-epsilon * r);
}

double SampleLaplace(double scale, Rng& rng) {
  // Inverse CDF on u - 1/2; u in [0,1) keeps the log argument positive.
  const double u = rng.UniformDouble() - 0.5;
  const double mag = std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? scale * mag : -scale * mag;
}

double LaplaceMechanism(double value, double sensitivity1, double epsilon,
                        Rng& rng) {
  if (!(sensitivity1 > 0.0) || !(epsilon > 0.0)) {
    throw InvalidParameterError(
        "Laplace mechanism needs positive sensitivity and epsilon");
  }
  return value + SampleLaplace(sensitivity1 / epsilon, rng);
}

double GaussianMechanismSigma(double sensitivity2, double epsilon,
                              double delta) {
  if (!(sensitivity2 > 0.0)) {
    throw InvalidParameterError("Gaussian mechanism needs sensitivity2 > 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParameterError(
        "Gaussian mechanism is defined for epsilon in (0, 1), got " +
        std::to_string(epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidParameterError("Gaussian mechanism needs delta in (0, 1)");
  }
  return sensitivity2 / epsilon * std::sqrt(2.0 * std::log(1.25 / delta));
}

double GaussianMechanism(double value, double sensitivity2, double epsilon,
                         double delta, Rng& rng) {
  return value +
         GaussianMechanismSigma(sensitivity2, epsilon, delta) * rng.Normal();
}

}  // namespace ldplab
