#ifndef LDPLAB_NOISE_H_
#define LDPLAB_NOISE_H_

#include "ldplab/random.h"

namespace ldplab {

// Negative branch of the Lambert W function on [-1/e, 0). Halley iteration
// to |w e^w - x| <= 1e-12 max(|x|, 1e-300).
double LambertWMinus1(double x);

struct PlanarPoint {
  double x;
  double y;
};

// Geo-indistinguishability budget: epsilon per meter, optionally built from
// a distinguishability level l within radius r as epsilon = l / r.
struct GeoBudget {
  double epsilon;

  static GeoBudget FromLevelRadius(double l, double r);
};

// Polar Laplace mechanism: theta ~ U[0, 2pi), p ~ U[0, 1),
// radius = -(1/eps) (W_{-1}((p-1)/e) + 1).
PlanarPoint PlanarLaplace(PlanarPoint loc, const GeoBudget& budget, Rng& rng);

// Radius CDF of the planar Laplace: C_eps(r) = 1 - (1 + eps r) e^{-eps r}.
double PlanarLaplaceRadiusCdf(double epsilon, double r);

double SampleLaplace(double scale, Rng& rng);

// value + Lap(sensitivity1 / epsilon).
double LaplaceMechanism(double value, double sensitivity1, double epsilon,
                        Rng& rng);

// value + N(0, sigma^2), sigma = (sensitivity2/epsilon) sqrt(2 ln(1.25/delta)).
// Only defined for epsilon in (0, 1).
double GaussianMechanism(double value, double sensitivity2, double epsilon,
                         double delta, Rng& rng);

double GaussianMechanismSigma(double sensitivity2, double epsilon,
                              double delta);

}  // namespace ldplab

#endif  // LDPLAB_NOISE_H_
