#include "ldplab/oracles.h"

#include <cmath>
#include <string>

#include "ldplab/error.h"

namespace ldplab {

namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("epsilon must be positive and finite, got " +
                                std::to_string(epsilon));
  }
}

void CheckDomain(uint32_t c) {
  if (c < 2) {
    throw InvalidParameterError("domain size must be >= 2, got " +
                                std::to_string(c));
  }
}

}  // namespace

OneRoundParams GrrParams(double epsilon, uint32_t c) {
  CheckEpsilon(epsilon);
  CheckDomain(c);
  const double e = std::exp(epsilon);
  const double p = e / (e + (c - 1.0));
  const double q = 1.0 / (e + (c - 1.0));  // (1 - p)/(c - 1), computed flat
  return {OracleKind::kGrr, c, p, q, epsilon};
}

OneRoundParams SueParams(double epsilon) {
  CheckEpsilon(epsilon);
  const double e = std::exp(epsilon / 2.0);
  const double p = e / (e + 1.0);
  return {OracleKind::kSue, 0, p, 1.0 - p, epsilon};
}

OneRoundParams OueParams(double epsilon) {
  CheckEpsilon(epsilon);
  return {OracleKind::kOue, 0, 0.5, 1.0 / (std::exp(epsilon) + 1.0), epsilon};
}

double UeEpsilon(double p, double q) {
  if (!(0.0 < q && q < p && p < 1.0)) {
    throw InvalidParameterError("UeEpsilon requires 0 < q < p < 1");
  }
  return std::log(p * (1.0 - q) / ((1.0 - p) * q));
}

ValueIndex GrrPerturb(ValueIndex v, const OneRoundParams& params, Rng& rng) {
  const uint32_t c = params.domain_size;
  if (v >= c) {
    throw InvalidParameterError("value index " + std::to_string(v) +
                                " outside domain of size " + std::to_string(c));
  }
  if (rng.Bernoulli(params.p)) return v;
  // Uniform over the other c - 1 values.
  uint32_t other = rng.UniformInt(c - 1);
  return other < v ? other : other + 1;
}

UnaryVector UeEncode(ValueIndex v, uint32_t c) {
  CheckDomain(c);
  if (c > kMaxUnaryDomain) {
    throw InvalidParameterError("unary domain capped at 2^20, got " +
                                std::to_string(c));
  }
  if (v >= c) {
    throw InvalidParameterError("value index " + std::to_string(v) +
                                " outside domain of size " + std::to_string(c));
  }
  UnaryVector out;
  out.bits.assign(c, 0);
  out.bits[v] = 1;
  return out;
}

UnaryVector UePerturb(const UnaryVector& b, double p, double q, Rng& rng) {
  // Closed bounds so the identity channel (p = 1, q = 0) stays expressible.
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw InvalidParameterError("UePerturb requires p, q in [0, 1]");
  }
  UnaryVector out;
  out.bits.resize(b.bits.size());
  for (size_t i = 0; i < b.bits.size(); ++i) {
    out.bits[i] = rng.Bernoulli(b.bits[i] ? p : q) ? 1 : 0;
  }
  return out;
}

FrequencyEstimate EstimateFreq(std::span<const uint64_t> counts, uint64_t n,
                               const OneRoundParams& params) {
  if (n == 0) throw InvalidParameterError("EstimateFreq requires n >= 1");
  const double p = params.p;
  const double q = params.q;
  FrequencyEstimate est;
  est.n = n;
  est.analytic_var = VarianceApprox(params, n);
  est.freqs.reserve(counts.size());
  const double dn = static_cast<double>(n);
  for (uint64_t count : counts) {
    est.freqs.push_back((static_cast<double>(count) - dn * q) /
                        (dn * (p - q)));
  }
  return est;
}

double VarianceApprox(const OneRoundParams& params, uint64_t n) {
  return VarianceExact(params, n, 0.0);
}

double VarianceExact(const OneRoundParams& params, uint64_t n, double f) {
  if (n == 0) throw InvalidParameterError("variance requires n >= 1");
  const double p = params.p;
  const double q = params.q;
  const double dn = static_cast<double>(n);
  return q * (1.0 - q) / (dn * (p - q) * (p - q)) +
         f * (1.0 - p - q) / (dn * (p - q));
}

OracleKind AdpChoose(double epsilon, uint32_t c) {
  CheckEpsilon(epsilon);
  CheckDomain(c);
  return c < 3.0 * std::exp(epsilon) + 2.0 ? OracleKind::kGrr
                                           : OracleKind::kOue;
}

std::vector<double> ClipAndRenormalize(std::vector<double> freqs) {
  double total = 0.0;
  for (double& f : freqs) {
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    total += f;
  }
  if (total <= 0.0) {
    const double uniform = freqs.empty() ? 0.0 : 1.0 / freqs.size();
    for (double& f : freqs) f = uniform;
    return freqs;
  }
  for (double& f : freqs) f /= total;
  return freqs;
}

}  // namespace ldplab
