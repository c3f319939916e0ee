#ifndef LDPLAB_ORACLES_H_
#define LDPLAB_ORACLES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ldplab/random.h"
#include "ldplab/report.h"

namespace ldplab {

enum class OracleKind { kGrr, kSue, kOue };

// One-shot frequency-oracle parameterization. Invariant: 0 < q < p < 1.
struct OneRoundParams {
  OracleKind kind;
  uint32_t domain_size;  // c; for UE kinds, the encoded bit count
  double p;              // keep-truth (GRR) / true-bit-stays-one (UE)
  double q;              // flip-to-specific-other / zero-bit-becomes-one
  double epsilon;
};

// GRR: p = e^eps / (e^eps + c - 1), q = (1 - p)/(c - 1).
OneRoundParams GrrParams(double epsilon, uint32_t c);

// SUE: p = e^{eps/2} / (e^{eps/2} + 1), q = 1 - p.
OneRoundParams SueParams(double epsilon);

// OUE: p = 1/2, q = 1 / (e^eps + 1).
OneRoundParams OueParams(double epsilon);

// ln( p(1-q) / ((1-p)q) ), the LDP level of a UE channel. p <= q is invalid.
double UeEpsilon(double p, double q);

ValueIndex GrrPerturb(ValueIndex v, const OneRoundParams& params, Rng& rng);

UnaryVector UeEncode(ValueIndex v, uint32_t c);

// Independent per-bit flips: output bit is 1 w.p. p if input bit is 1, q if 0.
UnaryVector UePerturb(const UnaryVector& b, double p, double q, Rng& rng);

// Raw unbiased per-value estimates; entries may be negative or exceed 1.
struct FrequencyEstimate {
  std::vector<double> freqs;
  uint64_t n = 0;
  double analytic_var = 0.0;  // approximate (f = 0) per-value variance
};

// f_hat(v_i) = (N_i - n q) / (n (p - q)).
FrequencyEstimate EstimateFreq(std::span<const uint64_t> counts, uint64_t n,
                               const OneRoundParams& params);

// Var approximation with f = 0: q(1-q) / (n (p-q)^2).
double VarianceApprox(const OneRoundParams& params, uint64_t n);

// Exact estimator variance at true frequency f:
//   q(1-q)/(n(p-q)^2) + f(1-p-q)/(n(p-q)).
double VarianceExact(const OneRoundParams& params, uint64_t n, double f);

// GRR iff c < 3 e^eps + 2 (the strict inequality; ties go to OUE).
OracleKind AdpChoose(double epsilon, uint32_t c);

// Optional post-processing: clip to [0,1] and renormalize to sum 1. Leaves
// an all-clipped-to-zero vector uniform.
std::vector<double> ClipAndRenormalize(std::vector<double> freqs);

}  // namespace ldplab

#endif  // LDPLAB_ORACLES_H_
