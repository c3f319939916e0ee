#ifndef LDPLAB_MULTIDIM_H_
#define LDPLAB_MULTIDIM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ldplab/oracles.h"
#include "ldplab/random.h"
#include "ldplab/report.h"

namespace ldplab {

struct MultidimConfig {
  std::vector<uint32_t> domain_sizes;

  uint32_t d() const { return static_cast<uint32_t>(domain_sizes.size()); }
};

// Oracle selection for Spl/Smp clients; kAdp resolves per attribute.
enum class OracleSelection { kGrr, kSue, kOue, kAdp };

OracleKind ResolveOracle(OracleSelection selection, double epsilon,
                         uint32_t c);

// Amplification by sampling at rate 1/d: eps' = ln(d (e^eps - 1) + 1).
double Amplify(double epsilon, uint32_t d);

// Spl: every attribute perturbed independently at eps/d.
TupleReport SplClient(std::span<const ValueIndex> tuple,
                      const MultidimConfig& config, double epsilon,
                      OracleSelection selection, Rng& rng);

// Smp (r = 1): one attribute sampled uniformly, perturbed at full eps,
// attribute index disclosed.
SampledReport SmpClient(std::span<const ValueIndex> tuple,
                        const MultidimConfig& config, double epsilon,
                        OracleSelection selection, Rng& rng);

// r-generalized sampled-strategy variance (r = d reduces to Spl).
double SmpVariance(double epsilon, uint32_t d, uint32_t c, OracleKind kind,
                   uint64_t n, uint32_t r = 1);

// argmin over r in [1, d]; equals 1 everywhere per the monotonicity analysis.
uint32_t SmpOptimalR(double epsilon, uint32_t d, uint32_t c, OracleKind kind);

enum class RsfdVariant { kGrr, kOuez, kOuer, kAdp };

const char* RsfdVariantName(RsfdVariant variant);

// RS+FD clients: the sampled attribute is perturbed at the amplified eps',
// all others carry fake data; the sampled position is not disclosed.
TupleReport RsfdGrrClient(std::span<const ValueIndex> tuple,
                          const MultidimConfig& config, double epsilon,
                          Rng& rng);
TupleReport RsfdOuezClient(std::span<const ValueIndex> tuple,
                           const MultidimConfig& config, double epsilon,
                           Rng& rng);
TupleReport RsfdOuerClient(std::span<const ValueIndex> tuple,
                           const MultidimConfig& config, double epsilon,
                           Rng& rng);
// Per-attribute choice between the GRR and OUE-z variants by approximate
// variance (mixed tuples; slots carry their own kind tags).
TupleReport RsfdAdpClient(std::span<const ValueIndex> tuple,
                          const MultidimConfig& config, double epsilon,
                          Rng& rng);

// Unbiased estimator for one attribute under the given variant; p, q are at
// the amplified eps' = Amplify(epsilon, d).
FrequencyEstimate RsfdEstimate(std::span<const uint64_t> counts, uint64_t n,
                               uint32_t d, uint32_t c_j, double epsilon,
                               RsfdVariant variant);

// d^2 gamma (1 - gamma) / (n (p - q)^2) with the variant's gamma.
double RsfdVariance(uint32_t d, uint32_t c_j, double epsilon,
                    RsfdVariant variant, uint64_t n, double f);

// GRR iff VAR1 <= VAR2 at f = 0 (ties keep GRR). eps_prime is already
// amplified. Returns kGrr or kOuez.
RsfdVariant RsfdAdpChoose(uint32_t d, uint32_t c_j, double eps_prime,
                          uint64_t n);

}  // namespace ldplab

#endif  // LDPLAB_MULTIDIM_H_
