#ifndef LDPLAB_LONGITUDINAL_H_
#define LDPLAB_LONGITUDINAL_H_

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ldplab/oracles.h"
#include "ldplab/random.h"
#include "ldplab/report.h"

namespace ldplab {

enum class LongitudinalKind { kLGrr, kLSue, kLOue, kLOsue, kLSoue };

const char* LongitudinalKindName(LongitudinalKind kind);

// Memoization budgets: eps_inf bounds lifetime leakage, eps_1 a single report.
struct BudgetPair {
  double eps_inf;
  double eps_1;
};

// Two-round parameters. Round one realizes eps_inf under the kind's first
// oracle; round two is solved so a single composed report realizes eps_1.
struct TwoRoundParams {
  LongitudinalKind kind;
  uint32_t domain_size;  // c for L-GRR; encoded bit count for L-UE kinds
  double p1, q1;
  double p2, q2;
  double eps_inf;
  double eps_1;
};

// L-GRR closed form. Throws InfeasibleBudgetError naming the violated bound
// when the solved p2 leaves (q2, 1).
TwoRoundParams LgrrParams(double eps_inf, double eps_1, uint32_t c);

// L-UE family. Symmetric second rounds (L-SUE, L-OSUE) use closed forms;
// OUE-style second rounds (L-OUE, L-SOUE) fix p2 = 1/2 and bisect q2 on the
// chain-epsilon equation, which is monotone on (0, 1/2).
TwoRoundParams LueParams(double eps_inf, double eps_1, LongitudinalKind kind);

// Single-report epsilon of the composed two-round channel, from the paper's
// chained-probability expressions: exact for every L-UE kind and for L-GRR
// with c = 2; for L-GRR with c > 2 this is the collapsed form the parameter
// solve targets (the exact channel value is EffectiveSingleReportEpsilon).
double ChainEpsilon(const TwoRoundParams& params);

// First-round randomizer, applied once per (user, value).
ItemReport Memoize(ValueIndex v, const TwoRoundParams& params, Rng& rng);

// Second-round randomizer over the memoized report; never touches the truth.
ItemReport LongitudinalReport(const ItemReport& memo,
                              const TwoRoundParams& params, Rng& rng);

// f_hat_L(v_i) = (N_i - n q1 (p2-q2) - n q2) / (n (p1-q1)(p2-q2)).
FrequencyEstimate LongitudinalEstimate(std::span<const uint64_t> counts,
                                       uint64_t n,
                                       const TwoRoundParams& params);

// gamma(1-gamma) / (n (p1-q1)^2 (p2-q2)^2) with
// gamma = f (2 p1 p2 - 2 p1 q2 + 2 q2 - 1) + p2 q1 + q2 (1 - q1).
double LongitudinalVariance(const TwoRoundParams& params, uint64_t n,
                            double f);
double LongitudinalVarianceApprox(const TwoRoundParams& params, uint64_t n);

// eps_t = ln( (e^{eps_inf + t eps_1} + 1) / (e^{eps_inf} + e^{t eps_1}) ),
// evaluated in log space so large t does not overflow.
double PrivacyOverTime(double eps_inf, double eps_1, uint64_t t);

// Exact max log-ratio of the composed two-round channel over all outputs and
// input pairs. GRR kinds enumerate the c x c composition (c <= 2^12); UE
// kinds reduce to the per-bit chain.
double EffectiveSingleReportEpsilon(const TwoRoundParams& params, uint32_t c);

// ALLOMFREE protocol choice for one attribute: L-GRR iff its approximate
// variance is <= L-OSUE's (ties keep L-GRR). Deterministic in (c, budgets),
// so the aggregator can reproduce the client's choice when decoding.
LongitudinalKind AllomfreeChoose(uint32_t c, double eps_inf, double eps_1);

// User-side ALLOMFREE: samples one attribute (once), memoizes once, emits
// tau second-round reports all tagged with that attribute.
std::vector<SampledReport> AllomfreeClientReports(
    std::span<const ValueIndex> tuple, std::span<const uint32_t> domains,
    double eps_inf, double eps_1, uint32_t tau, Rng& rng);

// Simulation-side memo store enforcing the create-once contract: a second
// request for the same (user, attribute) must carry the same true value and
// returns the stored first-round output unchanged.
class MemoTable {
 public:
  const ItemReport& GetOrCreate(uint64_t user, uint32_t attribute,
                                ValueIndex value, const TwoRoundParams& params,
                                Rng& rng);

  size_t size() const { return memos_.size(); }

 private:
  struct Entry {
    ValueIndex value;
    ItemReport memoized;
  };
  std::map<std::pair<uint64_t, uint32_t>, Entry> memos_;
};

}  // namespace ldplab

#endif  // LDPLAB_LONGITUDINAL_H_
