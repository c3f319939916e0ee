#ifndef LDPLAB_AGGREGATOR_H_
#define LDPLAB_AGGREGATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldplab/longitudinal.h"
#include "ldplab/multidim.h"
#include "ldplab/oracles.h"
#include "ldplab/report.h"

namespace ldplab {

// Collection strategy, as both the client dispatcher and the decode
// descriptor the aggregator estimates under.
enum class StrategyKind {
  kSpl,
  kSmp,
  kRsfdGrr,
  kRsfdOuez,
  kRsfdOuer,
  kRsfdAdp,
  kLGrr,
  kLSue,
  kLOue,
  kLOsue,
  kLSoue,
  kAllomfree,
};

struct StrategyDescriptor {
  StrategyKind kind;
  OracleSelection oracle = OracleSelection::kAdp;  // Spl / Smp only
  double eps1_fraction = 0.3;                      // longitudinal only
  bool clip_estimates = false;

  std::string Name() const;
};

std::optional<StrategyKind> ParseStrategyKind(const std::string& name);
StrategyDescriptor ParseStrategy(const std::string& name);

// Expected payload shape per attribute (GRR value vs unary bits), derived
// from the strategy so decode mismatches are caught.
enum class PayloadKind { kValue, kBits };

std::vector<PayloadKind> ExpectedPayloads(const StrategyDescriptor& strategy,
                                          const MultidimConfig& config,
                                          double epsilon);

// Per-attribute observed counts. For GRR payloads counts[v] is the number of
// reports of value v (they sum to n); for unary payloads counts[i] is the
// number of reports with bit i set (each <= n). n counts the reports that
// contributed to this attribute: Smp-style reports touch only the disclosed
// attribute, Spl/RS+FD tuples touch all of them.
class HistogramAccumulator {
 public:
  HistogramAccumulator(const MultidimConfig& config,
                       std::vector<PayloadKind> payload_kinds);

  void Accumulate(const Report& report);

  // Associative, commutative; merging with a fresh accumulator is identity.
  void Merge(const HistogramAccumulator& other);

  uint32_t attribute_count() const {
    return static_cast<uint32_t>(attributes_.size());
  }
  const std::vector<uint64_t>& counts(uint32_t attribute) const {
    return attributes_[attribute].counts;
  }
  uint64_t n(uint32_t attribute) const { return attributes_[attribute].n; }
  uint64_t total_reports() const { return total_reports_; }

 private:
  struct Attribute {
    PayloadKind kind;
    std::vector<uint64_t> counts;
    uint64_t n = 0;
  };

  void AccumulateItem(uint32_t attribute, const ItemReport& item);

  std::vector<Attribute> attributes_;
  uint64_t total_reports_ = 0;
};

// Per-attribute estimates using the strategy's estimator and effective
// epsilon (eps/d for Spl, eps with realized n_j for Smp, amplified eps' for
// RS+FD, solved two-round parameters for longitudinal strategies).
std::vector<FrequencyEstimate> EstimateAll(const HistogramAccumulator& acc,
                                           const StrategyDescriptor& strategy,
                                           const MultidimConfig& config,
                                           double epsilon);

// --- Union-of-consecutive-days routing -------------------------------------

// Fixed index scheme for the Nb(Nb+1)/2 databases: one per union
// D_end ∪ D_{end-1} ∪ ... ∪ D_start for 1 <= start <= end <= Nb.
// Single days are start == end.
struct UnionDayPlan {
  uint32_t nb;

  explicit UnionDayPlan(uint32_t nb_days) : nb(nb_days) {}

  uint32_t DatabaseCount() const { return nb * (nb + 1) / 2; }
  uint32_t DatabaseIndex(uint32_t start_day, uint32_t end_day) const;
  uint32_t StartDay(uint32_t index) const;
  uint32_t EndDay(uint32_t index) const;
};

// For a user present on the given days (1-based, strictly increasing),
// returns one database-index list per presence day: on the first appearance
// every union covering that day; afterwards only unions not yet holding this
// user's report. Each union database ends up counting the user exactly once
// iff the user was present on any covered day.
std::vector<std::vector<uint32_t>> RouteUnionDays(
    const std::vector<uint32_t>& presence_days, uint32_t nb);

// --- Utility metric ---------------------------------------------------------

// (1/d) sum_j (1/c_j) sum_i (f - f_hat)^2.
double MseAvg(const std::vector<std::vector<double>>& true_freqs,
              const std::vector<std::vector<double>>& est_freqs);

// Time-sequenced form: the per-step MseAvg additionally averaged over tau
// collection rounds.
double MseAvgOverTime(
    const std::vector<std::vector<std::vector<double>>>& true_freqs_t,
    const std::vector<std::vector<std::vector<double>>>& est_freqs_t);

}  // namespace ldplab

#endif  // LDPLAB_AGGREGATOR_H_
