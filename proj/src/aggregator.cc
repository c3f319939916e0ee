#include "ldplab/aggregator.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldplab/error.h"

namespace ldplab {

namespace {

std::string OracleSelectionName(OracleSelection selection) {
  switch (selection) {
    case OracleSelection::kGrr:
      return "GRR";
    case OracleSelection::kSue:
      return "SUE";
    case OracleSelection::kOue:
      return "OUE";
    case OracleSelection::kAdp:
      return "ADP";
  }
  return "?";
}

LongitudinalKind ToLongitudinalKind(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kLGrr:
      return LongitudinalKind::kLGrr;
    case StrategyKind::kLSue:
      return LongitudinalKind::kLSue;
    case StrategyKind::kLOue:
      return LongitudinalKind::kLOue;
    case StrategyKind::kLOsue:
      return LongitudinalKind::kLOsue;
    case StrategyKind::kLSoue:
      return LongitudinalKind::kLSoue;
    default:
      throw InvalidParameterError("not a longitudinal strategy");
  }
}

// Solved two-round parameters for one attribute of a longitudinal strategy.
TwoRoundParams LongitudinalParamsFor(StrategyKind kind, uint32_t c,
                                     double eps_inf, double eps_1) {
  LongitudinalKind lkind = kind == StrategyKind::kAllomfree
                               ? AllomfreeChoose(c, eps_inf, eps_1)
                               : ToLongitudinalKind(kind);
  TwoRoundParams params = lkind == LongitudinalKind::kLGrr
                              ? LgrrParams(eps_inf, eps_1, c)
                              : LueParams(eps_inf, eps_1, lkind);
  params.domain_size = c;
  return params;
}

FrequencyEstimate EmptyEstimate(uint32_t c) {
  FrequencyEstimate est;
  est.freqs.assign(c, 0.0);
  est.n = 0;
  est.analytic_var = std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace

std::string StrategyDescriptor::Name() const {
  switch (kind) {
    case StrategyKind::kSpl:
      return "Spl[" + OracleSelectionName(oracle) + "]";
    case StrategyKind::kSmp:
      return "Smp[" + OracleSelectionName(oracle) + "]";
    case StrategyKind::kRsfdGrr:
      return "RS+FD[GRR]";
    case StrategyKind::kRsfdOuez:
      return "RS+FD[OUE-z]";
    case StrategyKind::kRsfdOuer:
      return "RS+FD[OUE-r]";
    case StrategyKind::kRsfdAdp:
      return "RS+FD[ADP]";
    case StrategyKind::kLGrr:
      return "L-GRR";
    case StrategyKind::kLSue:
      return "L-SUE";
    case StrategyKind::kLOue:
      return "L-OUE";
    case StrategyKind::kLOsue:
      return "L-OSUE";
    case StrategyKind::kLSoue:
      return "L-SOUE";
    case StrategyKind::kAllomfree:
      return "ALLOMFREE";
  }
  return "?";
}

std::optional<StrategyKind> ParseStrategyKind(const std::string& name) {
  if (name == "Spl") return StrategyKind::kSpl;
  if (name == "Smp") return StrategyKind::kSmp;
  if (name == "RSFD-GRR") return StrategyKind::kRsfdGrr;
  if (name == "RSFD-OUEz") return StrategyKind::kRsfdOuez;
  if (name == "RSFD-OUEr") return StrategyKind::kRsfdOuer;
  if (name == "RSFD-ADP") return StrategyKind::kRsfdAdp;
  if (name == "L-GRR") return StrategyKind::kLGrr;
  if (name == "L-SUE") return StrategyKind::kLSue;
  if (name == "L-OUE") return StrategyKind::kLOue;
  if (name == "L-OSUE") return StrategyKind::kLOsue;
  if (name == "L-SOUE") return StrategyKind::kLSoue;
  if (name == "ALLOMFREE") return StrategyKind::kAllomfree;
  return std::nullopt;
}

StrategyDescriptor ParseStrategy(const std::string& name) {
  StrategyDescriptor descriptor;
  std::string base = name;
  descriptor.oracle = OracleSelection::kAdp;
  const auto bracket = name.find('[');
  if (bracket != std::string::npos && name.back() == ']') {
    base = name.substr(0, bracket);
    const std::string oracle =
        name.substr(bracket + 1, name.size() - bracket - 2);
    if (oracle == "GRR") {
      descriptor.oracle = OracleSelection::kGrr;
    } else if (oracle == "SUE") {
      descriptor.oracle = OracleSelection::kSue;
    } else if (oracle == "OUE") {
      descriptor.oracle = OracleSelection::kOue;
    } else if (oracle == "ADP") {
      descriptor.oracle = OracleSelection::kAdp;
    } else {
      throw InvalidParameterError("unknown oracle selector: " + oracle);
    }
  }
  const auto kind = ParseStrategyKind(base);
  if (!kind) throw InvalidParameterError("unknown strategy: " + name);
  if (bracket != std::string::npos && *kind != StrategyKind::kSpl &&
      *kind != StrategyKind::kSmp) {
    throw InvalidParameterError("oracle selector only applies to Spl/Smp");
  }
  descriptor.kind = *kind;
  return descriptor;
}

std::vector<PayloadKind> ExpectedPayloads(const StrategyDescriptor& strategy,
                                          const MultidimConfig& config,
                                          double epsilon) {
  const uint32_t d = config.d();
  std::vector<PayloadKind> kinds(d, PayloadKind::kValue);
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t c = config.domain_sizes[j];
    switch (strategy.kind) {
      case StrategyKind::kSpl:
        kinds[j] = ResolveOracle(strategy.oracle, epsilon / d, c) ==
                           OracleKind::kGrr
                       ? PayloadKind::kValue
                       : PayloadKind::kBits;
        break;
      case StrategyKind::kSmp:
        kinds[j] =
            ResolveOracle(strategy.oracle, epsilon, c) == OracleKind::kGrr
                ? PayloadKind::kValue
                : PayloadKind::kBits;
        break;
      case StrategyKind::kRsfdGrr:
        kinds[j] = PayloadKind::kValue;
        break;
      case StrategyKind::kRsfdOuez:
      case StrategyKind::kRsfdOuer:
        kinds[j] = PayloadKind::kBits;
        break;
      case StrategyKind::kRsfdAdp:
        kinds[j] = RsfdAdpChoose(d, c, Amplify(epsilon, d), 1) ==
                           RsfdVariant::kGrr
                       ? PayloadKind::kValue
                       : PayloadKind::kBits;
        break;
      case StrategyKind::kLGrr:
        kinds[j] = PayloadKind::kValue;
        break;
      case StrategyKind::kLSue:
      case StrategyKind::kLOue:
      case StrategyKind::kLOsue:
      case StrategyKind::kLSoue:
        kinds[j] = PayloadKind::kBits;
        break;
      case StrategyKind::kAllomfree:
        kinds[j] =
            AllomfreeChoose(c, epsilon, strategy.eps1_fraction * epsilon) ==
                    LongitudinalKind::kLGrr
                ? PayloadKind::kValue
                : PayloadKind::kBits;
        break;
    }
  }
  return kinds;
}

HistogramAccumulator::HistogramAccumulator(
    const MultidimConfig& config, std::vector<PayloadKind> payload_kinds) {
  if (config.d() == 0 || payload_kinds.size() != config.domain_sizes.size()) {
    throw InvalidParameterError(
        "accumulator needs one payload kind per attribute");
  }
  attributes_.reserve(config.d());
  for (uint32_t j = 0; j < config.d(); ++j) {
    Attribute attribute;
    attribute.kind = payload_kinds[j];
    attribute.counts.assign(config.domain_sizes[j], 0);
    attributes_.push_back(std::move(attribute));
  }
}

void HistogramAccumulator::AccumulateItem(uint32_t attribute,
                                          const ItemReport& item) {
  if (attribute >= attributes_.size()) {
    throw DecodeError("report attribute index out of range");
  }
  Attribute& slot = attributes_[attribute];
  if (const ValueIndex* value = std::get_if<ValueIndex>(&item)) {
    if (slot.kind != PayloadKind::kValue) {
      throw DecodeError("attribute expects unary bits, got a value index");
    }
    if (*value >= slot.counts.size()) {
      throw DecodeError("reported value outside the attribute domain");
    }
    ++slot.counts[*value];
  } else {
    const UnaryVector& bits = std::get<UnaryVector>(item);
    if (slot.kind != PayloadKind::kBits) {
      throw DecodeError("attribute expects a value index, got unary bits");
    }
    if (bits.bits.size() != slot.counts.size()) {
      throw DecodeError("unary vector length does not match the domain");
    }
    for (size_t i = 0; i < bits.bits.size(); ++i) {
      slot.counts[i] += bits.bits[i];
    }
  }
  ++slot.n;
}

void HistogramAccumulator::Accumulate(const Report& report) {
  if (const auto* value = std::get_if<ValueIndex>(&report)) {
    if (attributes_.size() != 1) {
      throw DecodeError("bare value report requires a single attribute");
    }
    AccumulateItem(0, ItemReport{*value});
  } else if (const auto* bits = std::get_if<UnaryVector>(&report)) {
    if (attributes_.size() != 1) {
      throw DecodeError("bare unary report requires a single attribute");
    }
    AccumulateItem(0, ItemReport{*bits});
  } else if (const auto* sampled = std::get_if<SampledReport>(&report)) {
    AccumulateItem(sampled->attribute, sampled->payload);
  } else {
    const TupleReport& tuple = std::get<TupleReport>(report);
    if (tuple.items.size() != attributes_.size()) {
      throw DecodeError("tuple report width does not match attribute count");
    }
    for (uint32_t j = 0; j < tuple.items.size(); ++j) {
      AccumulateItem(j, tuple.items[j]);
    }
  }
  ++total_reports_;
}

void HistogramAccumulator::Merge(const HistogramAccumulator& other) {
  if (other.attributes_.size() != attributes_.size()) {
    throw DecodeError("cannot merge accumulators of different shapes");
  }
  for (size_t j = 0; j < attributes_.size(); ++j) {
    Attribute& mine = attributes_[j];
    const Attribute& theirs = other.attributes_[j];
    if (mine.kind != theirs.kind ||
        mine.counts.size() != theirs.counts.size()) {
      throw DecodeError("cannot merge accumulators of different shapes");
    }
    for (size_t i = 0; i < mine.counts.size(); ++i) {
      mine.counts[i] += theirs.counts[i];
    }
    mine.n += theirs.n;
  }
  total_reports_ += other.total_reports_;
}

std::vector<FrequencyEstimate> EstimateAll(const HistogramAccumulator& acc,
                                           const StrategyDescriptor& strategy,
                                           const MultidimConfig& config,
                                           double epsilon) {
  if (acc.total_reports() == 0) {
    throw InvalidParameterError("empty accumulator");
  }
  const uint32_t d = config.d();
  std::vector<FrequencyEstimate> estimates;
  estimates.reserve(d);
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t c = config.domain_sizes[j];
    const uint64_t n_j = acc.n(j);
    if (n_j == 0) {
      estimates.push_back(EmptyEstimate(c));
      continue;
    }
    const std::span<const uint64_t> counts{acc.counts(j)};
    switch (strategy.kind) {
      case StrategyKind::kSpl: {
        const double eps_split = epsilon / d;
        const OracleKind kind = ResolveOracle(strategy.oracle, eps_split, c);
        const OneRoundParams params = kind == OracleKind::kGrr
                                          ? GrrParams(eps_split, c)
                                          : kind == OracleKind::kSue
                                                ? SueParams(eps_split)
                                                : OueParams(eps_split);
        estimates.push_back(EstimateFreq(counts, n_j, params));
        break;
      }
      case StrategyKind::kSmp: {
        const OracleKind kind = ResolveOracle(strategy.oracle, epsilon, c);
        const OneRoundParams params =
            kind == OracleKind::kGrr
                ? GrrParams(epsilon, c)
                : kind == OracleKind::kSue ? SueParams(epsilon)
                                           : OueParams(epsilon);
        estimates.push_back(EstimateFreq(counts, n_j, params));
        break;
      }
      case StrategyKind::kRsfdGrr:
        estimates.push_back(
            RsfdEstimate(counts, n_j, d, c, epsilon, RsfdVariant::kGrr));
        break;
      case StrategyKind::kRsfdOuez:
        estimates.push_back(
            RsfdEstimate(counts, n_j, d, c, epsilon, RsfdVariant::kOuez));
        break;
      case StrategyKind::kRsfdOuer:
        estimates.push_back(
            RsfdEstimate(counts, n_j, d, c, epsilon, RsfdVariant::kOuer));
        break;
      case StrategyKind::kRsfdAdp:
        estimates.push_back(
            RsfdEstimate(counts, n_j, d, c, epsilon, RsfdVariant::kAdp));
        break;
      default: {
        const TwoRoundParams params = LongitudinalParamsFor(
            strategy.kind, c, epsilon, strategy.eps1_fraction * epsilon);
        estimates.push_back(LongitudinalEstimate(counts, n_j, params));
        break;
      }
    }
    if (strategy.clip_estimates) {
      estimates.back().freqs = ClipAndRenormalize(estimates.back().freqs);
    }
  }
  return estimates;
}

uint32_t UnionDayPlan::DatabaseIndex(uint32_t start_day,
                                     uint32_t end_day) const {
  if (start_day < 1 || end_day < start_day || end_day > nb) {
    throw InvalidParameterError("union database needs 1 <= start <= end <= Nb");
  }
  return end_day * (end_day - 1) / 2 + (start_day - 1);
}

uint32_t UnionDayPlan::EndDay(uint32_t index) const {
  uint32_t end = 1;
  while (end * (end + 1) / 2 <= index) ++end;
  return end;
}

uint32_t UnionDayPlan::StartDay(uint32_t index) const {
  const uint32_t end = EndDay(index);
  return index - end * (end - 1) / 2 + 1;
}

std::vector<std::vector<uint32_t>> RouteUnionDays(
    const std::vector<uint32_t>& presence_days, uint32_t nb) {
  if (nb == 0) throw InvalidParameterError("Nb must be >= 1");
  UnionDayPlan plan(nb);
  std::vector<uint8_t> assigned(plan.DatabaseCount(), 0);
  std::vector<std::vector<uint32_t>> routing;
  routing.reserve(presence_days.size());
  uint32_t previous = 0;
  for (uint32_t day : presence_days) {
    if (day < 1 || day > nb) {
      throw InvalidParameterError("presence day outside [1, Nb]");
    }
    if (day <= previous) {
      throw InvalidParameterError("presence days must be strictly increasing");
    }
    previous = day;
    std::vector<uint32_t> today;
    // Single day first, then unions with later end days; within one end day,
    // the day's own union precedes the ones reaching further back.
    for (uint32_t end = day; end <= nb; ++end) {
      for (uint32_t start = day; start >= 1; --start) {
        const uint32_t index = plan.DatabaseIndex(start, end);
        if (!assigned[index]) {
          assigned[index] = 1;
          today.push_back(index);
        }
      }
    }
    routing.push_back(std::move(today));
  }
  return routing;
}

double MseAvg(const std::vector<std::vector<double>>& true_freqs,
              const std::vector<std::vector<double>>& est_freqs) {
  if (true_freqs.size() != est_freqs.size() || true_freqs.empty()) {
    throw InvalidParameterError("MseAvg shape mismatch");
  }
  double total = 0.0;
  for (size_t j = 0; j < true_freqs.size(); ++j) {
    if (true_freqs[j].size() != est_freqs[j].size() || true_freqs[j].empty()) {
      throw InvalidParameterError("MseAvg shape mismatch");
    }
    double attr = 0.0;
    for (size_t i = 0; i < true_freqs[j].size(); ++i) {
      const double diff = true_freqs[j][i] - est_freqs[j][i];
      attr += diff * diff;
    }
    total += attr / true_freqs[j].size();
  }
  return total / true_freqs.size();
}

double MseAvgOverTime(
    const std::vector<std::vector<std::vector<double>>>& true_freqs_t,
    const std::vector<std::vector<std::vector<double>>>& est_freqs_t) {
  if (true_freqs_t.size() != est_freqs_t.size() || true_freqs_t.empty()) {
    throw InvalidParameterError("MseAvgOverTime shape mismatch");
  }
  double total = 0.0;
  for (size_t t = 0; t < true_freqs_t.size(); ++t) {
    total += MseAvg(true_freqs_t[t], est_freqs_t[t]);
  }
  return total / true_freqs_t.size();
}

}  // namespace ldplab
