#include "ldplab/longitudinal.h"

#include <cmath>
#include <string>

#include "ldplab/error.h"

namespace ldplab {

namespace {

void CheckBudgets(double eps_inf, double eps_1) {
  if (!(eps_1 > 0.0) || !(eps_1 < eps_inf) || !std::isfinite(eps_inf)) {
    throw InvalidParameterError("budgets must satisfy 0 < eps_1 < eps_inf");
  }
}

bool IsGrr(LongitudinalKind kind) { return kind == LongitudinalKind::kLGrr; }

// First-round oracle parameters for the kind at eps_inf.
OneRoundParams FirstRound(LongitudinalKind kind, double eps_inf, uint32_t c) {
  switch (kind) {
    case LongitudinalKind::kLGrr:
      return GrrParams(eps_inf, c);
    case LongitudinalKind::kLSue:
    case LongitudinalKind::kLSoue:
      return SueParams(eps_inf);
    case LongitudinalKind::kLOue:
    case LongitudinalKind::kLOsue:
      return OueParams(eps_inf);
  }
  throw InvalidParameterError("unknown longitudinal kind");
}

// Composed per-bit probabilities of a two-round UE chain.
void ComposeUe(const TwoRoundParams& params, double* ps, double* qs) {
  *ps = params.p1 * params.p2 + (1.0 - params.p1) * params.q2;
  *qs = params.q1 * params.p2 + (1.0 - params.q1) * params.q2;
}

double UeChainEpsilon(double p1, double q1, double p2, double q2) {
  const double ps = p1 * p2 + (1.0 - p1) * q2;
  const double qs = q1 * p2 + (1.0 - q1) * q2;
  return std::log(ps * (1.0 - qs) / ((1.0 - ps) * qs));
}

// Solves q2 in (0, 1/2) for OUE-style second rounds (p2 = 1/2); the chain
// epsilon is monotone decreasing in q2 on this interval.
double SolveOueSecondRound(double p1, double q1, double eps_1,
                           const char* kind_name) {
  constexpr double kEdge = 1e-12;
  const double max_eps = UeChainEpsilon(p1, q1, 0.5, kEdge);
  if (eps_1 >= max_eps) {
    throw InfeasibleBudgetError(
        std::string(kind_name) + ": p2 = 1/2 cannot realize eps_1 = " +
        std::to_string(eps_1) + "; the chain epsilon is bounded by " +
        std::to_string(max_eps));
  }
  double lo = kEdge;
  double hi = 0.5 - kEdge;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (UeChainEpsilon(p1, q1, 0.5, mid) > eps_1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void CheckSecondRound(double p2, double q2, const char* kind_name) {
  if (!(p2 > 0.0 && p2 < 1.0)) {
    throw InfeasibleBudgetError(std::string(kind_name) +
                                ": solved p2 = " + std::to_string(p2) +
                                " leaves (0, 1)");
  }
  if (!(q2 > 0.0 && q2 < p2)) {
    throw InfeasibleBudgetError(std::string(kind_name) +
                                ": solved q2 = " + std::to_string(q2) +
                                " violates 0 < q2 < p2");
  }
}

}  // namespace

const char* LongitudinalKindName(LongitudinalKind kind) {
  switch (kind) {
    case LongitudinalKind::kLGrr:
      return "L-GRR";
    case LongitudinalKind::kLSue:
      return "L-SUE";
    case LongitudinalKind::kLOue:
      return "L-OUE";
    case LongitudinalKind::kLOsue:
      return "L-OSUE";
    case LongitudinalKind::kLSoue:
      return "L-SOUE";
  }
  return "?";
}

TwoRoundParams LgrrParams(double eps_inf, double eps_1, uint32_t c) {
  CheckBudgets(eps_inf, eps_1);
  const OneRoundParams first = GrrParams(eps_inf, c);
  const double e1 = std::exp(eps_1);
  const double einf = std::exp(eps_inf);
  const double e1inf = std::exp(eps_1 + eps_inf);
  const double p2 =
      (e1inf - 1.0) / (-static_cast<double>(c) * e1 + (c - 1.0) * einf + e1 +
                       e1inf - 1.0);
  const double q2 = (1.0 - p2) / (c - 1.0);
  CheckSecondRound(p2, q2, "L-GRR");
  return {LongitudinalKind::kLGrr, c, first.p, first.q, p2, q2, eps_inf,
          eps_1};
}

TwoRoundParams LueParams(double eps_inf, double eps_1, LongitudinalKind kind) {
  CheckBudgets(eps_inf, eps_1);
  if (kind == LongitudinalKind::kLGrr) {
    throw InvalidParameterError("LueParams does not solve L-GRR");
  }
  const OneRoundParams first = FirstRound(kind, eps_inf, 0);
  double p2 = 0.0;
  double q2 = 0.0;
  switch (kind) {
    case LongitudinalKind::kLOsue: {
      const double e1 = std::exp(eps_1);
      const double einf = std::exp(eps_inf);
      const double e1inf = std::exp(eps_1 + eps_inf);
      p2 = (1.0 - e1inf) / (e1 - einf - e1inf + 1.0);
      q2 = 1.0 - p2;
      break;
    }
    case LongitudinalKind::kLSue: {
      // Symmetric second round over a SUE first round; the composed channel
      // must be SUE(eps_1), i.e. ps = e^{eps_1/2}/(e^{eps_1/2}+1).
      const double ps = std::exp(eps_1 / 2.0) / (std::exp(eps_1 / 2.0) + 1.0);
      p2 = (ps + first.p - 1.0) / (2.0 * first.p - 1.0);
      q2 = 1.0 - p2;
      break;
    }
    case LongitudinalKind::kLOue:
    case LongitudinalKind::kLSoue:
      p2 = 0.5;
      q2 = SolveOueSecondRound(first.p, first.q, eps_1,
                               LongitudinalKindName(kind));
      break;
    default:
      break;
  }
  CheckSecondRound(p2, q2, LongitudinalKindName(kind));
  return {kind, 0, first.p, first.q, p2, q2, eps_inf, eps_1};
}

double ChainEpsilon(const TwoRoundParams& params) {
  if (IsGrr(params.kind)) {
    return std::log(
        (params.p1 * params.p2 + params.q1 * params.q2) /
        (params.p1 * params.q2 + params.q1 * params.p2));
  }
  return UeChainEpsilon(params.p1, params.q1, params.p2, params.q2);
}

ItemReport Memoize(ValueIndex v, const TwoRoundParams& params, Rng& rng) {
  if (IsGrr(params.kind)) {
    OneRoundParams first{OracleKind::kGrr, params.domain_size, params.p1,
                         params.q1, params.eps_inf};
    return GrrPerturb(v, first, rng);
  }
  return UePerturb(UeEncode(v, params.domain_size), params.p1, params.q1, rng);
}

ItemReport LongitudinalReport(const ItemReport& memo,
                              const TwoRoundParams& params, Rng& rng) {
  if (IsGrr(params.kind)) {
    OneRoundParams second{OracleKind::kGrr, params.domain_size, params.p2,
                          params.q2, params.eps_1};
    return GrrPerturb(std::get<ValueIndex>(memo), second, rng);
  }
  return UePerturb(std::get<UnaryVector>(memo), params.p2, params.q2, rng);
}

FrequencyEstimate LongitudinalEstimate(std::span<const uint64_t> counts,
                                       uint64_t n,
                                       const TwoRoundParams& params) {
  if (n == 0) throw InvalidParameterError("LongitudinalEstimate needs n >= 1");
  const double gap1 = params.p1 - params.q1;
  const double gap2 = params.p2 - params.q2;
  if (gap1 == 0.0 || gap2 == 0.0) {
    throw InvalidParameterError("degenerate parameters: p1 = q1 or p2 = q2");
  }
  FrequencyEstimate est;
  est.n = n;
  est.analytic_var = LongitudinalVarianceApprox(params, n);
  est.freqs.reserve(counts.size());
  const double dn = static_cast<double>(n);
  const double offset = dn * (params.q1 * gap2 + params.q2);
  for (uint64_t count : counts) {
    est.freqs.push_back((static_cast<double>(count) - offset) /
                        (dn * gap1 * gap2));
  }
  return est;
}

double LongitudinalVariance(const TwoRoundParams& params, uint64_t n,
                            double f) {
  if (n == 0) throw InvalidParameterError("variance requires n >= 1");
  const double p1 = params.p1;
  const double q1 = params.q1;
  const double p2 = params.p2;
  const double q2 = params.q2;
  const double gamma =
      f * (2.0 * p1 * p2 - 2.0 * p1 * q2 + 2.0 * q2 - 1.0) + p2 * q1 +
      q2 * (1.0 - q1);
  const double gap = (p1 - q1) * (p2 - q2);
  return gamma * (1.0 - gamma) / (static_cast<double>(n) * gap * gap);
}

double LongitudinalVarianceApprox(const TwoRoundParams& params, uint64_t n) {
  return LongitudinalVariance(params, n, 0.0);
}

double PrivacyOverTime(double eps_inf, double eps_1, uint64_t t) {
  if (!(eps_inf > 0.0) || !(eps_1 > 0.0)) {
    throw InvalidParameterError("PrivacyOverTime needs positive budgets");
  }
  // eps_t = ln((e^{a+b} + 1)/(e^a + e^b)) with a = eps_inf, b = t eps_1,
  // evaluated as min(a,b) + log1p(e^{-(a+b)}) - log1p(e^{-|a-b|}).
  const double a = eps_inf;
  const double b = static_cast<double>(t) * eps_1;
  return std::min(a, b) + std::log1p(std::exp(-(a + b))) -
         std::log1p(std::exp(-std::abs(a - b)));
}

double EffectiveSingleReportEpsilon(const TwoRoundParams& params, uint32_t c) {
  if (!IsGrr(params.kind)) {
    double ps;
    double qs;
    ComposeUe(params, &ps, &qs);
    return UeEpsilon(std::max(ps, qs), std::min(ps, qs));
  }
  if (c > (1u << 12)) {
    throw InvalidParameterError("exact GRR channel enumeration capped at 2^12");
  }
  if (c < 2) throw InvalidParameterError("domain size must be >= 2");
  // Compose the two c x c channels. Both rounds are symmetric (p on the
  // diagonal, q elsewhere), so row sums collapse; the dense enumeration is
  // kept for small c as the authoritative check.
  double diag;
  double off;
  if (c <= 256) {
    diag = 0.0;
    off = 0.0;
    for (uint32_t k = 0; k < c; ++k) {
      const double step1_same = k == 0 ? params.p1 : params.q1;
      diag += step1_same * (k == 0 ? params.p2 : params.q2);
      off += step1_same * (k == 1 ? params.p2 : params.q2);
    }
  } else {
    diag = params.p1 * params.p2 + (1.0 - params.p1) * params.q2;
    off = params.q1 * params.p2 + (1.0 - params.q1) * params.q2;
  }
  return std::abs(std::log(diag / off));
}

LongitudinalKind AllomfreeChoose(uint32_t c, double eps_inf, double eps_1) {
  const double var_grr =
      LongitudinalVarianceApprox(LgrrParams(eps_inf, eps_1, c), 1);
  const double var_osue = LongitudinalVarianceApprox(
      LueParams(eps_inf, eps_1, LongitudinalKind::kLOsue), 1);
  return var_grr <= var_osue ? LongitudinalKind::kLGrr
                             : LongitudinalKind::kLOsue;
}

std::vector<SampledReport> AllomfreeClientReports(
    std::span<const ValueIndex> tuple, std::span<const uint32_t> domains,
    double eps_inf, double eps_1, uint32_t tau, Rng& rng) {
  if (tuple.empty() || tuple.size() != domains.size()) {
    throw InvalidParameterError("tuple and domain list must match, d >= 1");
  }
  if (tau == 0) throw InvalidParameterError("tau must be >= 1");
  const uint32_t attribute = rng.UniformInt(static_cast<uint32_t>(tuple.size()));
  const uint32_t c = domains[attribute];
  const LongitudinalKind kind = AllomfreeChoose(c, eps_inf, eps_1);
  TwoRoundParams params =
      kind == LongitudinalKind::kLGrr
          ? LgrrParams(eps_inf, eps_1, c)
          : LueParams(eps_inf, eps_1, LongitudinalKind::kLOsue);
  params.domain_size = c;
  const ItemReport memo = Memoize(tuple[attribute], params, rng);
  std::vector<SampledReport> reports;
  reports.reserve(tau);
  for (uint32_t t = 0; t < tau; ++t) {
    reports.push_back({attribute, LongitudinalReport(memo, params, rng)});
  }
  return reports;
}

const ItemReport& MemoTable::GetOrCreate(uint64_t user, uint32_t attribute,
                                         ValueIndex value,
                                         const TwoRoundParams& params,
                                         Rng& rng) {
  auto key = std::make_pair(user, attribute);
  auto it = memos_.find(key);
  if (it != memos_.end()) {
    if (it->second.value != value) {
      throw InvalidParameterError(
          "memoization contract violated: (user, attribute) re-memoized with "
          "a different value");
    }
    return it->second.memoized;
  }
  auto [inserted, ok] =
      memos_.emplace(key, Entry{value, Memoize(value, params, rng)});
  return inserted->second.memoized;
}

}  // namespace ldplab
