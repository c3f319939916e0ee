#include "ldplab/multidim.h"

#include <cmath>
#include <string>

#include "ldplab/error.h"

namespace ldplab {

namespace {

void CheckTuple(std::span<const ValueIndex> tuple,
                const MultidimConfig& config) {
  if (config.d() == 0 || tuple.size() != config.domain_sizes.size()) {
    throw InvalidParameterError("tuple width must equal attribute count >= 1");
  }
  for (size_t j = 0; j < tuple.size(); ++j) {
    if (config.domain_sizes[j] < 2) {
      throw InvalidParameterError("attribute domain sizes must be >= 2");
    }
    if (tuple[j] >= config.domain_sizes[j]) {
      throw InvalidParameterError("tuple value outside attribute domain");
    }
  }
}

OneRoundParams OracleParams(OracleKind kind, double epsilon, uint32_t c) {
  switch (kind) {
    case OracleKind::kGrr:
      return GrrParams(epsilon, c);
    case OracleKind::kSue:
      return SueParams(epsilon);
    case OracleKind::kOue:
      return OueParams(epsilon);
  }
  throw InvalidParameterError("unknown oracle kind");
}

ItemReport PerturbOne(ValueIndex v, OracleKind kind, double epsilon,
                      uint32_t c, Rng& rng) {
  const OneRoundParams params = OracleParams(kind, epsilon, c);
  if (kind == OracleKind::kGrr) return GrrPerturb(v, params, rng);
  return UePerturb(UeEncode(v, c), params.p, params.q, rng);
}

}  // namespace

OracleKind ResolveOracle(OracleSelection selection, double epsilon,
                         uint32_t c) {
  switch (selection) {
    case OracleSelection::kGrr:
      return OracleKind::kGrr;
    case OracleSelection::kSue:
      return OracleKind::kSue;
    case OracleSelection::kOue:
      return OracleKind::kOue;
    case OracleSelection::kAdp:
      return AdpChoose(epsilon, c);
  }
  throw InvalidParameterError("unknown oracle selection");
}

double Amplify(double epsilon, uint32_t d) {
  if (!(epsilon > 0.0) || d == 0) {
    throw InvalidParameterError("Amplify needs epsilon > 0 and d >= 1");
  }
  return std::log(static_cast<double>(d) * (std::exp(epsilon) - 1.0) + 1.0);
}

TupleReport SplClient(std::span<const ValueIndex> tuple,
                      const MultidimConfig& config, double epsilon,
                      OracleSelection selection, Rng& rng) {
  CheckTuple(tuple, config);
  const double eps_split = epsilon / config.d();
  TupleReport report;
  report.items.reserve(tuple.size());
  for (size_t j = 0; j < tuple.size(); ++j) {
    const uint32_t c = config.domain_sizes[j];
    const OracleKind kind = ResolveOracle(selection, eps_split, c);
    report.items.push_back(PerturbOne(tuple[j], kind, eps_split, c, rng));
  }
  return report;
}

SampledReport SmpClient(std::span<const ValueIndex> tuple,
                        const MultidimConfig& config, double epsilon,
                        OracleSelection selection, Rng& rng) {
  CheckTuple(tuple, config);
  const uint32_t j = rng.UniformInt(config.d());
  const uint32_t c = config.domain_sizes[j];
  const OracleKind kind = ResolveOracle(selection, epsilon, c);
  return {j, PerturbOne(tuple[j], kind, epsilon, c, rng)};
}

double SmpVariance(double epsilon, uint32_t d, uint32_t c, OracleKind kind,
                   uint64_t n, uint32_t r) {
  if (r < 1 || r > d) throw InvalidParameterError("SmpVariance needs 1 <= r <= d");
  if (n == 0) throw InvalidParameterError("SmpVariance needs n >= 1");
  // Var* of the oracle at eps/r with n r / d users per attribute.
  const OneRoundParams params = OracleParams(kind, epsilon / r, c);
  const double users = static_cast<double>(n) * r / d;
  const double gap = params.p - params.q;
  return params.q * (1.0 - params.q) / (users * gap * gap);
}

uint32_t SmpOptimalR(double epsilon, uint32_t d, uint32_t c, OracleKind kind) {
  uint32_t best_r = 1;
  double best = SmpVariance(epsilon, d, c, kind, 1, 1);
  for (uint32_t r = 2; r <= d; ++r) {
    const double var = SmpVariance(epsilon, d, c, kind, 1, r);
    if (var < best) {
      best = var;
      best_r = r;
    }
  }
  return best_r;
}

const char* RsfdVariantName(RsfdVariant variant) {
  switch (variant) {
    case RsfdVariant::kGrr:
      return "RS+FD[GRR]";
    case RsfdVariant::kOuez:
      return "RS+FD[OUE-z]";
    case RsfdVariant::kOuer:
      return "RS+FD[OUE-r]";
    case RsfdVariant::kAdp:
      return "RS+FD[ADP]";
  }
  return "?";
}

TupleReport RsfdGrrClient(std::span<const ValueIndex> tuple,
                          const MultidimConfig& config, double epsilon,
                          Rng& rng) {
  CheckTuple(tuple, config);
  const uint32_t d = config.d();
  const double eps_amp = Amplify(epsilon, d);
  const uint32_t sampled = rng.UniformInt(d);
  TupleReport report;
  report.items.reserve(d);
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t c = config.domain_sizes[j];
    if (j == sampled) {
      report.items.push_back(
          GrrPerturb(tuple[j], GrrParams(eps_amp, c), rng));
    } else {
      report.items.push_back(ValueIndex{rng.UniformInt(c)});
    }
  }
  return report;
}

namespace {

TupleReport RsfdOueClient(std::span<const ValueIndex> tuple,
                          const MultidimConfig& config, double epsilon,
                          bool random_fakes, Rng& rng) {
  CheckTuple(tuple, config);
  const uint32_t d = config.d();
  const double eps_amp = Amplify(epsilon, d);
  const OneRoundParams oue = OueParams(eps_amp);
  const uint32_t sampled = rng.UniformInt(d);
  TupleReport report;
  report.items.reserve(d);
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t c = config.domain_sizes[j];
    UnaryVector encoded;
    if (j == sampled) {
      encoded = UeEncode(tuple[j], c);
    } else if (random_fakes) {
      encoded = UeEncode(rng.UniformInt(c), c);
    } else {
      encoded.bits.assign(c, 0);
    }
    report.items.push_back(UePerturb(encoded, oue.p, oue.q, rng));
  }
  return report;
}

}  // namespace

TupleReport RsfdOuezClient(std::span<const ValueIndex> tuple,
                           const MultidimConfig& config, double epsilon,
                           Rng& rng) {
  return RsfdOueClient(tuple, config, epsilon, /*random_fakes=*/false, rng);
}

TupleReport RsfdOuerClient(std::span<const ValueIndex> tuple,
                           const MultidimConfig& config, double epsilon,
                           Rng& rng) {
  return RsfdOueClient(tuple, config, epsilon, /*random_fakes=*/true, rng);
}

TupleReport RsfdAdpClient(std::span<const ValueIndex> tuple,
                          const MultidimConfig& config, double epsilon,
                          Rng& rng) {
  CheckTuple(tuple, config);
  const uint32_t d = config.d();
  const double eps_amp = Amplify(epsilon, d);
  const OneRoundParams oue = OueParams(eps_amp);
  const uint32_t sampled = rng.UniformInt(d);
  TupleReport report;
  report.items.reserve(d);
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t c = config.domain_sizes[j];
    const RsfdVariant variant = RsfdAdpChoose(d, c, eps_amp, 1);
    if (variant == RsfdVariant::kGrr) {
      if (j == sampled) {
        report.items.push_back(
            GrrPerturb(tuple[j], GrrParams(eps_amp, c), rng));
      } else {
        report.items.push_back(ValueIndex{rng.UniformInt(c)});
      }
    } else {
      UnaryVector encoded;
      if (j == sampled) {
        encoded = UeEncode(tuple[j], c);
      } else {
        encoded.bits.assign(c, 0);
      }
      report.items.push_back(UePerturb(encoded, oue.p, oue.q, rng));
    }
  }
  return report;
}

FrequencyEstimate RsfdEstimate(std::span<const uint64_t> counts, uint64_t n,
                               uint32_t d, uint32_t c_j, double epsilon,
                               RsfdVariant variant) {
  if (n == 0) throw InvalidParameterError("RsfdEstimate needs n >= 1");
  if (d == 0) throw InvalidParameterError("RsfdEstimate needs d >= 1");
  if (variant == RsfdVariant::kAdp) {
    variant = RsfdAdpChoose(d, c_j, Amplify(epsilon, d), n);
  }
  const double eps_amp = Amplify(epsilon, d);
  const OneRoundParams params = variant == RsfdVariant::kGrr
                                    ? GrrParams(eps_amp, c_j)
                                    : OueParams(eps_amp);
  const double p = params.p;
  const double q = params.q;
  if (p == q) throw InvalidParameterError("degenerate parameters p = q");
  const double dn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double dc = static_cast<double>(c_j);
  FrequencyEstimate est;
  est.n = n;
  est.analytic_var = RsfdVariance(d, c_j, epsilon, variant, n, 0.0);
  est.freqs.reserve(counts.size());
  for (uint64_t count : counts) {
    const double ni = static_cast<double>(count);
    double f = 0.0;
    switch (variant) {
      case RsfdVariant::kGrr:
        f = (ni * dd * dc - dn * (dd - 1.0 + q * dc)) / (dn * dc * (p - q));
        break;
      case RsfdVariant::kOuez:
        f = dd * (ni - dn * q) / (dn * (p - q));
        break;
      case RsfdVariant::kOuer:
        f = (ni * dd * dc -
             dn * (q * dc + (p - q) * (dd - 1.0) + q * dc * (dd - 1.0))) /
            (dn * dc * (p - q));
        break;
      case RsfdVariant::kAdp:
        break;
    }
    est.freqs.push_back(f);
  }
  return est;
}

double RsfdVariance(uint32_t d, uint32_t c_j, double epsilon,
                    RsfdVariant variant, uint64_t n, double f) {
  if (n == 0) throw InvalidParameterError("RsfdVariance needs n >= 1");
  if (variant == RsfdVariant::kAdp) {
    variant = RsfdAdpChoose(d, c_j, Amplify(epsilon, d), n);
  }
  const double eps_amp = Amplify(epsilon, d);
  const OneRoundParams params = variant == RsfdVariant::kGrr
                                    ? GrrParams(eps_amp, c_j)
                                    : OueParams(eps_amp);
  const double p = params.p;
  const double q = params.q;
  const double dd = static_cast<double>(d);
  const double dc = static_cast<double>(c_j);
  double gamma = 0.0;
  switch (variant) {
    case RsfdVariant::kGrr:
      gamma = (q + f * (p - q) + (dd - 1.0) / dc) / dd;
      break;
    case RsfdVariant::kOuez:
      gamma = (dd * q + f * (p - q)) / dd;
      break;
    case RsfdVariant::kOuer:
      gamma = (q + f * (p - q) + (dd - 1.0) / dc * (p + (dc - 1.0) * q)) / dd;
      break;
    case RsfdVariant::kAdp:
      break;
  }
  const double gap = p - q;
  return dd * dd * gamma * (1.0 - gamma) /
         (static_cast<double>(n) * gap * gap);
}

RsfdVariant RsfdAdpChoose(uint32_t d, uint32_t c_j, double eps_prime,
                          uint64_t n) {
  const OneRoundParams grr = GrrParams(eps_prime, c_j);
  const OneRoundParams oue = OueParams(eps_prime);
  const double dd = static_cast<double>(d);
  const double gamma1 = (grr.q + (dd - 1.0) / c_j) / dd;
  const double gamma2 = oue.q;
  const double gap1 = grr.p - grr.q;
  const double gap2 = oue.p - oue.q;
  const double dn = static_cast<double>(n);
  const double var1 = dd * dd * gamma1 * (1.0 - gamma1) / (dn * gap1 * gap1);
  const double var2 = dd * dd * gamma2 * (1.0 - gamma2) / (dn * gap2 * gap2);
  return var1 <= var2 ? RsfdVariant::kGrr : RsfdVariant::kOuez;
}

}  // namespace ldplab
