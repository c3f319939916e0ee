#include "ldplab/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "ldplab/error.h"
#include "ldplab/version.h"

namespace ldplab {

namespace {

bool IsLongitudinalStrategy(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kLGrr:
    case StrategyKind::kLSue:
    case StrategyKind::kLOue:
    case StrategyKind::kLOsue:
    case StrategyKind::kLSoue:
    case StrategyKind::kAllomfree:
      return true;
    default:
      return false;
  }
}

LongitudinalKind StrategyLongitudinalKind(StrategyKind kind, uint32_t c,
                                          double eps_inf, double eps_1) {
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
    case StrategyKind::kAllomfree:
      return AllomfreeChoose(c, eps_inf, eps_1);
    default:
      throw InvalidParameterError("not a longitudinal strategy");
  }
}

// Solved per-attribute two-round parameters for a longitudinal grid point.
// Throws InfeasibleBudgetError when the grid point cannot be realized.
std::vector<TwoRoundParams> SolveLongitudinalParams(
    const StrategyDescriptor& strategy, const MultidimConfig& config,
    double epsilon) {
  const double eps_1 = strategy.eps1_fraction * epsilon;
  std::vector<TwoRoundParams> params;
  params.reserve(config.d());
  for (uint32_t c : config.domain_sizes) {
    const LongitudinalKind kind =
        StrategyLongitudinalKind(strategy.kind, c, epsilon, eps_1);
    TwoRoundParams solved = kind == LongitudinalKind::kLGrr
                                ? LgrrParams(epsilon, eps_1, c)
                                : LueParams(epsilon, eps_1, kind);
    solved.domain_size = c;
    params.push_back(solved);
  }
  return params;
}

std::string FormatDouble(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

}  // namespace

void ExperimentSpec::Validate() const {
  if (runs == 0) throw InvalidParameterError("runs must be >= 1");
  if (eps_grid.empty()) throw InvalidParameterError("epsilon grid is empty");
  for (double eps : eps_grid) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw InvalidParameterError("epsilon grid values must be positive");
    }
  }
  if (IsLongitudinalStrategy(strategy.kind) &&
      !(strategy.eps1_fraction > 0.0 && strategy.eps1_fraction < 1.0)) {
    throw InvalidParameterError("eps1 fraction must lie in (0, 1)");
  }
}

double SimulateOnce(const Dataset& dataset,
                    const std::vector<std::vector<double>>& truth,
                    const StrategyDescriptor& strategy, double epsilon,
                    uint64_t seed) {
  const MultidimConfig config = dataset.Config();
  const uint32_t d = config.d();
  HistogramAccumulator acc(config, ExpectedPayloads(strategy, config, epsilon));
  Rng rng(seed);

  std::vector<TwoRoundParams> long_params;
  if (IsLongitudinalStrategy(strategy.kind)) {
    long_params = SolveLongitudinalParams(strategy, config, epsilon);
  }

  for (const auto& row : dataset.rows) {
    const std::span<const ValueIndex> tuple{row};
    switch (strategy.kind) {
      case StrategyKind::kSpl:
        acc.Accumulate(
            SplClient(tuple, config, epsilon, strategy.oracle, rng));
        break;
      case StrategyKind::kSmp:
        acc.Accumulate(
            SmpClient(tuple, config, epsilon, strategy.oracle, rng));
        break;
      case StrategyKind::kRsfdGrr:
        acc.Accumulate(RsfdGrrClient(tuple, config, epsilon, rng));
        break;
      case StrategyKind::kRsfdOuez:
        acc.Accumulate(RsfdOuezClient(tuple, config, epsilon, rng));
        break;
      case StrategyKind::kRsfdOuer:
        acc.Accumulate(RsfdOuerClient(tuple, config, epsilon, rng));
        break;
      case StrategyKind::kRsfdAdp:
        acc.Accumulate(RsfdAdpClient(tuple, config, epsilon, rng));
        break;
      default: {
        // Smp-style longitudinal client, one collection (tau = 1): the
        // sampled attribute is fixed per user, the memoized first round
        // feeds the single second-round report.
        const uint32_t j = rng.UniformInt(d);
        const ItemReport memo = Memoize(row[j], long_params[j], rng);
        acc.Accumulate(SampledReport{
            j, LongitudinalReport(memo, long_params[j], rng)});
        break;
      }
    }
  }

  const std::vector<FrequencyEstimate> estimates =
      EstimateAll(acc, strategy, config, epsilon);
  std::vector<std::vector<double>> est_freqs;
  est_freqs.reserve(estimates.size());
  for (const auto& est : estimates) est_freqs.push_back(est.freqs);
  return MseAvg(truth, est_freqs);
}

namespace {

struct GridPrecheck {
  std::vector<uint8_t> feasible;
  std::vector<GridPointFailure> failures;
};

GridPrecheck PrecheckGrid(const Dataset& dataset, const ExperimentSpec& spec) {
  GridPrecheck precheck;
  precheck.feasible.assign(spec.eps_grid.size(), 1);
  if (!IsLongitudinalStrategy(spec.strategy.kind)) return precheck;
  for (size_t e = 0; e < spec.eps_grid.size(); ++e) {
    try {
      SolveLongitudinalParams(spec.strategy, dataset.Config(),
                              spec.eps_grid[e]);
    } catch (const InfeasibleBudgetError& error) {
      precheck.feasible[e] = 0;
      precheck.failures.push_back({spec.eps_grid[e], error.what()});
    }
  }
  return precheck;
}

void Summarize(ExperimentResult& result, const ExperimentSpec& spec,
               const std::vector<uint8_t>& feasible) {
  for (size_t e = 0; e < spec.eps_grid.size(); ++e) {
    if (!feasible[e]) continue;
    double sum = 0.0;
    double sum_sq = 0.0;
    uint32_t count = 0;
    for (const auto& row : result.rows) {
      if (row.epsilon == spec.eps_grid[e]) {
        sum += row.mse;
        sum_sq += row.mse * row.mse;
        ++count;
      }
    }
    if (count == 0) continue;
    const double mean = sum / count;
    const double variance =
        count > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1))
                  : 0.0;
    result.summaries.push_back(
        {spec.eps_grid[e], count, mean, std::sqrt(variance)});
  }
}

}  // namespace

ExperimentResult RunExperimentSerial(const Dataset& dataset,
                                     const ExperimentSpec& spec) {
  spec.Validate();
  const auto truth = dataset.TrueFrequencies();
  const GridPrecheck precheck = PrecheckGrid(dataset, spec);
  ExperimentResult result;
  result.infeasible = precheck.failures;
  const std::string name = spec.strategy.Name();
  for (size_t e = 0; e < spec.eps_grid.size(); ++e) {
    if (!precheck.feasible[e]) continue;
    for (uint32_t run = 0; run < spec.runs; ++run) {
      const uint64_t seed = DeriveSeed(spec.base_seed, e, run);
      result.rows.push_back({name, spec.eps_grid[e], run,
                             SimulateOnce(dataset, truth, spec.strategy,
                                          spec.eps_grid[e], seed),
                             seed});
    }
  }
  Summarize(result, spec, precheck.feasible);
  return result;
}

ExperimentResult RunExperimentParallel(const Dataset& dataset,
                                       const ExperimentSpec& spec) {
  spec.Validate();
  const auto truth = dataset.TrueFrequencies();
  const GridPrecheck precheck = PrecheckGrid(dataset, spec);
  ExperimentResult result;
  result.infeasible = precheck.failures;
  const std::string name = spec.strategy.Name();

  // Flatten the feasible (epsilon, run) cells so every cell lands in a fixed
  // row slot; the schedule then cannot affect the output.
  struct Cell {
    size_t eps_index;
    uint32_t run;
  };
  std::vector<Cell> cells;
  for (size_t e = 0; e < spec.eps_grid.size(); ++e) {
    if (!precheck.feasible[e]) continue;
    for (uint32_t run = 0; run < spec.runs; ++run) cells.push_back({e, run});
  }
  result.rows.resize(cells.size());

  std::string first_error;
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(cells.size()); ++i) {
    const Cell cell = cells[i];
    const double eps = spec.eps_grid[cell.eps_index];
    const uint64_t seed = DeriveSeed(spec.base_seed, cell.eps_index, cell.run);
    try {
      result.rows[i] = {name, eps, cell.run,
                        SimulateOnce(dataset, truth, spec.strategy, eps, seed),
                        seed};
    } catch (const std::exception& error) {
#pragma omp critical
      if (first_error.empty()) first_error = error.what();
    }
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);
  Summarize(result, spec, precheck.feasible);
  return result;
}

ExperimentResult RunExperiment(const Dataset& dataset,
                               const ExperimentSpec& spec, bool parallel) {
  return parallel ? RunExperimentParallel(dataset, spec)
                  : RunExperimentSerial(dataset, spec);
}

std::string ResultCsv(const ExperimentResult& result) {
  std::string csv = "strategy,epsilon,run,mse,seed\n";
  for (const auto& row : result.rows) {
    csv += row.strategy;
    csv += ',';
    csv += FormatDouble(row.epsilon);
    csv += ',';
    csv += std::to_string(row.run);
    csv += ',';
    csv += FormatDouble(row.mse);
    csv += ',';
    csv += std::to_string(row.seed);
    csv += '\n';
  }
  return csv;
}

void WriteResultCsv(const ExperimentResult& result, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw LoadError("cannot write " + path);
  file << ResultCsv(result);
}

void WriteManifestJson(const ExperimentResult& result,
                       const ExperimentSpec& spec, const Dataset& dataset,
                       const std::string& path) {
  nlohmann::json manifest;
  manifest["library"] = {{"name", kLibraryName}, {"version", kVersion}};
  manifest["spec"] = {{"strategy", spec.strategy.Name()},
                      {"eps_grid", spec.eps_grid},
                      {"eps1_fraction", spec.strategy.eps1_fraction},
                      {"runs", spec.runs},
                      {"seed", spec.base_seed}};
  manifest["dataset"] = {{"n", dataset.n()},
                         {"d", dataset.d()},
                         {"domain_sizes", dataset.domain_sizes}};
  for (const auto& summary : result.summaries) {
    manifest["summaries"].push_back({{"epsilon", summary.epsilon},
                                     {"runs", summary.runs},
                                     {"mse_mean", summary.mse_mean},
                                     {"mse_std", summary.mse_std}});
  }
  for (const auto& failure : result.infeasible) {
    manifest["infeasible"].push_back(
        {{"epsilon", failure.epsilon}, {"message", failure.message}});
  }
  std::ofstream file(path);
  if (!file) throw LoadError("cannot write " + path);
  file << manifest.dump(2) << "\n";
}

}  // namespace ldplab
