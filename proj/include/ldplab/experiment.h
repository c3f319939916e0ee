#ifndef LDPLAB_EXPERIMENT_H_
#define LDPLAB_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ldplab/aggregator.h"
#include "ldplab/dataset.h"

namespace ldplab {

struct ExperimentSpec {
  StrategyDescriptor strategy;
  std::vector<double> eps_grid;
  uint32_t runs = 100;
  uint64_t base_seed = 42;

  void Validate() const;  // throws InvalidParameterError
};

struct ResultRow {
  std::string strategy;
  double epsilon;
  uint32_t run;
  double mse;
  uint64_t seed;
};

// Per-epsilon aggregate over runs.
struct EpsSummary {
  double epsilon;
  uint32_t runs;
  double mse_mean;
  double mse_std;
};

struct GridPointFailure {
  double epsilon;
  std::string message;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // sorted by (eps index, run)
  std::vector<EpsSummary> summaries;
  std::vector<GridPointFailure> infeasible;
};

// One (epsilon, run) cell: simulate every user's client with a stream seeded
// from `seed`, aggregate, estimate, and return mse_avg against the dataset's
// true frequencies. This is the kernel both runners share.
double SimulateOnce(const Dataset& dataset,
                    const std::vector<std::vector<double>>& truth,
                    const StrategyDescriptor& strategy, double epsilon,
                    uint64_t seed);

// Serial reference runner.
ExperimentResult RunExperimentSerial(const Dataset& dataset,
                                     const ExperimentSpec& spec);

// OpenMP runner over (epsilon, run) pairs; per-pair streams are derived as
// DeriveSeed(base, eps index, run index), so the output is identical to the
// serial runner for any thread count.
ExperimentResult RunExperimentParallel(const Dataset& dataset,
                                       const ExperimentSpec& spec);

ExperimentResult RunExperiment(const Dataset& dataset,
                               const ExperimentSpec& spec, bool parallel);

// CSV with header "strategy,epsilon,run,mse,seed"; byte-stable formatting.
std::string ResultCsv(const ExperimentResult& result);
void WriteResultCsv(const ExperimentResult& result, const std::string& path);

// Sidecar manifest: spec, library version, per-epsilon summaries, infeasible
// grid points.
void WriteManifestJson(const ExperimentResult& result,
                       const ExperimentSpec& spec, const Dataset& dataset,
                       const std::string& path);

}  // namespace ldplab

#endif  // LDPLAB_EXPERIMENT_H_
