#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ldplab/dataset.h"
#include "ldplab/error.h"
#include "ldplab/experiment.h"
#include "ldplab/random.h"

using namespace ldplab;

namespace {

ExperimentSpec SmallSpec(const std::string& strategy) {
  ExperimentSpec spec;
  spec.strategy = ParseStrategy(strategy);
  spec.eps_grid = {0.7, 1.4, 2.8};
  spec.runs = 4;
  spec.base_seed = 777;
  return spec;
}

}  // namespace

TEST_CASE("serial and parallel runners are byte-identical") {
  const Dataset dataset = SynthUniform(3000, 3, {2, 5, 9}, 11);
  for (const char* strategy :
       {"Smp[ADP]", "Spl[GRR]", "RSFD-ADP", "ALLOMFREE", "L-OSUE"}) {
    ExperimentSpec spec = SmallSpec(strategy);
    spec.strategy.eps1_fraction = 0.5;
    const std::string serial = ResultCsv(RunExperimentSerial(dataset, spec));
    const std::string parallel =
        ResultCsv(RunExperimentParallel(dataset, spec));
    CHECK(serial == parallel);
    // Re-running produces the identical bytes again.
    CHECK(ResultCsv(RunExperimentSerial(dataset, spec)) == serial);
  }
}

TEST_CASE("result csv schema and derived seeds") {
  const Dataset dataset = SynthUniform(1000, 2, {3, 3}, 5);
  const ExperimentSpec spec = SmallSpec("Smp[GRR]");
  const ExperimentResult result = RunExperimentSerial(dataset, spec);

  REQUIRE(result.rows.size() == spec.eps_grid.size() * spec.runs);
  const std::string csv = ResultCsv(result);
  std::stringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "strategy,epsilon,run,mse,seed");

  size_t index = 0;
  for (size_t e = 0; e < spec.eps_grid.size(); ++e) {
    for (uint32_t run = 0; run < spec.runs; ++run, ++index) {
      const ResultRow& row = result.rows[index];
      CHECK(row.strategy == "Smp[GRR]");
      CHECK(row.epsilon == spec.eps_grid[e]);
      CHECK(row.run == run);
      CHECK(row.seed == DeriveSeed(spec.base_seed, e, run));
      CHECK(std::isfinite(row.mse));
    }
  }
  CHECK(result.summaries.size() == spec.eps_grid.size());
  for (const auto& summary : result.summaries) {
    CHECK(summary.runs == spec.runs);
    CHECK(summary.mse_mean > 0.0);
  }
}

TEST_CASE("single cells are reproducible from their row seed") {
  const Dataset dataset = SynthUniform(2000, 2, {4, 6}, 21);
  const auto truth = dataset.TrueFrequencies();
  const ExperimentSpec spec = SmallSpec("RSFD-GRR");
  const ExperimentResult result = RunExperimentSerial(dataset, spec);
  for (const ResultRow& row : result.rows) {
    const double mse =
        SimulateOnce(dataset, truth, spec.strategy, row.epsilon, row.seed);
    CHECK(mse == row.mse);
  }
}

TEST_CASE("infeasible longitudinal grid points are reported, not fatal") {
  const Dataset dataset = SynthUniform(500, 2, {4, 4}, 3);
  ExperimentSpec spec = SmallSpec("L-SOUE");
  spec.strategy.eps1_fraction = 0.7;  // beyond the p2 = 1/2 feasible range
  spec.eps_grid = {0.5, 1.0};
  const ExperimentResult result = RunExperimentSerial(dataset, spec);
  CHECK(result.rows.empty());
  CHECK(result.infeasible.size() == 2);

  // Mixed grids keep their feasible points.
  spec.strategy.eps1_fraction = 0.6;
  const ExperimentResult feasible = RunExperimentSerial(dataset, spec);
  CHECK(feasible.rows.size() == spec.eps_grid.size() * spec.runs);
  CHECK(feasible.infeasible.empty());

  // Parallel runner reports the identical failures.
  spec.strategy.eps1_fraction = 0.7;
  const ExperimentResult parallel = RunExperimentParallel(dataset, spec);
  CHECK(parallel.rows.empty());
  CHECK(parallel.infeasible.size() == 2);
}

TEST_CASE("high-epsilon Smp[GRR] error is sampling-dominated") {
  // At eps = 50 the GRR channel is effectively the identity, so the MSE is
  // bounded by the attribute-sampling noise alone: d (c-1) / (n c^2) per
  // value under a uniform truth.
  const uint64_t n = 50000;
  const uint32_t d = 3;
  const uint32_t c = 4;
  const Dataset dataset = SynthUniform(n, d, {c, c, c}, 17);
  const auto truth = dataset.TrueFrequencies();
  StrategyDescriptor strategy = ParseStrategy("Smp[GRR]");
  const double mse = SimulateOnce(dataset, truth, strategy, 50.0, 29);
  const double sampling_bound =
      static_cast<double>(d) * (c - 1.0) / (n * static_cast<double>(c) * c);
  CHECK(mse < 10.0 * sampling_bound);
}

TEST_CASE("spec validation") {
  ExperimentSpec spec = SmallSpec("Smp[ADP]");
  spec.runs = 0;
  CHECK_THROWS_AS(spec.Validate(), InvalidParameterError);
  spec = SmallSpec("Smp[ADP]");
  spec.eps_grid.clear();
  CHECK_THROWS_AS(spec.Validate(), InvalidParameterError);
  spec = SmallSpec("L-OSUE");
  spec.strategy.eps1_fraction = 1.2;
  CHECK_THROWS_AS(spec.Validate(), InvalidParameterError);
  spec = SmallSpec("Smp[ADP]");
  spec.eps_grid = {-1.0};
  CHECK_THROWS_AS(spec.Validate(), InvalidParameterError);
}
