// ldp-lab: experiment CLI for LDP frequency-estimation protocols.
//
// Subcommands: simulate, variance-table, geo-sanitize, params.
// Exit codes: 0 success, 2 invalid spec, 3 load error, 4 infeasible budget
// (params only).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldplab/aggregator.h"
#include "ldplab/dataset.h"
#include "ldplab/error.h"
#include "ldplab/experiment.h"
#include "ldplab/longitudinal.h"
#include "ldplab/noise.h"
#include "ldplab/variance_table.h"
#include "ldplab/version.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidSpec = 2;
constexpr int kExitLoadError = 3;
constexpr int kExitInfeasible = 4;

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      grid.push_back(std::stod(token));
    } catch (const std::exception&) {
      throw ldplab::InvalidParameterError("bad epsilon grid entry: " + token);
    }
  }
  return grid;
}

bool IsLongitudinalName(ldplab::StrategyKind kind) {
  using ldplab::StrategyKind;
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

std::vector<double> DefaultGrid(ldplab::StrategyKind kind) {
  std::vector<double> grid;
  if (IsLongitudinalName(kind)) {
    for (double eps = 0.5; eps <= 4.0 + 1e-9; eps += 0.5) grid.push_back(eps);
  } else {
    for (int k = 2; k <= 7; ++k) grid.push_back(std::log(k));
  }
  return grid;
}

ldplab::Dataset BuildDataset(const std::string& data_path,
                             const std::string& synth_spec, uint64_t seed) {
  if (!data_path.empty()) return ldplab::LoadCsv(data_path);
  std::vector<uint64_t> numbers;
  std::stringstream stream(synth_spec);
  std::string token;
  while (std::getline(stream, token, ',')) numbers.push_back(std::stoull(token));
  if (numbers.size() < 3) {
    throw ldplab::InvalidParameterError(
        "--synth needs n,d,c[,c2,...] (one c replicated, or one per attribute)");
  }
  const uint64_t n = numbers[0];
  const uint32_t d = static_cast<uint32_t>(numbers[1]);
  std::vector<uint32_t> domains;
  if (numbers.size() == 3) {
    domains.assign(d, static_cast<uint32_t>(numbers[2]));
  } else if (numbers.size() == 2 + d) {
    for (size_t i = 2; i < numbers.size(); ++i) {
      domains.push_back(static_cast<uint32_t>(numbers[i]));
    }
  } else {
    throw ldplab::InvalidParameterError(
        "--synth domain list must have 1 or d entries");
  }
  return ldplab::SynthUniform(n, d, domains, seed);
}

int RunSimulate(const std::string& data_path, const std::string& synth_spec,
                const std::string& strategy_name, const std::string& grid_text,
                double eps1_frac, uint32_t runs, uint64_t seed,
                const std::string& out, bool serial) {
  ldplab::ExperimentSpec spec;
  spec.strategy = ldplab::ParseStrategy(strategy_name);
  spec.strategy.eps1_fraction = eps1_frac;
  spec.eps_grid =
      grid_text.empty() ? DefaultGrid(spec.strategy.kind) : ParseGrid(grid_text);
  spec.runs = runs;
  spec.base_seed = seed;

  const ldplab::Dataset dataset = BuildDataset(data_path, synth_spec, seed);
  const ldplab::ExperimentResult result =
      ldplab::RunExperiment(dataset, spec, !serial);

  ldplab::WriteResultCsv(result, out);
  ldplab::WriteManifestJson(result, spec, dataset, out + ".manifest.json");
  if (!data_path.empty()) {
    ldplab::WriteMappingJson(dataset, out + ".mapping.json");
  }
  for (const auto& summary : result.summaries) {
    std::printf("%s eps=%.4f mse_mean=%.6e mse_std=%.6e (%u runs)\n",
                spec.strategy.Name().c_str(), summary.epsilon,
                summary.mse_mean, summary.mse_std, summary.runs);
  }
  for (const auto& failure : result.infeasible) {
    std::printf("%s eps=%.4f infeasible: %s\n", spec.strategy.Name().c_str(),
                failure.epsilon, failure.message.c_str());
  }
  return kExitOk;
}

int RunGeoSanitize(const std::string& in, const std::string& out, double l,
                   double r, uint64_t seed) {
  std::ifstream input(in);
  if (!input) throw ldplab::LoadError("cannot open " + in);
  std::ofstream output(out);
  if (!output) throw ldplab::LoadError("cannot write " + out);
  const ldplab::GeoBudget budget = ldplab::GeoBudget::FromLevelRadius(l, r);
  ldplab::Rng rng(seed);
  std::string line;
  if (!std::getline(input, line)) throw ldplab::LoadError(in + ": empty file");
  output << line << "\n";
  size_t line_number = 1;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream stream(line);
    std::string x_text;
    std::string y_text;
    if (!std::getline(stream, x_text, ',') || !std::getline(stream, y_text, ',')) {
      throw ldplab::LoadError(in + ": row " + std::to_string(line_number) +
                              " needs two coordinate columns");
    }
    ldplab::PlanarPoint point{};
    try {
      point.x = std::stod(x_text);
      point.y = std::stod(y_text);
    } catch (const std::exception&) {
      throw ldplab::LoadError(in + ": row " + std::to_string(line_number) +
                              ": non-numeric coordinates");
    }
    const ldplab::PlanarPoint sanitized =
        ldplab::PlanarLaplace(point, budget, rng);
    char buffer[80];
    std::snprintf(buffer, sizeof(buffer), "%.12g,%.12g", sanitized.x,
                  sanitized.y);
    output << buffer;
    std::string rest;
    if (std::getline(stream, rest)) output << "," << rest;
    output << "\n";
  }
  return kExitOk;
}

int RunParams(const std::string& protocol, double eps, double eps_inf,
              double eps1, uint32_t c) {
  using ldplab::LongitudinalKind;
  const uint64_t n = 10000;
  if (protocol == "GRR" || protocol == "SUE" || protocol == "OUE" ||
      protocol == "ADP") {
    if (!(eps > 0)) {
      throw ldplab::InvalidParameterError("--eps required for " + protocol);
    }
    std::string name = protocol;
    ldplab::OneRoundParams params{};
    if (protocol == "ADP") {
      const ldplab::OracleKind kind = ldplab::AdpChoose(eps, c);
      name = kind == ldplab::OracleKind::kGrr ? "GRR" : "OUE";
    }
    if (name == "GRR") {
      params = ldplab::GrrParams(eps, c);
    } else if (name == "SUE") {
      params = ldplab::SueParams(eps);
    } else {
      params = ldplab::OueParams(eps);
    }
    std::printf("protocol: %s\n", name.c_str());
    std::printf("epsilon: %.6f\n", eps);
    std::printf("p: %.10f\nq: %.10f\n", params.p, params.q);
    std::printf("var_approx(n=%llu): %.6e\n",
                static_cast<unsigned long long>(n),
                ldplab::VarianceApprox(params, n));
    return kExitOk;
  }
  if (!(eps_inf > 0) || !(eps1 > 0)) {
    throw ldplab::InvalidParameterError(
        "--eps-inf and --eps1 required for longitudinal protocols");
  }
  std::string name = protocol;
  if (protocol == "ALLOMFREE") {
    name = LongitudinalKindName(ldplab::AllomfreeChoose(c, eps_inf, eps1));
  }
  ldplab::TwoRoundParams params{};
  if (name == "L-GRR") {
    params = ldplab::LgrrParams(eps_inf, eps1, c);
  } else if (name == "L-SUE") {
    params = ldplab::LueParams(eps_inf, eps1, LongitudinalKind::kLSue);
  } else if (name == "L-OUE") {
    params = ldplab::LueParams(eps_inf, eps1, LongitudinalKind::kLOue);
  } else if (name == "L-OSUE") {
    params = ldplab::LueParams(eps_inf, eps1, LongitudinalKind::kLOsue);
  } else if (name == "L-SOUE") {
    params = ldplab::LueParams(eps_inf, eps1, LongitudinalKind::kLSoue);
  } else {
    throw ldplab::InvalidParameterError("unknown protocol: " + protocol);
  }
  std::printf("protocol: %s\n", name.c_str());
  std::printf("eps_inf: %.6f\neps_1: %.6f\n", eps_inf, eps1);
  std::printf("p1: %.10f\nq1: %.10f\np2: %.10f\nq2: %.10f\n", params.p1,
              params.q1, params.p2, params.q2);
  std::printf("chain_eps1: %.10f\n", ldplab::ChainEpsilon(params));
  std::printf("var_approx(n=%llu): %.6e\n", static_cast<unsigned long long>(n),
              ldplab::LongitudinalVarianceApprox(params, n));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("ldp-lab ") + ldplab::kVersion +
               " - local differential privacy frequency-estimation lab"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo MSE sweep for one strategy over an eps grid");
  std::string data_path;
  std::string synth_spec;
  std::string strategy_name;
  std::string grid_text;
  double eps1_frac = 0.3;
  uint32_t runs = 100;
  uint64_t seed = 42;
  std::string out_path = "results.csv";
  bool serial = false;
  auto* data_opt =
      simulate->add_option("--data", data_path, "CSV dataset (header row)");
  auto* synth_opt = simulate->add_option(
      "--synth", synth_spec, "synthetic dataset: n,d,c or n,d,c1,...,cd");
  data_opt->excludes(synth_opt);
  simulate->add_option("--strategy", strategy_name,
                       "Spl[GRR|SUE|OUE|ADP] | Smp[...] | RSFD-GRR | "
                       "RSFD-OUEz | RSFD-OUEr | RSFD-ADP | L-GRR | L-SUE | "
                       "L-OUE | L-OSUE | L-SOUE | ALLOMFREE")
      ->required();
  simulate->add_option("--eps-grid", grid_text,
                       "comma-separated epsilons (default: thesis grids)");
  simulate->add_option("--eps1-frac", eps1_frac,
                       "eps_1 as a fraction of eps_inf (longitudinal)");
  simulate->add_option("--runs", runs, "repetitions per grid point");
  simulate->add_option("--seed", seed, "base seed");
  simulate->add_option("--out", out_path, "result CSV path");
  simulate->add_flag("--serial", serial, "run the serial reference path");

  // variance-table
  auto* table = app.add_subcommand(
      "variance-table", "regenerate the analytic variance tables (n=10000)");
  std::string table_out = "variance_table.csv";
  table->add_option("--out", table_out, "output CSV path");

  // geo-sanitize
  auto* geo = app.add_subcommand(
      "geo-sanitize", "planar Laplace perturbation of coordinate CSV rows");
  std::string geo_in;
  std::string geo_out;
  double level = std::log(3.0);
  double radius = 200.0;
  uint64_t geo_seed = 42;
  geo->add_option("--in", geo_in, "input CSV (x,y header + rows)")->required();
  geo->add_option("--out", geo_out, "output CSV")->required();
  geo->add_option("--l", level, "distinguishability level l");
  geo->add_option("--r", radius, "radius r in meters (eps = l/r)");
  geo->add_option("--seed", geo_seed, "seed");

  // params
  auto* params = app.add_subcommand(
      "params", "solve and print protocol parameters for given budgets");
  std::string protocol;
  double p_eps = 0.0;
  double p_eps_inf = 0.0;
  double p_eps1 = 0.0;
  uint32_t p_c = 2;
  params->add_option("--protocol", protocol,
                     "GRR|SUE|OUE|ADP|L-GRR|L-SUE|L-OUE|L-OSUE|L-SOUE|ALLOMFREE")
      ->required();
  params->add_option("--eps", p_eps, "one-shot epsilon");
  params->add_option("--eps-inf", p_eps_inf, "longitudinal upper bound");
  params->add_option("--eps1", p_eps1, "single-report epsilon");
  params->add_option("--c", p_c, "domain size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitInvalidSpec;
  }

  try {
    if (simulate->parsed()) {
      if (data_path.empty() && synth_spec.empty()) {
        throw ldplab::InvalidParameterError("need --data or --synth");
      }
      return RunSimulate(data_path, synth_spec, strategy_name, grid_text,
                         eps1_frac, runs, seed, out_path, serial);
    }
    if (table->parsed()) {
      ldplab::WriteVarianceTableCsv(table_out);
      std::printf("wrote %s\n", table_out.c_str());
      return kExitOk;
    }
    if (geo->parsed()) {
      return RunGeoSanitize(geo_in, geo_out, level, radius, geo_seed);
    }
    if (params->parsed()) {
      return RunParams(protocol, p_eps, p_eps_inf, p_eps1, p_c);
    }
  } catch (const ldplab::InfeasibleBudgetError& error) {
    std::fprintf(stderr, "infeasible budget: %s\n", error.what());
    return kExitInfeasible;
  } catch (const ldplab::LoadError& error) {
    std::fprintf(stderr, "load error: %s\n", error.what());
    return kExitLoadError;
  } catch (const ldplab::InvalidParameterError& error) {
    std::fprintf(stderr, "invalid spec: %s\n", error.what());
    return kExitInvalidSpec;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return kExitInvalidSpec;
  }
  return kExitOk;
}
