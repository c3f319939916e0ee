// Benchmark comparing the serial reference runner against the OpenMP runner
// on the same experiment spec, verifying byte-identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ldplab/dataset.h"
#include "ldplab/experiment.h"

namespace {

double Time(ldplab::ExperimentResult (*runner)(const ldplab::Dataset&,
                                               const ldplab::ExperimentSpec&),
            const ldplab::Dataset& dataset, const ldplab::ExperimentSpec& spec,
            std::string* csv) {
  const auto start = std::chrono::steady_clock::now();
  const ldplab::ExperimentResult result = runner(dataset, spec);
  const auto stop = std::chrono::steady_clock::now();
  *csv = ldplab::ResultCsv(result);
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  uint64_t n = 20000;
  uint32_t runs = 16;
  if (argc > 1) n = std::stoull(argv[1]);
  if (argc > 2) runs = static_cast<uint32_t>(std::stoul(argv[2]));

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both paths run serially\n");
#endif

  const ldplab::Dataset dataset =
      ldplab::SynthUniform(n, 5, {10, 10, 10, 10, 10}, 7);

  const char* strategies[] = {"Smp[ADP]", "Spl[ADP]", "RSFD-ADP", "ALLOMFREE"};
  std::printf("%-12s %10s %10s %8s %s\n", "strategy", "serial(s)", "openmp(s)",
              "speedup", "identical");
  for (const char* name : strategies) {
    ldplab::ExperimentSpec spec;
    spec.strategy = ldplab::ParseStrategy(name);
    spec.strategy.eps1_fraction = 0.5;
    for (int k = 2; k <= 7; ++k) spec.eps_grid.push_back(std::log(k));
    spec.runs = runs;
    spec.base_seed = 99;

    std::string serial_csv;
    std::string parallel_csv;
    const double serial_s =
        Time(ldplab::RunExperimentSerial, dataset, spec, &serial_csv);
    const double parallel_s =
        Time(ldplab::RunExperimentParallel, dataset, spec, &parallel_csv);
    std::printf("%-12s %10.3f %10.3f %8.2fx %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s,
                serial_csv == parallel_csv ? "yes" : "NO");
    if (serial_csv != parallel_csv) return 1;
  }
  return 0;
}
