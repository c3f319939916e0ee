#ifndef LDPLAB_VARIANCE_TABLE_H_
#define LDPLAB_VARIANCE_TABLE_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ldplab {

// One cell of an analytic variance table. Infeasible (kind, eps_inf, eps_1)
// combinations are kept as rows with feasible = false and a note.
struct VarianceCell {
  std::string table;     // "one-shot" or "longitudinal"
  double eps_inf;        // the epsilon for one-shot rows
  double eps1;           // 0 for one-shot rows
  std::string protocol;  // "GRR", "OUE", "SUE", "L-GRR", ...
  uint32_t c;            // domain size where it matters, else 0
  double variance;
  bool feasible = true;
  std::string note;
};

// Approximate variances of GRR (c in {2, 32, 1024}), OUE, and SUE at
// eps in {0.5, 1, 2, 4}, n = 10000.
std::vector<VarianceCell> OneShotVarianceTable(uint64_t n = 10000);

// Approximate variances of L-GRR (c in {2, 32, 1024}), L-OSUE, L-SUE,
// L-SOUE, and L-OUE over eps_inf in {0.5, 1, 2, 4} and
// eps_1 in {0.6, 0.5, 0.4, 0.3, 0.2, 0.1} * eps_inf, n = 10000.
std::vector<VarianceCell> LongitudinalVarianceTable(uint64_t n = 10000);

// Tidy CSV: table,eps_inf,eps1,protocol,c,variance,feasible,note.
std::string VarianceTableCsv(uint64_t n = 10000);
void WriteVarianceTableCsv(const std::string& path, uint64_t n = 10000);

}  // namespace ldplab

#endif  // LDPLAB_VARIANCE_TABLE_H_
