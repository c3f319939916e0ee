#include "ldplab/variance_table.h"

#include <cstdio>
#include <fstream>

#include "ldplab/error.h"
#include "ldplab/longitudinal.h"
#include "ldplab/oracles.h"

namespace ldplab {

namespace {

constexpr double kEpsGrid[] = {0.5, 1.0, 2.0, 4.0};
constexpr double kEps1Fractions[] = {0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
constexpr uint32_t kGrrDomains[] = {2, 32, 1024};

constexpr LongitudinalKind kUeKinds[] = {
    LongitudinalKind::kLOsue,
    LongitudinalKind::kLSue,
    LongitudinalKind::kLSoue,
    LongitudinalKind::kLOue,
};

}  // namespace

std::vector<VarianceCell> OneShotVarianceTable(uint64_t n) {
  std::vector<VarianceCell> cells;
  for (double eps : kEpsGrid) {
    for (uint32_t c : kGrrDomains) {
      cells.push_back({"one-shot", eps, 0.0, "GRR", c,
                       VarianceApprox(GrrParams(eps, c), n), true, ""});
    }
    cells.push_back({"one-shot", eps, 0.0, "OUE", 0,
                     VarianceApprox(OueParams(eps), n), true, ""});
    cells.push_back({"one-shot", eps, 0.0, "SUE", 0,
                     VarianceApprox(SueParams(eps), n), true, ""});
  }
  return cells;
}

std::vector<VarianceCell> LongitudinalVarianceTable(uint64_t n) {
  std::vector<VarianceCell> cells;
  for (double fraction : kEps1Fractions) {
    for (double eps_inf : kEpsGrid) {
      const double eps_1 = fraction * eps_inf;
      for (uint32_t c : kGrrDomains) {
        VarianceCell cell{"longitudinal", eps_inf, eps_1,
                          "L-GRR",        c,       0.0,   true, ""};
        try {
          cell.variance =
              LongitudinalVarianceApprox(LgrrParams(eps_inf, eps_1, c), n);
        } catch (const InfeasibleBudgetError& error) {
          cell.feasible = false;
          cell.note = error.what();
        }
        cells.push_back(cell);
      }
      for (LongitudinalKind kind : kUeKinds) {
        VarianceCell cell{
            "longitudinal", eps_inf, eps_1, LongitudinalKindName(kind),
            0,              0.0,     true,  ""};
        try {
          cell.variance =
              LongitudinalVarianceApprox(LueParams(eps_inf, eps_1, kind), n);
        } catch (const InfeasibleBudgetError& error) {
          cell.feasible = false;
          cell.note = error.what();
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

std::string VarianceTableCsv(uint64_t n) {
  std::string csv = "table,eps_inf,eps1,protocol,c,variance,feasible,note\n";
  char buffer[128];
  auto append = [&](const VarianceCell& cell) {
    std::snprintf(buffer, sizeof(buffer), "%s,%.6g,%.6g,%s,%u,",
                  cell.table.c_str(), cell.eps_inf, cell.eps1,
                  cell.protocol.c_str(), cell.c);
    csv += buffer;
    if (cell.feasible) {
      std::snprintf(buffer, sizeof(buffer), "%.12g", cell.variance);
      csv += buffer;
    }
    csv += ',';
    csv += cell.feasible ? "true" : "false";
    csv += ',';
    csv += cell.note;
    csv += '\n';
  };
  for (const auto& cell : OneShotVarianceTable(n)) append(cell);
  for (const auto& cell : LongitudinalVarianceTable(n)) append(cell);
  return csv;
}

void WriteVarianceTableCsv(const std::string& path, uint64_t n) {
  std::ofstream file(path);
  if (!file) throw LoadError("cannot write " + path);
  file << VarianceTableCsv(n);
}

}  // namespace ldplab
