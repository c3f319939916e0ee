#ifndef LDPLAB_DATASET_H_
#define LDPLAB_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ldplab/multidim.h"
#include "ldplab/report.h"

namespace ldplab {

// Categorical dataset: rows of value indices, one column per attribute.
// Loaded from CSV (strings mapped to indices in first-appearance order) or
// synthesized.
struct Dataset {
  std::vector<std::string> attribute_names;
  std::vector<uint32_t> domain_sizes;
  // Per attribute, label of each value index; empty for synthetic data.
  std::vector<std::vector<std::string>> value_labels;
  std::vector<std::vector<ValueIndex>> rows;

  uint64_t n() const { return rows.size(); }
  uint32_t d() const { return static_cast<uint32_t>(domain_sizes.size()); }
  MultidimConfig Config() const { return MultidimConfig{domain_sizes}; }

  // Per-attribute empirical frequencies of the raw data.
  std::vector<std::vector<double>> TrueFrequencies() const;
};

// First row is the header. Missing cells, ragged rows, or an empty file are
// LoadErrors naming the row.
Dataset LoadCsv(const std::string& path);

// Writes the dataset back out with its value labels (synthetic datasets get
// their numeric indices), so LoadCsv round-trips.
void WriteCsv(const Dataset& dataset, const std::string& path);

// Sidecar mapping: per attribute, the label of every value index.
void WriteMappingJson(const Dataset& dataset, const std::string& path);

// i.i.d. uniform rows, deterministic in the seed.
Dataset SynthUniform(uint64_t n, uint32_t d,
                     const std::vector<uint32_t>& domain_sizes, uint64_t seed);

}  // namespace ldplab

#endif  // LDPLAB_DATASET_H_
