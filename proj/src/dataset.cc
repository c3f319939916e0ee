#include "ldplab/dataset.h"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "ldplab/error.h"
#include "ldplab/random.h"

namespace ldplab {

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<std::vector<double>> Dataset::TrueFrequencies() const {
  std::vector<std::vector<double>> freqs(d());
  for (uint32_t j = 0; j < d(); ++j) freqs[j].assign(domain_sizes[j], 0.0);
  for (const auto& row : rows) {
    for (uint32_t j = 0; j < d(); ++j) freqs[j][row[j]] += 1.0;
  }
  const double dn = n() > 0 ? static_cast<double>(n()) : 1.0;
  for (auto& attr : freqs) {
    for (double& f : attr) f /= dn;
  }
  return freqs;
}

Dataset LoadCsv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw LoadError("cannot open " + path);
  std::string line;
  if (!std::getline(file, line)) throw LoadError(path + ": empty file");
  Dataset dataset;
  for (auto& name : SplitCsvLine(StripCr(line))) {
    dataset.attribute_names.push_back(std::move(name));
  }
  const size_t d = dataset.attribute_names.size();
  if (d == 0) throw LoadError(path + ": empty header");
  std::vector<std::unordered_map<std::string, ValueIndex>> index_of(d);
  dataset.value_labels.resize(d);
  size_t line_number = 1;
  while (std::getline(file, line)) {
    ++line_number;
    line = StripCr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != d) {
      throw LoadError(path + ": row " + std::to_string(line_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(d));
    }
    std::vector<ValueIndex> row(d);
    for (size_t j = 0; j < d; ++j) {
      if (cells[j].empty()) {
        throw LoadError(path + ": row " + std::to_string(line_number) +
                        ": missing cell in column " +
                        dataset.attribute_names[j]);
      }
      auto [it, inserted] = index_of[j].emplace(
          cells[j], static_cast<ValueIndex>(dataset.value_labels[j].size()));
      if (inserted) dataset.value_labels[j].push_back(cells[j]);
      row[j] = it->second;
    }
    dataset.rows.push_back(std::move(row));
  }
  if (dataset.rows.empty()) throw LoadError(path + ": no data rows");
  dataset.domain_sizes.resize(d);
  for (size_t j = 0; j < d; ++j) {
    if (dataset.value_labels[j].size() < 2) {
      throw LoadError(path + ": attribute " + dataset.attribute_names[j] +
                      " has fewer than 2 distinct values");
    }
    dataset.domain_sizes[j] =
        static_cast<uint32_t>(dataset.value_labels[j].size());
  }
  return dataset;
}

void WriteCsv(const Dataset& dataset, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw LoadError("cannot write " + path);
  for (size_t j = 0; j < dataset.attribute_names.size(); ++j) {
    file << (j ? "," : "") << dataset.attribute_names[j];
  }
  file << "\n";
  const bool labeled = !dataset.value_labels.empty();
  for (const auto& row : dataset.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) file << ",";
      if (labeled && !dataset.value_labels[j].empty()) {
        file << dataset.value_labels[j][row[j]];
      } else {
        file << row[j];
      }
    }
    file << "\n";
  }
}

void WriteMappingJson(const Dataset& dataset, const std::string& path) {
  nlohmann::json mapping;
  for (size_t j = 0; j < dataset.attribute_names.size(); ++j) {
    nlohmann::json attr;
    attr["name"] = dataset.attribute_names[j];
    attr["domain_size"] = dataset.domain_sizes[j];
    if (j < dataset.value_labels.size()) {
      attr["values"] = dataset.value_labels[j];
    }
    mapping["attributes"].push_back(attr);
  }
  std::ofstream file(path);
  if (!file) throw LoadError("cannot write " + path);
  file << mapping.dump(2) << "\n";
}

Dataset SynthUniform(uint64_t n, uint32_t d,
                     const std::vector<uint32_t>& domain_sizes,
                     uint64_t seed) {
  if (n == 0 || d == 0 || domain_sizes.size() != d) {
    throw InvalidParameterError(
        "SynthUniform needs n >= 1 and one domain size per attribute");
  }
  for (uint32_t c : domain_sizes) {
    if (c < 2) throw InvalidParameterError("domain sizes must be >= 2");
  }
  Dataset dataset;
  dataset.domain_sizes = domain_sizes;
  dataset.attribute_names.reserve(d);
  for (uint32_t j = 0; j < d; ++j) {
    dataset.attribute_names.push_back("attr" + std::to_string(j));
  }
  dataset.value_labels.resize(d);
  Rng rng(seed);
  dataset.rows.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    std::vector<ValueIndex> row(d);
    for (uint32_t j = 0; j < d; ++j) row[j] = rng.UniformInt(domain_sizes[j]);
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

}  // namespace ldplab
