#ifndef LDPLAB_REPORT_H_
#define LDPLAB_REPORT_H_

#include <cstdint>
#include <variant>
#include <vector>

namespace ldplab {

using ValueIndex = uint32_t;

// Dense unary (one-hot at encode time) bit vector. Perturbed vectors may
// carry any number of set bits. Domains above kMaxUnaryDomain are rejected
// at encode time.
struct UnaryVector {
  std::vector<uint8_t> bits;

  bool operator==(const UnaryVector&) const = default;
};

inline constexpr uint32_t kMaxUnaryDomain = 1u << 20;

// One attribute's sanitized payload: a GRR value index or a unary vector.
using ItemReport = std::variant<ValueIndex, UnaryVector>;

// Smp-style report: the sampled attribute is disclosed.
struct SampledReport {
  uint32_t attribute;
  ItemReport payload;
};

// Spl / RS+FD-style report: one payload per attribute, sampled position not
// identifiable from the structure.
struct TupleReport {
  std::vector<ItemReport> items;
};

using Report = std::variant<ValueIndex, UnaryVector, SampledReport, TupleReport>;

}  // namespace ldplab

#endif  // LDPLAB_REPORT_H_
