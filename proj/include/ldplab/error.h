#ifndef LDPLAB_ERROR_H_
#define LDPLAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace ldplab {

// Invalid argument to a protocol or estimator (bad epsilon, c < 2, ...).
class InvalidParameterError : public std::invalid_argument {
 public:
  explicit InvalidParameterError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A (kind, eps_inf, eps_1) combination that no parameter set can realize.
// Raised instead of clamping so experiments never silently change budgets.
class InfeasibleBudgetError : public std::runtime_error {
 public:
  explicit InfeasibleBudgetError(const std::string& what)
      : std::runtime_error(what) {}
};

// Dataset / CSV ingestion failure; message carries the offending row.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

// Report shape does not match the accumulator's protocol descriptor.
class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldplab

#endif  // LDPLAB_ERROR_H_
