#pragma once

#include <stdexcept>
#include <string>

namespace snl {

/// Input violates a documented precondition (bad norm, bad class, bad flag).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of budget. Carries the best value seen so far,
/// which is a valid but non-certified bound.
class SearchLimitError : public std::runtime_error {
 public:
  SearchLimitError(const std::string& what, std::string best_so_far = {})
      : std::runtime_error(what), best_so_far_(std::move(best_so_far)) {}
  const std::string& best_so_far() const { return best_so_far_; }

 private:
  std::string best_so_far_;
};

/// The cover window handed to a cycle search cannot certify the result.
class WindowError : public ValidationError {
 public:
  WindowError(const std::string& what, long long required)
      : ValidationError(what), required_(required) {}
  long long required() const { return required_; }

 private:
  long long required_;
};

}  // namespace snl
