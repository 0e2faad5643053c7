#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pythperm {

/// Fixed-width arithmetic would have wrapped.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Caller-supplied parameters violate the documented preconditions of a family.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input exists but is not in the form an operation requires (e.g. an unnormalized triple).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algebraic side condition (such as k*l = r*s/2) does not hold.
class ConstraintError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constructed coefficient is not an integer.
class IntegralityError : public ConstraintError {
 public:
  IntegralityError(std::string entry, const std::string& what)
      : ConstraintError(what), entry_(std::move(entry)) {}

  const std::string& entry() const noexcept { return entry_; }

 private:
  std::string entry_;
};

/// A search would need more work units than the caller allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget, const std::string& what)
      : std::runtime_error(what), required_(required), budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A checkpoint file is unreadable, corrupt, or belongs to a different search.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pythperm
