#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace belowz {

/// An enumeration needed more work than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t bound)
      : std::runtime_error(what + " (budget " + std::to_string(bound) + ")"), bound_(bound) {}
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t bound_;
};

/// Malformed or inconsistent input data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well formed but lies outside the supported class.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Enumeration and search bounds shared by every bounded computation.
struct Limits {
  std::uint64_t enumeration_budget = 20'000'000;
  // Degree bound for relation search on affine monoids; 0 picks one from the
  // generator weights.
  std::int64_t markov_degree = 0;
  // Word-length bound for rewriting in finitely presented monoids.
  int word_length = 12;
};

/// Counts units of work against the enumeration budget.
class WorkCounter {
 public:
  WorkCounter(const Limits& limits, std::string what) : budget_(limits.enumeration_budget), what_(std::move(what)) {}
  void tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > budget_) throw BudgetExceeded(what_, budget_);
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t budget_, used_ = 0;
  std::string what_;
};

}  // namespace belowz
