#pragma once

// Finite commutative semirings given by explicit operation tables.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace belowz {

class FiniteMonoid;

class FiniteSemiring {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  /// Validates commutativity, associativity, units, distributivity and that
  /// zero is absorbing. Throws InvalidInput otherwise.
  FiniteSemiring(std::string label, std::vector<std::string> names, Table add, Table mul, std::size_t zero,
                 std::size_t one);

  std::size_t size() const { return names_.size(); }
  const std::string& label() const { return label_; }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t add(std::size_t a, std::size_t b) const { return add_[a][b]; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a][b]; }
  std::size_t zero() const { return zero_; }
  std::size_t one() const { return one_; }
  const Table& add_table() const { return add_; }
  const Table& mul_table() const { return mul_; }

  std::optional<std::size_t> negate(std::size_t a) const;
  bool is_ring() const;
  bool is_unit(std::size_t a) const;
  /// Non-units form an ideal.
  bool is_local() const;

  FiniteMonoid multiplicative_monoid() const;

 private:
  std::string label_;
  std::vector<std::string> names_;
  Table add_, mul_;
  std::size_t zero_, one_;
};

/// The field with q elements for prime powers q <= 256.
FiniteSemiring finite_field(int q);
FiniteSemiring integers_mod(int n);
/// {0, 1} with 1 + 1 = 1.
FiniteSemiring boolean_semiring();

bool prime_power(int q, int& p, int& k);

}  // namespace belowz
