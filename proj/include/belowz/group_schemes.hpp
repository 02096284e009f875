#pragma once

// Group schemes whose points are computed exactly: diagonalizable groups
// D(M), GL_n over F1 as a semidirect product, and GL_n by matrix search.

#include "belowz/errors.hpp"
#include "belowz/linalg.hpp"
#include "belowz/monoid.hpp"
#include "belowz/schemes.hpp"
#include "belowz/semiring.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace belowz {

/// A finite group of points. Elements are integer codes, sorted; the law is
/// tabulated at construction.
class GroupPoints {
 public:
  using Code = std::vector<std::size_t>;
  using Law = std::function<Code(const Code&, const Code&)>;
  using Namer = std::function<std::string(const Code&)>;

  /// Throws InvalidInput if the law leaves the element set.
  GroupPoints(std::string label, std::vector<Code> elements, const Law& law, const Namer& namer,
              const Limits& limits = {});

  const std::string& label() const { return label_; }
  std::size_t size() const { return codes_.size(); }
  const Code& code(std::size_t i) const { return codes_[i]; }
  std::string name(std::size_t i) const { return names_[i]; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::optional<std::size_t> index_of(const Code& c) const;
  std::optional<std::size_t> unit() const { return unit_; }
  std::optional<std::size_t> inverse(std::size_t a) const;
  bool is_abelian() const;

  struct AxiomReport {
    bool ok = true;
    std::string failure;
  };
  /// Unit, inverses and associativity, exhaustively.
  AxiomReport check_axioms(const Limits& limits = {}) const;

 private:
  std::string label_;
  std::vector<Code> codes_;
  std::vector<std::string> names_;
  std::map<Code, std::size_t> index_;
  std::vector<std::vector<std::size_t>> table_;
  std::optional<std::size_t> unit_;
};

/// Spec M for an abelian group M (finite, or Z^r with every generator
/// inverted), as a one-chart F1-scheme.
SchemeAtlas diagonalizable(const MonoidPtr& m);
/// D(M)(B) = Hom(M, B^x) with the pointwise law.
GroupPoints diagonalizable_points(const MonoidPtr& m, const MonoidPtr& b, const Limits& limits = {});

/// GL_n over F1: n! copies of G_m^n, one chart Spec Z^n per permutation.
SchemeAtlas gln_f1(int n);
/// S_n semidirect (B^x)^n. Codes are (sigma(0..n-1), u_0..u_{n-1}) standing for
/// the monomial matrix diag(u) P(sigma).
GroupPoints gln_f1_points(int n, const MonoidPtr& b, const Limits& limits = {});

/// All n x n matrices over b with a two-sided inverse, under matrix product.
GroupPoints gln_points_matrix(int n, const FiniteSemiring& b, const Limits& limits = {});

/// Square matrices with entries >= 0 whose inverse exists and has entries in N.
bool invertible_over_N(const IntMatrix& a);

/// Every n x n matrix with entries in [0, max_entry] that is invertible over
/// N, in row-major lexicographic order.
std::vector<IntMatrix> invertible_over_N_search(int n, Integer max_entry, const Limits& limits = {});

/// All permutation matrices of size n.
std::vector<IntMatrix> permutation_matrices(int n);

}  // namespace belowz
