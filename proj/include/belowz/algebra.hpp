#pragma once

// Monoid algebras N[M] and Z[M], group completion, and the base change N -> Z.

#include "belowz/errors.hpp"
#include "belowz/linalg.hpp"
#include "belowz/monoid.hpp"
#include "belowz/semiring.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace belowz {

enum class Base { F1, N, Z };
std::string to_string(Base b);
Base parse_base(const std::string& s);

/// A finite sum of monoid elements with coefficients in N or Z. Terms are
/// canonical elements and no coefficient is zero.
struct MonoidAlgebraElement {
  Base base = Base::N;
  std::map<Element, Integer, ElementLess> terms;

  bool operator==(const MonoidAlgebraElement& o) const;
};

/// base[M] for base N or Z: the free base-module on M with the convolution product.
class MonoidAlgebra {
 public:
  MonoidAlgebra(MonoidPtr m, Base base);

  const MonoidPtr& monoid_ptr() const { return m_; }
  const Monoid& monoid() const { return *m_; }
  Base base() const { return base_; }

  MonoidAlgebraElement zero() const;
  MonoidAlgebraElement one() const;
  MonoidAlgebraElement monomial(const Element& x, Integer c = 1) const;

  MonoidAlgebraElement add(const MonoidAlgebraElement& a, const MonoidAlgebraElement& b) const;
  MonoidAlgebraElement mul(const MonoidAlgebraElement& a, const MonoidAlgebraElement& b,
                           const Limits& limits = {}) const;
  /// Only over Z.
  MonoidAlgebraElement negate(const MonoidAlgebraElement& a) const;

  /// Image in b under the algebra map induced by a monoid hom M -> (b, *).
  std::size_t evaluate(const MonoidAlgebraElement& a, const MonoidHom& f, const FiniteSemiring& b,
                       const Limits& limits = {}) const;

  /// Terms in canonical order, e.g. "1 + 2*t + t^2".
  std::string format(const MonoidAlgebraElement& a) const;

 private:
  void check(const MonoidAlgebraElement& a) const;

  MonoidPtr m_;
  Base base_;
};

MonoidAlgebra monoid_algebra(const MonoidPtr& m, Base base);

/// The algebra map base[M] -> base[M'] induced by a monoid hom.
MonoidAlgebraElement map_element(const MonoidHom& f, const MonoidAlgebraElement& a, const Limits& limits = {});

/// Polynomials in presentation variables: exponent vector -> coefficient.
using Polynomial = std::map<ExponentVector, Integer, LexLess>;

struct AlgebraRelation {
  Polynomial lhs, rhs;
};

/// Generators and relations of an F1-, N- or Z-algebra.
struct AlgebraPresentation {
  Base base = Base::Z;
  std::vector<std::string> names;
  std::vector<bool> laurent;
  std::vector<AlgebraRelation> relations;
  // Degree up to which relations were searched; 0 when the list is exact.
  Integer degree_bound = 0;

  /// Every relation equates two monomials with coefficient 1.
  bool binomial() const;
  /// E.g. "Z[x,y,z]/(x*z - y^2)" or "N[t,t^-1]".
  std::string to_string() const;
  std::string format(const Polynomial& p) const;
};

/// Variable names: t; x,y; x,y,z; x,y,z,w; then x1, x2, ...
std::vector<std::string> variable_names(std::size_t n);

/// The binomial presentation of base[M].
AlgebraPresentation algebra_presentation(const Monoid& m, Base base, const Limits& limits = {});

/// The same generators and relations read over Z. Only binomial quotients of
/// N-algebras are supported.
AlgebraPresentation base_change_N_to_Z(const AlgebraPresentation& a);
MonoidAlgebra base_change_N_to_Z(const MonoidAlgebra& a);

/// Algebra homs base[M] -> b, as the monoid homs M -> (b, *) they restrict
/// to. Over Z there are none unless b is a ring.
std::vector<MonoidHom> algebra_hom_enumerate(const MonoidAlgebra& a, const FiniteSemiring& b,
                                             const Limits& limits = {});

/// Algebra homs found directly: assignments of the variables of `p` (Laurent
/// ones to units) under which every relation holds as a polynomial identity in b.
std::vector<std::vector<std::size_t>> algebra_hom_enumerate_direct(const AlgebraPresentation& p,
                                                                   const FiniteSemiring& b,
                                                                   const Limits& limits = {});

/// Z^r + Z/n_1 + ... + Z/n_k with n_1 | n_2 | ... and every n_i > 1.
/// Elements are coordinate vectors, free coordinates first.
struct FGAbelianGroup {
  Index free_rank = 0;
  std::vector<Integer> torsion;

  Index num_coords() const { return free_rank + static_cast<Index>(torsion.size()); }
  ExponentVector zero() const { return ExponentVector::Zero(num_coords()); }
  ExponentVector normalize(ExponentVector v) const;
  ExponentVector add(const ExponentVector& a, const ExponentVector& b) const;
  ExponentVector negate(const ExponentVector& a) const;
  /// Number of elements, or nullopt when infinite.
  std::optional<std::uint64_t> order() const;
  std::vector<ExponentVector> elements() const;
  /// E.g. "Z^2 x Z/2", or "0".
  std::string to_string() const;

  bool operator==(const FGAbelianGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
};

/// K(M) with its canonical map.
struct GroupCompletion {
  MonoidPtr source;
  FGAbelianGroup group;
  /// Image of each element of source->hom_domain().
  std::vector<ExponentVector> images;
  /// For each coordinate generator of the group, an integer combination of
  /// the hom_domain elements mapping to it.
  std::vector<ExponentVector> preimages;

  ExponentVector operator()(const Element& x, const Limits& limits = {}) const;
};

GroupCompletion group_completion(const MonoidPtr& m, const Limits& limits = {});

/// K(f) on the coordinate generators of K(source).
std::vector<ExponentVector> completion_map(const MonoidHom& f, const GroupCompletion& ks, const GroupCompletion& kt,
                                           const Limits& limits = {});

struct UniversalPropertyVerdict {
  bool holds = false;
  std::size_t monoid_homs = 0;
  std::size_t group_homs = 0;
  std::string detail;
};

/// Compares Hom_Mon(M, G) with Hom_Grp(K(M), G) for a finite abelian group G
/// and checks that restriction along M -> K(M) is a bijection.
UniversalPropertyVerdict universal_property_check(const MonoidPtr& m, const MonoidPtr& g, const Limits& limits = {});

}  // namespace belowz
