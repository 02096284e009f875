#pragma once

// Commutative monoids (F1-algebras) and their homomorphisms.
//
// Three computable classes are supported: affine monoids embedded in Z^d,
// finite monoids given by a multiplication table, and finitely presented
// monoids. Elements of affine and finitely presented monoids are exponent
// vectors; elements of finite monoids are table indices.

#include "belowz/errors.hpp"
#include "belowz/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace belowz {

using FiniteIndex = std::size_t;
using Element = std::variant<ExponentVector, FiniteIndex>;

bool element_less(const Element& a, const Element& b);
bool element_equal(const Element& a, const Element& b);

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const { return element_less(a, b); }
};

/// A monomial relation lhs = rhs between words in the presentation variables.
struct BinomialRelation {
  ExponentVector lhs, rhs;
};

/// Generators (some of them Laurent, i.e. invertible) and binomial relations.
struct Presentation {
  std::size_t num_vars = 0;
  std::vector<bool> laurent;
  std::vector<BinomialRelation> relations;
  // Total weighted degree searched for relations; 0 when the list is exact.
  Integer degree_bound = 0;
};

class AffineMonoid {
 public:
  /// The submonoid of Z^dim generated by `gens`, with the generators listed
  /// in `inverted` made invertible. Generators that are already units are
  /// recorded as inverted as well.
  AffineMonoid(Index dim, std::vector<ExponentVector> gens, std::vector<std::size_t> inverted = {});

  Index dim() const { return dim_; }
  const std::vector<ExponentVector>& gens() const { return gens_; }
  std::size_t num_gens() const { return gens_.size(); }
  bool is_inverted(std::size_t i) const { return inverted_[i]; }
  std::vector<std::size_t> inverted() const;
  IntMatrix generator_matrix() const { return columns_of(gens_, dim_); }

  /// Hermite basis (rows) of the group of units.
  const IntMatrix& unit_lattice() const { return unit_hnf_; }
  /// Hermite basis (rows) of the group generated by the monoid.
  const IntMatrix& group_lattice() const { return group_hnf_; }
  /// Integral functional vanishing on units and positive on every other generator.
  const ExponentVector& grading() const { return grading_; }

  /// Coefficients c with v = sum c_i g_i, c_i >= 0 unless g_i is inverted.
  std::optional<ExponentVector> decompose(const ExponentVector& v, const Limits& limits = {}) const;
  bool contains(const ExponentVector& v, const Limits& limits = {}) const { return decompose(v, limits).has_value(); }
  bool is_unit(const ExponentVector& v, const Limits& limits = {}) const;

  bool operator==(const AffineMonoid& o) const;

 private:
  Index dim_;
  std::vector<ExponentVector> gens_;
  std::vector<bool> inverted_;
  IntMatrix unit_hnf_, group_hnf_;
  ExponentVector grading_;
};

class FiniteMonoid {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  /// Checks commutativity, associativity and the unit exhaustively.
  FiniteMonoid(std::vector<std::string> names, Table table, std::size_t unit);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const Table& table() const { return table_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t unit() const { return unit_; }
  std::size_t power(std::size_t a, Integer n) const;
  std::optional<std::size_t> inverse(std::size_t a) const;
  bool is_unit(std::size_t a) const { return inverse(a).has_value(); }
  std::vector<std::size_t> units() const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Greedy generating set: each element not generated by the earlier ones.
  std::vector<std::size_t> generators() const;

  bool operator==(const FiniteMonoid& o) const { return table_ == o.table_ && unit_ == o.unit_; }

 private:
  std::vector<std::string> names_;
  Table table_;
  std::size_t unit_;
};

class FPMonoid {
 public:
  using Relation = std::pair<ExponentVector, ExponentVector>;

  FPMonoid(std::size_t num_gens, std::vector<Relation> relations);

  std::size_t num_gens() const { return num_gens_; }
  const std::vector<Relation>& relations() const { return relations_; }

  /// Least word (by degree, then lexicographically) reachable from w by
  /// relation rewriting with words of length at most the configured bound.
  ExponentVector normal_form(const ExponentVector& w, const Limits& limits = {}) const;
  bool equal(const ExponentVector& a, const ExponentVector& b, const Limits& limits = {}) const;

  bool operator==(const FPMonoid& o) const;

 private:
  std::size_t num_gens_;
  std::vector<Relation> relations_;
};

class Monoid {
 public:
  using Variant = std::variant<AffineMonoid, FiniteMonoid, FPMonoid>;
  enum class Kind { Affine, Finite, FinitelyPresented };

  Monoid(AffineMonoid m, std::string label = {}) : m_(std::move(m)), label_(std::move(label)) {}
  Monoid(FiniteMonoid m, std::string label = {}) : m_(std::move(m)), label_(std::move(label)) {}
  Monoid(FPMonoid m, std::string label = {}) : m_(std::move(m)), label_(std::move(label)) {}

  Kind kind() const { return static_cast<Kind>(m_.index()); }
  bool is_affine() const { return kind() == Kind::Affine; }
  bool is_finite() const { return kind() == Kind::Finite; }
  bool is_fp() const { return kind() == Kind::FinitelyPresented; }
  const AffineMonoid& affine() const { return std::get<AffineMonoid>(m_); }
  const FiniteMonoid& finite() const { return std::get<FiniteMonoid>(m_); }
  const FPMonoid& fp() const { return std::get<FPMonoid>(m_); }
  const Variant& variant() const { return m_; }
  const std::string& label() const { return label_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b, const Limits& limits = {}) const;
  /// n may be negative only for units.
  Element power(const Element& a, Integer n, const Limits& limits = {}) const;
  std::optional<Element> inverse(const Element& a, const Limits& limits = {}) const;
  bool equal(const Element& a, const Element& b, const Limits& limits = {}) const;
  bool contains(const Element& a, const Limits& limits = {}) const;
  Element canonical(const Element& a, const Limits& limits = {}) const;

  /// The generators that homomorphisms are specified on: affine and finitely
  /// presented monoids use their generators, finite monoids all elements.
  std::vector<Element> hom_domain() const;
  std::string element_name(const Element& a) const;

  bool operator==(const Monoid& o) const { return m_ == o.m_; }

 private:
  Variant m_;
  std::string label_;
};

using MonoidPtr = std::shared_ptr<const Monoid>;

template <typename T>
MonoidPtr make_monoid(T m, std::string label = {}) {
  return std::make_shared<const Monoid>(std::move(m), std::move(label));
}

/// The relation structure of a monoid. Affine monoids use a bounded search
/// for a generating set of their relations graded by `grading()`.
Presentation presentation(const Monoid& m, const Limits& limits = {});

enum class ZariskiKind { None, Identity, Localization, BoundedVerification };

/// Why a morphism is a Zariski open (flat epimorphism of finite presentation).
struct ZariskiCertificate {
  ZariskiKind kind = ZariskiKind::None;
  std::vector<Element> inverted;
  std::string note;

  bool structural() const { return kind == ZariskiKind::Identity || kind == ZariskiKind::Localization; }
};

std::string to_string(ZariskiKind k);

class MonoidHom {
 public:
  struct Unchecked {};

  /// Validates that the images respect every relation of the source.
  MonoidHom(MonoidPtr source, MonoidPtr target, std::vector<Element> images, ZariskiCertificate cert = {},
            const Limits& limits = {});
  MonoidHom(Unchecked, MonoidPtr source, MonoidPtr target, std::vector<Element> images,
            ZariskiCertificate cert = {})
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), cert_(std::move(cert)) {}

  static MonoidHom identity(const MonoidPtr& m);

  const Monoid& source() const { return *source_; }
  const Monoid& target() const { return *target_; }
  const MonoidPtr& source_ptr() const { return source_; }
  const MonoidPtr& target_ptr() const { return target_; }
  const std::vector<Element>& images() const { return images_; }
  const ZariskiCertificate& certificate() const { return cert_; }

  Element operator()(const Element& x, const Limits& limits = {}) const;
  bool same_map(const MonoidHom& o) const;

 private:
  MonoidPtr source_, target_;
  std::vector<Element> images_;
  ZariskiCertificate cert_;
};

/// g after f.
MonoidHom compose(const MonoidHom& g, const MonoidHom& f, const Limits& limits = {});

/// Every homomorphism m -> b, in lexicographic order of generator images.
std::vector<MonoidHom> hom_enumerate(const MonoidPtr& m, const MonoidPtr& b, const Limits& limits = {});

struct Localization {
  MonoidPtr monoid;
  MonoidHom map;
};

/// M[S^-1] with its canonical map, certified as a Zariski open.
Localization localize(const MonoidPtr& m, const std::vector<Element>& s, const Limits& limits = {});

struct Submonoid {
  MonoidPtr monoid;
  MonoidHom inclusion;
};

Submonoid units(const MonoidPtr& m, const Limits& limits = {});

/// A prime ideal, stored with its complement face. Indices refer to the
/// generators of an affine monoid or to the elements of a finite one.
struct PrimeIdeal {
  std::vector<std::size_t> face;
  std::vector<std::size_t> ideal;
};

/// All primes, from the empty ideal up to the maximal ideal.
std::vector<PrimeIdeal> prime_spectrum(const MonoidPtr& m, const Limits& limits = {});

enum class VerdictStatus { ProvenStructurally, VerifiedUpTo, CounterexampleFound, Inconclusive };
std::string to_string(VerdictStatus s);

struct EpiVerdict {
  VerdictStatus status;
  std::size_t bound = 0;
  std::string detail;
  // For a counterexample: two distinct maps target(f) -> witness agreeing after f.
  std::optional<MonoidPtr> witness;
  std::vector<MonoidHom> witness_maps;
};

/// Injectivity of Hom(B, T) -> Hom(A, T) over all finite T with |T| <= bound.
EpiVerdict is_epimorphism_bounded(const MonoidHom& f, std::size_t bound, const Limits& limits = {});

/// All commutative monoids of the given order up to isomorphism, unit first.
std::vector<FiniteMonoid> finite_monoid_catalogue(std::size_t order);

/// Built-in names: N, Z, N^d, Z^d, Z/n, triv, Fq*:q.
MonoidPtr builtin_monoid(const std::string& name);

FiniteMonoid cyclic_group(std::size_t n);

/// For each element, a word over `generators()` evaluating to it.
std::vector<ExponentVector> generator_words(const FiniteMonoid& m);

}  // namespace belowz
