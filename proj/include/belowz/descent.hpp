#pragma once

// Bounded verification of flat descent for sets with an action of a finite
// commutative monoid. Every verdict is a statement up to a carrier bound;
// nothing here proves a theorem.

#include "belowz/errors.hpp"
#include "belowz/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace belowz {

/// A finite set with an action of a finite commutative monoid.
class FiniteASet {
 public:
  using Table = std::vector<std::vector<std::size_t>>;

  /// act[a][x] = a.x. Checks the unit and compatibility with the monoid table.
  FiniteASet(MonoidPtr monoid, std::size_t size, Table act);

  static FiniteASet point(const MonoidPtr& monoid);
  /// The monoid acting on itself.
  static FiniteASet free(const MonoidPtr& monoid);

  const MonoidPtr& monoid_ptr() const { return monoid_; }
  const FiniteMonoid& monoid() const { return monoid_->finite(); }
  std::size_t size() const { return size_; }
  std::size_t act(std::size_t a, std::size_t x) const { return act_[a][x]; }
  const Table& table() const { return act_; }
  std::string to_string() const;

 private:
  MonoidPtr monoid_;
  std::size_t size_;
  Table act_;
};

using ASetMap = std::vector<std::size_t>;

/// Scalars restricted along f: A -> B, for a B-set n.
FiniteASet restrict_aset(const FiniteASet& n, const MonoidHom& f);

/// M x_A B with the bookkeeping needed to map into and out of it.
struct TensorProduct {
  FiniteASet set;
  std::size_t target_size = 0;
  std::vector<std::size_t> class_of;                      // x * |B| + b -> class
  std::vector<std::pair<std::size_t, std::size_t>> reps;  // least member of each class

  std::size_t cls(std::size_t x, std::size_t b) const { return class_of[x * target_size + b]; }
};

/// The coequalizer of M x A x B => M x B, by union-find.
TensorProduct tensor_detailed(const FiniteASet& m, const MonoidHom& f);
FiniteASet tensor_aset(const FiniteASet& m, const MonoidHom& f);
/// u x_A B for an equivariant u: M -> N.
ASetMap tensor_map(const ASetMap& u, const TensorProduct& tm, const TensorProduct& tn);

FiniteASet product(const FiniteASet& m, const FiniteASet& n);
bool is_equivariant(const FiniteASet& m, const FiniteASet& n, const ASetMap& u);
bool is_bijection(const ASetMap& u, std::size_t target_size);
/// All equivariant maps m -> n, or only the isomorphisms.
std::vector<ASetMap> equivariant_maps(const FiniteASet& m, const FiniteASet& n, bool bijective_only = false,
                                      const Limits& limits = {});
bool isomorphic(const FiniteASet& m, const FiniteASet& n);

/// Every A-set with at most max_size elements, one per isomorphism class,
/// ordered by size and then by canonical table.
std::vector<FiniteASet> enumerate_asets(const MonoidPtr& a, std::size_t max_size, const Limits& limits = {});

struct LabVerdict {
  VerdictStatus status = VerdictStatus::VerifiedUpTo;
  std::size_t bound = 0;
  std::string detail;

  bool ok() const { return status == VerdictStatus::VerifiedUpTo || status == VerdictStatus::ProvenStructurally; }
};

/// Preservation of the terminal object, binary products and equalizers by
/// - x_A B, over all A-sets with at most `bound` elements.
LabVerdict is_flat_bounded(const MonoidHom& f, std::size_t bound, const Limits& limits = {});

/// Elements and non-trivial products, e.g. "{1,a,b | aa=b, ab=b, bb=b}".
std::string describe_finite_monoid(const FiniteMonoid& m);

/// A finite family of maps out of one finite monoid.
struct Cover {
  MonoidPtr base;
  std::vector<MonoidHom> legs;

  /// Throws InvalidInput unless there is a leg, every leg starts at base and
  /// every monoid involved is finite.
  Cover(MonoidPtr base, std::vector<MonoidHom> legs);
  std::string to_string() const;
};

/// Index of a leg with a retraction, if any.
std::optional<std::size_t> split_leg(const Cover& c, const Limits& limits = {});

/// Looks for a non-isomorphism of A-sets that every leg turns into an isomorphism.
LabVerdict is_conservative_bounded(const Cover& c, std::size_t bound, const Limits& limits = {});

/// B_0 x_A ... x_A B_k, the pushout of commutative monoids.
struct Amalgam {
  MonoidPtr monoid;
  std::vector<MonoidHom> legs;                     // B_k -> monoid
  std::vector<std::vector<std::size_t>> leg_maps;  // the legs as tables
  std::vector<std::vector<std::size_t>> reps;      // class -> tuple
  std::vector<std::size_t> radix;
  std::vector<std::size_t> class_of;

  std::size_t cls(const std::vector<std::size_t>& tuple) const;
};

Amalgam pushout(const MonoidPtr& a, const std::vector<MonoidHom>& legs, const Limits& limits = {});

/// The cover {C -> C x_A B_i} obtained along g: A -> C.
Cover base_change(const Cover& c, const MonoidHom& g, const Limits& limits = {});
/// Leg i of outer refined by inner[i].
Cover compose_covers(const Cover& outer, const std::vector<Cover>& inner, const Limits& limits = {});

/// x_i over B_i and gluing bijections glue[i * n + j]: x_i|ij -> x_j|ij.
struct DescentDatum {
  std::vector<FiniteASet> pieces;
  std::vector<ASetMap> glue;
};

/// The pushouts of a cover and the category of descent data over it.
class CoverGeometry {
 public:
  CoverGeometry(Cover cover, const Limits& limits = {});

  const Cover& cover() const { return cover_; }
  std::size_t legs() const { return cover_.legs.size(); }
  const Amalgam& pair(std::size_t i, std::size_t j) const { return pairs_[i * legs() + j]; }
  const Amalgam& triple(std::size_t i, std::size_t j, std::size_t k) const {
    return triples_[(i * legs() + j) * legs() + k];
  }

  /// x_i restricted to B_ij along the first (side 0) or second (side 1) factor.
  TensorProduct restriction(const FiniteASet& x, std::size_t i, std::size_t j, int side) const;

  /// The canonical datum of an A-set.
  DescentDatum pullback(const FiniteASet& m) const;
  /// The limit of prod x_i => prod x_i|ij, as an A-set.
  FiniteASet descend(const DescentDatum& d) const;

  /// Shapes, equivariant bijections and the cocycle condition.
  bool is_datum(const DescentDatum& d, std::string* why = nullptr) const;
  bool is_morphism(const DescentDatum& d, const DescentDatum& e, const std::vector<ASetMap>& f) const;
  std::vector<std::vector<ASetMap>> morphisms(const DescentDatum& d, const DescentDatum& e) const;
  /// Counit p*p_* d -> d, one map per leg.
  std::vector<ASetMap> counit(const DescentDatum& d, const FiniteASet& descended) const;

  /// Every datum with pieces of at most `bound` elements, pieces up to isomorphism.
  std::vector<DescentDatum> enumerate_data(std::size_t bound) const;

 private:
  Cover cover_;
  Limits limits_;
  std::vector<Amalgam> pairs_, triples_;
};

/// M -> prod M x B_i => prod M x B_ij is an equalizer.
LabVerdict sheaf_equalizer_check(const Cover& c, const FiniteASet& m, const Limits& limits = {});

struct DescentReport {
  LabVerdict verdict;
  std::size_t asets = 0;
  std::size_t data = 0;
  std::optional<DescentDatum> offending;
};

/// Full faithfulness and essential surjectivity of A-Set -> Desc, up to bound.
DescentReport descent_equivalence_check(const Cover& c, std::size_t bound, const Limits& limits = {});

struct DiscoveredCover {
  Cover cover;
  bool split = false;
  LabVerdict flat, conservative;
};

/// Flat, jointly conservative families of at most max_legs maps between
/// catalogued monoids of order at most max_order.
std::vector<DiscoveredCover> discover_covers(std::size_t max_order, std::size_t max_legs, std::size_t bound,
                                             const Limits& limits = {});

struct PretopologyReport {
  std::size_t isomorphisms = 0, base_changes = 0, composites = 0;
  LabVerdict verdict;
};

/// Isomorphisms are covers; base changes along catalogued maps and one-leg
/// refinements of the sample are covers again.
PretopologyReport check_pretopology(const std::vector<DiscoveredCover>& sample, std::size_t max_order,
                                    std::size_t bound, const Limits& limits = {});

}  // namespace belowz
