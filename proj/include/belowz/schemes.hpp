#pragma once

// Schemes over F1, N or Z presented by finite atlases: affine charts glued
// along Zariski open overlaps.

#include "belowz/algebra.hpp"
#include "belowz/cone.hpp"
#include "belowz/errors.hpp"
#include "belowz/monoid.hpp"
#include "belowz/semiring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace belowz {

/// Spec of base[monoid]; over F1 the chart algebra is the monoid itself.
struct AtlasChart {
  std::string label;
  MonoidPtr monoid;
  // The cone a toric chart comes from.
  std::optional<RationalCone> cone;
};

/// R_ij with its maps A_i -> R_ij and A_j -> R_ij. Only i <= j is stored;
/// R_ji is the same object with the maps exchanged.
struct Overlap {
  std::size_t i = 0, j = 0;
  MonoidPtr monoid;
  MonoidHom left, right;
};

struct SchemeAtlas {
  Base base = Base::F1;
  std::vector<AtlasChart> charts;
  std::vector<Overlap> overlaps;

  const Overlap* find(std::size_t i, std::size_t j) const;
  AlgebraPresentation chart_presentation(std::size_t i, const Limits& limits = {}) const;
};

/// Spec A as a one-chart atlas.
SchemeAtlas affine_scheme(const MonoidPtr& a, Base base = Base::F1, std::string label = {});
SchemeAtlas disjoint_union(const SchemeAtlas& x, const SchemeAtlas& y);

/// Generator images as monomials in the target variables, e.g. "t -> t^-1".
std::string describe_hom(const MonoidHom& f);

struct AtlasVerdict {
  struct Condition {
    std::string id;
    bool pass = true;
    std::string detail;
  };
  bool valid = true;
  std::vector<Condition> conditions;
};

/// Checks the four gluing conditions:
///   (a) the charts are affine and the maps start at the right charts,
///   (b) every overlap map is a Zariski open,
///   (c) R_ii is the diagonal,
///   (d) R is an equivalence relation inside X x X, checked on points over
///       the commutative monoids of order at most `point_bound`.
/// Structural certificates are trusted; bounded ones are re-run at `epi_bound`.
AtlasVerdict validate_atlas(const SchemeAtlas& x, const Limits& limits = {}, std::size_t epi_bound = 3,
                            std::size_t point_bound = 3);

/// (disjoint union of Hom(A_i, B)) modulo the gluing relation.
struct PointSet {
  MonoidPtr target;
  /// Hom(A_i, B) for each chart, in enumeration order.
  std::vector<std::vector<MonoidHom>> chart_points;
  /// Class of each chart point.
  std::vector<std::vector<std::size_t>> class_of;
  struct Point {
    std::size_t chart, index, members;
  };
  /// One entry per class, represented by its least (chart, index).
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
};

/// Points of an F1-atlas over a finite monoid.
PointSet points(const SchemeAtlas& x, const MonoidPtr& b, const Limits& limits = {});
/// Points over a finite semiring, through its multiplicative monoid. The
/// semiring must be local; a Z-atlas needs a ring.
PointSet points(const SchemeAtlas& x, const FiniteSemiring& b, const Limits& limits = {});

/// The map of point sets induced by h: B -> B'; throws if some class is not
/// sent into a single class.
std::vector<std::size_t> induced_point_map(const PointSet& from, const PointSet& to, const MonoidHom& h,
                                           const Limits& limits = {});

/// The number of torus orbits weighted by their points: sum over cones of (q-1)^(n - dim).
std::uint64_t cone_sum_count(const Fan& fan, std::uint64_t q);

struct PointCount {
  std::uint64_t q = 0;
  std::uint64_t glued = 0;
  std::uint64_t cone_sum = 0;
  bool agree() const { return glued == cone_sum; }
};

/// |X(F_q)| for the toric variety of the fan, by gluing chart points over
/// the multiplicative monoid of F_q, alongside the cone-sum count.
PointCount count_points_fq(const Fan& fan, int q, const Limits& limits = {});

/// F1 -> N, N -> Z or F1 -> Z, applied chart-wise and overlap-wise.
SchemeAtlas base_change_scheme(const SchemeAtlas& x, Base to);

}  // namespace belowz
