#pragma once

// Rational polyhedral cones and fans.

#include "belowz/errors.hpp"
#include "belowz/linalg.hpp"
#include "belowz/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace belowz {

/// Inner description {x : <n, x> >= 0 for all normals, <e, x> = 0 for all equations}.
struct HalfspaceRep {
  std::vector<ExponentVector> normals;
  std::vector<ExponentVector> equations;
};

class RationalCone {
 public:
  /// Rays are made primitive, zero vectors dropped, duplicates removed and
  /// the list sorted.
  RationalCone(Index dim, std::vector<ExponentVector> rays);
  static RationalCone zero(Index dim) { return RationalCone(dim, {}); }

  Index dim() const { return dim_; }
  const std::vector<ExponentVector>& rays() const { return rays_; }
  /// Dimension of the linear span.
  Index cone_dim() const;
  const HalfspaceRep& halfspaces() const { return halfspaces_; }
  /// Lattice basis of the largest linear subspace contained in the cone.
  const std::vector<ExponentVector>& lineality() const { return lineality_; }
  bool is_pointed() const { return lineality_.empty(); }

  bool contains(const ExponentVector& v) const;
  bool contains(const RationalCone& o) const;
  /// Same ray list; use same_cone for equality as point sets.
  bool operator==(const RationalCone& o) const;

 private:
  Index dim_;
  std::vector<ExponentVector> rays_;
  HalfspaceRep halfspaces_;
  std::vector<ExponentVector> lineality_;
};

bool same_cone(const RationalCone& a, const RationalCone& b);

/// {u : <u, v> >= 0 for all v in the cone}; a lineality space L is listed
/// as the rays +b and -b for a lattice basis b of L.
RationalCone dual_cone(const RationalCone& c);
RationalCone cone_from_halfspaces(const HalfspaceRep& h, Index dim);
RationalCone intersect(const RationalCone& a, const RationalCone& b);
/// The intersection; fan validation separately checks it is a face of each.
inline RationalCone common_face(const RationalCone& a, const RationalCone& b) { return intersect(a, b); }

/// All faces, as sorted subsets of ray indices, smallest first.
std::vector<std::vector<std::size_t>> face_indices(const RationalCone& c);
bool is_face(const RationalCone& face, const RationalCone& c);
/// Primitive sum of the rays, a point of the relative interior.
ExponentVector interior_point(const RationalCone& c);

/// Minimal generating set of the lattice points: a lattice basis of the
/// lineality space (inverted, listed first) and the Hilbert basis of the
/// pointed part, lifted canonically.
AffineMonoid hilbert_basis(const RationalCone& c, const Limits& limits = {});

/// The chart monoid dual(sigma) meet Z^d.
inline AffineMonoid chart_monoid(const RationalCone& sigma, const Limits& limits = {}) {
  return hilbert_basis(dual_cone(sigma), limits);
}

struct Fan {
  Index dim = 0;
  std::vector<ExponentVector> rays;
  /// Each cone as a sorted list of ray indices.
  std::vector<std::vector<std::size_t>> cones;

  RationalCone cone(std::size_t i) const;
  std::vector<std::size_t> maximal_cones() const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& idx) const;
};

/// Normalizes rays, adds every face of every listed cone and sorts the cones
/// by size, then lexicographically.
Fan complete_fan(Index dim, std::vector<ExponentVector> rays, std::vector<std::vector<std::size_t>> cones);

struct FanVerdict {
  bool valid = true;
  std::string failure;
  std::vector<std::size_t> cones;
  std::optional<ExponentVector> witness_ray;
  /// For each pair i < j of cones, a u with sigma_i meet u-perp equal to the
  /// intersection, equal to sigma_j meet u-perp, u >= 0 on sigma_i, u <= 0 on sigma_j.
  struct Separator {
    std::size_t i, j;
    ExponentVector u;
  };
  std::vector<Separator> separators;
};

FanVerdict fan_validate(const Fan& fan);

bool is_smooth(const Fan& fan);
/// The support is all of R^dim.
bool is_complete(const Fan& fan);

}  // namespace belowz
