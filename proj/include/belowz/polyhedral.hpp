#pragma once

// Double description for rational polyhedral cones given by inequalities.

#include "belowz/linalg.hpp"

#include <vector>

namespace belowz {

/// Generators of {x : <a, x> >= 0 for every row a}: a lattice basis of the
/// lineality space plus one primitive representative (orthogonal to the
/// lineality space) per extreme ray of the pointed part. Both lists are in
/// canonical order.
struct ConeGenerators {
  std::vector<ExponentVector> lineality;
  std::vector<ExponentVector> rays;
};

ConeGenerators cone_from_inequalities(const std::vector<ExponentVector>& rows, Index dim);

/// Generators of the dual cone of cone(gens).
inline ConeGenerators dual_generators(const std::vector<ExponentVector>& gens, Index dim) {
  return cone_from_inequalities(gens, dim);
}

/// Integer basis of {x : <a, x> = 0 for every a in rows}, canonical.
std::vector<ExponentVector> orthogonal_lattice(const std::vector<ExponentVector>& rows, Index dim);

/// Canonical primitive representative of v orthogonal to span(basis).
ExponentVector project_orthogonal(const ExponentVector& v, const std::vector<ExponentVector>& basis);

}  // namespace belowz
