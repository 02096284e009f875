#pragma once

// Toric schemes over F1: one affine chart Spec M_sigma per maximal cone,
// glued along the face monoids of pairwise intersections.

#include "belowz/cone.hpp"
#include "belowz/errors.hpp"
#include "belowz/schemes.hpp"

#include <string>
#include <vector>

namespace belowz {

/// Named fans: P1, P2, P1xP1, F<a> (Hirzebruch), P112 (weighted), A1, A2.
Fan builtin_fan(const std::string& name);

/// The generators of m vanishing on every ray of tau; inverting them gives M_tau.
std::vector<std::size_t> face_inverted_generators(const AffineMonoid& m, const RationalCone& tau);

/// Charts over the maximal cones, an overlap for every pair (including the
/// diagonal) with its two face localizations. Throws InvalidInput when the
/// fan does not validate.
SchemeAtlas build_toric_atlas(const Fan& fan, const Limits& limits = {});

/// The toric atlas with every chart read as base[M_sigma].
SchemeAtlas toric_base_change(const Fan& fan, Base base, const Limits& limits = {});

/// Localizing either chart at its generators vanishing on the common face
/// gives the same submonoid of Z^d as the stored overlap.
bool overlap_sides_agree(const SchemeAtlas& x, const Overlap& o, const Limits& limits = {});

}  // namespace belowz
