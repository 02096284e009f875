#include "belowz/toric.hpp"

#include <algorithm>
#include <cctype>

namespace belowz {

namespace {

std::string cone_label(const std::vector<std::size_t>& idx) {
  std::string s = "U[";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
  return s + "]";
}

// Both monoids live in Z^d; equal as submonoids iff each contains the other's generators.
bool same_submonoid(const AffineMonoid& a, const AffineMonoid& b, const Limits& limits) {
  auto covers = [&](const AffineMonoid& x, const AffineMonoid& y) {
    for (std::size_t i = 0; i < y.num_gens(); ++i) {
      if (!x.contains(y.gens()[i], limits)) return false;
      if (y.is_inverted(i) && !x.contains(ExponentVector(-y.gens()[i]), limits)) return false;
    }
    return true;
  };
  return a.dim() == b.dim() && covers(a, b) && covers(b, a);
}

MonoidPtr localized_at_face(const MonoidPtr& chart, const RationalCone& tau, const Limits& limits) {
  std::vector<Element> s;
  for (std::size_t g : face_inverted_generators(chart->affine(), tau)) s.push_back(chart->affine().gens()[g]);
  return localize(chart, s, limits).monoid;
}

// The inclusion M_sigma -> M_tau, certified as the localization at the
// generators vanishing on tau once generator matching confirms it.
MonoidHom face_map(const MonoidPtr& chart, const MonoidPtr& face, const RationalCone& tau, const Limits& limits) {
  const auto& m = chart->affine();
  std::vector<Element> images(m.gens().begin(), m.gens().end());
  ZariskiCertificate cert;
  cert.kind = ZariskiKind::Localization;
  for (std::size_t g : face_inverted_generators(m, tau)) cert.inverted.push_back(m.gens()[g]);
  cert.note = "face localization";
  if (!same_submonoid(localized_at_face(chart, tau, limits)->affine(), face->affine(), limits)) {
    cert.kind = ZariskiKind::None;
    cert.note = "localization does not match the face monoid";
  }
  return MonoidHom(chart, face, std::move(images), std::move(cert), limits);
}

}  // namespace

std::vector<std::size_t> face_inverted_generators(const AffineMonoid& m, const RationalCone& tau) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < m.num_gens(); ++g) {
    if (m.is_inverted(g)) continue;
    if (std::all_of(tau.rays().begin(), tau.rays().end(),
                    [&](const ExponentVector& r) { return dot(m.gens()[g], r) == 0; }))
      out.push_back(g);
  }
  return out;
}

Fan builtin_fan(const std::string& name) {
  auto v = [](Integer a, Integer b) { return (ExponentVector(2) << a, b).finished(); };
  if (name == "P1") return complete_fan(1, {unit_vector(1, 0), ExponentVector(-unit_vector(1, 0))}, {{0}, {1}});
  if (name == "A1") return complete_fan(1, {unit_vector(1, 0)}, {{0}});
  if (name == "A2") return complete_fan(2, {v(1, 0), v(0, 1)}, {{0, 1}});
  if (name == "P2") return complete_fan(2, {v(1, 0), v(0, 1), v(-1, -1)}, {{0, 1}, {1, 2}, {0, 2}});
  if (name == "P1xP1")
    return complete_fan(2, {v(1, 0), v(0, 1), v(-1, 0), v(0, -1)}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  if (name == "P112") return complete_fan(2, {v(1, 0), v(0, 1), v(-1, -2)}, {{0, 1}, {1, 2}, {0, 2}});
  if (name.size() > 1 && name[0] == 'F' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    Integer a = std::stoll(name.substr(1));
    return complete_fan(2, {v(1, 0), v(0, 1), v(-1, a), v(0, -1)}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  }
  throw InvalidInput("unknown built-in fan '" + name + "'");
}

SchemeAtlas build_toric_atlas(const Fan& fan, const Limits& limits) {
  auto verdict = fan_validate(fan);
  if (!verdict.valid) throw InvalidInput("invalid fan: " + verdict.failure);

  SchemeAtlas x;
  x.base = Base::F1;
  auto maxes = fan.maximal_cones();
  for (std::size_t c : maxes) {
    RationalCone sigma = fan.cone(c);
    std::string label = cone_label(fan.cones[c]);
    x.charts.push_back({label, make_monoid(chart_monoid(sigma, limits), label), sigma});
  }
  for (std::size_t i = 0; i < maxes.size(); ++i)
    for (std::size_t j = i; j < maxes.size(); ++j) {
      const auto& a = x.charts[i];
      const auto& b = x.charts[j];
      if (i == j) {
        x.overlaps.push_back({i, i, a.monoid, MonoidHom::identity(a.monoid), MonoidHom::identity(a.monoid)});
        continue;
      }
      std::vector<std::size_t> common;
      std::set_intersection(fan.cones[maxes[i]].begin(), fan.cones[maxes[i]].end(), fan.cones[maxes[j]].begin(),
                            fan.cones[maxes[j]].end(), std::back_inserter(common));
      auto t = fan.find(common);
      if (!t) throw std::logic_error("validated fan misses a common face");
      RationalCone tau = fan.cone(*t);
      auto face = make_monoid(chart_monoid(tau, limits), cone_label(common));
      x.overlaps.push_back({i, j, face, face_map(a.monoid, face, tau, limits), face_map(b.monoid, face, tau, limits)});
    }
  return x;
}

SchemeAtlas toric_base_change(const Fan& fan, Base base, const Limits& limits) {
  return base_change_scheme(build_toric_atlas(fan, limits), base);
}

bool overlap_sides_agree(const SchemeAtlas& x, const Overlap& o, const Limits& limits) {
  const auto& a = x.charts[o.i];
  const auto& b = x.charts[o.j];
  if (!a.cone || !b.cone) return false;
  RationalCone tau = intersect(*a.cone, *b.cone);
  auto la = localized_at_face(a.monoid, tau, limits);
  auto lb = localized_at_face(b.monoid, tau, limits);
  return same_submonoid(la->affine(), lb->affine(), limits) && same_submonoid(la->affine(), o.monoid->affine(), limits);
}

}  // namespace belowz
