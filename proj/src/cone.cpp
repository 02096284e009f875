#include "belowz/cone.hpp"

#include "belowz/polyhedral.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace belowz {

namespace {

void sort_unique(std::vector<ExponentVector>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end(), vec_equal), vs.end());
}

std::vector<ExponentVector> generators_with_lineality(const ConeGenerators& g) {
  std::vector<ExponentVector> out = g.rays;
  for (const auto& l : g.lineality) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

}  // namespace

RationalCone::RationalCone(Index dim, std::vector<ExponentVector> rays) : dim_(dim) {
  for (auto& r : rays) {
    if (r.size() != dim) throw InvalidInput("ray " + to_string(r) + " has the wrong length");
    if (!is_zero(r)) rays_.push_back(primitive<Integer>(r));
  }
  sort_unique(rays_);
  ConeGenerators dual = dual_generators(rays_, dim_);
  halfspaces_.normals = dual.rays;
  halfspaces_.equations = dual.lineality;
  std::vector<ExponentVector> all = halfspaces_.normals;
  all.insert(all.end(), halfspaces_.equations.begin(), halfspaces_.equations.end());
  lineality_ = orthogonal_lattice(all, dim_);
}

Index RationalCone::cone_dim() const { return rays_.empty() ? 0 : rank(rows_of(rays_, dim_)); }

bool RationalCone::contains(const ExponentVector& v) const {
  for (const auto& e : halfspaces_.equations)
    if (dot(e, v) != 0) return false;
  for (const auto& n : halfspaces_.normals)
    if (dot(n, v) < 0) return false;
  return true;
}

bool RationalCone::contains(const RationalCone& o) const {
  return std::all_of(o.rays_.begin(), o.rays_.end(), [&](const ExponentVector& r) { return contains(r); });
}

bool RationalCone::operator==(const RationalCone& o) const {
  if (dim_ != o.dim_ || rays_.size() != o.rays_.size()) return false;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (!vec_equal(rays_[i], o.rays_[i])) return false;
  return true;
}

bool same_cone(const RationalCone& a, const RationalCone& b) {
  return a.dim() == b.dim() && a.contains(b) && b.contains(a);
}

RationalCone dual_cone(const RationalCone& c) {
  const auto& h = c.halfspaces();
  std::vector<ExponentVector> rays = h.normals;
  for (const auto& e : h.equations) {
    rays.push_back(e);
    rays.push_back(-e);
  }
  return RationalCone(c.dim(), rays);
}

RationalCone cone_from_halfspaces(const HalfspaceRep& h, Index dim) {
  std::vector<ExponentVector> rows = h.normals;
  for (const auto& e : h.equations) {
    rows.push_back(e);
    rows.push_back(-e);
  }
  return RationalCone(dim, generators_with_lineality(cone_from_inequalities(rows, dim)));
}

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
  if (a.dim() != b.dim()) throw InvalidInput("cones live in different spaces");
  HalfspaceRep h = a.halfspaces();
  h.normals.insert(h.normals.end(), b.halfspaces().normals.begin(), b.halfspaces().normals.end());
  h.equations.insert(h.equations.end(), b.halfspaces().equations.begin(), b.halfspaces().equations.end());
  return cone_from_halfspaces(h, a.dim());
}

std::vector<std::vector<std::size_t>> face_indices(const RationalCone& c) {
  const auto& normals = c.halfspaces().normals;
  const auto& rays = c.rays();
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::size_t> all(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all[i] = i;
  faces.insert(all);
  // Faces are intersections of facets; close the facet family under meets.
  std::vector<std::vector<std::size_t>> frontier{all};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier)
      for (const auto& n : normals) {
        std::vector<std::size_t> g;
        for (std::size_t i : f)
          if (dot(n, rays[i]) == 0) g.push_back(i);
        if (g.size() < f.size() && faces.insert(g).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<std::size_t>> out(faces.begin(), faces.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

ExponentVector interior_point(const RationalCone& c) {
  ExponentVector p = ExponentVector::Zero(c.dim());
  for (const auto& r : c.rays()) p = checked_sum(p, r);
  return is_zero(p) ? p : primitive<Integer>(p);
}

bool is_face(const RationalCone& face, const RationalCone& c) {
  if (!c.contains(face)) return false;
  // The smallest face of c containing a relative interior point of `face`.
  // A lineality space sums to zero, so use every ray instead of the sum.
  std::vector<ExponentVector> tight;
  for (const auto& r : c.rays()) {
    bool in = true;
    for (const auto& n : c.halfspaces().normals) {
      bool tight_on_face = std::all_of(face.rays().begin(), face.rays().end(),
                                       [&](const ExponentVector& f) { return dot(n, f) == 0; });
      if (tight_on_face && dot(n, r) != 0) {
        in = false;
        break;
      }
    }
    if (in) tight.push_back(r);
  }
  return same_cone(RationalCone(c.dim(), tight), face);
}

// ---------------------------------------------------------------- Hilbert bases

namespace {

// Pulling triangulation of a full-dimensional pointed cone given by its
// extreme rays and facet normals.
std::vector<std::vector<std::size_t>> triangulate(const std::vector<ExponentVector>& rays,
                                                  const std::vector<ExponentVector>& normals, Index dim) {
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, Index)> rec =
      [&](const std::vector<std::size_t>& face, Index t) -> std::vector<std::vector<std::size_t>> {
    if (static_cast<Index>(face.size()) == t) return {face};
    std::set<std::vector<std::size_t>> facets;
    for (const auto& n : normals) {
      std::vector<std::size_t> g;
      for (std::size_t i : face)
        if (dot(n, rays[i]) == 0) g.push_back(i);
      if (g.empty() || g.size() == face.size()) continue;
      std::vector<ExponentVector> gv;
      for (std::size_t i : g) gv.push_back(rays[i]);
      if (rank(rows_of(gv, dim)) == t - 1) facets.insert(g);
    }
    const std::size_t apex = face.front();
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : facets) {
      if (std::find(f.begin(), f.end(), apex) != f.end()) continue;
      for (auto s : rec(f, t - 1)) {
        s.push_back(apex);
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
      }
    }
    return out;
  };
  std::vector<std::size_t> all(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all[i] = i;
  return rec(all, dim);
}

// Lattice points of the half-open parallelepiped spanned by the columns of r.
std::vector<ExponentVector> parallelepiped_points(const IntMatrix& r, std::uint64_t& work, std::uint64_t budget) {
  const Index k = r.rows();
  auto f = smith_normal_form(r);
  const Integer det = determinant(r);
  const IntMatrix adj = adjugate(r);
  const Integer vol = detail::abs_value(det);
  work += static_cast<std::uint64_t>(vol);
  if (work > budget) throw BudgetExceeded("parallelepiped enumeration", budget);
  std::vector<ExponentVector> out;
  ExponentVector c = ExponentVector::Zero(k);
  while (true) {
    ExponentVector x = f.u_inv * c;
    // x - r * floor(r^-1 x)
    ExponentVector lambda = adj * x;
    ExponentVector fl(k);
    for (Index i = 0; i < k; ++i) fl(i) = floor_div(lambda(i), det);
    out.push_back(x - r * fl);
    Index i = 0;
    while (i < k && c(i) + 1 >= f.invariant(i)) c(i++) = 0;
    if (i == k) break;
    ++c(i);
  }
  return out;
}

std::vector<ExponentVector> pointed_hilbert_basis(const std::vector<ExponentVector>& gens, Index k,
                                                  const Limits& limits) {
  ConeGenerators dual = dual_generators(gens, k);
  if (!dual.lineality.empty()) throw std::logic_error("cone is not full-dimensional");
  const auto& normals = dual.rays;
  ConeGenerators primal = cone_from_inequalities(normals, k);
  if (!primal.lineality.empty()) throw std::logic_error("cone is not pointed");
  const auto& rays = primal.rays;

  ExponentVector grading = ExponentVector::Zero(k);
  for (const auto& n : normals) grading = checked_sum(grading, n);
  std::vector<ExponentVector> candidates = rays;
  std::uint64_t work = 0;
  for (const auto& s : triangulate(rays, normals, k)) {
    IntMatrix r(k, k);
    for (Index j = 0; j < k; ++j) r.col(j) = rays[s[static_cast<std::size_t>(j)]];
    for (auto& p : parallelepiped_points(r, work, limits.enumeration_budget))
      if (!is_zero(p)) candidates.push_back(p);
  }
  sort_unique(candidates);
  std::stable_sort(candidates.begin(), candidates.end(), [&](const ExponentVector& a, const ExponentVector& b) {
    return dot(grading, a) < dot(grading, b);
  });
  auto in_cone = [&](const ExponentVector& v) {
    return std::all_of(normals.begin(), normals.end(), [&](const ExponentVector& n) { return dot(n, v) >= 0; });
  };
  std::vector<ExponentVector> basis;
  for (const auto& x : candidates) {
    bool reducible = std::any_of(basis.begin(), basis.end(), [&](const ExponentVector& h) { return in_cone(x - h); });
    if (!reducible) basis.push_back(x);
  }
  return basis;
}

}  // namespace

AffineMonoid hilbert_basis(const RationalCone& c, const Limits& limits) {
  const Index d = c.dim();
  const auto& h = c.halfspaces();
  // Lambda: the lattice of the linear span; L: the lineality lattice.
  IntMatrix span_basis = kernel_basis(rows_of(h.equations, d));
  std::vector<ExponentVector> lin = c.lineality();
  IntMatrix lin_hnf = hermite_rows<Integer>(rows_of(lin, d));
  std::vector<ExponentVector> gens;
  std::vector<std::size_t> inverted;
  for (Index i = 0; i < lin_hnf.rows(); ++i) {
    gens.push_back(lin_hnf.row(i).transpose());
    inverted.push_back(gens.size() - 1);
  }
  const Index m = span_basis.cols();
  const Index l = static_cast<Index>(lin.size());
  const Index k = m - l;
  if (k == 0) return AffineMonoid(d, gens, inverted);

  // Coordinates adapted to Lambda = L + complement.
  IntMatrix lin_coords(m, l);
  for (Index j = 0; j < l; ++j) {
    auto a = solve_integer(span_basis, lin_hnf.row(j).transpose());
    if (!a) throw std::logic_error("lineality lattice outside the span lattice");
    lin_coords.col(j) = *a;
  }
  IntMatrix u = IntMatrix::Identity(m, m), u_inv = IntMatrix::Identity(m, m);
  if (l > 0) {
    auto f = smith_normal_form(lin_coords);
    u = f.u;
    u_inv = f.u_inv;
  }
  auto quotient = [&](const ExponentVector& x) {
    auto a = solve_integer(span_basis, x);
    if (!a) throw std::logic_error("ray outside the span lattice");
    ExponentVector y = u * *a;
    return ExponentVector(y.tail(k));
  };
  std::vector<ExponentVector> images;
  for (const auto& r : c.rays()) {
    ExponentVector q = quotient(r);
    if (!is_zero(q)) images.push_back(q);
  }
  std::vector<ExponentVector> lifted;
  for (const auto& y : pointed_hilbert_basis(images, k, limits)) {
    ExponentVector a = ExponentVector::Zero(m);
    a.tail(k) = y;
    ExponentVector x = span_basis * (u_inv * a);
    if (l > 0) x = reduce_mod_lattice<Integer>(x, lin_hnf);
    lifted.push_back(x);
  }
  sort_unique(lifted);
  gens.insert(gens.end(), lifted.begin(), lifted.end());
  return AffineMonoid(d, gens, inverted);
}

// ---------------------------------------------------------------- fans

RationalCone Fan::cone(std::size_t i) const {
  std::vector<ExponentVector> rs;
  for (std::size_t r : cones.at(i)) rs.push_back(rays.at(r));
  return RationalCone(dim, rs);
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones.size() && maximal; ++j) {
      if (i == j || cones[j].size() <= cones[i].size()) continue;
      if (std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end())) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Fan::find(const std::vector<std::size_t>& idx) const {
  auto it = std::find(cones.begin(), cones.end(), idx);
  if (it == cones.end()) return std::nullopt;
  return static_cast<std::size_t>(it - cones.begin());
}

Fan complete_fan(Index dim, std::vector<ExponentVector> rays, std::vector<std::vector<std::size_t>> cones) {
  Fan fan;
  fan.dim = dim;
  for (auto& r : rays) {
    if (r.size() != dim) throw InvalidInput("ray " + to_string(r) + " has the wrong length");
    if (is_zero(r)) throw InvalidInput("zero ray in fan");
    fan.rays.push_back(primitive<Integer>(r));
  }
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    for (std::size_t j = i + 1; j < fan.rays.size(); ++j)
      if (vec_equal(fan.rays[i], fan.rays[j])) throw InvalidInput("duplicate ray " + to_string(fan.rays[i]));
  std::set<std::vector<std::size_t>> all{{}};
  for (auto& c : cones) {
    for (std::size_t r : c)
      if (r >= fan.rays.size()) throw InvalidInput("cone refers to missing ray " + std::to_string(r));
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InvalidInput("cone repeats a ray");
    std::vector<ExponentVector> rs;
    for (std::size_t r : c) rs.push_back(fan.rays[r]);
    RationalCone cone(dim, rs);
    // Map the cone's canonical ray order back to fan indices.
    std::vector<std::size_t> back;
    for (const auto& cr : cone.rays())
      for (std::size_t r : c)
        if (vec_equal(fan.rays[r], cr)) back.push_back(r);
    for (const auto& f : face_indices(cone)) {
      std::vector<std::size_t> idx;
      for (std::size_t i : f) idx.push_back(back[i]);
      std::sort(idx.begin(), idx.end());
      all.insert(idx);
    }
  }
  fan.cones.assign(all.begin(), all.end());
  std::stable_sort(fan.cones.begin(), fan.cones.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return fan;
}

FanVerdict fan_validate(const Fan& fan) {
  FanVerdict v;
  auto fail = [&](std::string why, std::vector<std::size_t> cones, std::optional<ExponentVector> ray) {
    v.valid = false;
    v.failure = std::move(why);
    v.cones = std::move(cones);
    v.witness_ray = std::move(ray);
    v.separators.clear();
    return v;
  };
  for (const auto& r : fan.rays)
    if (r.size() != fan.dim || is_zero(r) || !vec_equal(r, primitive<Integer>(r)))
      return fail("ray " + to_string(r) + " is not a primitive nonzero vector", {}, r);
  std::vector<RationalCone> cones;
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    for (std::size_t r : fan.cones[i])
      if (r >= fan.rays.size()) return fail("cone " + std::to_string(i) + " refers to a missing ray", {i}, {});
    cones.push_back(fan.cone(i));
    if (!cones.back().is_pointed())
      return fail("cone " + std::to_string(i) + " contains a line", {i}, cones.back().lineality().front());
  }
  for (std::size_t i = 0; i < cones.size(); ++i) {
    std::vector<std::size_t> back;
    for (const auto& cr : cones[i].rays())
      for (std::size_t r : fan.cones[i])
        if (vec_equal(fan.rays[r], cr)) back.push_back(r);
    for (const auto& f : face_indices(cones[i])) {
      std::vector<std::size_t> idx;
      for (std::size_t k : f) idx.push_back(back[k]);
      std::sort(idx.begin(), idx.end());
      if (!fan.find(idx)) {
        std::vector<ExponentVector> rs;
        for (std::size_t r : idx) rs.push_back(fan.rays[r]);
        return fail("a face of cone " + std::to_string(i) + " is missing from the fan", {i},
                    interior_point(RationalCone(fan.dim, rs)));
      }
    }
  }
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j) {
      const RationalCone tau = intersect(cones[i], cones[j]);
      // Separating functional from the relative interior of dual(i) meet -dual(j).
      std::vector<ExponentVector> rows = cones[i].rays();
      for (const auto& r : cones[j].rays()) rows.push_back(-r);
      ConeGenerators sep = cone_from_inequalities(rows, fan.dim);
      ExponentVector u = ExponentVector::Zero(fan.dim);
      for (const auto& r : sep.rays) u = checked_sum(u, r);
      if (!is_zero(u)) u = primitive<Integer>(u);
      auto cut = [&](const RationalCone& c) {
        std::vector<ExponentVector> rs;
        for (const auto& r : c.rays())
          if (dot(u, r) == 0) rs.push_back(r);
        return RationalCone(fan.dim, rs);
      };
      if (!same_cone(cut(cones[i]), tau) || !same_cone(cut(cones[j]), tau))
        return fail("cones " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in a common face",
                    {i, j}, interior_point(tau));
      v.separators.push_back({i, j, u});
    }
  return v;
}

bool is_smooth(const Fan& fan) {
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    if (fan.cones[i].empty()) continue;
    std::vector<ExponentVector> rs;
    for (std::size_t r : fan.cones[i]) rs.push_back(fan.rays[r]);
    IntMatrix m = rows_of(rs, fan.dim);
    auto f = smith_normal_form(m);
    if (f.rank != m.rows()) return false;
    for (Index k = 0; k < f.rank; ++k)
      if (f.invariant(k) != 1) return false;
  }
  return true;
}

bool is_complete(const Fan& fan) {
  const auto maximal = fan.maximal_cones();
  std::map<std::vector<std::size_t>, int> walls;
  for (std::size_t i : maximal) {
    RationalCone c = fan.cone(i);
    if (c.cone_dim() != fan.dim) return false;
    if (fan.dim == 0) return true;
    std::vector<std::size_t> back;
    for (const auto& cr : c.rays())
      for (std::size_t r : fan.cones[i])
        if (vec_equal(fan.rays[r], cr)) back.push_back(r);
    for (const auto& n : c.halfspaces().normals) {
      std::vector<std::size_t> wall;
      for (std::size_t k = 0; k < c.rays().size(); ++k)
        if (dot(n, c.rays()[k]) == 0) wall.push_back(back[k]);
      std::sort(wall.begin(), wall.end());
      ++walls[wall];
    }
  }
  if (maximal.empty()) return fan.dim == 0;
  return std::all_of(walls.begin(), walls.end(), [](const auto& w) { return w.second == 2; });
}

}  // namespace belowz
