#include "belowz/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace belowz {

std::string to_string(Base b) {
  switch (b) {
    case Base::F1:
      return "F1";
    case Base::N:
      return "N";
    case Base::Z:
      return "Z";
  }
  return "?";
}

Base parse_base(const std::string& s) {
  if (s == "F1") return Base::F1;
  if (s == "N") return Base::N;
  if (s == "Z") return Base::Z;
  throw InvalidInput("unknown base '" + s + "' (expected F1, N or Z)");
}

bool MonoidAlgebraElement::operator==(const MonoidAlgebraElement& o) const {
  if (base != o.base || terms.size() != o.terms.size()) return false;
  auto it = o.terms.begin();
  for (const auto& [x, c] : terms) {
    if (!element_equal(x, it->first) || c != it->second) return false;
    ++it;
  }
  return true;
}

// ---------------------------------------------------------------- algebra

MonoidAlgebra::MonoidAlgebra(MonoidPtr m, Base base) : m_(std::move(m)), base_(base) {
  if (base_ == Base::F1) throw InvalidInput("a monoid algebra needs base N or Z");
}

MonoidAlgebra monoid_algebra(const MonoidPtr& m, Base base) { return MonoidAlgebra(m, base); }

void MonoidAlgebra::check(const MonoidAlgebraElement& a) const {
  if (a.base != base_) throw InvalidInput("element over " + to_string(a.base) + " used in an algebra over " + to_string(base_));
}

MonoidAlgebraElement MonoidAlgebra::zero() const { return MonoidAlgebraElement{base_, {}}; }

MonoidAlgebraElement MonoidAlgebra::one() const { return monomial(m_->identity()); }

MonoidAlgebraElement MonoidAlgebra::monomial(const Element& x, Integer c) const {
  if (c < 0 && base_ == Base::N) throw InvalidInput("negative coefficient over N");
  if (!m_->contains(x)) throw InvalidInput(m_->element_name(x) + " is not in the monoid");
  MonoidAlgebraElement out{base_, {}};
  if (c != 0) out.terms.emplace(m_->canonical(x), c);
  return out;
}

namespace {

void accumulate(MonoidAlgebraElement& into, const Element& x, Integer c) {
  auto [it, fresh] = into.terms.emplace(x, c);
  if (fresh) return;
  it->second = detail::add(it->second, c);
  if (it->second == 0) into.terms.erase(it);
}

}  // namespace

MonoidAlgebraElement MonoidAlgebra::add(const MonoidAlgebraElement& a, const MonoidAlgebraElement& b) const {
  check(a);
  check(b);
  MonoidAlgebraElement out = a;
  for (const auto& [x, c] : b.terms) accumulate(out, x, c);
  return out;
}

MonoidAlgebraElement MonoidAlgebra::mul(const MonoidAlgebraElement& a, const MonoidAlgebraElement& b,
                                        const Limits& limits) const {
  check(a);
  check(b);
  MonoidAlgebraElement out{base_, {}};
  for (const auto& [x, c] : a.terms)
    for (const auto& [y, d] : b.terms)
      accumulate(out, m_->canonical(m_->multiply(x, y, limits), limits), detail::mul(c, d));
  return out;
}

MonoidAlgebraElement MonoidAlgebra::negate(const MonoidAlgebraElement& a) const {
  check(a);
  if (base_ != Base::Z) throw Unsupported("negation needs coefficients in Z");
  MonoidAlgebraElement out = a;
  for (auto& [x, c] : out.terms) c = -c;
  return out;
}

std::size_t MonoidAlgebra::evaluate(const MonoidAlgebraElement& a, const MonoidHom& f, const FiniteSemiring& b,
                                    const Limits& limits) const {
  check(a);
  if (!f.target().is_finite() || f.target().finite().size() != b.size())
    throw InvalidInput("the hom does not land in the multiplicative monoid of " + b.label());
  // c * y by doubling, with a sign through the additive inverse.
  auto scale = [&](std::size_t y, Integer c) {
    std::size_t acc = b.zero(), pow = y;
    for (Integer k = c < 0 ? -c : c; k > 0; k >>= 1) {
      if (k & 1) acc = b.add(acc, pow);
      pow = b.add(pow, pow);
    }
    if (c < 0) {
      auto neg = b.negate(acc);
      if (!neg) throw Unsupported(b.label() + " has no additive inverses");
      acc = *neg;
    }
    return acc;
  };
  std::size_t acc = b.zero();
  for (const auto& [x, c] : a.terms) acc = b.add(acc, scale(std::get<FiniteIndex>(f(x, limits)), c));
  return acc;
}

namespace {

std::string power_name(const std::string& var, Integer e) {
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

std::string monomial_name(const Monoid& m, const Element& x) {
  if (!m.is_affine()) return m.element_name(x);
  const auto& v = std::get<ExponentVector>(x);
  std::string s;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    if (!s.empty()) s += "*";
    s += power_name(v.size() == 1 ? "t" : "t" + std::to_string(i + 1), v(i));
  }
  return s.empty() ? "1" : s;
}

// Joins signed terms as "a + b - c".
std::string join_terms(const std::vector<std::pair<Integer, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [c, mono] : terms) {
    Integer a = c < 0 ? -c : c;
    std::string body = mono == "1" ? std::to_string(a) : (a == 1 ? mono : std::to_string(a) + "*" + mono);
    if (out.empty())
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace

std::string MonoidAlgebra::format(const MonoidAlgebraElement& a) const {
  std::vector<std::pair<Integer, std::string>> terms;
  for (const auto& [x, c] : a.terms) terms.emplace_back(c, monomial_name(*m_, x));
  return join_terms(terms);
}

MonoidAlgebraElement map_element(const MonoidHom& f, const MonoidAlgebraElement& a, const Limits& limits) {
  MonoidAlgebraElement out{a.base, {}};
  for (const auto& [x, c] : a.terms) accumulate(out, f.target().canonical(f(x, limits), limits), c);
  return out;
}

// ---------------------------------------------------------------- presentations

std::vector<std::string> variable_names(std::size_t n) {
  switch (n) {
    case 1:
      return {"t"};
    case 2:
      return {"x", "y"};
    case 3:
      return {"x", "y", "z"};
    case 4:
      return {"x", "y", "z", "w"};
    default:
      break;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

bool AlgebraPresentation::binomial() const {
  auto single = [](const Polynomial& p) { return p.size() == 1 && p.begin()->second == 1; };
  return std::all_of(relations.begin(), relations.end(),
                     [&](const AlgebraRelation& r) { return single(r.lhs) && single(r.rhs); });
}

std::string AlgebraPresentation::format(const Polynomial& p) const {
  std::vector<std::pair<Integer, std::string>> terms;
  // Highest monomial first.
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const ExponentVector& e = it->first;
    std::string mono;
    for (Index i = 0; i < e.size(); ++i) {
      if (e(i) == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += power_name(names[static_cast<std::size_t>(i)], e(i));
    }
    terms.emplace_back(it->second, mono.empty() ? "1" : mono);
  }
  return join_terms(terms);
}

std::string AlgebraPresentation::to_string() const {
  std::string s = belowz::to_string(base) + "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ",";
    s += names[i];
    if (laurent[i]) s += "," + names[i] + "^-1";
  }
  s += "]";
  if (relations.empty()) return s;
  s += "/(";
  for (std::size_t k = 0; k < relations.size(); ++k) {
    if (k) s += ", ";
    const auto& r = relations[k];
    if (base != Base::Z) {
      s += format(r.lhs) + " = " + format(r.rhs);
      continue;
    }
    Polynomial diff = r.lhs;
    for (const auto& [e, c] : r.rhs) {
      auto [it, fresh] = diff.emplace(e, -c);
      if (!fresh && (it->second = detail::sub(it->second, c)) == 0) diff.erase(it);
    }
    // Relations are generators of an ideal; print with a positive leading term.
    if (!diff.empty() && diff.rbegin()->second < 0)
      for (auto& [e, c] : diff) c = -c;
    s += format(diff);
  }
  return s + ")";
}

AlgebraPresentation algebra_presentation(const Monoid& m, Base base, const Limits& limits) {
  Presentation p = presentation(m, limits);
  AlgebraPresentation out;
  out.base = base;
  out.names = variable_names(p.num_vars);
  out.laurent = p.laurent;
  out.degree_bound = p.degree_bound;
  for (const auto& r : p.relations) out.relations.push_back({Polynomial{{r.lhs, 1}}, Polynomial{{r.rhs, 1}}});
  return out;
}

AlgebraPresentation base_change_N_to_Z(const AlgebraPresentation& a) {
  if (a.base != Base::N) throw InvalidInput("base change N -> Z expects an N-algebra, got " + to_string(a.base));
  if (!a.binomial()) throw Unsupported("only quotients by binomial relations are supported");
  AlgebraPresentation out = a;
  out.base = Base::Z;
  return out;
}

MonoidAlgebra base_change_N_to_Z(const MonoidAlgebra& a) {
  if (a.base() != Base::N) throw InvalidInput("base change N -> Z expects an N-algebra");
  return MonoidAlgebra(a.monoid_ptr(), Base::Z);
}

// ---------------------------------------------------------------- algebra homs

std::vector<MonoidHom> algebra_hom_enumerate(const MonoidAlgebra& a, const FiniteSemiring& b, const Limits& limits) {
  if (a.base() == Base::Z && !b.is_ring()) return {};
  auto target = make_monoid(b.multiplicative_monoid(), b.label() + "*");
  return hom_enumerate(a.monoid_ptr(), target, limits);
}

std::vector<std::vector<std::size_t>> algebra_hom_enumerate_direct(const AlgebraPresentation& p,
                                                                   const FiniteSemiring& b, const Limits& limits) {
  std::vector<std::vector<std::size_t>> out;
  if (p.base == Base::Z && !b.is_ring()) return out;
  const std::size_t n = p.names.size();
  auto value = [&](const Polynomial& poly, const std::vector<std::size_t>& x) {
    std::size_t acc = b.zero();
    for (const auto& [e, c] : poly) {
      std::size_t mono = b.one();
      for (Index i = 0; i < e.size(); ++i)
        for (Integer k = 0; k < e(i); ++k) mono = b.mul(mono, x[static_cast<std::size_t>(i)]);
      std::size_t term = b.zero();
      for (Integer k = 0; k < (c < 0 ? -c : c); ++k) term = b.add(term, mono);
      if (c < 0) term = *b.negate(term);
      acc = b.add(acc, term);
    }
    return acc;
  };
  WorkCounter work(limits, "algebra hom enumeration into " + b.label());
  std::vector<std::size_t> x(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      work.tick();
      for (const auto& r : p.relations)
        if (value(r.lhs, x) != value(r.rhs, x)) return;
      out.push_back(x);
      return;
    }
    for (std::size_t v = 0; v < b.size(); ++v) {
      if (p.laurent[i] && !b.is_unit(v)) continue;
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- group completion

ExponentVector FGAbelianGroup::normalize(ExponentVector v) const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Index k = free_rank + static_cast<Index>(i);
    v(k) = v(k) - torsion[i] * floor_div(v(k), torsion[i]);
  }
  return v;
}

ExponentVector FGAbelianGroup::add(const ExponentVector& a, const ExponentVector& b) const {
  return normalize(checked_sum(a, b));
}

ExponentVector FGAbelianGroup::negate(const ExponentVector& a) const { return normalize(-a); }

std::optional<std::uint64_t> FGAbelianGroup::order() const {
  if (free_rank > 0) return std::nullopt;
  std::uint64_t n = 1;
  for (Integer t : torsion) n *= static_cast<std::uint64_t>(t);
  return n;
}

std::vector<ExponentVector> FGAbelianGroup::elements() const {
  if (free_rank > 0) throw Unsupported("cannot list the elements of an infinite group");
  std::vector<ExponentVector> out;
  ExponentVector v = zero();
  while (true) {
    out.push_back(v);
    Index i = num_coords() - 1;
    while (i >= 0 && v(i) == torsion[static_cast<std::size_t>(i)] - 1) v(i--) = 0;
    if (i < 0) break;
    ++v(i);
  }
  return out;
}

std::string FGAbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (Integer t : torsion) parts.push_back("Z/" + std::to_string(t));
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

namespace {

// Integer coefficients of x over hom_domain().
ExponentVector domain_coefficients(const Monoid& m, const Element& x, const Limits& limits) {
  switch (m.kind()) {
    case Monoid::Kind::Affine: {
      auto c = m.affine().decompose(std::get<ExponentVector>(x), limits);
      if (!c) throw InvalidInput(m.element_name(x) + " is not in the monoid");
      return *c;
    }
    case Monoid::Kind::Finite: {
      ExponentVector c = ExponentVector::Zero(static_cast<Index>(m.finite().size()));
      c(static_cast<Index>(std::get<FiniteIndex>(x))) = 1;
      return c;
    }
    case Monoid::Kind::FinitelyPresented:
      return std::get<ExponentVector>(x);
  }
  return {};
}

}  // namespace

ExponentVector GroupCompletion::operator()(const Element& x, const Limits& limits) const {
  ExponentVector c = domain_coefficients(*source, x, limits);
  ExponentVector v = group.zero();
  for (Index j = 0; j < c.size(); ++j)
    if (c(j) != 0) v = checked_sum(v, checked_scale(images[static_cast<std::size_t>(j)], c(j)));
  return group.normalize(v);
}

GroupCompletion group_completion(const MonoidPtr& m, const Limits&) {
  const Index n = static_cast<Index>(m->hom_domain().size());
  std::vector<ExponentVector> rels;
  switch (m->kind()) {
    case Monoid::Kind::Affine: {
      IntMatrix k = kernel_basis(m->affine().generator_matrix());
      for (Index j = 0; j < k.cols(); ++j) rels.push_back(k.col(j));
      break;
    }
    case Monoid::Kind::Finite: {
      const auto& f = m->finite();
      for (std::size_t x = 0; x < f.size(); ++x)
        for (std::size_t y = x; y < f.size(); ++y) {
          ExponentVector r = ExponentVector::Zero(n);
          r(static_cast<Index>(x)) += 1;
          r(static_cast<Index>(y)) += 1;
          r(static_cast<Index>(f.mul(x, y))) -= 1;
          if (!is_zero(r)) rels.push_back(r);
        }
      rels.push_back(unit_vector(n, static_cast<Index>(f.unit())));
      break;
    }
    case Monoid::Kind::FinitelyPresented:
      for (const auto& [l, r] : m->fp().relations()) rels.push_back(l - r);
      break;
  }

  GroupCompletion out;
  out.source = m;
  IntMatrix proj;
  IntMatrix back;
  if (rels.empty()) {
    out.group.free_rank = n;
    proj = IntMatrix::Identity(n, n);
    back = IntMatrix::Identity(n, n);
  } else {
    auto snf = smith_normal_form(columns_of(rels, n));
    std::vector<Index> rows;
    for (Index i = snf.rank; i < n; ++i) rows.push_back(i);
    out.group.free_rank = n - snf.rank;
    for (Index i = 0; i < snf.rank; ++i) {
      Integer d = detail::abs_value(snf.invariant(i));
      if (d == 1) continue;
      rows.push_back(i);
      out.group.torsion.push_back(d);
    }
    proj.resize(static_cast<Index>(rows.size()), n);
    back.resize(n, static_cast<Index>(rows.size()));
    for (std::size_t k = 0; k < rows.size(); ++k) {
      proj.row(static_cast<Index>(k)) = snf.u.row(rows[k]);
      back.col(static_cast<Index>(k)) = snf.u_inv.col(rows[k]);
    }
  }
  for (Index j = 0; j < n; ++j) out.images.push_back(out.group.normalize(proj.col(j)));
  for (Index k = 0; k < back.cols(); ++k) out.preimages.push_back(back.col(k));
  return out;
}

std::vector<ExponentVector> completion_map(const MonoidHom& f, const GroupCompletion& ks, const GroupCompletion& kt,
                                           const Limits& limits) {
  auto domain = f.source().hom_domain();
  std::vector<ExponentVector> img;
  for (const auto& x : domain) img.push_back(kt(f(x, limits), limits));
  std::vector<ExponentVector> out;
  for (const auto& p : ks.preimages) {
    ExponentVector v = kt.group.zero();
    for (Index j = 0; j < p.size(); ++j)
      if (p(j) != 0) v = checked_sum(v, checked_scale(img[static_cast<std::size_t>(j)], p(j)));
    out.push_back(kt.group.normalize(v));
  }
  return out;
}

UniversalPropertyVerdict universal_property_check(const MonoidPtr& m, const MonoidPtr& g, const Limits& limits) {
  if (!g->is_finite()) throw InvalidInput("the test group must be finite");
  const auto& grp = g->finite();
  if (grp.units().size() != grp.size()) throw InvalidInput(g->label() + " is not a group");

  UniversalPropertyVerdict v;
  auto k = group_completion(m, limits);
  auto homs = hom_enumerate(m, g, limits);
  v.monoid_homs = homs.size();

  // Group homs K(M) -> G: an image per coordinate generator, killed by its order.
  std::vector<std::vector<std::size_t>> choices;
  for (Index i = 0; i < k.group.num_coords(); ++i) {
    std::vector<std::size_t> ok;
    for (std::size_t x = 0; x < grp.size(); ++x)
      if (i < k.group.free_rank || grp.power(x, k.group.torsion[static_cast<std::size_t>(i - k.group.free_rank)]) == grp.unit())
        ok.push_back(x);
    choices.push_back(ok);
  }
  WorkCounter work(limits, "group hom enumeration");
  std::set<std::vector<std::size_t>> restricted;
  std::vector<std::size_t> pick(choices.size(), 0);
  bool all_homs = true;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == choices.size()) {
      work.tick();
      ++v.group_homs;
      std::vector<std::size_t> img;
      for (const auto& e : k.images) {
        std::size_t acc = grp.unit();
        for (Index c = 0; c < e.size(); ++c) acc = grp.mul(acc, grp.power(pick[static_cast<std::size_t>(c)], e(c)));
        img.push_back(acc);
      }
      std::vector<Element> els(img.begin(), img.end());
      try {
        MonoidHom(m, g, els, {}, limits);
      } catch (const InvalidInput&) {
        all_homs = false;
      }
      restricted.insert(img);
      return;
    }
    for (std::size_t x : choices[i]) {
      pick[i] = x;
      rec(i + 1);
    }
  };
  rec(0);

  std::size_t hit = 0;
  for (const auto& h : homs) {
    std::vector<std::size_t> img;
    for (const auto& y : h.images()) img.push_back(std::get<FiniteIndex>(y));
    hit += restricted.count(img);
  }
  bool injective = restricted.size() == v.group_homs;
  bool surjective = hit == homs.size();
  v.holds = all_homs && injective && surjective && v.monoid_homs == v.group_homs;
  if (!all_homs)
    v.detail = "a group hom restricts to a non-hom";
  else if (!injective)
    v.detail = "restriction is not injective";
  else if (!surjective)
    v.detail = "restriction misses a monoid hom";
  else
    v.detail = "restriction along M -> " + k.group.to_string() + " is a bijection";
  return v;
}

}  // namespace belowz
