#include "belowz/descent.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace belowz {

namespace {

const FiniteMonoid& finite_of(const MonoidPtr& m, const std::string& what) {
  if (!m || !m->is_finite()) throw InvalidInput(what + " must be a finite monoid");
  return m->finite();
}

std::vector<std::size_t> hom_table(const MonoidHom& f) {
  std::vector<std::size_t> t(f.source().finite().size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = std::get<FiniteIndex>(f(Element(FiniteIndex{a})));
  return t;
}

// Union-find whose roots are always the least member of their class.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  // Class ids numbered by increasing least member.
  std::vector<std::size_t> classes(std::size_t* count) {
    std::vector<std::size_t> id(parent_.size()), out(parent_.size());
    std::size_t n = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      std::size_t r = find(x);
      if (r == x) id[x] = n++;
      out[x] = id[r];
    }
    *count = n;
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::string map_string(const ASetMap& u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i]);
  return s + ")";
}

std::string leg_string(const MonoidHom& f) {
  const auto& a = f.source().finite();
  const auto& b = f.target().finite();
  std::string s;
  auto t = hom_table(f);
  for (std::size_t x = 0; x < a.size(); ++x) s += (x ? ", " : "") + a.name(x) + "->" + b.name(t[x]);
  return describe_finite_monoid(b) + " via " + s;
}

bool same_monoid(const MonoidPtr& a, const MonoidPtr& b) { return a == b || *a == *b; }

LabVerdict verified(std::size_t bound) {
  LabVerdict v;
  v.bound = bound;
  return v;
}

LabVerdict counterexample(std::size_t bound, std::string detail) {
  LabVerdict v;
  v.status = VerdictStatus::CounterexampleFound;
  v.bound = bound;
  v.detail = std::move(detail);
  return v;
}

}  // namespace

// ---------------------------------------------------------------- A-sets

FiniteASet::FiniteASet(MonoidPtr monoid, std::size_t size, Table act)
    : monoid_(std::move(monoid)), size_(size), act_(std::move(act)) {
  const FiniteMonoid& a = finite_of(monoid_, "the acting monoid");
  if (act_.size() != a.size()) throw InvalidInput("action table needs one row per monoid element");
  for (const auto& row : act_) {
    if (row.size() != size_) throw InvalidInput("action row has the wrong length");
    for (std::size_t y : row)
      if (y >= size_) throw InvalidInput("action leaves the carrier");
  }
  for (std::size_t x = 0; x < size_; ++x)
    if (act_[a.unit()][x] != x) throw InvalidInput("the unit does not act as the identity");
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < a.size(); ++q)
      for (std::size_t x = 0; x < size_; ++x)
        if (act_[a.mul(p, q)][x] != act_[p][act_[q][x]])
          throw InvalidInput("action does not respect " + a.name(p) + "*" + a.name(q));
}

FiniteASet FiniteASet::point(const MonoidPtr& monoid) {
  const auto& a = finite_of(monoid, "the acting monoid");
  return FiniteASet(monoid, 1, Table(a.size(), std::vector<std::size_t>{0}));
}

FiniteASet FiniteASet::free(const MonoidPtr& monoid) {
  const auto& a = finite_of(monoid, "the acting monoid");
  return FiniteASet(monoid, a.size(), a.table());
}

std::string FiniteASet::to_string() const {
  const auto& a = monoid();
  std::string s = "{" + std::to_string(size_) + " points";
  for (std::size_t g : a.generators()) s += ", " + a.name(g) + ":" + map_string(act_[g]);
  return s + "}";
}

FiniteASet restrict_aset(const FiniteASet& n, const MonoidHom& f) {
  if (!same_monoid(f.target_ptr(), n.monoid_ptr())) throw InvalidInput("restriction along a map with another target");
  auto t = hom_table(f);
  FiniteASet::Table act;
  for (std::size_t a : t) act.push_back(n.table()[a]);
  return FiniteASet(f.source_ptr(), n.size(), std::move(act));
}

TensorProduct tensor_detailed(const FiniteASet& m, const MonoidHom& f) {
  if (!same_monoid(f.source_ptr(), m.monoid_ptr())) throw InvalidInput("tensor along a map with another source");
  const FiniteMonoid& a = m.monoid();
  const FiniteMonoid& b = finite_of(f.target_ptr(), "the target of a tensor");
  const std::size_t nb = b.size();
  auto ft = hom_table(f);
  UnionFind uf(m.size() * nb);
  // Generators suffice: the relation is already stable under B.
  for (std::size_t g : a.generators())
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < nb; ++y) uf.unite(m.act(g, x) * nb + y, x * nb + b.mul(ft[g], y));
  TensorProduct out{FiniteASet::point(f.target_ptr()), nb, {}, {}};
  std::size_t n = 0;
  out.class_of = uf.classes(&n);
  out.reps.assign(n, {0, 0});
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < out.class_of.size(); ++i)
    if (!seen[out.class_of[i]]) {
      seen[out.class_of[i]] = true;
      out.reps[out.class_of[i]] = {i / nb, i % nb};
    }
  FiniteASet::Table act(nb, std::vector<std::size_t>(n));
  for (std::size_t c = 0; c < nb; ++c)
    for (std::size_t k = 0; k < n; ++k) act[c][k] = out.cls(out.reps[k].first, b.mul(c, out.reps[k].second));
  out.set = FiniteASet(f.target_ptr(), n, std::move(act));
  return out;
}

FiniteASet tensor_aset(const FiniteASet& m, const MonoidHom& f) { return tensor_detailed(m, f).set; }

ASetMap tensor_map(const ASetMap& u, const TensorProduct& tm, const TensorProduct& tn) {
  ASetMap out(tm.reps.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = tn.cls(u[tm.reps[k].first], tm.reps[k].second);
  return out;
}

FiniteASet product(const FiniteASet& m, const FiniteASet& n) {
  if (!same_monoid(m.monoid_ptr(), n.monoid_ptr())) throw InvalidInput("product of sets over different monoids");
  FiniteASet::Table act(m.monoid().size(), std::vector<std::size_t>(m.size() * n.size()));
  for (std::size_t a = 0; a < act.size(); ++a)
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = 0; y < n.size(); ++y) act[a][x * n.size() + y] = m.act(a, x) * n.size() + n.act(a, y);
  return FiniteASet(m.monoid_ptr(), m.size() * n.size(), std::move(act));
}

bool is_equivariant(const FiniteASet& m, const FiniteASet& n, const ASetMap& u) {
  if (u.size() != m.size()) return false;
  for (std::size_t x = 0; x < m.size(); ++x)
    if (u[x] >= n.size()) return false;
  for (std::size_t a = 0; a < m.monoid().size(); ++a)
    for (std::size_t x = 0; x < m.size(); ++x)
      if (u[m.act(a, x)] != n.act(a, u[x])) return false;
  return true;
}

bool is_bijection(const ASetMap& u, std::size_t target_size) {
  if (u.size() != target_size) return false;
  std::vector<bool> hit(target_size, false);
  for (std::size_t y : u) {
    if (y >= target_size || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

namespace {

void search_maps(const FiniteASet& m, const FiniteASet& n, bool bijective, std::size_t stop_after,
                 const Limits& limits, std::vector<ASetMap>& out) {
  if (bijective && m.size() != n.size()) return;
  const std::size_t na = m.monoid().size();
  WorkCounter work(limits, "equivariant map search");
  ASetMap u(m.size());
  std::vector<bool> used(n.size(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (out.size() >= stop_after) return;
    work.tick();
    if (x == m.size()) {
      out.push_back(u);
      return;
    }
    for (std::size_t y = 0; y < n.size(); ++y) {
      if (bijective && used[y]) continue;
      u[x] = y;
      bool ok = true;
      for (std::size_t a = 0; a < na && ok; ++a) {
        std::size_t ax = m.act(a, x);
        if (ax <= x && u[ax] != n.act(a, y)) ok = false;
        for (std::size_t z = 0; z < x && ok; ++z)
          if (m.act(a, z) == x && y != n.act(a, u[z])) ok = false;
      }
      if (!ok) continue;
      used[y] = true;
      rec(x + 1);
      used[y] = false;
    }
  };
  rec(0);
}

}  // namespace

std::vector<ASetMap> equivariant_maps(const FiniteASet& m, const FiniteASet& n, bool bijective_only,
                                      const Limits& limits) {
  if (!same_monoid(m.monoid_ptr(), n.monoid_ptr())) throw InvalidInput("maps between sets over different monoids");
  std::vector<ASetMap> out;
  search_maps(m, n, bijective_only, SIZE_MAX, limits, out);
  return out;
}

bool isomorphic(const FiniteASet& m, const FiniteASet& n) {
  if (m.size() != n.size() || !same_monoid(m.monoid_ptr(), n.monoid_ptr())) return false;
  std::vector<ASetMap> out;
  search_maps(m, n, true, 1, Limits{}, out);
  return !out.empty();
}

// ---------------------------------------------------------------- enumeration

namespace {

using ActTable = FiniteASet::Table;

ActTable relabel(const ActTable& t, const std::vector<std::size_t>& p) {
  ActTable out(t.size(), std::vector<std::size_t>(p.size()));
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t x = 0; x < p.size(); ++x) out[a][p[x]] = p[t[a][x]];
  return out;
}

std::vector<ActTable> enumerate_tables(const FiniteMonoid& a, std::size_t max_size, const Limits& limits) {
  WorkCounter work(limits, "A-set enumeration");
  const auto gens = a.generators();
  const auto words = generator_words(a);
  std::vector<ActTable> out;
  out.emplace_back(a.size(), std::vector<std::size_t>{});  // the empty set
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::vector<std::vector<std::size_t>> endos;
    std::vector<std::size_t> e(k, 0);
    while (true) {
      endos.push_back(e);
      std::size_t i = 0;
      while (i < k && e[i] == k - 1) e[i++] = 0;
      if (i == k) break;
      ++e[i];
    }
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::set<ActTable> found;
    std::vector<std::size_t> choice(gens.size());
    auto commute = [&](std::size_t s, std::size_t t) {
      for (std::size_t x = 0; x < k; ++x)
        if (endos[s][endos[t][x]] != endos[t][endos[s][x]]) return false;
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
      work.tick();
      if (g == gens.size()) {
        ActTable act(a.size(), std::vector<std::size_t>(k));
        for (std::size_t x = 0; x < a.size(); ++x)
          for (std::size_t y = 0; y < k; ++y) {
            std::size_t z = y;
            for (std::size_t i = 0; i < gens.size(); ++i)
              for (Integer r = 0; r < words[x](static_cast<Index>(i)); ++r) z = endos[choice[i]][z];
            act[x][y] = z;
          }
        for (std::size_t s = 0; s < a.size(); ++s)
          for (std::size_t t = 0; t < a.size(); ++t)
            for (std::size_t y = 0; y < k; ++y)
              if (act[a.mul(s, t)][y] != act[s][act[t][y]]) return;
        ActTable best = act;
        for (const auto& q : perms) {
          work.tick();
          best = std::min(best, relabel(act, q));
        }
        found.insert(std::move(best));
        return;
      }
      for (std::size_t c = 0; c < endos.size(); ++c) {
        choice[g] = c;
        bool ok = true;
        for (std::size_t h = 0; h < g && ok; ++h) ok = commute(choice[h], c);
        if (ok) rec(g + 1);
      }
    };
    rec(0);
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

}  // namespace

std::vector<FiniteASet> enumerate_asets(const MonoidPtr& a, std::size_t max_size, const Limits& limits) {
  const FiniteMonoid& m = finite_of(a, "the acting monoid");
  static std::mutex mutex;
  static std::map<std::pair<FiniteMonoid::Table, std::size_t>, std::vector<ActTable>> cache;
  std::vector<ActTable> tables;
  auto key = std::make_pair(m.table(), max_size);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) tables = it->second;
  }
  if (tables.empty()) {
    tables = enumerate_tables(m, max_size, limits);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, tables);
  }
  std::vector<FiniteASet> out;
  for (auto& t : tables) {
    std::size_t k = t.empty() ? 0 : t[0].size();
    out.emplace_back(a, k, std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------- flatness

LabVerdict is_flat_bounded(const MonoidHom& f, std::size_t bound, const Limits& limits) {
  finite_of(f.source_ptr(), "the source of a flatness check");
  finite_of(f.target_ptr(), "the target of a flatness check");
  if (bound == 0) throw InvalidInput("the carrier bound must be positive");
  WorkCounter work(limits, "flatness check");
  auto objects = enumerate_asets(f.source_ptr(), bound, limits);
  std::vector<TensorProduct> t;
  for (const auto& o : objects) t.push_back(tensor_detailed(o, f));

  auto pt = tensor_aset(FiniteASet::point(f.source_ptr()), f);
  if (pt.size() != 1)
    return counterexample(bound, "the point becomes " + std::to_string(pt.size()) + " points, so the terminal object is lost");

  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = i; j < objects.size(); ++j) {
      work.tick(objects[i].size() * objects[j].size() + 1);
      auto tp = tensor_detailed(product(objects[i], objects[j]), f);
      const std::size_t nj = objects[j].size(), tj = t[j].set.size();
      ASetMap u(tp.reps.size());
      for (std::size_t k = 0; k < u.size(); ++k) {
        auto [p, b] = tp.reps[k];
        u[k] = t[i].cls(p / nj, b) * tj + t[j].cls(p % nj, b);
      }
      if (!is_bijection(u, t[i].set.size() * tj))
        return counterexample(bound, "the product of " + objects[i].to_string() + " and " + objects[j].to_string() +
                                         " is not preserved");
    }

  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const auto& m = objects[i];
      const auto& n = objects[j];
      auto maps = equivariant_maps(m, n, false, limits);
      std::vector<ASetMap> tmaps;
      for (const auto& u : maps) tmaps.push_back(tensor_map(u, t[i], t[j]));
      for (std::size_t p = 0; p < maps.size(); ++p)
        for (std::size_t q = p + 1; q < maps.size(); ++q) {
          work.tick(m.size() + 1);
          std::vector<std::size_t> members, index(m.size(), SIZE_MAX);
          for (std::size_t x = 0; x < m.size(); ++x)
            if (maps[p][x] == maps[q][x]) {
              index[x] = members.size();
              members.push_back(x);
            }
          ActTable act(m.monoid().size(), std::vector<std::size_t>(members.size()));
          for (std::size_t a = 0; a < act.size(); ++a)
            for (std::size_t e = 0; e < members.size(); ++e) act[a][e] = index[m.act(a, members[e])];
          auto te = tensor_detailed(FiniteASet(m.monoid_ptr(), members.size(), std::move(act)), f);
          std::vector<bool> hit(t[i].set.size(), false);
          bool ok = true;
          for (const auto& [e, b] : te.reps) {
            std::size_t z = t[i].cls(members[e], b);
            if (hit[z]) ok = false;
            hit[z] = true;
          }
          for (std::size_t z = 0; z < hit.size() && ok; ++z)
            if (hit[z] != (tmaps[p][z] == tmaps[q][z])) ok = false;
          if (!ok)
            return counterexample(bound, "the equalizer of " + map_string(maps[p]) + " and " + map_string(maps[q]) +
                                             " from " + m.to_string() + " to " + n.to_string() + " is not preserved");
        }
    }
  return verified(bound);
}

// ---------------------------------------------------------------- covers

std::string describe_finite_monoid(const FiniteMonoid& m) {
  std::string s = "{";
  for (std::size_t x = 0; x < m.size(); ++x) s += (x ? "," : "") + m.name(x);
  // Longer names such as "a+1" are bracketed so products stay readable.
  auto factor = [&](std::size_t x) { return m.name(x).size() == 1 ? m.name(x) : "(" + m.name(x) + ")"; };
  std::string rel;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x; y < m.size(); ++y) {
      if (x == m.unit() || y == m.unit()) continue;
      rel += (rel.empty() ? "" : ", ") + factor(x) + factor(y) + "=" + m.name(m.mul(x, y));
    }
  return s + (rel.empty() ? "" : " | " + rel) + "}";
}

Cover::Cover(MonoidPtr b, std::vector<MonoidHom> l) : base(std::move(b)), legs(std::move(l)) {
  finite_of(base, "the base of a cover");
  if (legs.empty()) throw InvalidInput("a cover needs at least one leg");
  for (const auto& f : legs) {
    if (!same_monoid(f.source_ptr(), base)) throw InvalidInput("every leg of a cover starts at its base");
    finite_of(f.target_ptr(), "every leg target");
  }
}

std::string Cover::to_string() const {
  std::string s = "base " + describe_finite_monoid(base->finite());
  for (std::size_t i = 0; i < legs.size(); ++i) s += "; leg " + std::to_string(i) + ": " + leg_string(legs[i]);
  return s;
}

std::optional<std::size_t> split_leg(const Cover& c, const Limits& limits) {
  auto id = MonoidHom::identity(c.base);
  for (std::size_t i = 0; i < c.legs.size(); ++i)
    for (const auto& r : hom_enumerate(c.legs[i].target_ptr(), c.base, limits))
      if (compose(r, c.legs[i], limits).same_map(id)) return i;
  return std::nullopt;
}

LabVerdict is_conservative_bounded(const Cover& c, std::size_t bound, const Limits& limits) {
  if (bound == 0) throw InvalidInput("the carrier bound must be positive");
  WorkCounter work(limits, "conservativity check");
  auto objects = enumerate_asets(c.base, bound, limits);
  std::vector<std::vector<TensorProduct>> t(c.legs.size());
  for (std::size_t l = 0; l < c.legs.size(); ++l)
    for (const auto& o : objects) t[l].push_back(tensor_detailed(o, c.legs[l]));
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j)
      for (const auto& u : equivariant_maps(objects[i], objects[j], false, limits)) {
        work.tick(c.legs.size());
        if (is_bijection(u, objects[j].size())) continue;
        bool all = true;
        for (std::size_t l = 0; l < c.legs.size() && all; ++l)
          all = is_bijection(tensor_map(u, t[l][i], t[l][j]), t[l][j].set.size());
        if (all)
          return counterexample(bound, "the map " + map_string(u) + " from " + objects[i].to_string() + " to " +
                                           objects[j].to_string() + " is not invertible but becomes invertible on every leg");
      }
  return verified(bound);
}

// ---------------------------------------------------------------- pushouts

std::size_t Amalgam::cls(const std::vector<std::size_t>& tuple) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < radix.size(); ++k) idx = idx * radix[k] + tuple[k];
  return class_of[idx];
}

Amalgam pushout(const MonoidPtr& a, const std::vector<MonoidHom>& legs, const Limits& limits) {
  const FiniteMonoid& base = finite_of(a, "the base of a pushout");
  if (legs.empty()) throw InvalidInput("a pushout needs at least one map");
  std::vector<const FiniteMonoid*> parts;
  std::vector<std::vector<std::size_t>> tables;
  Amalgam out;
  std::size_t total = 1;
  for (const auto& f : legs) {
    if (!same_monoid(f.source_ptr(), a)) throw InvalidInput("pushout maps must share their source");
    parts.push_back(&finite_of(f.target_ptr(), "a pushout factor"));
    tables.push_back(hom_table(f));
    out.radix.push_back(parts.back()->size());
    total *= parts.back()->size();
  }
  WorkCounter work(limits, "pushout");
  work.tick(total);
  const std::size_t n = legs.size();
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> t(n);
    for (std::size_t k = n; k-- > 0;) {
      t[k] = idx % out.radix[k];
      idx /= out.radix[k];
    }
    return t;
  };
  auto encode = [&](const std::vector<std::size_t>& t) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) idx = idx * out.radix[k] + t[k];
    return idx;
  };
  std::vector<std::size_t> ones(n);
  for (std::size_t k = 0; k < n; ++k) ones[k] = parts[k]->unit();
  auto at = [&](std::size_t k, std::size_t v) {
    auto t = ones;
    t[k] = v;
    return t;
  };

  // Congruence closure: every merged pair is pushed once and multiplied by
  // each generator of the product.
  UnionFind uf(total);
  std::vector<std::pair<std::size_t, std::size_t>> todo;
  auto merge = [&](std::size_t x, std::size_t y) {
    if (uf.unite(x, y)) todo.emplace_back(x, y);
  };
  for (std::size_t g : base.generators())
    for (std::size_t k = 1; k < n; ++k) merge(encode(at(0, tables[0][g])), encode(at(k, tables[k][g])));
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t g : parts[k]->generators()) gens.emplace_back(k, g);
  auto times = [&](std::size_t idx, std::size_t k, std::size_t g) {
    auto t = decode(idx);
    t[k] = parts[k]->mul(t[k], g);
    return encode(t);
  };
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    work.tick(gens.size());
    for (const auto& [k, g] : gens) merge(times(x, k, g), times(y, k, g));
  }

  std::size_t m = 0;
  out.class_of = uf.classes(&m);
  out.reps.assign(m, {});
  std::vector<bool> seen(m, false);
  for (std::size_t idx = 0; idx < total; ++idx)
    if (!seen[out.class_of[idx]]) {
      seen[out.class_of[idx]] = true;
      out.reps[out.class_of[idx]] = decode(idx);
    }
  std::vector<std::string> names;
  for (const auto& t : out.reps) {
    if (n == 1) {
      names.push_back(parts[0]->name(t[0]));
      continue;
    }
    std::string s = "(";
    for (std::size_t k = 0; k < n; ++k) s += (k ? "," : "") + parts[k]->name(t[k]);
    names.push_back(s + ")");
  }
  FiniteMonoid::Table table(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> t(n);
      for (std::size_t k = 0; k < n; ++k) t[k] = parts[k]->mul(out.reps[i][k], out.reps[j][k]);
      table[i][j] = out.cls(t);
    }
  out.monoid = make_monoid(FiniteMonoid(std::move(names), std::move(table), out.cls(ones)));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Element> images;
    std::vector<std::size_t> map;
    for (std::size_t v = 0; v < parts[k]->size(); ++v) {
      map.push_back(out.cls(at(k, v)));
      images.emplace_back(FiniteIndex{map.back()});
    }
    out.legs.emplace_back(MonoidHom::Unchecked{}, legs[k].target_ptr(), out.monoid, std::move(images));
    out.leg_maps.push_back(std::move(map));
  }
  return out;
}

Cover base_change(const Cover& c, const MonoidHom& g, const Limits& limits) {
  if (!same_monoid(g.source_ptr(), c.base)) throw InvalidInput("base change along a map out of another monoid");
  std::vector<MonoidHom> legs;
  for (const auto& f : c.legs) legs.push_back(pushout(c.base, {g, f}, limits).legs[0]);
  return Cover(g.target_ptr(), std::move(legs));
}

Cover compose_covers(const Cover& outer, const std::vector<Cover>& inner, const Limits& limits) {
  if (inner.size() != outer.legs.size()) throw InvalidInput("one refinement per leg is needed");
  std::vector<MonoidHom> legs;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!same_monoid(inner[i].base, outer.legs[i].target_ptr()))
      throw InvalidInput("refinement " + std::to_string(i) + " does not start at the leg target");
    for (const auto& h : inner[i].legs) legs.push_back(compose(h, outer.legs[i], limits));
  }
  return Cover(outer.base, std::move(legs));
}

// ---------------------------------------------------------------- descent data

CoverGeometry::CoverGeometry(Cover cover, const Limits& limits) : cover_(std::move(cover)), limits_(limits) {
  const std::size_t n = legs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs_.push_back(pushout(cover_.base, {cover_.legs[i], cover_.legs[j]}, limits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        triples_.push_back(pushout(cover_.base, {cover_.legs[i], cover_.legs[j], cover_.legs[k]}, limits));
}

TensorProduct CoverGeometry::restriction(const FiniteASet& x, std::size_t i, std::size_t j, int side) const {
  return tensor_detailed(x, pair(i, j).legs[static_cast<std::size_t>(side)]);
}

namespace {

// The restrictions of a family of pieces to every pair and triple.
struct PieceContext {
  const CoverGeometry& g;
  std::vector<TensorProduct> left, right;  // per pair (i, j): x_i|ij and x_j|ij
  std::vector<std::vector<TensorProduct>> at_triple;
  // Per triple, the maps B_ij, B_jk, B_ik -> B_ijk.
  std::vector<std::array<std::vector<std::size_t>, 3>> lifts;

  PieceContext(const CoverGeometry& geo, const std::vector<FiniteASet>& pieces) : g(geo) {
    const std::size_t n = g.legs();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        left.push_back(g.restriction(pieces[i], i, j, 0));
        right.push_back(g.restriction(pieces[j], i, j, 1));
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Amalgam& q = g.triple(i, j, k);
          at_triple.push_back({tensor_detailed(pieces[i], q.legs[0]), tensor_detailed(pieces[j], q.legs[1]),
                               tensor_detailed(pieces[k], q.legs[2])});
          auto lift = [&](const Amalgam& p, std::size_t s, std::size_t t) {
            std::vector<std::size_t> map;
            for (const auto& r : p.reps) {
              std::vector<std::size_t> tuple{g.cover().legs[i].target().finite().unit(),
                                             g.cover().legs[j].target().finite().unit(),
                                             g.cover().legs[k].target().finite().unit()};
              tuple[s] = r[0];
              tuple[t] = r[1];
              map.push_back(q.cls(tuple));
            }
            return map;
          };
          lifts.push_back({lift(g.pair(i, j), 0, 1), lift(g.pair(j, k), 1, 2), lift(g.pair(i, k), 0, 2)});
        }
  }

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * g.legs() + j; }

  // phi_st: x_s|st -> x_t|st moved to x_s|Q -> x_t|Q for the triple Q.
  ASetMap lift(const ASetMap& phi, std::size_t s, std::size_t t, std::size_t triple, int from, int to,
               int which) const {
    const auto& src = at_triple[triple][static_cast<std::size_t>(from)];
    const auto& dst = at_triple[triple][static_cast<std::size_t>(to)];
    const auto& l = left[pair_index(s, t)];
    const auto& r = right[pair_index(s, t)];
    const auto& up = lifts[triple][static_cast<std::size_t>(which)];
    const FiniteMonoid& pm = g.pair(s, t).monoid->finite();
    const FiniteMonoid& qm = src.set.monoid();
    ASetMap out(src.reps.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
      auto [e, q] = src.reps[c];
      auto [e2, p] = r.reps[phi[l.cls(e, pm.unit())]];
      out[c] = dst.cls(e2, qm.mul(up[p], q));
    }
    return out;
  }

  bool cocycle(const std::vector<ASetMap>& glue, std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t n = g.legs();
    const std::size_t tri = (i * n + j) * n + k;
    auto ij = lift(glue[pair_index(i, j)], i, j, tri, 0, 1, 0);
    auto jk = lift(glue[pair_index(j, k)], j, k, tri, 1, 2, 1);
    auto ik = lift(glue[pair_index(i, k)], i, k, tri, 0, 2, 2);
    for (std::size_t c = 0; c < ij.size(); ++c)
      if (jk[ij[c]] != ik[c]) return false;
    return true;
  }
};

}  // namespace

DescentDatum CoverGeometry::pullback(const FiniteASet& m) const {
  const std::size_t n = legs();
  std::vector<TensorProduct> t;
  DescentDatum d;
  for (const auto& f : cover_.legs) {
    t.push_back(tensor_detailed(m, f));
    d.pieces.push_back(t.back().set);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto l = restriction(d.pieces[i], i, j, 0);
      auto r = restriction(d.pieces[j], i, j, 1);
      const Amalgam& p = pair(i, j);
      const FiniteMonoid& pm = p.monoid->finite();
      const std::size_t unit_j = cover_.legs[j].target().finite().unit();
      ASetMap phi(l.reps.size());
      for (std::size_t c = 0; c < phi.size(); ++c) {
        auto [e, q] = l.reps[c];
        auto [x, b] = t[i].reps[e];
        phi[c] = r.cls(t[j].cls(x, unit_j), pm.mul(p.leg_maps[0][b], q));
      }
      d.glue.push_back(std::move(phi));
    }
  return d;
}

namespace {

std::vector<std::vector<std::size_t>> descent_tuples(const CoverGeometry& g, const DescentDatum& d,
                                                     const PieceContext& ctx, const Limits& limits) {
  const std::size_t n = g.legs();
  WorkCounter work(limits, "descent limit");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> e(n, 0);
  for (const auto& x : d.pieces)
    if (x.size() == 0) return out;
  while (true) {
    work.tick();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        const auto& l = ctx.left[i * n + j];
        const auto& r = ctx.right[i * n + j];
        const std::size_t unit = g.pair(i, j).monoid->finite().unit();
        ok = d.glue[i * n + j][l.cls(e[i], unit)] == r.cls(e[j], unit);
      }
    if (ok) out.push_back(e);
    std::size_t k = n;
    while (k-- > 0) {
      if (++e[k] < d.pieces[k].size()) break;
      e[k] = 0;
    }
    if (k == SIZE_MAX) break;
  }
  return out;
}

}  // namespace

FiniteASet CoverGeometry::descend(const DescentDatum& d) const {
  std::string why;
  if (!is_datum(d, &why)) throw InvalidInput("not a descent datum: " + why);
  PieceContext ctx(*this, d.pieces);
  auto tuples = descent_tuples(*this, d, ctx, limits_);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t t = 0; t < tuples.size(); ++t) index[tuples[t]] = t;
  const FiniteMonoid& a = cover_.base->finite();
  std::vector<std::vector<std::size_t>> legmaps;
  for (const auto& f : cover_.legs) legmaps.push_back(hom_table(f));
  FiniteASet::Table act(a.size(), std::vector<std::size_t>(tuples.size()));
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      auto e = tuples[t];
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = d.pieces[i].act(legmaps[i][s], e[i]);
      act[s][t] = index.at(e);
    }
  return FiniteASet(cover_.base, tuples.size(), std::move(act));
}

std::vector<ASetMap> CoverGeometry::counit(const DescentDatum& d, const FiniteASet& descended) const {
  PieceContext ctx(*this, d.pieces);
  auto tuples = descent_tuples(*this, d, ctx, limits_);
  if (tuples.size() != descended.size()) throw InvalidInput("the A-set is not the descended object of the datum");
  std::vector<ASetMap> out;
  for (std::size_t i = 0; i < legs(); ++i) {
    auto t = tensor_detailed(descended, cover_.legs[i]);
    ASetMap u(t.reps.size());
    for (std::size_t c = 0; c < u.size(); ++c) u[c] = d.pieces[i].act(t.reps[c].second, tuples[t.reps[c].first][i]);
    out.push_back(std::move(u));
  }
  return out;
}

bool CoverGeometry::is_datum(const DescentDatum& d, std::string* why) const {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  const std::size_t n = legs();
  if (d.pieces.size() != n) return fail("one piece per leg is needed");
  if (d.glue.size() != n * n) return fail("one gluing map per ordered pair of legs is needed");
  for (std::size_t i = 0; i < n; ++i)
    if (!same_monoid(d.pieces[i].monoid_ptr(), cover_.legs[i].target_ptr()))
      return fail("piece " + std::to_string(i) + " is not over the leg target");
  PieceContext ctx(*this, d.pieces);
  for (std::size_t p = 0; p < n * n; ++p) {
    const auto& l = ctx.left[p];
    const auto& r = ctx.right[p];
    if (!is_bijection(d.glue[p], r.set.size()) || d.glue[p].size() != l.set.size() ||
        !is_equivariant(l.set, r.set, d.glue[p]))
      return fail("gluing map " + std::to_string(p / n) + "," + std::to_string(p % n) +
                  " is not an equivariant bijection");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!ctx.cocycle(d.glue, i, j, k))
          return fail("cocycle fails on " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
  return true;
}

namespace {

bool family_is_morphism(const CoverGeometry& g, const DescentDatum& d, const DescentDatum& e, const PieceContext& cd,
                        const PieceContext& ce, const std::vector<ASetMap>& f) {
  const std::size_t n = g.legs();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_equivariant(d.pieces[i], e.pieces[i], f[i])) return false;
  for (std::size_t p = 0; p < n * n; ++p) {
    auto fi = tensor_map(f[p / n], cd.left[p], ce.left[p]);
    auto fj = tensor_map(f[p % n], cd.right[p], ce.right[p]);
    for (std::size_t c = 0; c < fi.size(); ++c)
      if (e.glue[p][fi[c]] != fj[d.glue[p][c]]) return false;
  }
  return true;
}

}  // namespace

bool CoverGeometry::is_morphism(const DescentDatum& d, const DescentDatum& e, const std::vector<ASetMap>& f) const {
  if (f.size() != legs()) return false;
  PieceContext cd(*this, d.pieces), ce(*this, e.pieces);
  return family_is_morphism(*this, d, e, cd, ce, f);
}

std::vector<std::vector<ASetMap>> CoverGeometry::morphisms(const DescentDatum& d, const DescentDatum& e) const {
  const std::size_t n = legs();
  PieceContext cd(*this, d.pieces), ce(*this, e.pieces);
  std::vector<std::vector<ASetMap>> per_leg;
  for (std::size_t i = 0; i < n; ++i) {
    per_leg.push_back(equivariant_maps(d.pieces[i], e.pieces[i], false, limits_));
    if (per_leg.back().empty()) return {};
  }
  WorkCounter work(limits_, "descent morphism search");
  std::vector<std::vector<ASetMap>> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    work.tick();
    std::vector<ASetMap> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(per_leg[i][pick[i]]);
    if (family_is_morphism(*this, d, e, cd, ce, f)) out.push_back(std::move(f));
    std::size_t k = n;
    while (k-- > 0) {
      if (++pick[k] < per_leg[k].size()) break;
      pick[k] = 0;
    }
    if (k == SIZE_MAX) break;
  }
  return out;
}

std::vector<DescentDatum> CoverGeometry::enumerate_data(std::size_t bound) const {
  const std::size_t n = legs();
  std::vector<std::vector<FiniteASet>> candidates;
  for (const auto& f : cover_.legs) candidates.push_back(enumerate_asets(f.target_ptr(), bound, limits_));
  WorkCounter work(limits_, "descent data enumeration");
  std::vector<DescentDatum> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<FiniteASet> pieces;
    for (std::size_t i = 0; i < n; ++i) pieces.push_back(candidates[i][pick[i]]);
    PieceContext ctx(*this, pieces);
    std::vector<std::vector<ASetMap>> isos;
    bool possible = true;
    for (std::size_t p = 0; p < n * n && possible; ++p) {
      isos.push_back(equivariant_maps(ctx.left[p].set, ctx.right[p].set, true, limits_));
      possible = !isos.back().empty();
    }
    if (possible) {
      // Assign gluing maps pair by pair; a triple is checked as soon as its
      // three pairs are assigned.
      std::vector<ASetMap> glue(n * n);
      std::function<void(std::size_t)> rec = [&](std::size_t p) {
        work.tick();
        if (p == n * n) {
          out.push_back({pieces, glue});
          return;
        }
        for (const auto& phi : isos[p]) {
          glue[p] = phi;
          bool ok = true;
          for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
              for (std::size_t k = 0; k < n && ok; ++k) {
                std::size_t a = i * n + j, b = j * n + k, c = i * n + k;
                if (std::max({a, b, c}) != p) continue;
                ok = ctx.cocycle(glue, i, j, k);
              }
          if (ok) rec(p + 1);
        }
      };
      rec(0);
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (++pick[k] < candidates[k].size()) break;
      pick[k] = 0;
    }
    if (k == SIZE_MAX) break;
  }
  return out;
}

// ---------------------------------------------------------------- checks

LabVerdict sheaf_equalizer_check(const Cover& c, const FiniteASet& m, const Limits& limits) {
  if (!same_monoid(m.monoid_ptr(), c.base)) throw InvalidInput("the A-set is not over the base of the cover");
  const std::size_t n = c.legs.size();
  WorkCounter work(limits, "equalizer check");
  std::vector<TensorProduct> t;
  for (const auto& f : c.legs) t.push_back(tensor_detailed(m, f));
  struct PairData {
    TensorProduct tp;
    std::vector<std::size_t> left, right;
  };
  std::vector<PairData> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto p = pushout(c.base, {c.legs[i], c.legs[j]}, limits);
      PairData pd{tensor_detailed(m, compose(p.legs[0], c.legs[i], limits)), {}, {}};
      for (const auto& [x, b] : t[i].reps) pd.left.push_back(pd.tp.cls(x, p.leg_maps[0][b]));
      for (const auto& [x, b] : t[j].reps) pd.right.push_back(pd.tp.cls(x, p.leg_maps[1][b]));
      pairs.push_back(std::move(pd));
    }
  std::set<std::vector<std::size_t>> equalizer;
  std::vector<std::size_t> e(n, 0);
  bool empty = std::any_of(t.begin(), t.end(), [](const TensorProduct& x) { return x.set.size() == 0; });
  while (!empty) {
    work.tick();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = pairs[i * n + j].left[e[i]] == pairs[i * n + j].right[e[j]];
    if (ok) equalizer.insert(e);
    std::size_t k = n;
    while (k-- > 0) {
      if (++e[k] < t[k].set.size()) break;
      e[k] = 0;
    }
    if (k == SIZE_MAX) break;
  }
  std::set<std::vector<std::size_t>> image;
  for (std::size_t x = 0; x < m.size(); ++x) {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < n; ++i) z.push_back(t[i].cls(x, c.legs[i].target().finite().unit()));
    if (!image.insert(z).second)
      return counterexample(m.size(), "two points of " + m.to_string() + " have the same image");
  }
  if (image != equalizer)
    return counterexample(m.size(), "the equalizer has " + std::to_string(equalizer.size()) + " points but " +
                                        m.to_string() + " has " + std::to_string(m.size()));
  return verified(m.size());
}

DescentReport descent_equivalence_check(const Cover& c, std::size_t bound, const Limits& limits) {
  if (bound == 0) throw InvalidInput("the carrier bound must be positive");
  DescentReport report;
  for (const auto& f : c.legs) {
    auto v = is_flat_bounded(f, bound, limits);
    if (!v.ok()) {
      report.verdict = {VerdictStatus::Inconclusive, bound, "a leg is not flat: " + v.detail};
      return report;
    }
  }
  auto cons = is_conservative_bounded(c, bound, limits);
  if (!cons.ok()) {
    report.verdict = {VerdictStatus::Inconclusive, bound, "the legs are not jointly conservative: " + cons.detail};
    return report;
  }

  CoverGeometry g(c, limits);
  auto objects = enumerate_asets(c.base, bound, limits);
  report.asets = objects.size();
  std::vector<DescentDatum> pulled;
  std::vector<std::vector<TensorProduct>> t(c.legs.size());
  for (const auto& o : objects) {
    pulled.push_back(g.pullback(o));
    for (std::size_t l = 0; l < c.legs.size(); ++l) t[l].push_back(tensor_detailed(o, c.legs[l]));
  }

  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      std::set<std::vector<ASetMap>> images;
      auto homs = equivariant_maps(objects[i], objects[j], false, limits);
      for (const auto& u : homs) {
        std::vector<ASetMap> fam;
        for (std::size_t l = 0; l < c.legs.size(); ++l) fam.push_back(tensor_map(u, t[l][i], t[l][j]));
        images.insert(std::move(fam));
      }
      std::string pair = objects[i].to_string() + " to " + objects[j].to_string();
      if (images.size() != homs.size()) {
        report.verdict = counterexample(bound, "not faithful on maps from " + pair);
        return report;
      }
      auto desc = g.morphisms(pulled[i], pulled[j]);
      std::set<std::vector<ASetMap>> glued(desc.begin(), desc.end());
      if (glued != images) {
        report.verdict = counterexample(bound, "not full on maps from " + pair);
        return report;
      }
    }

  for (auto& d : g.enumerate_data(bound)) {
    ++report.data;
    auto x = g.descend(d);
    auto eps = g.counit(d, x);
    bool ok = g.is_morphism(g.pullback(x), d, eps);
    for (std::size_t i = 0; i < eps.size() && ok; ++i) ok = is_bijection(eps[i], d.pieces[i].size());
    if (!ok) {
      report.verdict = counterexample(bound, "a descent datum does not come from an A-set");
      report.offending = std::move(d);
      return report;
    }
  }
  report.verdict = verified(bound);
  return report;
}

// ---------------------------------------------------------------- search

namespace {

std::vector<MonoidPtr> catalogue_upto(std::size_t max_order) {
  std::vector<MonoidPtr> out;
  for (std::size_t order = 1; order <= max_order; ++order) {
    auto cat = finite_monoid_catalogue(order);
    for (std::size_t k = 0; k < cat.size(); ++k)
      out.push_back(make_monoid(cat[k], "M" + std::to_string(order) + "." + std::to_string(k)));
  }
  return out;
}

LabVerdict cover_verdict(const Cover& c, std::size_t bound, const Limits& limits) {
  for (const auto& f : c.legs) {
    auto v = is_flat_bounded(f, bound, limits);
    if (!v.ok()) return v;
  }
  return is_conservative_bounded(c, bound, limits);
}

}  // namespace

std::vector<DiscoveredCover> discover_covers(std::size_t max_order, std::size_t max_legs, std::size_t bound,
                                             const Limits& limits) {
  if (max_legs == 0 || bound == 0) throw InvalidInput("search bounds must be positive");
  auto cat = catalogue_upto(max_order);
  std::vector<DiscoveredCover> out;
  for (const auto& a : cat) {
    std::vector<MonoidHom> flat;
    for (const auto& b : cat)
      for (const auto& f : hom_enumerate(a, b, limits))
        if (is_flat_bounded(f, bound, limits).ok()) flat.push_back(f);
    // Multisets of flat legs, as nondecreasing index sequences.
    std::vector<std::size_t> idx;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!idx.empty()) {
        std::vector<MonoidHom> legs;
        for (std::size_t k : idx) legs.push_back(flat[k]);
        Cover c(a, std::move(legs));
        auto cons = is_conservative_bounded(c, bound, limits);
        if (cons.ok()) {
          bool split = split_leg(c, limits).has_value();
          out.push_back({std::move(c), split, verified(bound), cons});
        }
      }
      if (idx.size() == max_legs) return;
      for (std::size_t k = from; k < flat.size(); ++k) {
        idx.push_back(k);
        rec(k);
        idx.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

PretopologyReport check_pretopology(const std::vector<DiscoveredCover>& sample, std::size_t max_order,
                                    std::size_t bound, const Limits& limits) {
  PretopologyReport r;
  r.verdict = verified(bound);
  auto fail = [&](const std::string& what, const Cover& c, const LabVerdict& v) {
    r.verdict = counterexample(bound, what + " is not a cover: " + c.to_string() + ": " + v.detail);
  };
  auto cat = catalogue_upto(max_order);
  for (const auto& a : cat)
    for (const auto& f : hom_enumerate(a, a, limits)) {
      auto t = hom_table(f);
      if (!is_bijection(t, t.size())) continue;
      Cover c(a, {f});
      auto v = cover_verdict(c, bound, limits);
      ++r.isomorphisms;
      if (!v.ok()) {
        fail("an isomorphism", c, v);
        return r;
      }
    }
  for (const auto& s : sample) {
    for (const auto& target : cat)
      for (const auto& g : hom_enumerate(s.cover.base, target, limits)) {
        auto c = base_change(s.cover, g, limits);
        auto v = cover_verdict(c, bound, limits);
        ++r.base_changes;
        if (!v.ok()) {
          fail("a base change", c, v);
          return r;
        }
      }
    for (std::size_t i = 0; i < s.cover.legs.size(); ++i)
      for (const auto& k : sample) {
        if (!same_monoid(k.cover.base, s.cover.legs[i].target_ptr())) continue;
        std::vector<Cover> inner;
        for (std::size_t l = 0; l < s.cover.legs.size(); ++l)
          inner.push_back(l == i ? k.cover
                                 : Cover(s.cover.legs[l].target_ptr(), {MonoidHom::identity(s.cover.legs[l].target_ptr())}));
        auto c = compose_covers(s.cover, inner, limits);
        auto v = cover_verdict(c, bound, limits);
        ++r.composites;
        if (!v.ok()) {
          fail("a composite", c, v);
          return r;
        }
      }
  }
  return r;
}

}  // namespace belowz
