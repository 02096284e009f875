#include "belowz/descent.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace belowz;

namespace {

MonoidHom hom(const MonoidPtr& a, const MonoidPtr& b, const std::vector<std::size_t>& table) {
  std::vector<Element> images;
  for (std::size_t x : table) images.emplace_back(FiniteIndex{x});
  return MonoidHom(a, b, std::move(images));
}

std::vector<std::size_t> table_of(const MonoidHom& f) {
  std::vector<std::size_t> t;
  for (std::size_t x = 0; x < f.source().finite().size(); ++x)
    t.push_back(std::get<FiniteIndex>(f(Element(FiniteIndex{x}))));
  return t;
}

// <t | t^(i+p) = t^i>, elements t^0 .. t^(i+p-1).
MonoidPtr cyclic_monoid(std::size_t i, std::size_t p) {
  const std::size_t n = i + p;
  auto reduce = [&](std::size_t k) { return k < n ? k : i + (k - i) % p; };
  FiniteMonoid::Table t(n, std::vector<std::size_t>(n));
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back("t" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = reduce(a + b);
  }
  return make_monoid(FiniteMonoid(names, t, 0), "C" + std::to_string(i) + "," + std::to_string(p));
}

std::vector<MonoidPtr> catalogue(std::size_t max_order) {
  std::vector<MonoidPtr> out;
  for (std::size_t n = 1; n <= max_order; ++n)
    for (auto& m : finite_monoid_catalogue(n)) out.push_back(make_monoid(std::move(m)));
  return out;
}

Cover identity_cover(const MonoidPtr& a) { return Cover(a, {MonoidHom::identity(a)}); }

}  // namespace

TEST_CASE("A-sets") {
  auto z2 = builtin_monoid("Z/2");
  CHECK_THROWS_AS(FiniteASet(z2, 2, {{0, 1}, {0, 0}}), InvalidInput);  // a.a must be the identity
  CHECK_THROWS_AS(FiniteASet(z2, 2, {{1, 0}, {1, 0}}), InvalidInput);  // unit must fix points
  CHECK(FiniteASet::free(z2).size() == 2);
  CHECK(FiniteASet::point(z2).size() == 1);

  // Iso classes of size 0..3: sets; involutions; idempotents (partitions of k).
  CHECK(enumerate_asets(builtin_monoid("triv"), 3).size() == 4);
  CHECK(enumerate_asets(z2, 3).size() == 1 + 1 + 2 + 2);
  CHECK(enumerate_asets(builtin_monoid("triv+0"), 3).size() == 1 + 1 + 2 + 3);

  // Every action table on at most 3 points is isomorphic to exactly one listed set.
  for (const auto& a : catalogue(3)) {
    auto listed = enumerate_asets(a, 3);
    const auto& m = a->finite();
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<std::vector<std::size_t>> endos;
      std::vector<std::size_t> e(k, 0);
      while (true) {
        endos.push_back(e);
        std::size_t i = 0;
        while (i < k && e[i] == k - 1) e[i++] = 0;
        if (i == k) break;
        ++e[i];
      }
      std::vector<std::size_t> pick(m.size(), 0);
      while (true) {
        FiniteASet::Table act;
        for (std::size_t x = 0; x < m.size(); ++x) act.push_back(endos[pick[x]]);
        bool valid = true;
        for (std::size_t y = 0; y < k && valid; ++y) valid = act[m.unit()][y] == y;
        for (std::size_t s = 0; s < m.size() && valid; ++s)
          for (std::size_t t = 0; t < m.size() && valid; ++t)
            for (std::size_t y = 0; y < k && valid; ++y) valid = act[m.mul(s, t)][y] == act[s][act[t][y]];
        if (valid) {
          FiniteASet x(a, k, act);
          std::size_t matches = 0;
          for (const auto& l : listed) matches += isomorphic(x, l);
          CHECK(matches == 1);
        }
        std::size_t i = 0;
        while (i < m.size() && pick[i] == endos.size() - 1) pick[i++] = 0;
        if (i == m.size()) break;
        ++pick[i];
      }
    }
  }
}

TEST_CASE("tensor products") {
  auto z2 = builtin_monoid("Z/2");
  for (const auto& m : enumerate_asets(z2, 3)) CHECK(isomorphic(tensor_aset(m, MonoidHom::identity(z2)), m));

  // The free set goes to the free set.
  auto z4 = builtin_monoid("Z/4");
  auto inc = hom(z2, z4, {0, 2});
  CHECK(isomorphic(tensor_aset(FiniteASet::free(z2), inc), FiniteASet::free(z4)));

  // A point over {1,0} along the map to the trivial monoid.
  auto a = builtin_monoid("triv+0");
  auto triv = builtin_monoid("triv");
  CHECK(tensor_aset(FiniteASet::point(a), hom(a, triv, {0, 0})).size() == 1);

  // Against the component-counting oracle on every catalogued map.
  auto cat = catalogue(3);
  for (const auto& s : cat)
    for (const auto& t : cat)
      for (const auto& f : hom_enumerate(s, t)) {
        auto ft = table_of(f);
        for (const auto& m : enumerate_asets(s, 3)) {
          auto tp = tensor_detailed(m, f);
          CHECK(tp.set.size() == oracle::tensor_size(m.table(), m.size(), ft, t->finite()));
          for (std::size_t x = 0; x < m.size(); ++x)
            for (std::size_t g = 0; g < s->finite().size(); ++g)
              CHECK(tp.cls(m.act(g, x), t->finite().unit()) == tp.cls(x, ft[g]));
        }
      }

  // (M x_A B) x_B C and M x_A C agree.
  for (const auto& s : catalogue(2))
    for (const auto& t : cat)
      for (const auto& u : catalogue(2))
        for (const auto& f : hom_enumerate(s, t))
          for (const auto& g : hom_enumerate(t, u))
            for (const auto& m : enumerate_asets(s, 3))
              CHECK(isomorphic(tensor_aset(tensor_aset(m, f), g), tensor_aset(m, compose(g, f))));
}

TEST_CASE("pushouts of finite monoids") {
  auto cat = catalogue(3);
  auto small = catalogue(2);
  std::size_t checked = 0;
  for (const auto& a : small)
    for (const auto& b : cat)
      for (const auto& c : cat)
        for (const auto& f : hom_enumerate(a, b))
          for (const auto& g : hom_enumerate(a, c)) {
            auto p = pushout(a, {f, g});
            CHECK(compose(p.legs[0], f).same_map(compose(p.legs[1], g)));
            for (const auto& t : small)
              CHECK(oracle::brute_homs(p.monoid->finite(), t->finite()).size() ==
                    oracle::pushout_hom_count(a->finite(), b->finite(), table_of(f), c->finite(), table_of(g),
                                              t->finite()));
            ++checked;
          }
  CHECK(checked > 50);

  // Over the trivial monoid the pushout is the product: Z/2 x Z/3 = Z/6.
  auto triv = builtin_monoid("triv");
  auto p = pushout(triv, {hom(triv, builtin_monoid("Z/2"), {0}), hom(triv, builtin_monoid("Z/3"), {0})});
  CHECK(p.monoid->finite().size() == 6);
  CHECK(p.monoid->finite().units().size() == 6);
}

TEST_CASE("flatness") {
  auto z2 = builtin_monoid("Z/2");
  auto triv = builtin_monoid("triv");
  auto zero = builtin_monoid("triv+0");
  CHECK(is_flat_bounded(MonoidHom::identity(z2), 3).ok());
  CHECK_THROWS_AS(is_flat_bounded(MonoidHom::identity(z2), 0), InvalidInput);
  // Free extension: the point becomes two points.
  auto v = is_flat_bounded(hom(triv, z2, {0}), 3);
  CHECK(v.status == VerdictStatus::CounterexampleFound);
  CHECK(v.detail.find("terminal") != std::string::npos);
  // Orbit sets do not commute with products.
  v = is_flat_bounded(hom(z2, triv, {0, 0}), 3);
  CHECK(v.status == VerdictStatus::CounterexampleFound);
  CHECK(v.detail.find("product") != std::string::npos);
  // Inverting 0 sends M to 0.M, a retract, which keeps every limit.
  CHECK(is_flat_bounded(hom(zero, triv, {0, 0}), 3).ok());

  // Localizations are flat.
  for (const auto& a : catalogue(3))
    for (std::size_t s = 0; s < a->finite().size(); ++s)
      CHECK(is_flat_bounded(localize(a, {Element(FiniteIndex{s})}).map, 3).ok());
  // The finite shadows of N -> Z: <t | t^(i+p) = t^i> -> Z/p.
  for (std::size_t i = 0; i <= 2; ++i)
    for (std::size_t p = 1; p <= 3; ++p) {
      auto c = cyclic_monoid(i, p);
      auto loc = localize(c, {Element(FiniteIndex{i + p > 1 ? 1u : 0u})});
      CHECK(loc.monoid->finite().size() == p);
      CHECK(is_flat_bounded(loc.map, 3).ok());
    }
}

TEST_CASE("conservativity") {
  auto z2 = builtin_monoid("Z/2");
  CHECK(is_conservative_bounded(identity_cover(z2), 3).ok());
  CHECK(is_conservative_bounded(Cover(z2, {MonoidHom::identity(z2), MonoidHom::identity(z2)}), 3).ok());

  auto zero = builtin_monoid("triv+0");
  auto triv = builtin_monoid("triv");
  Cover collapse(zero, {hom(zero, triv, {0, 0})});
  auto v = is_conservative_bounded(collapse, 3);
  CHECK(v.status == VerdictStatus::CounterexampleFound);
  CHECK(v.detail.find("becomes invertible") != std::string::npos);
  CHECK(is_conservative_bounded(Cover(zero, {hom(zero, triv, {0, 0}), MonoidHom::identity(zero)}), 3).ok());

  CHECK_THROWS_AS(Cover(zero, {}), InvalidInput);
  CHECK_THROWS_AS(Cover(zero, {MonoidHom::identity(z2)}), InvalidInput);
}

TEST_CASE("verdicts only hold up to their bound") {
  // F4* -> {1,0} kills the units. Sets where Z/3 acts freely need a fixed
  // point for 0, so the failures only show up on four points.
  auto f4 = builtin_monoid("Fq*:4");
  auto zero = builtin_monoid("triv+0");
  const auto& m = f4->finite();
  std::vector<std::size_t> t;
  for (std::size_t x = 0; x < m.size(); ++x) t.push_back(m.is_unit(x) ? 0 : 1);
  Cover c(f4, {hom(f4, zero, t)});
  CHECK_FALSE(split_leg(c).has_value());
  CHECK(is_flat_bounded(c.legs[0], 3).ok());
  CHECK(is_conservative_bounded(c, 3).ok());
  CHECK(is_flat_bounded(c.legs[0], 4).status == VerdictStatus::CounterexampleFound);
  CHECK(is_conservative_bounded(c, 4).status == VerdictStatus::CounterexampleFound);
}

TEST_CASE("the sheaf condition") {
  auto z2 = builtin_monoid("Z/2");
  for (const auto& m : enumerate_asets(z2, 3)) CHECK(sheaf_equalizer_check(identity_cover(z2), m).ok());

  auto covers = discover_covers(3, 2, 3);
  REQUIRE_FALSE(covers.empty());
  for (const auto& c : covers)
    for (const auto& m : enumerate_asets(c.cover.base, 3)) CHECK(sheaf_equalizer_check(c.cover, m).ok());

  // Off a cover the condition fails: 0 collapses {x, 0} to a point.
  auto zero = builtin_monoid("triv+0");
  Cover collapse(zero, {hom(zero, builtin_monoid("triv"), {0, 0})});
  CHECK_FALSE(sheaf_equalizer_check(collapse, FiniteASet::free(zero)).ok());
}

TEST_CASE("descent data") {
  auto zero = builtin_monoid("triv+0");
  auto triv = builtin_monoid("triv");
  Cover split(zero, {hom(zero, triv, {0, 0}), MonoidHom::identity(zero)});
  CoverGeometry g(split);
  CHECK(g.pair(0, 1).monoid->finite().size() == 1);
  CHECK(g.pair(1, 1).monoid->finite().size() == 2);

  for (const auto& m : enumerate_asets(zero, 3)) {
    auto d = g.pullback(m);
    std::string why;
    CHECK_MESSAGE(g.is_datum(d, &why), why);
    CHECK(isomorphic(g.descend(d), m));
  }
  auto d = g.pullback(FiniteASet::free(zero));
  auto bad = d;
  bad.glue[3] = {1, 0};
  std::string why;
  CHECK_FALSE(g.is_datum(bad, &why));
  CHECK_FALSE(why.empty());

  // p_* is right adjoint to p^*: hom sets have the same size.
  auto data = g.enumerate_data(2);
  CHECK(data.size() > 3);
  for (const auto& m : enumerate_asets(zero, 2))
    for (const auto& e : data) {
      auto x = g.descend(e);
      CHECK(equivariant_maps(m, x).size() == g.morphisms(g.pullback(m), e).size());
    }
}

TEST_CASE("descent equivalence") {
  auto z2 = builtin_monoid("Z/2");
  auto r = descent_equivalence_check(identity_cover(z2), 3);
  CHECK(r.verdict.ok());
  CHECK(r.asets == 6);
  CHECK(r.data == 6);

  auto zero = builtin_monoid("triv+0");
  auto triv = builtin_monoid("triv");
  CHECK(descent_equivalence_check(Cover(zero, {hom(zero, triv, {0, 0}), MonoidHom::identity(zero)}), 3).verdict.ok());
  auto off = descent_equivalence_check(Cover(zero, {hom(zero, triv, {0, 0})}), 3);
  CHECK(off.verdict.status == VerdictStatus::Inconclusive);

  for (const auto& c : discover_covers(3, 2, 3)) {
    CHECK(c.split);
    auto rep = descent_equivalence_check(c.cover, 3);
    CHECK_MESSAGE(rep.verdict.ok(), c.cover.to_string() << ": " << rep.verdict.detail);
  }
}

TEST_CASE("pretopology") {
  auto covers = discover_covers(2, 2, 3);
  for (const auto& c : covers) {
    CHECK(c.flat.ok());
    CHECK(c.conservative.ok());
  }
  auto report = check_pretopology(covers, 2, 3);
  CHECK(report.verdict.ok());
  CHECK(report.isomorphisms == 3);
  CHECK(report.base_changes > 0);
  CHECK(report.composites > 0);

  // Base change of the identity cover is an identity cover.
  auto z2 = builtin_monoid("Z/2");
  auto z4 = builtin_monoid("Z/4");
  auto bc = base_change(identity_cover(z2), hom(z2, z4, {0, 2}));
  CHECK(bc.legs[0].target().finite().size() == 4);
  CHECK(is_bijection(table_of(bc.legs[0]), 4));

  auto composite = compose_covers(identity_cover(z2), {identity_cover(z2)});
  CHECK(composite.legs.size() == 1);
  CHECK_THROWS_AS(compose_covers(identity_cover(z2), {identity_cover(z4)}), InvalidInput);
}
