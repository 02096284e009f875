#include "belowz/monoid.hpp"
#include "belowz/semiring.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace belowz;

namespace {

ExponentVector vec(std::initializer_list<Integer> xs) {
  ExponentVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("finite fields and semirings") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    auto f = finite_field(q);
    CHECK(f.size() == static_cast<std::size_t>(q));
    CHECK(f.is_ring());
    CHECK(f.is_local());
    CHECK(f.multiplicative_monoid().units().size() == static_cast<std::size_t>(q - 1));
  }
  CHECK_THROWS_AS(finite_field(6), Unsupported);
  CHECK_FALSE(integers_mod(6).is_local());
  CHECK(integers_mod(4).is_local());
  auto b = boolean_semiring();
  CHECK_FALSE(b.is_ring());
  CHECK(b.is_local());
  CHECK_THROWS_AS(FiniteSemiring("bad", {"0", "1"}, {{0, 1}, {1, 0}}, {{0, 0}, {0, 0}}, 0, 1), InvalidInput);
}

TEST_CASE("finite monoid construction checks the axioms") {
  CHECK_THROWS_AS(FiniteMonoid({"1", "a"}, {{0, 1}, {0, 1}}, 0), InvalidInput);
  CHECK_THROWS_AS(FiniteMonoid({"1", "a", "b"}, {{0, 1, 2}, {1, 2, 2}, {2, 2, 1}}, 0), InvalidInput);
  auto z4 = cyclic_group(4);
  CHECK(z4.generators() == std::vector<std::size_t>{1});
  CHECK(z4.power(1, -1) == 3);
}

TEST_CASE("affine monoid membership") {
  auto m = AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})});
  CHECK(m.contains(vec({3, 3})));
  CHECK(m.contains(vec({0, 0})));
  CHECK_FALSE(m.contains(vec({0, 1})));
  CHECK_FALSE(m.contains(vec({1, 3})));
  CHECK(m.inverted().empty());
  // Units are detected even when not declared.
  auto g = AffineMonoid(1, {vec({1}), vec({-2})});
  CHECK(g.inverted() == std::vector<std::size_t>{0, 1});
  CHECK(g.contains(vec({-7})));
  // Membership agrees with the bounded sum oracle on a box.
  auto s = AffineMonoid(2, {vec({2, 0}), vec({1, 1}), vec({0, 3}), vec({-1, 0})}, {3});
  auto ball = oracle::monoid_ball(s, 8);
  for (const auto& v : oracle::box(2, 3)) CHECK(s.contains(v) == (ball.count(v) > 0));
}

TEST_CASE("hom enumeration") {
  auto n = builtin_monoid("N");
  auto z = builtin_monoid("Z");
  auto f3 = builtin_monoid("Fq*:3");
  CHECK(hom_enumerate(n, f3).size() == 3);
  auto zf3 = hom_enumerate(z, f3);
  REQUIRE(zf3.size() == 2);
  CHECK(std::get<FiniteIndex>(zf3[0].images()[0]) == 1);
  CHECK(std::get<FiniteIndex>(zf3[1].images()[0]) == 2);
  CHECK(hom_enumerate(builtin_monoid("Z/2"), builtin_monoid("triv")).size() == 1);

  SUBCASE("finite sources agree with the all-functions oracle") {
    for (std::size_t a = 1; a <= 3; ++a)
      for (const auto& ma : finite_monoid_catalogue(a))
        for (std::size_t b = 1; b <= 3; ++b)
          for (const auto& mb : finite_monoid_catalogue(b))
            CHECK(hom_enumerate(make_monoid(ma), make_monoid(mb)).size() == oracle::brute_hom_count(ma, mb));
  }
  SUBCASE("affine sources agree with the relation oracle") {
    auto cone = AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})});
    auto mp = make_monoid(cone);
    for (std::size_t b = 1; b <= 4; ++b)
      for (const auto& mb : finite_monoid_catalogue(b))
        CHECK(hom_enumerate(mp, make_monoid(mb)).size() ==
              oracle::brute_affine_hom_count(cone, mb, {vec({1, -2, 1})}));
    auto laurent = AffineMonoid(2, {vec({1, 0}), vec({0, 1}), vec({-1, 1})}, {0});
    auto lp = make_monoid(laurent);
    for (std::size_t b = 1; b <= 4; ++b)
      for (const auto& mb : finite_monoid_catalogue(b))
        CHECK(hom_enumerate(lp, make_monoid(mb)).size() ==
              oracle::brute_affine_hom_count(laurent, mb, {vec({1, -1, 1})}));
  }
  SUBCASE("budget") {
    Limits tiny;
    tiny.enumeration_budget = 5;
    CHECK_THROWS_AS(hom_enumerate(builtin_monoid("N^3"), builtin_monoid("Fq*:5"), tiny), BudgetExceeded);
  }
}

TEST_CASE("composition of enumerated homs is associative and unital") {
  auto a = builtin_monoid("Z/2");
  auto b = make_monoid(finite_monoid_catalogue(3)[2]);
  auto c = builtin_monoid("Fq*:3");
  auto ab = hom_enumerate(a, b);
  auto bc = hom_enumerate(b, c);
  auto cc = hom_enumerate(c, c);
  for (const auto& f : ab) {
    CHECK(compose(MonoidHom::identity(b), f).same_map(f));
    CHECK(compose(f, MonoidHom::identity(a)).same_map(f));
    for (const auto& g : bc)
      for (const auto& h : cc) CHECK(compose(h, compose(g, f)).same_map(compose(compose(h, g), f)));
  }
}

TEST_CASE("localization") {
  auto n = builtin_monoid("N");
  auto l = localize(n, {vec({1})});
  CHECK(*l.monoid == *builtin_monoid("Z"));
  CHECK(l.map.certificate().kind == ZariskiKind::Localization);

  auto n2 = builtin_monoid("N^2");
  auto l2 = localize(n2, {vec({1, 0})});
  CHECK(l2.monoid->contains(vec({-1, 0})));
  CHECK_FALSE(l2.monoid->contains(vec({0, -1})));

  auto z = builtin_monoid("Z");
  auto lz = localize(z, {vec({5})});
  CHECK(lz.monoid == z);
  CHECK(lz.map.same_map(MonoidHom::identity(z)));

  SUBCASE("idempotence") {
    auto again = localize(l2.monoid, {vec({1, 0})});
    CHECK(*again.monoid == *l2.monoid);
    CHECK(again.map.same_map(MonoidHom::identity(l2.monoid)));
  }
  SUBCASE("finite localization inverts the chosen element") {
    auto abs = builtin_monoid("triv+0");
    auto l0 = localize(abs, {FiniteIndex{1}});
    CHECK(l0.monoid->finite().size() == 1);
    for (const auto& m : finite_monoid_catalogue(3))
      for (std::size_t s = 0; s < 3; ++s) {
        auto mp = make_monoid(m);
        auto loc = localize(mp, {FiniteIndex{s}});
        Element img = loc.map(FiniteIndex{s});
        CHECK(loc.monoid->inverse(img).has_value());
        auto twice = localize(loc.monoid, {img});
        CHECK(twice.monoid->finite().size() == loc.monoid->finite().size());
      }
  }
  SUBCASE("restriction along a localization picks out maps inverting S") {
    auto m = make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})}));
    auto loc = localize(m, {vec({1, 0})});
    for (std::size_t order = 1; order <= 4; ++order)
      for (const auto& t : finite_monoid_catalogue(order)) {
        auto tp = make_monoid(t);
        auto down = hom_enumerate(loc.monoid, tp);
        std::size_t expected = 0;
        for (const auto& h : hom_enumerate(m, tp))
          if (t.is_unit(std::get<FiniteIndex>(h.images()[0]))) ++expected;
        CHECK(down.size() == expected);
        std::set<std::vector<std::size_t>> restricted;
        for (const auto& h : down) {
          std::vector<std::size_t> key;
          for (const auto& y : loc.map.images()) key.push_back(std::get<FiniteIndex>(h(y)));
          restricted.insert(key);
        }
        CHECK(restricted.size() == down.size());
      }
  }
  SUBCASE("finitely presented") {
    auto fp = make_monoid(FPMonoid(2, {{vec({1, 1}), vec({0, 2})}}));
    auto lf = localize(fp, {vec({0, 1})});
    CHECK(lf.monoid->fp().num_gens() == 3);
    CHECK(lf.monoid->equal(vec({1, 0, 0}), vec({0, 1, 0})));
  }
}

TEST_CASE("units") {
  auto un = units(builtin_monoid("N"));
  CHECK(un.monoid->affine().num_gens() == 0);
  auto uf = units(builtin_monoid("Fq*:4"));
  CHECK(uf.monoid->finite().size() == 3);
  CHECK(uf.monoid->finite().generators().size() == 1);
  auto zn = make_monoid(AffineMonoid(2, {vec({1, 0}), vec({0, 1})}, {0}));
  auto uz = units(zn);
  REQUIRE(uz.monoid->affine().num_gens() == 1);
  CHECK(vec_equal(uz.monoid->affine().gens()[0], vec({1, 0})));
  CHECK_THROWS_AS(units(make_monoid(FPMonoid(1, {}))), Unsupported);
}

TEST_CASE("every monoid is local") {
  for (std::size_t order = 1; order <= 4; ++order)
    for (const auto& m : finite_monoid_catalogue(order))
      for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y)
          if (!m.is_unit(x)) CHECK_FALSE(m.is_unit(m.mul(x, y)));
}

TEST_CASE("prime spectrum") {
  CHECK(prime_spectrum(builtin_monoid("N")).size() == 2);
  CHECK(prime_spectrum(builtin_monoid("Z")).size() == 1);
  auto p2 = prime_spectrum(builtin_monoid("N^2"));
  REQUIRE(p2.size() == 4);
  CHECK(p2.front().ideal.empty());
  CHECK(p2.back().ideal.size() == 2);
  CHECK(prime_spectrum(make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})}))).size() == 4);
  for (std::size_t order = 1; order <= 4; ++order)
    for (const auto& m : finite_monoid_catalogue(order)) {
      auto primes = prime_spectrum(make_monoid(m));
      // The maximal ideal is the set of non-units.
      std::vector<std::size_t> nonunits;
      for (std::size_t x = 0; x < order; ++x)
        if (!m.is_unit(x)) nonunits.push_back(x);
      CHECK(primes.back().ideal == nonunits);
      for (const auto& p : primes) {
        std::vector<bool> in(order, false);
        for (std::size_t x : p.face) in[x] = true;
        for (std::size_t x = 0; x < order; ++x)
          for (std::size_t y = 0; y < order; ++y) CHECK((in[x] && in[y]) == in[m.mul(x, y)]);
      }
    }
}

TEST_CASE("catalogue of small commutative monoids") {
  CHECK(finite_monoid_catalogue(1).size() == 1);
  CHECK(finite_monoid_catalogue(2).size() == 2);
  CHECK(finite_monoid_catalogue(3).size() == 5);
  CHECK(finite_monoid_catalogue(4).size() == 19);
}

TEST_CASE("epimorphism verdicts") {
  auto n = builtin_monoid("N");
  auto loc = localize(n, {vec({1})});
  CHECK(is_epimorphism_bounded(loc.map, 3).status == VerdictStatus::ProvenStructurally);
  CHECK(is_epimorphism_bounded(MonoidHom::identity(n), 3).status == VerdictStatus::ProvenStructurally);
  auto n2 = builtin_monoid("N^2");
  MonoidHom diag(n, n2, {vec({1, 1})});
  auto v = is_epimorphism_bounded(diag, 3);
  CHECK(v.status == VerdictStatus::CounterexampleFound);
  REQUIRE(v.witness.has_value());
  CHECK((*v.witness)->finite().size() == 2);
  REQUIRE(v.witness_maps.size() == 2);
  CHECK_FALSE(v.witness_maps[0].same_map(v.witness_maps[1]));
  // An uncertified isomorphism is verified, not proven.
  MonoidHom swap(n2, n2, {vec({0, 1}), vec({1, 0})});
  CHECK(is_epimorphism_bounded(swap, 3).status == VerdictStatus::VerifiedUpTo);
}

TEST_CASE("hom validation rejects non-homomorphisms") {
  auto n2 = builtin_monoid("N^2");
  auto cone = make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})}));
  CHECK_THROWS_AS(MonoidHom(cone, n2, {vec({1, 0}), vec({0, 1}), vec({0, 1})}), InvalidInput);
  CHECK_NOTHROW(MonoidHom(cone, n2, {vec({2, 0}), vec({1, 1}), vec({0, 2})}));
  auto f3 = builtin_monoid("Fq*:3");
  CHECK_THROWS_AS(MonoidHom(cone, f3, {FiniteIndex{2}, FiniteIndex{1}, FiniteIndex{1}}), InvalidInput);
  CHECK_NOTHROW(MonoidHom(cone, f3, {FiniteIndex{2}, FiniteIndex{1}, FiniteIndex{2}}));
  CHECK_THROWS_AS(MonoidHom(builtin_monoid("Z"), builtin_monoid("N"), {vec({1})}), InvalidInput);
}

TEST_CASE("presentations") {
  auto p = presentation(*builtin_monoid("Z/2"));
  REQUIRE(p.relations.size() == 1);
  CHECK(vec_equal(p.relations[0].lhs, vec({2})));
  CHECK(vec_equal(p.relations[0].rhs, vec({0})));
  auto cone = presentation(*make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})})));
  REQUIRE(cone.relations.size() == 1);
  CHECK(vec_equal(cone.relations[0].lhs, vec({1, 0, 1})));
  CHECK(vec_equal(cone.relations[0].rhs, vec({0, 2, 0})));
  CHECK(presentation(*builtin_monoid("N^2")).relations.empty());
}
