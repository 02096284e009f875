#include "belowz/algebra.hpp"
#include "belowz/cone.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <numeric>
#include <random>

using namespace belowz;

namespace {

ExponentVector vec(std::initializer_list<Integer> xs) {
  ExponentVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

MonoidPtr a1_chart() { return make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})}), "A1"); }

// A mixed catalogue: free, finite, affine, absorbing.
std::vector<MonoidPtr> test_monoids() {
  std::vector<MonoidPtr> out = {builtin_monoid("N"),     builtin_monoid("Z"),     builtin_monoid("N^2"),
                                builtin_monoid("Z/2"),   builtin_monoid("Z/3"),   builtin_monoid("Z/4"),
                                builtin_monoid("triv"),  builtin_monoid("triv+0"), builtin_monoid("Fq*:4"),
                                builtin_monoid("Fq*:5"), a1_chart(),
                                make_monoid(AffineMonoid(2, {vec({1, 0}), vec({0, 1})}, {0}), "ZxN")};
  for (const auto& f : finite_monoid_catalogue(3)) out.push_back(make_monoid(f));
  return out;
}

std::vector<FiniteSemiring> test_semirings() {
  return {finite_field(2), finite_field(3), finite_field(4), integers_mod(4), integers_mod(6), boolean_semiring()};
}

MonoidAlgebraElement random_element(const MonoidAlgebra& a, std::mt19937& rng) {
  const Monoid& m = a.monoid();
  auto dom = m.hom_domain();
  std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
  std::uniform_int_distribution<int> coef(a.base() == Base::Z ? -3 : 0, 3);
  MonoidAlgebraElement out = a.zero();
  for (int k = 0; k < 3; ++k) {
    Element x = m.identity();
    for (int j = 0; j < k; ++j) x = m.multiply(x, dom[pick(rng)]);
    out = a.add(out, a.monomial(x, coef(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("monoid algebra arithmetic") {
  auto a = monoid_algebra(builtin_monoid("N"), Base::N);
  auto one_t = a.add(a.one(), a.monomial(vec({1})));
  auto sq = a.mul(one_t, one_t);
  CHECK(a.format(sq) == "1 + 2*t + t^2");
  CHECK(sq == a.add(a.add(a.one(), a.monomial(vec({1}), 2)), a.monomial(vec({2}))));
  CHECK_THROWS_AS(a.negate(sq), Unsupported);
  CHECK(a.format(a.zero()) == "0");

  auto z2 = monoid_algebra(builtin_monoid("Z/2"), Base::Z);
  auto g = z2.monomial(FiniteIndex{1});
  auto p = z2.mul(z2.add(z2.one(), g), z2.add(z2.one(), z2.negate(g)));
  CHECK(p == z2.zero());
}

TEST_CASE("semiring laws on sampled elements") {
  std::mt19937 rng(7);
  for (const auto& m : test_monoids())
    for (Base base : {Base::N, Base::Z}) {
      auto a = monoid_algebra(m, base);
      for (int trial = 0; trial < 10; ++trial) {
        auto x = random_element(a, rng), y = random_element(a, rng), z = random_element(a, rng);
        CHECK(a.mul(x, y) == a.mul(y, x));
        CHECK(a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z)));
        CHECK(a.mul(x, a.add(y, z)) == a.add(a.mul(x, y), a.mul(x, z)));
        CHECK(a.mul(a.one(), x) == x);
        CHECK(a.mul(a.zero(), x) == a.zero());
      }
    }
}

TEST_CASE("presentations and base change") {
  auto z2 = algebra_presentation(*builtin_monoid("Z/2"), Base::N);
  CHECK(z2.to_string() == "N[t]/(t^2 = 1)");
  CHECK(base_change_N_to_Z(z2).to_string() == "Z[t]/(t^2 - 1)");
  CHECK(base_change_N_to_Z(algebra_presentation(*builtin_monoid("N"), Base::N)).to_string() == "Z[t]");
  CHECK(base_change_N_to_Z(algebra_presentation(*builtin_monoid("Z"), Base::N)).to_string() == "Z[t,t^-1]");
  CHECK(base_change_N_to_Z(algebra_presentation(*a1_chart(), Base::N)).to_string() == "Z[x,y,z]/(x*z - y^2)");
  CHECK(algebra_presentation(*a1_chart(), Base::F1).to_string() == "F1[x,y,z]/(x*z = y^2)");

  AlgebraPresentation bad = z2;
  bad.relations[0].rhs[vec({1})] = 1;
  CHECK_FALSE(bad.binomial());
  CHECK_THROWS_AS(base_change_N_to_Z(bad), Unsupported);
  CHECK_THROWS_AS(base_change_N_to_Z(base_change_N_to_Z(z2)), InvalidInput);

  // N[M] (x) Z and Z[M] agree for every test monoid.
  for (const auto& m : test_monoids()) {
    CHECK(base_change_N_to_Z(algebra_presentation(*m, Base::N)).to_string() ==
          algebra_presentation(*m, Base::Z).to_string());
    auto bz = base_change_N_to_Z(monoid_algebra(m, Base::N));
    CHECK(bz.base() == Base::Z);
    CHECK(bz.monoid() == *m);
  }
}

TEST_CASE("algebra homs by adjunction and directly") {
  auto z2 = builtin_monoid("Z/2");
  auto f3 = finite_field(3);
  CHECK(algebra_hom_enumerate(monoid_algebra(z2, Base::Z), f3).size() == 2);
  CHECK(algebra_hom_enumerate_direct(algebra_presentation(*z2, Base::Z), f3).size() == 2);
  // Z-algebra homs need additive inverses.
  CHECK(algebra_hom_enumerate(monoid_algebra(z2, Base::Z), boolean_semiring()).empty());
  CHECK(algebra_hom_enumerate(monoid_algebra(z2, Base::N), boolean_semiring()).size() == 1);

  for (const auto& m : test_monoids())
    for (const auto& b : test_semirings())
      for (Base base : {Base::N, Base::Z}) {
        auto homs = algebra_hom_enumerate(monoid_algebra(m, base), b);
        auto direct = algebra_hom_enumerate_direct(algebra_presentation(*m, base), b);
        REQUIRE(homs.size() == direct.size());
        if (!m->is_finite()) {
          std::set<std::vector<std::size_t>> a, d(direct.begin(), direct.end());
          for (const auto& h : homs) {
            std::vector<std::size_t> img;
            for (const auto& y : h.images()) img.push_back(std::get<FiniteIndex>(y));
            a.insert(img);
          }
          CHECK(a == d);
        }
      }
}

TEST_CASE("evaluation is a semiring map") {
  std::mt19937 rng(11);
  auto b = finite_field(5);
  for (const auto& m : {builtin_monoid("N^2"), builtin_monoid("Z/4"), a1_chart()}) {
    auto a = monoid_algebra(m, Base::Z);
    auto homs = algebra_hom_enumerate(a, b);
    REQUIRE(!homs.empty());
    for (const auto& h : homs) {
      CHECK(a.evaluate(a.one(), h, b) == b.one());
      for (int trial = 0; trial < 5; ++trial) {
        auto x = random_element(a, rng), y = random_element(a, rng);
        CHECK(a.evaluate(a.add(x, y), h, b) == b.add(a.evaluate(x, h, b), a.evaluate(y, h, b)));
        CHECK(a.evaluate(a.mul(x, y), h, b) == b.mul(a.evaluate(x, h, b), a.evaluate(y, h, b)));
      }
    }
  }
}

TEST_CASE("algebra maps are functorial") {
  std::mt19937 rng(3);
  auto n2 = builtin_monoid("N^2");
  auto z4 = builtin_monoid("Z/4");
  auto target = builtin_monoid("Fq*:5");
  auto a = monoid_algebra(n2, Base::N);
  for (const auto& f : hom_enumerate(n2, z4)) {
    auto x = random_element(a, rng), y = random_element(a, rng);
    auto b = monoid_algebra(z4, Base::N);
    CHECK(map_element(f, a.mul(x, y)) == b.mul(map_element(f, x), map_element(f, y)));
    CHECK(map_element(MonoidHom::identity(n2), x) == x);
    for (const auto& g : hom_enumerate(z4, target))
      CHECK(map_element(compose(g, f), x) == map_element(g, map_element(f, x)));
  }
}

TEST_CASE("group completion") {
  auto kn = group_completion(builtin_monoid("N"));
  CHECK(kn.group.to_string() == "Z");
  CHECK(kn.images[0].cwiseAbs() == vec({1}));
  CHECK(group_completion(builtin_monoid("triv+0")).group.to_string() == "0");
  CHECK(group_completion(a1_chart()).group.to_string() == "Z^2");
  CHECK(group_completion(builtin_monoid("Z/6")).group.to_string() == "Z/6");
  // The multiplicative monoid of a field contains an absorbing zero.
  CHECK(group_completion(builtin_monoid("Fq*:9")).group.to_string() == "0");
  CHECK(group_completion(builtin_monoid("Z^2")).group.to_string() == "Z^2");
  CHECK(group_completion(make_monoid(FPMonoid(1, {{vec({2}), vec({0})}}))).group.to_string() == "Z/2");
  CHECK(group_completion(make_monoid(FPMonoid(2, {{vec({2, 0}), vec({0, 0})}}))).group.to_string() == "Z x Z/2");

  FGAbelianGroup g{1, {2, 4}};
  CHECK(g.to_string() == "Z x Z/2 x Z/4");
  CHECK_FALSE(g.order().has_value());
  CHECK(FGAbelianGroup{0, {2, 6}}.elements().size() == 12);

  // Against the pairs construction and the rank oracle.
  for (std::size_t order = 1; order <= 4; ++order)
    for (const auto& f : finite_monoid_catalogue(order)) {
      auto k = group_completion(make_monoid(f));
      REQUIRE(k.group.order().has_value());
      CHECK(*k.group.order() == oracle::pairs_completion_order(f));
      for (std::size_t i = 0; i + 1 < k.group.torsion.size(); ++i)
        CHECK(k.group.torsion[i + 1] % k.group.torsion[i] == 0);
    }
  for (const auto& m : test_monoids()) {
    if (!m->is_affine()) continue;
    auto k = group_completion(m);
    CHECK(k.group.torsion.empty());
    CHECK(k.group.free_rank == oracle::rational_rank(m->affine().generator_matrix()));
  }
}

TEST_CASE("the canonical map to K(M) is a homomorphism") {
  for (const auto& m : test_monoids()) {
    auto k = group_completion(m);
    auto dom = m->hom_domain();
    CHECK(vec_equal(k(m->identity()), k.group.zero()));
    for (const auto& x : dom)
      for (const auto& y : dom) CHECK(vec_equal(k(m->multiply(x, y)), k.group.add(k(x), k(y))));
    // Preimages map to the coordinate generators.
    for (std::size_t i = 0; i < k.preimages.size(); ++i) {
      ExponentVector v = k.group.zero();
      for (Index j = 0; j < k.preimages[i].size(); ++j)
        v = v + k.preimages[i](j) * k.images[static_cast<std::size_t>(j)];
      CHECK(vec_equal(k.group.normalize(v), unit_vector(k.group.num_coords(), static_cast<Index>(i))));
    }
  }
}

TEST_CASE("completion is functorial") {
  auto apply = [](const std::vector<ExponentVector>& map, const FGAbelianGroup& target, const ExponentVector& w) {
    ExponentVector v = target.zero();
    for (Index c = 0; c < w.size(); ++c) v = v + w(c) * map[static_cast<std::size_t>(c)];
    return target.normalize(v);
  };
  std::vector<MonoidPtr> ms = {builtin_monoid("N"), builtin_monoid("Z/4"), builtin_monoid("Z/2"),
                               builtin_monoid("triv+0")};
  for (const auto& a : ms) {
    auto ka = group_completion(a);
    auto id = completion_map(MonoidHom::identity(a), ka, ka);
    for (std::size_t i = 0; i < id.size(); ++i)
      CHECK(vec_equal(id[i], unit_vector(ka.group.num_coords(), static_cast<Index>(i))));
    for (const auto& b : ms) {
      if (b->is_affine()) continue;
      auto kb = group_completion(b);
      for (const auto& f : hom_enumerate(a, b))
        for (const auto& c : ms) {
          if (c->is_affine()) continue;
          auto kc = group_completion(c);
          auto kf = completion_map(f, ka, kb);
          for (const auto& g : hom_enumerate(b, c)) {
            auto kg = completion_map(g, kb, kc);
            auto kgf = completion_map(compose(g, f), ka, kc);
            for (std::size_t i = 0; i < kf.size(); ++i) CHECK(vec_equal(kgf[i], apply(kg, kc.group, kf[i])));
          }
        }
    }
  }
}

TEST_CASE("universal property of group completion") {
  auto v = universal_property_check(builtin_monoid("N"), builtin_monoid("Z/3"));
  CHECK(v.holds);
  CHECK(v.monoid_homs == 3);
  CHECK(v.group_homs == 3);
  v = universal_property_check(builtin_monoid("Z/2"), builtin_monoid("Z/2"));
  CHECK(v.holds);
  CHECK(v.monoid_homs == 2);
  v = universal_property_check(builtin_monoid("triv+0"), builtin_monoid("Z/5"));
  CHECK(v.holds);
  CHECK(v.monoid_homs == 1);
  CHECK_THROWS_AS(universal_property_check(builtin_monoid("N"), builtin_monoid("triv+0")), InvalidInput);

  for (const auto& m : test_monoids())
    for (const auto& g : {builtin_monoid("Z/2"), builtin_monoid("Z/4"), builtin_monoid("Z/6")}) {
      auto r = universal_property_check(m, g);
      CHECK_MESSAGE(r.holds, m->label() << " -> " << g->label() << ": " << r.detail);
    }
}
