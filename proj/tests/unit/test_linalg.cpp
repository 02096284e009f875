#include "belowz/linalg.hpp"
#include "belowz/polyhedral.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace belowz;

namespace {

IntMatrix random_matrix(std::mt19937& rng, Index rows, Index cols, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

ExponentVector vec(std::initializer_list<Integer> xs) {
  ExponentVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("rank and determinant agree with rational elimination") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Index r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m = random_matrix(rng, r, c, 3);
    if (trial % 5 == 0 && r > 1) m.row(r - 1) = m.row(0) * 2;
    CHECK(rank(m) == oracle::rational_rank(m));
    if (r == c) CHECK(oracle::Rational(determinant(m)) == oracle::rational_det(m));
  }
}

TEST_CASE("adjugate times matrix is det times identity") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Index n = 1 + trial % 4;
    IntMatrix m = random_matrix(rng, n, n, 4);
    IntMatrix prod = adjugate(m) * m;
    CHECK(prod == IntMatrix::Identity(n, n) * determinant(m));
  }
}

TEST_CASE("Smith normal form transforms are unimodular and diagonalize") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Index r = 1 + trial % 4, c = 1 + (trial / 4) % 5;
    IntMatrix a = random_matrix(rng, r, c, 5);
    auto f = smith_normal_form(a);
    CHECK((f.u * a * f.v) == f.diagonal);
    CHECK((f.u * f.u_inv) == IntMatrix::Identity(r, r));
    CHECK((f.v * f.v_inv) == IntMatrix::Identity(c, c));
    CHECK(f.rank == oracle::rational_rank(a));
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j)
        if (i != j) CHECK(f.diagonal(i, j) == 0);
    for (Index i = 0; i + 1 < f.rank; ++i) CHECK(f.invariant(i + 1) % f.invariant(i) == 0);
    for (Index i = 0; i < f.rank; ++i) CHECK(f.invariant(i) > 0);
  }
}

TEST_CASE("kernel basis spans the integer kernel") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Index r = 1 + trial % 3, c = 2 + trial % 4;
    IntMatrix a = random_matrix(rng, r, c, 3);
    IntMatrix k = kernel_basis(a);
    CHECK(k.cols() == c - oracle::rational_rank(a));
    CHECK((a * k).isZero());
    // Saturation: every small kernel vector is an integer combination.
    for (const auto& v : oracle::box(c, 2)) {
      if (!(a * v).isZero()) continue;
      CHECK(solve_integer(k, v).has_value());
    }
  }
}

TEST_CASE("Hermite reduction is canonical on cosets") {
  IntMatrix basis(2, 3);
  basis << 2, 0, 1, 0, 3, 1;
  IntMatrix h = hermite_rows<Integer>(basis);
  ExponentVector v = vec({5, 7, 2});
  ExponentVector w = v + 3 * basis.row(0).transpose() - 2 * basis.row(1).transpose();
  CHECK(vec_equal(reduce_mod_lattice<Integer>(v, h), reduce_mod_lattice<Integer>(w, h)));
}

TEST_CASE("checked arithmetic reports overflow") {
  CHECK_THROWS_AS(detail::mul<Integer>(Integer{1} << 40, Integer{1} << 40), OverflowError);
}

TEST_CASE("double description of simple cones") {
  SUBCASE("orthant is self-dual") {
    auto g = dual_generators({vec({1, 0}), vec({0, 1})}, 2);
    CHECK(g.lineality.empty());
    REQUIRE(g.rays.size() == 2);
    CHECK(vec_equal(g.rays[0], vec({0, 1})));
    CHECK(vec_equal(g.rays[1], vec({1, 0})));
  }
  SUBCASE("no inequalities gives the whole space") {
    auto g = cone_from_inequalities({}, 2);
    CHECK(g.lineality.size() == 2);
    CHECK(g.rays.empty());
  }
  SUBCASE("half-plane") {
    auto g = cone_from_inequalities({vec({1, 1})}, 2);
    REQUIRE(g.lineality.size() == 1);
    REQUIRE(g.rays.size() == 1);
    CHECK(vec_equal(g.rays[0], vec({1, 1})));
  }
  SUBCASE("a cone with many redundant inequalities") {
    auto g = cone_from_inequalities({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, 0}),
                                     vec({1, 1, 1}), vec({2, 1, 3})},
                                    3);
    CHECK(g.lineality.empty());
    CHECK(g.rays.size() == 3);
  }
}

TEST_CASE("double description agrees with the facet enumeration oracle") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> d(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    std::vector<ExponentVector> rays;
    for (int k = 0; k < 3 + trial % 3; ++k) rays.push_back(vec({d(rng), d(rng), d(rng)}));
    IntMatrix m = rows_of(rays, 3);
    if (oracle::rational_rank(m) < 3) continue;
    auto normals = oracle::facet_normals(rays, 3);
    if (normals.size() < 3) continue;  // not pointed
    auto g = dual_generators(rays, 3);
    if (!g.lineality.empty()) continue;
    ++checked;
    std::sort(normals.begin(), normals.end(), LexLess{});
    REQUIRE(g.rays.size() == normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) CHECK(vec_equal(g.rays[i], normals[i]));
  }
  CHECK(checked >= 20);
}
