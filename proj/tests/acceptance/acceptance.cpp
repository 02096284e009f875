// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include "belowz/algebra.hpp"
#include "belowz/cone.hpp"
#include "belowz/descent.hpp"
#include "belowz/group_schemes.hpp"
#include "belowz/schemes.hpp"
#include "belowz/toric.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace belowz;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
struct Check {
  std::size_t ok = 0, failed = 0;
  std::vector<std::string> notes;

  void operator()(bool cond, const std::string& what) {
    if (cond) {
      ++ok;
      return;
    }
    if (failed++ < 3) notes.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (!failed) return {true, summary};
    std::string s = std::to_string(failed) + " failed checks";
    for (const auto& n : notes) s += "; " + n;
    return {false, s};
  }
};

ExponentVector vec(std::initializer_list<Integer> xs) {
  ExponentVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string seconds(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << " s";
  return o.str();
}

// ---------------------------------------------------------------- 1

Outcome toric_counts() {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, std::function<std::uint64_t(std::uint64_t)>>> fans = {
      {"P1", [](std::uint64_t q) { return q + 1; }},
      {"P2", [](std::uint64_t q) { return q * q + q + 1; }},
      {"P1xP1", [](std::uint64_t q) { return (q + 1) * (q + 1); }},
      {"F1", [](std::uint64_t q) { return (q + 1) * (q + 1); }},
  };
  for (const auto& [name, closed] : fans) {
    Fan fan = builtin_fan(name);
    for (std::uint64_t q : {2, 3, 4, 5}) {
      // Cone sum recomputed here from ranks of the ray lists.
      std::uint64_t orbit_sum = 0;
      for (const auto& cone : fan.cones) {
        IntMatrix rays(fan.dim, static_cast<Index>(cone.size()));
        for (std::size_t k = 0; k < cone.size(); ++k) rays.col(static_cast<Index>(k)) = fan.rays[cone[k]];
        const Index rank = cone.empty() ? 0 : oracle::rational_rank(rays);
        orbit_sum += oracle::ipow(q - 1, static_cast<int>(fan.dim - rank));
      }
      PointCount c = count_points_fq(fan, static_cast<int>(q));
      const std::string at = name + " q=" + std::to_string(q);
      check(c.glued == c.cone_sum, at + ": glued " + std::to_string(c.glued) + " vs cone sum " + std::to_string(c.cone_sum));
      check(c.cone_sum == orbit_sum, at + ": cone sum differs from the rank oracle");
      check(c.glued == closed(q), at + ": glued count differs from the closed form");
    }
  }
  const double dt = seconds_since(t0);
  check(dt < 10.0, "took " + seconds(dt));
  return check.outcome("4 fans x q in {2,3,4,5}: glued = cone sum = closed form (" + seconds(dt) + ")");
}

// ---------------------------------------------------------------- 2

Outcome permutations() {
  Check check;
  for (int n = 1; n <= 4; ++n) {
    auto g = gln_f1_points(n, builtin_monoid("F1"));
    check(g.size() == oracle::factorial(n), "GL_" + std::to_string(n) + "(F1) has " + std::to_string(g.size()) + " elements");
    check(g.check_axioms().ok, "GL_" + std::to_string(n) + "(F1) group axioms");
  }
  std::size_t searched = 0;
  for (int n = 1; n <= 3; ++n) {
    auto found = invertible_over_N_search(n, 2);
    auto perms = permutation_matrices(n);
    searched += oracle::ipow(3, n * n);
    check(found.size() == perms.size(), "n=" + std::to_string(n) + ": " + std::to_string(found.size()) + " matrices found");
    for (const auto& m : found) {
      bool is_perm = (m.array() <= 1).all() && (m.rowwise().sum().array() == 1).all() &&
                     (m.colwise().sum().array() == 1).all();
      check(is_perm, "n=" + std::to_string(n) + ": a non-permutation matrix is invertible over N");
    }
    for (const auto& p : perms)
      check(std::count(found.begin(), found.end(), p) == 1, "a permutation matrix was missed");
  }
  return check.outcome("|GL_n(F1)| = n! for n <= 4; " + std::to_string(searched) +
                       " N-matrices with entries <= 2 searched, invertible exactly for permutations");
}

// ---------------------------------------------------------------- 3

Outcome gln_fields() {
  Check check;
  const auto g2 = gln_points_matrix(2, finite_field(2));
  const auto g3 = gln_points_matrix(2, finite_field(3));
  check(g2.size() == 6 && g2.size() == oracle::gl_order(2, 2), "|GL_2(F_2)| = " + std::to_string(g2.size()));
  check(g3.size() == 48 && g3.size() == oracle::gl_order(2, 3), "|GL_2(F_3)| = " + std::to_string(g3.size()));
  check(g2.check_axioms().ok && g3.check_axioms().ok, "group axioms");
  const auto model = gln_f1_points(2, builtin_monoid("Fq*:3"));
  const auto glued = points(gln_f1(2), builtin_monoid("Fq*:3"));
  check(model.size() == 8, "GL_2,F1 over F_3* has " + std::to_string(model.size()) + " points");
  check(glued.size() == model.size(), "the glued atlas and the semidirect law disagree");
  check(model.size() != g3.size(), "GL_2,F1 (x) Z and GL_2,Z agree on F_3");
  return check.outcome("|GL_2(F_2)| = 6, |GL_2(F_3)| = 48 = closed form; GL_2,F1 at F_3 has 8 points, not 48");
}

// ---------------------------------------------------------------- 4

Outcome roots_of_unity() {
  Check check;
  std::size_t pairs = 0;
  for (int q : {2, 3, 5, 7})
    for (int n = 1; n <= 6; ++n) {
      auto zn = builtin_monoid("Z/" + std::to_string(n));
      auto fq = builtin_monoid("Fq*:" + std::to_string(q));
      const std::size_t brute = oracle::brute_hom_count(zn->finite(), fq->finite());
      const auto d = diagonalizable_points(zn, fq);
      const std::string at = "n=" + std::to_string(n) + " q=" + std::to_string(q);
      check(brute == static_cast<std::size_t>(std::gcd(n, q - 1)), at + ": exhaustive count " + std::to_string(brute));
      check(d.size() == brute, at + ": library count " + std::to_string(d.size()));
      check(hom_enumerate(zn, fq).size() == brute, at + ": hom enumeration");
      ++pairs;
    }
  return check.outcome(std::to_string(pairs) + " pairs (n <= 6, q in {2,3,5,7}): |Hom(Z/n, F_q*)| = gcd(n, q-1)");
}

// ---------------------------------------------------------------- 5

struct Catalogued {
  MonoidPtr monoid;
  // Integer relations among the generators, for the affine hom oracle.
  std::vector<ExponentVector> relations;
};

std::vector<Catalogued> ladder_catalogue() {
  std::vector<Catalogued> out = {
      {builtin_monoid("N"), {}},
      {builtin_monoid("Z"), {}},
      {builtin_monoid("N^2"), {}},
      {make_monoid(AffineMonoid(2, {vec({1, 0}), vec({1, 1}), vec({1, 2})}), "A1-chart"), {vec({1, -2, 1})}},
      {make_monoid(AffineMonoid(2, {vec({1, 0}), vec({0, 1})}, {0}), "ZxN"), {}},
      {builtin_monoid("Z/2"), {}},
      {builtin_monoid("Z/3"), {}},
      {builtin_monoid("Z/4"), {}},
      {builtin_monoid("triv"), {}},
      {builtin_monoid("triv+0"), {}},
      {builtin_monoid("Fq*:4"), {}},
      {builtin_monoid("Fq*:5"), {}},
  };
  for (const auto& f : finite_monoid_catalogue(3)) out.push_back({make_monoid(f), {}});
  return out;
}

Outcome base_change_ladder() {
  Check check;
  const auto cat = ladder_catalogue();
  const std::vector<FiniteSemiring> rings = {finite_field(2), finite_field(3), finite_field(4), integers_mod(4),
                                             integers_mod(6)};
  std::size_t hom_sets = 0;
  for (const auto& [m, relations] : cat) {
    const std::string name = m->label().empty() ? describe_finite_monoid(m->finite()) : m->label();
    auto nz = base_change_N_to_Z(algebra_presentation(*m, Base::N));
    auto z = algebra_presentation(*m, Base::Z);
    check(nz.to_string() == z.to_string(), name + ": " + nz.to_string() + " vs " + z.to_string());
    auto nz_alg = base_change_N_to_Z(monoid_algebra(m, Base::N));
    auto z_alg = monoid_algebra(m, Base::Z);
    for (const auto& r : rings) {
      // Ring maps Z[M] -> R are monoid maps M -> (R, *).
      auto mult = r.multiplicative_monoid();
      const std::size_t oracle_count = m->is_finite() ? oracle::brute_hom_count(m->finite(), mult)
                                                      : oracle::brute_affine_hom_count(m->affine(), mult, relations);
      const std::size_t a = algebra_hom_enumerate(nz_alg, r).size(), b = algebra_hom_enumerate(z_alg, r).size();
      check(a == b && b == oracle_count, name + " -> " + r.label() + ": " + std::to_string(a) + ", " +
                                             std::to_string(b) + ", oracle " + std::to_string(oracle_count));
      ++hom_sets;
    }
    for (const char* g : {"Z/2", "Z/4", "Z/6"}) {
      auto u = universal_property_check(m, builtin_monoid(g));
      check(u.holds, name + " -> " + g + ": " + u.detail);
    }
  }
  check(cat.size() >= 10, "catalogue too small");
  return check.outcome(std::to_string(cat.size()) + " monoids: N[M] (x) Z = Z[M] as presentations and on " +
                       std::to_string(hom_sets) + " hom sets; K(M) universal property against Z/2, Z/4, Z/6");
}

// ---------------------------------------------------------------- 6

std::vector<RationalCone> sample_cones() {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<RationalCone> out;
  for (int trial = 0; trial < 60; ++trial) {
    const Index dim = 2 + trial % 2;
    std::vector<ExponentVector> rays;
    for (int k = 0; k < 1 + trial % 4; ++k) {
      ExponentVector v(dim);
      for (Index i = 0; i < dim; ++i) v(i) = d(rng);
      rays.push_back(v);
    }
    out.emplace_back(dim, rays);
  }
  return out;
}

Outcome toric_structure() {
  Check check;
  std::size_t overlaps = 0, cones = 0, lattice_points = 0;
  for (const char* name : {"P1", "A1", "A2", "P2", "P1xP1", "F1", "F2", "P112"}) {
    Fan fan = builtin_fan(name);
    auto x = build_toric_atlas(fan);
    for (const auto& o : x.overlaps) {
      check(o.left.certificate().structural() && o.right.certificate().structural(),
            std::string(name) + ": an overlap map lacks a localization certificate");
      check(overlap_sides_agree(x, o), std::string(name) + ": overlap sides disagree");
      ++overlaps;
    }
    for (std::size_t i = 0; i < fan.cones.size(); ++i) {
      RationalCone c = fan.cone(i);
      check(same_cone(dual_cone(dual_cone(c)), c), std::string(name) + ": double dual of cone " + std::to_string(i));
      ++cones;
    }
  }
  for (const auto& c : sample_cones()) {
    check(same_cone(dual_cone(dual_cone(c)), c), "double dual of a sampled cone");
    ++cones;
    auto hb = hilbert_basis(c);
    auto reachable = oracle::monoid_box_closure(hb, 8);
    for (const auto& v : oracle::box(c.dim(), 2)) {
      ++lattice_points;
      check(c.contains(v) == hb.contains(v), "Hilbert basis membership differs from the cone");
      if (c.contains(v)) check(reachable.count(v) > 0, "a lattice point of the cone is not generated");
    }
    for (std::size_t i = 0; i < hb.num_gens(); ++i) {
      if (hb.is_inverted(i)) continue;
      std::vector<ExponentVector> rest;
      std::vector<std::size_t> inv;
      for (std::size_t j = 0; j < hb.num_gens(); ++j) {
        if (j == i) continue;
        if (hb.is_inverted(j)) inv.push_back(rest.size());
        rest.push_back(hb.gens()[j]);
      }
      check(!AffineMonoid(c.dim(), rest, inv).contains(hb.gens()[i]), "a Hilbert basis element is redundant");
    }
  }
  return check.outcome(std::to_string(overlaps) + " overlap maps certified localizations; " + std::to_string(cones) +
                       " cones equal their double dual; Hilbert bases minimal and generating on " +
                       std::to_string(lattice_points) + " lattice points");
}

// ---------------------------------------------------------------- 7

Outcome descent_lab() {
  Check check;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t bound = 3;
  auto covers = discover_covers(3, 2, bound);
  std::size_t split = 0, sheaf = 0, data = 0;
  for (const auto& dc : covers) {
    split += dc.split;
    const std::string name = dc.cover.to_string();
    for (const auto& m : enumerate_asets(dc.cover.base, bound)) {
      auto v = sheaf_equalizer_check(dc.cover, m);
      check(v.ok(), name + " on " + m.to_string() + ": " + v.detail);
      ++sheaf;
    }
    auto d = descent_equivalence_check(dc.cover, bound);
    check(d.verdict.ok(), name + ": " + d.verdict.detail);
    data += d.data;
  }
  auto p = check_pretopology(covers, 3, bound);
  check(p.verdict.ok(), "pretopology: " + p.verdict.detail);
  check(!covers.empty(), "no covers found");
  const double dt = seconds_since(t0);
  check(dt < 60.0, "took " + seconds(dt));
  const std::string scope = split == covers.size() ? "verified on split covers only" : "includes non-split covers";
  return check.outcome(std::to_string(covers.size()) + " covers (" + std::to_string(split) + " split), " +
                       std::to_string(sheaf) + " sheaf checks, " + std::to_string(data) + " descent data, " +
                       std::to_string(p.isomorphisms + p.base_changes + p.composites) +
                       " pretopology checks, 0 counterexamples; " + scope + " (" + seconds(dt) + ")");
}

// ---------------------------------------------------------------- 8

struct GoldenCase {
  std::string name;
  int exit_code = 0;
  std::vector<std::string> args;
};

std::vector<GoldenCase> read_cases(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::vector<GoldenCase> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream words(line);
    GoldenCase c;
    words >> c.name >> c.exit_code;
    for (std::string w; words >> w;) c.args.push_back(w);
    out.push_back(c);
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

std::pair<std::string, int> run(const std::string& cli, const fs::path& cwd, const std::vector<std::string>& args) {
  std::string cmd = "cd " + quote(cwd.string()) + " && " + quote(cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cli);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Outcome golden_stability(const std::string& cli, const fs::path& data, const fs::path& golden) {
  Check check;
  if (cli.empty() || data.empty()) return {false, "needs --cli and --data"};
  const auto cases = read_cases(golden / "cases.txt");
  for (const auto& c : cases) {
    auto [first, code1] = run(cli, data, c.args);
    auto [second, code2] = run(cli, data, c.args);
    check(first == second && code1 == code2, c.name + ": two runs differ");
    check(code1 == c.exit_code, c.name + ": exit " + std::to_string(code1) + ", expected " + std::to_string(c.exit_code));
    std::ifstream in(golden / (c.name + ".golden"), std::ios::binary);
    std::stringstream expected;
    expected << in.rdbuf();
    check(in && expected.str() == first, c.name + ": output differs from the golden file");
  }
  check(!cases.empty(), "no golden cases");
  return check.outcome(std::to_string(cases.size()) + " CLI cases byte-identical across two runs and to their golden files");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path data, golden;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") cli = fs::absolute(argv[i + 1]).string();
    else if (flag == "--data") data = fs::absolute(argv[i + 1]);
    else if (flag == "--golden") golden = fs::absolute(argv[i + 1]);
  }
  if (golden.empty() && !data.empty()) golden = data.parent_path() / "tests" / "golden";

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"toric point counts", toric_counts},
      {"GL_n over F1 and over N", permutations},
      {"GL_2 over finite fields", gln_fields},
      {"roots of unity", roots_of_unity},
      {"base change ladder", base_change_ladder},
      {"toric structure", toric_structure},
      {"descent lab", descent_lab},
      {"golden determinism", [&] { return golden_stability(cli, data, golden); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed;
}
