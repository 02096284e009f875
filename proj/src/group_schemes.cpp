#include "belowz/group_schemes.hpp"

#include <algorithm>
#include <numeric>

namespace belowz {

GroupPoints::GroupPoints(std::string label, std::vector<Code> elements, const Law& law, const Namer& namer,
                         const Limits& limits)
    : label_(std::move(label)), codes_(std::move(elements)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    index_.emplace(codes_[i], i);
    names_.push_back(namer(codes_[i]));
  }
  WorkCounter work(limits, "group law table for " + label_);
  const std::size_t n = codes_.size();
  table_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      work.tick();
      auto it = index_.find(law(codes_[a], codes_[b]));
      if (it == index_.end()) throw InvalidInput(label_ + ": product of " + names_[a] + " and " + names_[b] + " is not a point");
      table_[a][b] = it->second;
    }
  for (std::size_t e = 0; e < n && !unit_; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) unit_ = e;
  }
}

std::optional<std::size_t> GroupPoints::index_of(const Code& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> GroupPoints::inverse(std::size_t a) const {
  if (!unit_) return std::nullopt;
  for (std::size_t b = 0; b < size(); ++b)
    if (table_[a][b] == *unit_ && table_[b][a] == *unit_) return b;
  return std::nullopt;
}

bool GroupPoints::is_abelian() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

GroupPoints::AxiomReport GroupPoints::check_axioms(const Limits& limits) const {
  if (!unit_) return {false, "no unit"};
  for (std::size_t a = 0; a < size(); ++a)
    if (!inverse(a)) return {false, names_[a] + " has no inverse"};
  WorkCounter work(limits, "associativity check for " + label_);
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) {
      work.tick(size());
      for (std::size_t c = 0; c < size(); ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          return {false, "not associative at (" + names_[a] + ", " + names_[b] + ", " + names_[c] + ")"};
    }
  return {};
}

// ---------------------------------------------------------------- diagonalizable

namespace {

bool is_group(const Monoid& m) {
  if (m.is_finite()) return m.finite().units().size() == m.finite().size();
  if (m.is_affine()) return m.affine().inverted().size() == m.affine().num_gens();
  return false;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

}  // namespace

SchemeAtlas diagonalizable(const MonoidPtr& m) {
  if (!is_group(*m)) throw InvalidInput("D(M) needs an abelian group, got " + m->label());
  return affine_scheme(m, Base::F1, "D(" + m->label() + ")");
}

GroupPoints diagonalizable_points(const MonoidPtr& m, const MonoidPtr& b, const Limits& limits) {
  if (!is_group(*m)) throw InvalidInput("D(M) needs an abelian group, got " + m->label());
  if (!b->is_finite()) throw InvalidInput("the target must be a finite monoid");
  const auto& fb = b->finite();
  std::vector<GroupPoints::Code> codes;
  for (const auto& h : hom_enumerate(m, b, limits)) {
    GroupPoints::Code c;
    for (const auto& y : h.images()) c.push_back(std::get<FiniteIndex>(y));
    codes.push_back(c);
  }
  auto law = [&](const GroupPoints::Code& x, const GroupPoints::Code& y) {
    GroupPoints::Code z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = fb.mul(x[i], y[i]);
    return z;
  };
  auto namer = [&](const GroupPoints::Code& x) {
    std::vector<std::string> parts;
    for (std::size_t v : x) parts.push_back(fb.name(v));
    return "(" + join(parts, ",") + ")";
  };
  return GroupPoints("D(" + m->label() + ")(" + b->label() + ")", codes, law, namer, limits);
}

// ---------------------------------------------------------------- GL_n over F1

SchemeAtlas gln_f1(int n) {
  if (n < 1) throw InvalidInput("GL_n needs n >= 1");
  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  auto torus = builtin_monoid("Z^" + std::to_string(n));
  SchemeAtlas x;
  x.base = Base::F1;
  do {
    std::vector<std::string> p;
    for (std::size_t v : perm) p.push_back(std::to_string(v));
    auto part = affine_scheme(torus, Base::F1, "Gm^" + std::to_string(n) + "[" + join(p, ",") + "]");
    x = x.charts.empty() ? part : disjoint_union(x, part);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return x;
}

GroupPoints gln_f1_points(int n, const MonoidPtr& b, const Limits& limits) {
  if (n < 1) throw InvalidInput("GL_n needs n >= 1");
  if (!b->is_finite()) throw InvalidInput("the target must be a finite monoid");
  const auto& fb = b->finite();
  const std::size_t k = static_cast<std::size_t>(n);
  auto units = fb.units();
  std::vector<GroupPoints::Code> codes;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  WorkCounter work(limits, "GL_n(F1) points");
  do {
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      work.tick();
      GroupPoints::Code c = perm;
      for (std::size_t i = 0; i < k; ++i) c.push_back(units[pick[i]]);
      codes.push_back(c);
      std::size_t i = 0;
      while (i < k && pick[i] == units.size() - 1) pick[i++] = 0;
      if (i == k) break;
      ++pick[i];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // diag(u) P(s) diag(v) P(t) = diag(u * s(v)) P(s t), with s(v)_i = v_{s^-1(i)}.
  auto law = [&, k](const GroupPoints::Code& x, const GroupPoints::Code& y) {
    GroupPoints::Code z(2 * k);
    std::vector<std::size_t> inv(k);
    for (std::size_t i = 0; i < k; ++i) inv[x[i]] = i;
    for (std::size_t i = 0; i < k; ++i) {
      z[i] = x[y[i]];
      z[k + i] = fb.mul(x[k + i], y[k + inv[i]]);
    }
    return z;
  };
  auto namer = [&, k](const GroupPoints::Code& x) {
    std::vector<std::string> p, u;
    for (std::size_t i = 0; i < k; ++i) {
      p.push_back(std::to_string(x[i]));
      u.push_back(fb.name(x[k + i]));
    }
    return "[" + join(p, ",") + "; " + join(u, ",") + "]";
  };
  return GroupPoints("GL_" + std::to_string(n) + ",F1(" + b->label() + ")", codes, law, namer, limits);
}

// ---------------------------------------------------------------- GL_n by matrices

namespace {

// Row-major n x n matrices over b.
using Matrix = std::vector<std::size_t>;

Matrix product(const FiniteSemiring& b, const Matrix& x, const Matrix& y, std::size_t n) {
  Matrix z(n * n, b.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t acc = b.zero();
      for (std::size_t l = 0; l < n; ++l) acc = b.add(acc, b.mul(x[i * n + l], y[l * n + j]));
      z[i * n + j] = acc;
    }
  return z;
}

}  // namespace

GroupPoints gln_points_matrix(int n, const FiniteSemiring& b, const Limits& limits) {
  if (n < 1) throw InvalidInput("GL_n needs n >= 1");
  const std::size_t k = static_cast<std::size_t>(n);
  const std::size_t q = b.size();
  WorkCounter work(limits, "GL_" + std::to_string(n) + "(" + b.label() + ") matrix search");

  // All column vectors, then for each U the solutions of U v = e_j column by column.
  std::vector<std::vector<std::size_t>> vectors;
  {
    std::vector<std::size_t> v(k, 0);
    while (true) {
      vectors.push_back(v);
      std::size_t i = 0;
      while (i < k && v[i] == q - 1) v[i++] = 0;
      if (i == k) break;
      ++v[i];
    }
  }
  auto apply = [&](const Matrix& u, const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t acc = b.zero();
      for (std::size_t l = 0; l < k; ++l) acc = b.add(acc, b.mul(u[i * k + l], v[l]));
      out[i] = acc;
    }
    return out;
  };
  Matrix identity(k * k, b.zero());
  for (std::size_t i = 0; i < k; ++i) identity[i * k + i] = b.one();

  std::vector<GroupPoints::Code> codes;
  Matrix u(k * k, 0);
  while (true) {
    work.tick(vectors.size());
    std::vector<std::vector<std::vector<std::size_t>>> cols(k);
    for (const auto& v : vectors) {
      auto img = apply(u, v);
      for (std::size_t j = 0; j < k; ++j) {
        bool unit_col = true;
        for (std::size_t i = 0; i < k && unit_col; ++i) unit_col = img[i] == (i == j ? b.one() : b.zero());
        if (unit_col) cols[j].push_back(v);
      }
    }
    bool found = std::all_of(cols.begin(), cols.end(), [](const auto& c) { return !c.empty(); });
    if (found) {
      // Some right inverse V must also be a left inverse.
      found = false;
      std::vector<std::size_t> pick(k, 0);
      while (!found) {
        work.tick();
        Matrix v(k * k);
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t i = 0; i < k; ++i) v[i * k + j] = cols[j][pick[j]][i];
        found = product(b, v, u, k) == identity;
        std::size_t j = 0;
        while (j < k && pick[j] == cols[j].size() - 1) pick[j++] = 0;
        if (j == k) break;
        ++pick[j];
      }
    }
    if (found) codes.push_back(u);
    std::size_t i = 0;
    while (i < k * k && u[i] == q - 1) u[i++] = 0;
    if (i == k * k) break;
    ++u[i];
  }

  auto law = [&b, k](const GroupPoints::Code& x, const GroupPoints::Code& y) { return product(b, x, y, k); };
  auto namer = [&b, k](const GroupPoints::Code& x) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::string> r;
      for (std::size_t j = 0; j < k; ++j) r.push_back(b.name(x[i * k + j]));
      rows.push_back("[" + join(r, ",") + "]");
    }
    return "[" + join(rows, ",") + "]";
  };
  return GroupPoints("GL_" + std::to_string(n) + "(" + b.label() + ")", codes, law, namer, limits);
}

bool invertible_over_N(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("invertible_over_N needs a square matrix");
  if ((a.array() < 0).any()) throw InvalidInput("invertible_over_N needs entries >= 0");
  Integer det = determinant(a);
  if (det == 0) return false;
  IntMatrix adj = adjugate(a);
  for (Index i = 0; i < adj.rows(); ++i)
    for (Index j = 0; j < adj.cols(); ++j)
      if (adj(i, j) % det != 0 || adj(i, j) / det < 0) return false;
  return true;
}

std::vector<IntMatrix> invertible_over_N_search(int n, Integer max_entry, const Limits& limits) {
  if (n < 1 || max_entry < 0) throw InvalidInput("the N-matrix search needs n >= 1 and max_entry >= 0");
  WorkCounter work(limits, "N-matrix search");
  std::vector<IntMatrix> out;
  IntMatrix a = IntMatrix::Zero(n, n);
  const Index cells = static_cast<Index>(n) * n;
  while (true) {
    work.tick();
    if (invertible_over_N(a)) out.push_back(a);
    Index k = cells - 1;
    // Row-major odometer: the last entry moves fastest.
    while (k >= 0 && a(k / n, k % n) == max_entry) a(k / n, k % n) = 0, --k;
    if (k < 0) break;
    ++a(k / n, k % n);
  }
  return out;
}

std::vector<IntMatrix> permutation_matrices(int n) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> out;
  do {
    IntMatrix p = IntMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) p(perm[static_cast<std::size_t>(j)], j) = 1;
    out.push_back(p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace belowz
