#include "belowz/polyhedral.hpp"

#include <algorithm>

namespace belowz {

std::vector<ExponentVector> orthogonal_lattice(const std::vector<ExponentVector>& rows, Index dim) {
  IntMatrix a = rows_of(rows, dim);
  IntMatrix k = kernel_basis(a);
  std::vector<ExponentVector> out;
  for (Index j = 0; j < k.cols(); ++j) out.push_back(k.col(j));
  return out;
}

ExponentVector project_orthogonal(const ExponentVector& v, const std::vector<ExponentVector>& basis) {
  if (basis.empty()) return primitive<Integer>(v);
  const Index l = static_cast<Index>(basis.size());
  // Solve G c = B v with G the Gram matrix; the projection is
  // det(G) v - B^T adj(G) B v.
  IntMatrix b = rows_of(basis, v.size());
  IntMatrix gram(l, l);
  for (Index i = 0; i < l; ++i)
    for (Index j = 0; j < l; ++j) gram(i, j) = dot(basis[i], basis[j]);
  Integer det = determinant(gram);
  IntMatrix adj = adjugate(gram);
  ExponentVector bv(l);
  for (Index i = 0; i < l; ++i) bv(i) = dot(basis[i], v);
  ExponentVector c(l);
  for (Index i = 0; i < l; ++i) {
    Integer acc = 0;
    for (Index j = 0; j < l; ++j) acc = detail::add(acc, detail::mul(adj(i, j), bv(j)));
    c(i) = acc;
  }
  ExponentVector out = checked_scale(v, det);
  for (Index i = 0; i < l; ++i)
    for (Index k = 0; k < v.size(); ++k) out(k) = detail::sub(out(k), detail::mul(c(i), b(i, k)));
  if (det < 0) out = -out;
  return primitive<Integer>(out);
}

namespace {

// Rank of the processed rows that vanish on every vector in `on`.
Index tight_rank(const std::vector<ExponentVector>& rows, std::size_t processed,
                 const std::vector<const ExponentVector*>& on, Index dim) {
  std::vector<ExponentVector> tight;
  for (std::size_t i = 0; i < processed; ++i) {
    bool all = true;
    for (const auto* v : on)
      if (dot(rows[i], *v) != 0) {
        all = false;
        break;
      }
    if (all) tight.push_back(rows[i]);
  }
  if (tight.empty()) return 0;
  return rank(rows_of(tight, dim));
}

}  // namespace

ConeGenerators cone_from_inequalities(const std::vector<ExponentVector>& input_rows, Index dim) {
  std::vector<ExponentVector> rows;
  for (const auto& r : input_rows)
    if (!is_zero(r)) rows.push_back(primitive<Integer>(r));

  std::vector<ExponentVector> lin;
  for (Index i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
  std::vector<ExponentVector> rays;

  for (std::size_t k = 0; k < rows.size(); ++k) {
    const ExponentVector& a = rows[k];
    auto it = std::find_if(lin.begin(), lin.end(), [&](const ExponentVector& l) { return dot(a, l) != 0; });
    if (it != lin.end()) {
      ExponentVector l0 = *it;
      lin.erase(it);
      Integer al0 = dot(a, l0);
      if (al0 < 0) {
        l0 = -l0;
        al0 = -al0;
      }
      for (auto& l : lin) {
        Integer al = dot(a, l);
        if (al != 0) l = primitive<Integer>(checked_sum(checked_scale(l, al0), checked_scale(l0, -al)));
      }
      for (auto& r : rays) {
        Integer ar = dot(a, r);
        if (ar != 0) r = primitive<Integer>(checked_sum(checked_scale(r, al0), checked_scale(l0, -ar)));
      }
      rays.push_back(l0);
      continue;
    }
    std::vector<ExponentVector> pos, zero, neg;
    for (auto& r : rays) {
      Integer ar = dot(a, r);
      if (ar > 0)
        pos.push_back(r);
      else if (ar == 0)
        zero.push_back(r);
      else
        neg.push_back(r);
    }
    if (neg.empty()) continue;
    const Index ell = static_cast<Index>(lin.size());
    std::vector<ExponentVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        if (tight_rank(rows, k, {&p, &n}, dim) != dim - ell - 2) continue;
        Integer ap = dot(a, p), an = dot(a, n);
        next.push_back(primitive<Integer>(checked_sum(checked_scale(n, ap), checked_scale(p, -an))));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  // Canonical lineality basis.
  if (!lin.empty()) {
    IntMatrix h = hermite_rows<Integer>(rows_of(lin, dim));
    // Saturate: the lineality space as a lattice is its rational span meet Z^d.
    std::vector<ExponentVector> hr;
    for (Index i = 0; i < h.rows(); ++i) hr.push_back(h.row(i).transpose());
    auto perp = orthogonal_lattice(hr, dim);
    auto sat = orthogonal_lattice(perp, dim);
    out.lineality = sat;
  }
  const Index ell = static_cast<Index>(out.lineality.size());
  std::vector<ExponentVector> cleaned;
  for (const auto& r : rays) {
    ExponentVector p = project_orthogonal(r, out.lineality);
    if (is_zero(p)) continue;
    if (tight_rank(rows, rows.size(), {&p}, dim) != dim - ell - 1) continue;
    bool dup = std::any_of(cleaned.begin(), cleaned.end(), [&](const ExponentVector& c) { return vec_equal(c, p); });
    if (!dup) cleaned.push_back(p);
  }
  std::sort(cleaned.begin(), cleaned.end(), LexLess{});
  out.rays = std::move(cleaned);
  return out;
}

}  // namespace belowz
