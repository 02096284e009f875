#pragma once

// Exact integer linear algebra on Eigen dense types.
//
// Every routine is templated on the scalar type so the same code runs on
// std::int64_t (checked for overflow) and on arbitrary-precision integers.

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace belowz {

using Integer = std::int64_t;
using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using ExponentVector = VectorX<Integer>;
using IntMatrix = MatrixX<Integer>;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

namespace detail {

template <typename S>
S add(const S& a, const S& b) {
  if constexpr (std::is_integral_v<S>) {
    S r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
  } else {
    return a + b;
  }
}

template <typename S>
S sub(const S& a, const S& b) {
  if constexpr (std::is_integral_v<S>) {
    S r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
  } else {
    return a - b;
  }
}

template <typename S>
S mul(const S& a, const S& b) {
  if constexpr (std::is_integral_v<S>) {
    S r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
  } else {
    return a * b;
  }
}

template <typename S>
S abs_value(const S& a) {
  return a < 0 ? S(-a) : a;
}

}  // namespace detail

template <typename S>
S gcd(S a, S b) {
  a = detail::abs_value(a);
  b = detail::abs_value(b);
  while (b != 0) {
    S t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Floor division; b must be nonzero.
template <typename S>
S floor_div(const S& a, const S& b) {
  S q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q = q - 1;
  return q;
}

template <typename Derived>
typename Derived::Scalar dot(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b) {
  using S = typename Derived::Scalar;
  S acc = 0;
  for (Index i = 0; i < a.size(); ++i) acc = detail::add(acc, detail::mul<S>(a(i), b(i)));
  return acc;
}

inline Integer dot(const ExponentVector& a, const ExponentVector& b) {
  Integer acc = 0;
  for (Index i = 0; i < a.size(); ++i) acc = detail::add(acc, detail::mul(a(i), b(i)));
  return acc;
}

/// Divides out the content; the zero vector is returned unchanged.
template <typename S>
VectorX<S> primitive(VectorX<S> v) {
  S g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd<S>(g, v(i));
  if (g > 1)
    for (Index i = 0; i < v.size(); ++i) v(i) = v(i) / g;
  return v;
}

inline bool is_zero(const ExponentVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

/// Canonical total order on exponent vectors: shorter first, then lexicographic.
inline bool lex_less(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

inline bool vec_equal(const ExponentVector& a, const ExponentVector& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

struct LexLess {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const { return lex_less(a, b); }
};

inline ExponentVector unit_vector(Index dim, Index i) {
  ExponentVector v = ExponentVector::Zero(dim);
  v(i) = 1;
  return v;
}

inline ExponentVector checked_sum(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector r(a.size());
  for (Index i = 0; i < a.size(); ++i) r(i) = detail::add(a(i), b(i));
  return r;
}

inline ExponentVector checked_scale(const ExponentVector& a, Integer k) {
  ExponentVector r(a.size());
  for (Index i = 0; i < a.size(); ++i) r(i) = detail::mul(a(i), k);
  return r;
}

/// Stacks vectors as the columns of a dim x n matrix.
inline IntMatrix columns_of(const std::vector<ExponentVector>& vs, Index dim) {
  IntMatrix m(dim, static_cast<Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Index>(j)) = vs[j];
  return m;
}

/// Stacks vectors as the rows of an n x dim matrix.
inline IntMatrix rows_of(const std::vector<ExponentVector>& vs, Index dim) {
  IntMatrix m(static_cast<Index>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Index>(i)) = vs[i].transpose();
  return m;
}

inline std::string to_string(const ExponentVector& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v(i));
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Elimination routines
// ---------------------------------------------------------------------------

/// Rank by fraction-free (Bareiss) elimination.
template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  MatrixX<S> a = input;
  const Index m = a.rows(), n = a.cols();
  Index r = 0;
  S prev = 1;
  for (Index c = 0; c < n && r < m; ++c) {
    Index p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    a.row(p).swap(a.row(r));
    for (Index i = r + 1; i < m; ++i) {
      for (Index j = c + 1; j < n; ++j)
        a(i, j) = detail::sub(detail::mul<S>(a(r, c), a(i, j)), detail::mul<S>(a(i, c), a(r, j))) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

/// Determinant of a square matrix by Bareiss elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  MatrixX<S> a = input;
  const Index n = a.rows();
  if (n == 0) return S(1);
  S sign = 1, prev = 1;
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return S(0);
    if (p != k) {
      a.row(p).swap(a.row(k));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = detail::sub(detail::mul<S>(a(k, k), a(i, j)), detail::mul<S>(a(i, k), a(k, j))) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return detail::mul<S>(sign, a(n - 1, n - 1));
}

/// Adjugate of a square matrix (adj(A) * A = det(A) * I).
template <typename Derived>
MatrixX<typename Derived::Scalar> adjugate(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  const Index n = a.rows();
  MatrixX<S> adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      MatrixX<S> minor(n - 1, n - 1);
      for (Index r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      S d = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? d : S(-d);
    }
  }
  return adj;
}

/// Row-style Hermite normal form: an echelon basis of the row lattice with
/// positive pivots and entries above each pivot reduced into [0, pivot).
template <typename S>
MatrixX<S> hermite_rows(MatrixX<S> a) {
  const Index m = a.rows(), n = a.cols();
  Index r = 0;
  for (Index c = 0; c < n && r < m; ++c) {
    while (true) {
      Index best = -1;
      for (Index i = r; i < m; ++i)
        if (a(i, c) != 0 && (best < 0 || detail::abs_value(a(i, c)) < detail::abs_value(a(best, c)))) best = i;
      if (best < 0) break;
      a.row(best).swap(a.row(r));
      bool done = true;
      for (Index i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        S q = floor_div(a(i, c), a(r, c));
        for (Index j = c; j < n; ++j) a(i, j) = detail::sub(a(i, j), detail::mul(q, a(r, j)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= m || a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (Index j = c; j < n; ++j) a(r, j) = -a(r, j);
    for (Index i = 0; i < r; ++i) {
      S q = floor_div(a(i, c), a(r, c));
      if (q != 0)
        for (Index j = c; j < n; ++j) a(i, j) = detail::sub(a(i, j), detail::mul(q, a(r, j)));
    }
    ++r;
  }
  return a.topRows(r);
}

/// Canonical representative of v modulo the lattice spanned by the rows of
/// a matrix already in Hermite form.
template <typename S>
VectorX<S> reduce_mod_lattice(VectorX<S> v, const MatrixX<S>& hnf) {
  for (Index i = 0; i < hnf.rows(); ++i) {
    Index c = 0;
    while (hnf(i, c) == 0) ++c;
    S q = floor_div(v(c), hnf(i, c));
    if (q != 0)
      for (Index j = c; j < v.size(); ++j) v(j) = detail::sub(v(j), detail::mul(q, hnf(i, j)));
  }
  return v;
}

template <typename S>
struct SmithForm {
  MatrixX<S> diagonal;  // U * A * V
  MatrixX<S> u, u_inv, v, v_inv;
  Index rank = 0;

  S invariant(Index i) const { return diagonal(i, i); }
};

/// Smith normal form with unimodular transforms tracked on both sides.
template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& input) {
  using S = typename Derived::Scalar;
  SmithForm<S> f;
  MatrixX<S>& a = f.diagonal;
  a = input;
  const Index m = a.rows(), n = a.cols();
  f.u = MatrixX<S>::Identity(m, m);
  f.u_inv = MatrixX<S>::Identity(m, m);
  f.v = MatrixX<S>::Identity(n, n);
  f.v_inv = MatrixX<S>::Identity(n, n);

  // row_i -= q * row_t
  auto row_op = [&](Index i, Index t, const S& q) {
    for (Index j = 0; j < n; ++j) a(i, j) = detail::sub(a(i, j), detail::mul(q, a(t, j)));
    for (Index j = 0; j < m; ++j) f.u(i, j) = detail::sub(f.u(i, j), detail::mul(q, f.u(t, j)));
    for (Index j = 0; j < m; ++j) f.u_inv(j, t) = detail::add(f.u_inv(j, t), detail::mul(q, f.u_inv(j, i)));
  };
  auto row_swap = [&](Index i, Index t) {
    if (i == t) return;
    a.row(i).swap(a.row(t));
    f.u.row(i).swap(f.u.row(t));
    f.u_inv.col(i).swap(f.u_inv.col(t));
  };
  // col_j -= q * col_t
  auto col_op = [&](Index j, Index t, const S& q) {
    for (Index i = 0; i < m; ++i) a(i, j) = detail::sub(a(i, j), detail::mul(q, a(i, t)));
    for (Index i = 0; i < n; ++i) f.v(i, j) = detail::sub(f.v(i, j), detail::mul(q, f.v(i, t)));
    for (Index i = 0; i < n; ++i) f.v_inv(t, i) = detail::add(f.v_inv(t, i), detail::mul(q, f.v_inv(j, i)));
  };
  auto col_swap = [&](Index j, Index t) {
    if (j == t) return;
    a.col(j).swap(a.col(t));
    f.v.col(j).swap(f.v.col(t));
    f.v_inv.row(j).swap(f.v_inv.row(t));
  };

  Index t = 0;
  for (; t < std::min(m, n); ++t) {
    Index pi = -1, pj = -1;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j)
        if (a(i, j) != 0 && (pi < 0 || detail::abs_value(a(i, j)) < detail::abs_value(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    while (true) {
      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        row_op(i, t, floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) {
          clean = false;
          if (detail::abs_value(a(i, t)) < detail::abs_value(a(t, t))) row_swap(i, t);
        }
      }
      for (Index j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        col_op(j, t, floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) {
          clean = false;
          if (detail::abs_value(a(t, j)) < detail::abs_value(a(t, t))) col_swap(j, t);
        }
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(t, bad, S(-1));
    }
    if (a(t, t) < 0) {
      for (Index j = 0; j < n; ++j) a(t, j) = -a(t, j);
      for (Index j = 0; j < m; ++j) f.u(t, j) = -f.u(t, j);
      for (Index j = 0; j < m; ++j) f.u_inv(j, t) = -f.u_inv(j, t);
    }
  }
  f.rank = t;
  return f;
}

/// Integer basis (as columns) of {x : A x = 0}, in canonical Hermite form.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  const Index n = a.cols();
  if (a.rows() == 0) return MatrixX<S>::Identity(n, n);
  auto f = smith_normal_form(a);
  MatrixX<S> k = f.v.rightCols(n - f.rank);
  MatrixX<S> h = hermite_rows<S>(k.transpose());
  return h.transpose();
}

/// Some integer solution of A x = b, or nothing when none exists.
template <typename Derived, typename Derived2>
std::optional<VectorX<typename Derived::Scalar>> solve_integer(const Eigen::MatrixBase<Derived>& a,
                                                               const Eigen::MatrixBase<Derived2>& b) {
  using S = typename Derived::Scalar;
  auto f = smith_normal_form(a);
  VectorX<S> ub(a.rows());
  for (Index i = 0; i < a.rows(); ++i) {
    S acc = 0;
    for (Index j = 0; j < a.rows(); ++j) acc = detail::add(acc, detail::mul<S>(f.u(i, j), b(j)));
    ub(i) = acc;
  }
  VectorX<S> y = VectorX<S>::Zero(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    if (i < f.rank) {
      if (ub(i) % f.invariant(i) != 0) return std::nullopt;
      y(i) = ub(i) / f.invariant(i);
    } else if (ub(i) != 0) {
      return std::nullopt;
    }
  }
  VectorX<S> x(a.cols());
  for (Index i = 0; i < a.cols(); ++i) {
    S acc = 0;
    for (Index j = 0; j < a.cols(); ++j) acc = detail::add(acc, detail::mul<S>(f.v(i, j), y(j)));
    x(i) = acc;
  }
  return x;
}

}  // namespace belowz
