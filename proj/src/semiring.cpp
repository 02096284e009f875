#include "belowz/semiring.hpp"

#include "belowz/errors.hpp"
#include "belowz/monoid.hpp"

#include <set>

namespace belowz {

FiniteSemiring::FiniteSemiring(std::string label, std::vector<std::string> names, Table add, Table mul,
                               std::size_t zero, std::size_t one)
    : label_(std::move(label)), names_(std::move(names)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero),
      one_(one) {
  const std::size_t n = names_.size();
  if (n == 0 || add_.size() != n || mul_.size() != n || zero_ >= n || one_ >= n)
    throw InvalidInput("semiring tables do not match the element count");
  for (std::size_t a = 0; a < n; ++a) {
    if (add_[a].size() != n || mul_[a].size() != n) throw InvalidInput("semiring table is not square");
    for (std::size_t b = 0; b < n; ++b)
      if (add_[a][b] >= n || mul_[a][b] >= n) throw InvalidInput("semiring table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (add_[a][zero_] != a || mul_[a][one_] != a) throw InvalidInput("semiring units are wrong");
    if (mul_[a][zero_] != zero_) throw InvalidInput("zero is not absorbing");
    for (std::size_t b = 0; b < n; ++b) {
      if (add_[a][b] != add_[b][a] || mul_[a][b] != mul_[b][a]) throw InvalidInput("semiring is not commutative");
      for (std::size_t c = 0; c < n; ++c) {
        if (add_[add_[a][b]][c] != add_[a][add_[b][c]]) throw InvalidInput("addition is not associative");
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]]) throw InvalidInput("multiplication is not associative");
        if (mul_[a][add_[b][c]] != add_[mul_[a][b]][mul_[a][c]]) throw InvalidInput("not distributive");
      }
    }
  }
}

std::optional<std::size_t> FiniteSemiring::negate(std::size_t a) const {
  for (std::size_t b = 0; b < size(); ++b)
    if (add_[a][b] == zero_) return b;
  return std::nullopt;
}

bool FiniteSemiring::is_ring() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (!negate(a)) return false;
  return true;
}

bool FiniteSemiring::is_unit(std::size_t a) const {
  for (std::size_t b = 0; b < size(); ++b)
    if (mul_[a][b] == one_) return true;
  return false;
}

bool FiniteSemiring::is_local() const {
  if (size() == 1) return false;  // the zero ring has no maximal ideal
  for (std::size_t a = 0; a < size(); ++a) {
    if (is_unit(a)) continue;
    for (std::size_t b = 0; b < size(); ++b)
      if (!is_unit(b) && is_unit(add_[a][b])) return false;
  }
  return true;
}

FiniteMonoid FiniteSemiring::multiplicative_monoid() const { return FiniteMonoid(names_, mul_, one_); }

bool prime_power(int q, int& p, int& k) {
  if (q < 2) return false;
  p = 0;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = q;
  k = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  return r == 1;
}

namespace {

using Poly = std::vector<int>;  // coefficients, low degree first

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

Poly monic_from_index(int idx, int degree, int p) {
  Poly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = idx % p;
    idx /= p;
  }
  f[degree] = 1;
  return f;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Poly irreducible(int p, int k) {
  std::set<Poly> reducible;
  for (int d = 1; d <= k / 2; ++d)
    for (int i = 0; i < ipow(p, d); ++i)
      for (int j = 0; j < ipow(p, k - d); ++j)
        reducible.insert(poly_mul(monic_from_index(i, d, p), monic_from_index(j, k - d, p), p));
  for (int i = 0; i < ipow(p, k); ++i) {
    Poly f = monic_from_index(i, k, p);
    if (!reducible.count(f)) return f;
  }
  throw Unsupported("no irreducible polynomial found");
}

std::string poly_name(int e, int p, int k) {
  if (e == 0) return "0";
  std::string s;
  for (int i = k - 1; i >= 0; --i) {
    int c = (e / ipow(p, i)) % p;
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c);
    s += "a";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace

FiniteSemiring finite_field(int q) {
  int p = 0, k = 0;
  if (!prime_power(q, p, k)) throw Unsupported("q = " + std::to_string(q) + " is not a prime power");
  if (q > 256) throw Unsupported("finite fields are tabulated only for q <= 256");
  const std::size_t n = static_cast<std::size_t>(q);
  FiniteSemiring::Table add(n, std::vector<std::size_t>(n)), mul(n, std::vector<std::size_t>(n));
  std::vector<std::string> names(n);
  if (k == 1) {
    for (int a = 0; a < q; ++a) {
      names[a] = std::to_string(a);
      for (int b = 0; b < q; ++b) {
        add[a][b] = static_cast<std::size_t>((a + b) % q);
        mul[a][b] = static_cast<std::size_t>((a * b) % q);
      }
    }
    return FiniteSemiring("F" + std::to_string(q), names, add, mul, 0, 1);
  }
  Poly modulus = irreducible(p, k);
  auto digits = [&](int e) {
    Poly d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = e % p;
      e /= p;
    }
    return d;
  };
  auto encode = [&](const Poly& d) {
    int e = 0;
    for (int i = k - 1; i >= 0; --i) e = e * p + d[i];
    return e;
  };
  for (int a = 0; a < q; ++a) {
    names[a] = poly_name(a, p, k);
    Poly da = digits(a);
    for (int b = 0; b < q; ++b) {
      Poly db = digits(b);
      Poly s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      add[a][b] = static_cast<std::size_t>(encode(s));
      Poly prod = poly_mul(da, db, p);
      for (int deg = static_cast<int>(prod.size()) - 1; deg >= k; --deg) {
        int c = prod[deg];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) prod[deg - k + i] = ((prod[deg - k + i] - c * modulus[i]) % p + p) % p;
      }
      prod.resize(k);
      mul[a][b] = static_cast<std::size_t>(encode(prod));
    }
  }
  return FiniteSemiring("F" + std::to_string(q), names, add, mul, 0, 1);
}

FiniteSemiring integers_mod(int n) {
  if (n < 1) throw InvalidInput("Z/n needs n >= 1");
  const std::size_t s = static_cast<std::size_t>(n);
  FiniteSemiring::Table add(s, std::vector<std::size_t>(s)), mul(s, std::vector<std::size_t>(s));
  std::vector<std::string> names(s);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) {
      add[a][b] = static_cast<std::size_t>((a + b) % n);
      mul[a][b] = static_cast<std::size_t>((a * b) % n);
    }
  }
  return FiniteSemiring("Z/" + std::to_string(n), names, add, mul, 0, static_cast<std::size_t>(1 % n));
}

FiniteSemiring boolean_semiring() {
  return FiniteSemiring("B", {"0", "1"}, {{0, 1}, {1, 1}}, {{0, 0}, {0, 1}}, 0, 1);
}

}  // namespace belowz
