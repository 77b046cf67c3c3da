#include "dacscanon/poly.hpp"

#include <algorithm>
#include <random>

namespace dacs {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::x() { return Poly(std::vector<Rational>{0, 1}); }

Poly Poly::from_roots(const std::vector<Rational>& roots) {
  Poly p = constant(1);
  for (const auto& r : roots) p = p * Poly(std::vector<Rational>{-r, 1});
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + o.coeff(k);
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) - o.coeff(k);
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v *= s;
  return Poly(std::move(c));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

RatMatrix Poly::eval(const RatMatrix& A) const {
  const std::size_t n = A.rows();
  RatMatrix acc(n, n);
  const RatMatrix I = RatMatrix::identity(n);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * A + I * c_[k];
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return *this * (1 / lead());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DimensionError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] / b.lead();
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeffs()[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly charpoly(const RatMatrix& A) {
  if (!A.is_square()) throw DimensionError("charpoly of non-square matrix");
  const std::size_t n = A.rows();
  // Faddeev-LeVerrier.
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix M(n, n);
  const RatMatrix I = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = A * M + I * c[n - k + 1];
    RatMatrix AM = A * M;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

std::vector<Poly> invariant_factors(const RatMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = (i == j ? Poly::x() : Poly()) - Poly::constant(A(i, j));

  auto row_op = [&](std::size_t dst, std::size_t src, const Poly& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j) m[dst][j] = m[dst][j] - q * m[src][j];
  };
  auto col_op = [&](std::size_t dst, std::size_t src, const Poly& q) {
    for (std::size_t i = 0; i < n; ++i) m[i][dst] = m[i][dst] - m[i][src] * q;
  };

  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // smallest-degree nonzero entry of the trailing block
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!m[i][j].is_zero() && (bi == n || m[i][j].degree() < m[bi][bj].degree())) {
            bi = i;
            bj = j;
          }
      if (bi == n) break;
      std::swap(m[k], m[bi]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][k], m[i][bj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        auto [q, r] = divmod(m[i][k], m[k][k]);
        row_op(i, k, q);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero()) continue;
        auto [q, r] = divmod(m[k][j], m[k][k]);
        col_op(j, k, q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i)
        for (std::size_t j = k + 1; j < n && divides; ++j)
          if (!divmod(m[i][j], m[k][k]).second.is_zero()) {
            for (std::size_t c = 0; c < n; ++c) m[k][c] = m[k][c] + m[i][c];
            divides = false;
          }
      if (divides) break;
    }
  }
  std::vector<Poly> out;
  for (std::size_t k = 0; k < n; ++k) {
    Poly d = m[k][k].monic();
    if (d.degree() >= 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
  return out;
}

RatMatrix companion(const Poly& p) {
  const int k = p.degree();
  if (k < 1) return RatMatrix(0, 0);
  Poly q = p.monic();
  RatMatrix C(k, k);
  for (int i = 0; i + 1 < k; ++i) C(i, i + 1) = 1;
  for (int j = 0; j < k; ++j) C(k - 1, j) = -q.coeff(j);
  return C;
}

RatMatrix frobenius_form(const RatMatrix& A) {
  std::vector<RatMatrix> blocks;
  for (const auto& f : invariant_factors(A)) blocks.push_back(companion(f));
  return blockdiag(blocks);
}

RatMatrix frobenius_transform(const RatMatrix& A) {
  const std::size_t n = A.rows();
  if (n == 0) return RatMatrix(0, 0);
  const RatMatrix F = frobenius_form(A);
  // F T - T A = 0, T column-major vectorized.
  RatMatrix K(n * n, n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = c * n + i;
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(F(i, k)) != 0) K(row, c * n + k) += F(i, k);
        if (sgn(A(k, c)) != 0) K(row, k * n + i) -= A(k, c);
      }
    }
  const RatMatrix basis = kernel_basis(K).basis();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 200; ++attempt) {
    RatMatrix v(n * n, 1);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      Rational a = attempt == 0 ? Rational(1) : Rational(coef(rng));
      if (sgn(a) == 0) continue;
      for (std::size_t i = 0; i < n * n; ++i)
        if (sgn(basis(i, j)) != 0) v(i, 0) += a * basis(i, j);
    }
    RatMatrix T(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < n; ++i) T(i, c) = v(c * n + i, 0);
    if (is_invertible(T)) return T;
  }
  throw InternalInvariantViolation("frobenius_transform: no invertible intertwiner found");
}

}  // namespace dacs
