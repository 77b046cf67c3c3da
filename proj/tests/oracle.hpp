#pragma once

// Reference computations for the tests.  Deliberately naive and written
// without the library's elimination routines.

#include <algorithm>
#include <numeric>
#include <vector>

#include "dacscanon/poly.hpp"
#include "dacscanon/ratmat.hpp"

namespace dacs::oracle {

// Bareiss fraction-free elimination on an integer-scaled copy.
inline std::size_t bareiss_rank(const RatMatrix& M) {
  const std::size_t r = M.rows(), c = M.cols();
  std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
  for (std::size_t i = 0; i < r; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < c; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), M(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < c; ++j) a[i][j] = M(i, j).get_num() * (l / M(i, j).get_den());
  }
  mpz_class prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && a[p][col] == 0) ++p;
    if (p == r) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = row + 1; i < r; ++i) {
      for (std::size_t j = col + 1; j < c; ++j) a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  return row;
}

// Leibniz expansion; only for tiny matrices.
inline Rational det_leibniz(const RatMatrix& M) {
  const std::size_t n = M.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += p[i] > p[j];
    Rational t = inv % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && t != 0; ++i) t *= M(i, p[i]);
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Largest order of a nonvanishing minor.
inline std::size_t rank_by_minors(const RatMatrix& M) {
  for (std::size_t k = std::min(M.rows(), M.cols()); k > 0; --k) {
    std::vector<bool> rs(M.rows(), false), cs(M.cols(), false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        std::vector<std::size_t> ri, ci;
        for (std::size_t i = 0; i < M.rows(); ++i)
          if (rs[i]) ri.push_back(i);
        for (std::size_t j = 0; j < M.cols(); ++j)
          if (cs[j]) ci.push_back(j);
        if (det_leibniz(M.select_rows(ri).select_cols(ci)) != 0) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

inline bool same_span(const RatMatrix& X, const RatMatrix& Y) {
  const std::size_t rx = bareiss_rank(X), ry = bareiss_rank(Y);
  return rx == ry && bareiss_rank(hcat({X, Y})) == rx;
}

// Faddeev-LeVerrier: det(xI - A), lowest degree first.
inline std::vector<Rational> charpoly(const RatMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix M = RatMatrix::zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = A * M;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
    RatMatrix AM = A * M;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

// Controllability indices from rank increments r_k = rank[B .. A^{k-1}B]:
// the number of indices >= k is r_k - r_{k-1}.
inline std::vector<std::size_t> controllability_indices(const RatMatrix& A, const RatMatrix& B) {
  const std::size_t n = A.rows();
  std::vector<std::size_t> at_least;
  RatMatrix K(n, 0), P = B;
  std::size_t prev = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    K = hcat({K, P});
    const std::size_t r = bareiss_rank(K);
    if (r == prev) break;
    at_least.push_back(r - prev);
    prev = r;
    P = A * P;
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const std::size_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (std::size_t t = next; t < at_least[k]; ++t) idx.push_back(k + 1);
  }
  std::sort(idx.rbegin(), idx.rend());
  return idx;
}

}  // namespace dacs::oracle
