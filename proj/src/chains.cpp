#include "dacscanon/chains.hpp"

#include <algorithm>
#include <numeric>

#include "dacscanon/poly.hpp"

namespace dacs {

namespace {

// Incremental linear independence test on column vectors.
class Independence {
 public:
  explicit Independence(std::size_t n) : n_(n) {}

  bool add(const RatMatrix& v) {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = v(i, 0);
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const Rational c = x[piv_[b]];
      if (c == 0) continue;
      for (std::size_t i = 0; i < n_; ++i)
        if (rows_[b][i] != 0) x[i] -= c * rows_[b][i];
    }
    std::size_t p = n_;
    for (std::size_t i = 0; i < n_; ++i)
      if (x[i] != 0) { p = i; break; }
    if (p == n_) return false;
    const Rational inv = 1 / x[p];
    for (auto& e : x) e *= inv;
    for (auto& r : rows_) {
      const Rational c = r[p];
      if (c == 0) continue;
      for (std::size_t i = 0; i < n_; ++i) r[i] -= c * x[i];
    }
    rows_.push_back(std::move(x));
    piv_.push_back(p);
    return true;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace

std::vector<std::size_t> chain_offsets(const std::vector<std::size_t>& lengths) {
  std::vector<std::size_t> off(lengths.size());
  std::size_t acc = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    off[i] = acc;
    acc += lengths[i];
  }
  return off;
}

RatMatrix shift_chains(const std::vector<std::size_t>& lengths) {
  const std::size_t n = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  RatMatrix A(n, n);
  auto off = chain_offsets(lengths);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    for (std::size_t j = 0; j + 1 < lengths[i]; ++j) A(off[i] + j, off[i] + j + 1) = 1;
  return A;
}

RatMatrix chain_ends(const std::vector<std::size_t>& lengths) {
  const std::size_t n = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  RatMatrix B(n, lengths.size());
  auto off = chain_offsets(lengths);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] > 0) B(off[i] + lengths[i] - 1, i) = 1;
  return B;
}

RatMatrix chain_tops(const std::vector<std::size_t>& lengths) {
  const std::size_t n = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0});
  RatMatrix C(lengths.size(), n);
  auto off = chain_offsets(lengths);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (lengths[i] > 0) C(i, off[i]) = 1;
  return C;
}

ChainForm chain_form(const RatMatrix& A, const RatMatrix& B) {
  const std::size_t n = A.rows(), k = B.cols();
  if (B.rows() != n || A.cols() != n) throw DimensionError("chain_form: shape mismatch");
  ChainForm cf;
  if (n == 0) {
    cf.T = RatMatrix(0, 0);
    cf.F = RatMatrix(k, 0);
    cf.Gamma = RatMatrix(0, k);
    return cf;
  }

  // Krylov vectors, one power at a time across all columns.
  Independence ind(n);
  std::vector<std::size_t> kappa(k, 0);
  std::vector<bool> active(k, true);
  std::vector<RatMatrix> cur(k);
  for (std::size_t j = 0; j < k; ++j) cur[j] = B.col_range(j, 1);
  for (std::size_t t = 0; t < n && ind.size() < n; ++t) {
    bool any = false;
    for (std::size_t j = 0; j < k && ind.size() < n; ++j) {
      if (!active[j]) continue;
      if (ind.add(cur[j])) {
        ++kappa[j];
        cur[j] = A * cur[j];
        any = true;
      } else {
        active[j] = false;
      }
    }
    if (!any) break;
  }
  if (ind.size() < n) throw NotControllable("pair (A, B) is not controllable");

  std::vector<RatMatrix> cols;
  std::vector<std::size_t> offset(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    offset[j] = cols.size();
    RatMatrix v = B.col_range(j, 1);
    for (std::size_t i = 0; i < kappa[j]; ++i) {
      cols.push_back(v);
      v = A * v;
    }
  }
  const RatMatrix Minv = inverse(hcat(cols));

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < k; ++j)
    if (kappa[j] > 0) order.push_back(j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return kappa[a] > kappa[b]; });

  std::vector<RatMatrix> trows, last, gamma;
  for (std::size_t j : order) {
    RatMatrix q = Minv.row_range(offset[j] + kappa[j] - 1, 1);
    for (std::size_t i = 0; i < kappa[j]; ++i) {
      trows.push_back(q);
      if (i + 1 == kappa[j]) gamma.push_back(q * B);
      q = q * A;
    }
    last.push_back(q);
    cf.lengths.push_back(kappa[j]);
    cf.columns.push_back(j);
  }
  cf.T = vcat(trows);
  cf.Gamma = vcat(gamma);
  cf.F = -(right_inverse(cf.Gamma) * vcat(last));

  const RatMatrix Tinv = inverse(cf.T);
  ensure(cf.T * (A + B * cf.F) * Tinv == shift_chains(cf.lengths), "chain form: closed loop is not a shift");
  ensure(cf.T * B == chain_ends(cf.lengths) * cf.Gamma, "chain form: input map not at chain ends");
  return cf;
}

std::vector<std::size_t> controllability_indices(const RatMatrix& A, const RatMatrix& B) {
  const std::size_t n = A.rows();
  std::vector<std::size_t> inc;
  Subspace R = Subspace::zero(n);
  RatMatrix P = B;
  for (std::size_t k = 0; k <= n; ++k) {
    Subspace next = subspace_sum(R, image(P));
    if (next.dim() == R.dim()) break;
    inc.push_back(next.dim() - R.dim());
    R = std::move(next);
    P = A * P;
  }
  std::vector<std::size_t> kappa;
  if (inc.empty()) return kappa;
  for (std::size_t i = 1; i <= inc.front(); ++i) {
    std::size_t c = 0;
    for (std::size_t r : inc)
      if (r >= i) ++c;
    kappa.push_back(c);
  }
  return kappa;
}

RatMatrix place_poles(const RatMatrix& A, const RatMatrix& B, const std::vector<Rational>& roots) {
  const std::size_t n = A.rows();
  if (roots.size() != n) throw DimensionError("place_poles: need one root per state");
  if (n == 0) return RatMatrix(B.cols(), 0);
  ChainForm cf = chain_form(A, B);
  RatMatrix Phi(cf.lengths.size(), n);
  auto off = chain_offsets(cf.lengths);
  std::size_t next = 0;
  for (std::size_t i = 0; i < cf.lengths.size(); ++i) {
    std::vector<Rational> r(roots.begin() + next, roots.begin() + next + cf.lengths[i]);
    next += cf.lengths[i];
    Poly p = Poly::from_roots(r);
    for (std::size_t j = 0; j < cf.lengths[i]; ++j) Phi(i, off[i] + j) = -p.coeff(j);
  }
  RatMatrix F = cf.F + right_inverse(cf.Gamma) * Phi * cf.T;
  ensure(charpoly(A + B * F) == Poly::from_roots(roots), "pole placement missed the target spectrum");
  return F;
}

}  // namespace dacs
