#include "dacscanon/ratmat.hpp"

#include <sstream>
#include <utility>

namespace dacs {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    for (const auto& v : row) {
      data_.push_back(v);
      data_.back().canonicalize();
    }
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

RatMatrix RatMatrix::unit(std::size_t n, std::size_t j) {
  RatMatrix e(n, 1);
  e(j, 0) = 1;
  return e;
}

RatMatrix RatMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  RatMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void RatMatrix::set_block(std::size_t r0, std::size_t c0, const RatMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

RatMatrix RatMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  RatMatrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  return out;
}

RatMatrix RatMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  RatMatrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  RatMatrix r(*this);
  r += o;
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  RatMatrix r(*this);
  r -= o;
  return r;
}

RatMatrix RatMatrix::operator-() const {
  RatMatrix r(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
  return r;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sum of mismatched matrices");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (sgn(o.data_[k]) != 0) data_[k] += o.data_[k];
  return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("difference of mismatched matrices");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (sgn(o.data_[k]) != 0) data_[k] -= o.data_[k];
  return *this;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("product of mismatched matrices");
  RatMatrix r(rows_, o.cols_);
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Rational& b = o(k, j);
        if (sgn(b) == 0) continue;
        mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        r(i, j) += t;
      }
    }
  }
  return r;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
  RatMatrix r(*this);
  if (sgn(s) == 0) return RatMatrix(rows_, cols_);
  for (auto& v : r.data_)
    if (sgn(v) != 0) v *= s;
  return r;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string RatMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
  }
  os << "] (" << rows_ << "x" << cols_ << ")";
  return os.str();
}

RatMatrix hcat(const std::vector<RatMatrix>& parts) {
  std::size_t rows = 0, cols = 0;
  bool first = true;
  for (const auto& p : parts) {
    if (first) {
      rows = p.rows();
      first = false;
    } else if (p.rows() != rows) {
      throw DimensionError("hcat row mismatch");
    }
    cols += p.cols();
  }
  RatMatrix out(rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    out.set_block(0, c, p);
    c += p.cols();
  }
  return out;
}

RatMatrix vcat(const std::vector<RatMatrix>& parts) {
  std::size_t rows = 0, cols = 0;
  bool first = true;
  for (const auto& p : parts) {
    if (first) {
      cols = p.cols();
      first = false;
    } else if (p.cols() != cols) {
      throw DimensionError("vcat column mismatch");
    }
    rows += p.rows();
  }
  RatMatrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    out.set_block(r, 0, p);
    r += p.rows();
  }
  return out;
}

RatMatrix blockdiag(const std::vector<RatMatrix>& parts) {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  RatMatrix out(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    out.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return out;
}

RatMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  RatMatrix P(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) P(i, perm[i]) = 1;
  return P;
}

namespace {

// In-place Gauss-Jordan on the first `pivot_cols` columns of a row-major
// work array; the remaining columns ride along.
std::vector<std::size_t> gauss_jordan(std::vector<std::vector<Rational>>& a, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  const std::size_t nrows = a.size();
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  Rational t;
  for (std::size_t c = 0; c < pivot_cols && r < nrows; ++c) {
    // Smallest nonzero entry as pivot to limit coefficient growth.
    std::size_t p = nrows, best = 0;
    for (std::size_t i = r; i < nrows; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      const std::size_t sz = mpz_size(a[i][c].get_num_mpz_t()) + mpz_size(a[i][c].get_den_mpz_t());
      if (p == nrows || sz < best) {
        p = i;
        best = sz;
      }
    }
    if (p == nrows) continue;
    std::swap(a[p], a[r]);
    auto& pr = a[r];
    const std::size_t width = pr.size();
    if (pr[c] != 1) {
      Rational inv = 1 / pr[c];
      for (std::size_t j = c; j < width; ++j)
        if (sgn(pr[j]) != 0) pr[j] *= inv;
    }
    nz.clear();
    for (std::size_t j = c; j < width; ++j)
      if (sgn(pr[j]) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      auto& row = a[i];
      for (std::size_t j : nz) {
        mpq_mul(t.get_mpq_t(), f.get_mpq_t(), pr[j].get_mpq_t());
        row[j] -= t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> to_rows(const RatMatrix& M, std::size_t extra_cols = 0) {
  std::vector<std::vector<Rational>> a(M.rows(), std::vector<Rational>(M.cols() + extra_cols));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = M(i, j);
  return a;
}

}  // namespace

RrefResult rank_rref(const RatMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  auto a = to_rows(M, m);
  for (std::size_t i = 0; i < m; ++i) a[i][n + i] = 1;
  RrefResult res;
  res.pivots = gauss_jordan(a, n);
  res.rank = res.pivots.size();
  res.R = RatMatrix(m, n);
  res.T = RatMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) res.R(i, j) = a[i][j];
    for (std::size_t j = 0; j < m; ++j) res.T(i, j) = a[i][n + j];
  }
  return res;
}

RatMatrix rref(const RatMatrix& M, std::vector<std::size_t>* pivots) {
  auto a = to_rows(M);
  auto p = gauss_jordan(a, M.cols());
  if (pivots) *pivots = p;
  RatMatrix R(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) R(i, j) = a[i][j];
  return R;
}

std::size_t rank(const RatMatrix& M) {
  // Eliminate along the smaller dimension.
  if (M.rows() > M.cols()) return rank(M.transpose());
  auto a = to_rows(M);
  return gauss_jordan(a, M.cols()).size();
}

Rational determinant(const RatMatrix& M) {
  if (!M.is_square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = M.rows();
  auto a = to_rows(M);
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j)
        if (sgn(a[c][j]) != 0) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

bool is_invertible(const RatMatrix& M) { return M.is_square() && rank(M) == M.rows(); }

RatMatrix inverse(const RatMatrix& M) {
  if (!M.is_square()) throw SingularTransform("inverse of non-square matrix");
  auto r = rank_rref(M);
  if (r.rank != M.rows()) throw SingularTransform("matrix is singular");
  return r.T;
}

std::optional<RatMatrix> solve(const RatMatrix& A, const RatMatrix& B) {
  if (A.rows() != B.rows()) throw DimensionError("solve: row mismatch");
  const std::size_t n = A.cols(), k = B.cols();
  auto a = to_rows(A, k);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][n + j] = B(i, j);
  auto piv = gauss_jordan(a, n);
  for (std::size_t i = piv.size(); i < a.size(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(a[i][n + j]) != 0) return std::nullopt;
  RatMatrix X(n, k);
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) X(piv[i], j) = a[i][n + j];
  return X;
}

std::optional<RatMatrix> solve_left(const RatMatrix& A, const RatMatrix& B) {
  auto X = solve(A.transpose(), B.transpose());
  if (!X) return std::nullopt;
  return X->transpose();
}

RatMatrix right_inverse(const RatMatrix& M) {
  std::vector<std::size_t> piv;
  rref(M, &piv);
  if (piv.size() != M.rows()) throw NotFullRowRank("right_inverse: matrix lacks full row rank");
  RatMatrix inv = inverse(M.select_cols(piv));
  RatMatrix X(M.cols(), M.rows());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < M.rows(); ++j) X(piv[i], j) = inv(i, j);
  return X;
}

RatMatrix left_inverse(const RatMatrix& M) {
  try {
    return right_inverse(M.transpose()).transpose();
  } catch (const NotFullRowRank&) {
    throw NotFullColumnRank("left_inverse: matrix lacks full column rank");
  }
}

Subspace::Subspace(const RatMatrix& spanning) : ambient_(spanning.rows()) {
  std::vector<std::size_t> piv;
  RatMatrix R = rref(spanning.transpose(), &piv);
  basis_ = R.row_range(0, piv.size()).transpose();
}

Subspace Subspace::full(std::size_t n) { return Subspace(RatMatrix::identity(n)); }

Subspace Subspace::zero(std::size_t n) { return Subspace(RatMatrix(n, 0)); }

Subspace Subspace::coordinate(std::size_t n, std::size_t first, std::size_t count) {
  RatMatrix b(n, count);
  for (std::size_t j = 0; j < count; ++j) b(first + j, j) = 1;
  return Subspace(b);
}

bool Subspace::contains(const RatMatrix& vectors) const {
  if (vectors.rows() != ambient_) throw DimensionError("contains: ambient mismatch");
  if (vectors.cols() == 0) return true;
  return rank(hcat({basis_, vectors})) == dim();
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis()); }

RatMatrix Subspace::annihilator() const { return kernel_basis(basis_.transpose()).basis().transpose(); }

Subspace image(const RatMatrix& M) { return Subspace(M); }

Subspace kernel_basis(const RatMatrix& M) {
  const std::size_t n = M.cols();
  std::vector<std::size_t> piv;
  RatMatrix R = rref(M, &piv);
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatMatrix> cols;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatMatrix v(n, 1);
    v(f, 0) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v(piv[i], 0) = -R(i, f);
    cols.push_back(std::move(v));
  }
  if (cols.empty()) return Subspace::zero(n);
  return Subspace(hcat(cols));
}

Subspace preimage(const RatMatrix& M, const Subspace& S) {
  if (S.ambient() != M.rows()) throw DimensionError("preimage: ambient mismatch");
  if (S.is_full()) return Subspace::full(M.cols());
  return kernel_basis(S.annihilator() * M);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("sum: ambient mismatch");
  return Subspace(hcat({a.basis(), b.basis()}));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("intersect: ambient mismatch");
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  return kernel_basis(vcat({a.annihilator(), b.annihilator()}));
}

Subspace orth_complement(const Subspace& s) { return kernel_basis(s.basis().transpose()); }

Subspace apply(const RatMatrix& M, const Subspace& S) {
  if (M.cols() != S.ambient()) throw DimensionError("apply: ambient mismatch");
  return Subspace(M * S.basis());
}

namespace {

// Incrementally reduced vectors; tells whether a new vector is independent.
class Reducer {
 public:
  explicit Reducer(std::size_t n) : n_(n) {}

  bool add(std::vector<Rational> v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (sgn(v[p]) == 0) continue;
      Rational f = v[p];
      for (std::size_t j = p; j < n_; ++j)
        if (sgn(rows_[k][j]) != 0) v[j] -= f * rows_[k][j];
    }
    std::size_t p = 0;
    while (p < n_ && sgn(v[p]) == 0) ++p;
    if (p == n_) return false;
    Rational inv = 1 / v[p];
    for (std::size_t j = p; j < n_; ++j) v[j] *= inv;
    // keep earlier rows reduced against the new pivot
    for (auto& row : rows_) {
      if (sgn(row[p]) == 0) continue;
      Rational f = row[p];
      for (std::size_t j = p; j < n_; ++j)
        if (sgn(v[j]) != 0) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<Rational> column(const RatMatrix& M, std::size_t j) {
  std::vector<Rational> v(M.rows());
  for (std::size_t i = 0; i < M.rows(); ++i) v[i] = M(i, j);
  return v;
}

}  // namespace

RatMatrix complement(const Subspace& inner, const Subspace& outer) {
  if (inner.ambient() != outer.ambient()) throw DimensionError("complement: ambient mismatch");
  if (!outer.contains(inner)) throw NotNested("complement: inner subspace is not contained in outer");
  Reducer red(inner.ambient());
  for (std::size_t j = 0; j < inner.dim(); ++j) red.add(column(inner.basis(), j));
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < outer.dim() && inner.dim() + picked.size() < outer.dim(); ++j)
    if (red.add(column(outer.basis(), j))) picked.push_back(j);
  return outer.basis().select_cols(picked);
}

}  // namespace dacs
