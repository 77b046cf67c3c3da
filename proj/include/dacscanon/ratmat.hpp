#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "dacscanon/errors.hpp"

namespace dacs {

using Rational = mpq_class;

// Dense row-major matrix over Q.  Zero rows or zero columns are allowed.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  // Column j of the n×n identity.
  static RatMatrix unit(std::size_t n, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const RatMatrix& b);
  RatMatrix row_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
  RatMatrix col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
  RatMatrix select_rows(const std::vector<std::size_t>& idx) const;
  RatMatrix select_cols(const std::vector<std::size_t>& idx) const;

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator-() const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator*(const Rational& s) const;
  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator-=(const RatMatrix& o);
  bool operator==(const RatMatrix& o) const;
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatMatrix hcat(const std::vector<RatMatrix>& parts);
RatMatrix vcat(const std::vector<RatMatrix>& parts);
RatMatrix blockdiag(const std::vector<RatMatrix>& parts);
// Permutation matrix P with (P x)_i = x_{perm[i]}.
RatMatrix permutation_matrix(const std::vector<std::size_t>& perm);

struct RrefResult {
  std::size_t rank = 0;
  RatMatrix R;  // reduced row echelon form
  RatMatrix T;  // invertible, T * M = R
  std::vector<std::size_t> pivots;
};

RrefResult rank_rref(const RatMatrix& M);
// Same echelon form without tracking the row operations.
RatMatrix rref(const RatMatrix& M, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& M);
Rational determinant(const RatMatrix& M);
bool is_invertible(const RatMatrix& M);
RatMatrix inverse(const RatMatrix& M);  // SingularTransform

// A X = B; first echelon solution (free variables zero) or nullopt.
std::optional<RatMatrix> solve(const RatMatrix& A, const RatMatrix& B);
// X A = B.
std::optional<RatMatrix> solve_left(const RatMatrix& A, const RatMatrix& B);

RatMatrix right_inverse(const RatMatrix& M);  // NotFullRowRank
RatMatrix left_inverse(const RatMatrix& M);   // NotFullColumnRank

// Subspace of Q^k kept in column-reduced echelon form, so equality of
// subspaces is equality of bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(const RatMatrix& spanning);  // canonicalizes

  static Subspace full(std::size_t n);
  static Subspace zero(std::size_t n);
  // Coordinate subspace spanned by e_{first} .. e_{first+count-1}.
  static Subspace coordinate(std::size_t n, std::size_t first, std::size_t count);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }
  bool is_full() const { return dim() == ambient_; }
  bool is_zero() const { return dim() == 0; }
  bool contains(const Subspace& other) const;
  bool contains(const RatMatrix& vectors) const;
  // Rows W with ker W equal to this subspace.
  RatMatrix annihilator() const;

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  std::size_t ambient_ = 0;
  RatMatrix basis_;
};

Subspace image(const RatMatrix& M);
Subspace kernel_basis(const RatMatrix& M);
Subspace preimage(const RatMatrix& M, const Subspace& S);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
Subspace orth_complement(const Subspace& s);
Subspace apply(const RatMatrix& M, const Subspace& S);  // M·S
// Columns X with inner ⊕ Im X = outer.  NotNested unless inner ⊆ outer.
RatMatrix complement(const Subspace& inner, const Subspace& outer);

}  // namespace dacs
