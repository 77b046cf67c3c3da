#pragma once

#include <utility>
#include <vector>

#include "dacscanon/ratmat.hpp"

namespace dacs {

// Polynomial over Q, coefficients stored lowest degree first, no trailing
// zeros.  The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly x();
  // Monic polynomial with the given roots.
  static Poly from_roots(const std::vector<Rational>& roots);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  Rational eval(const Rational& x) const;
  RatMatrix eval(const RatMatrix& A) const;
  Poly monic() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0

// det(xI - A).
Poly charpoly(const RatMatrix& A);
// Monic invariant factors d_1 | d_2 | ... of xI - A, trivial ones dropped.
std::vector<Poly> invariant_factors(const RatMatrix& A);
// Companion matrix in upper-shift form: ones on the superdiagonal, the
// negated coefficients in the last row.
RatMatrix companion(const Poly& p);
// Frobenius (rational canonical) form: block diagonal of companions of the
// invariant factors.
RatMatrix frobenius_form(const RatMatrix& A);
// T with T A T^{-1} = frobenius_form(A).
RatMatrix frobenius_transform(const RatMatrix& A);

}  // namespace dacs
