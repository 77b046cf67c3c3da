#pragma once

#include <optional>
#include <vector>

#include "dacscanon/ratmat.hpp"

namespace dacs {

// E x' = H x + L u
struct Dacs {
  RatMatrix E, H, L;

  std::size_t l() const { return E.rows(); }
  std::size_t n() const { return E.cols(); }
  std::size_t m() const { return L.cols(); }
  void validate() const;
  bool operator==(const Dacs& o) const { return E == o.E && H == o.H && L == o.L; }
};

// x' = A x + Bu u + Bv v,  y = C x + Du u
struct Odecs2 {
  RatMatrix A, Bu, Bv, C, Du;

  std::size_t n() const { return A.rows(); }
  std::size_t m() const { return Bu.cols(); }
  std::size_t s() const { return Bv.cols(); }
  std::size_t p() const { return C.rows(); }
  void validate() const;
  bool operator==(const Odecs2& o) const {
    return A == o.A && Bu == o.Bu && Bv == o.Bv && C == o.C && Du == o.Du;
  }
};

// Single-input-kind 4-tuple x' = A x + B w, y = C x + D w.
struct StateSpace {
  RatMatrix A, B, C, D;

  std::size_t n() const { return A.rows(); }
  std::size_t m() const { return B.cols(); }
  std::size_t p() const { return C.rows(); }
  void validate() const;
  bool operator==(const StateSpace& o) const { return A == o.A && B == o.B && C == o.C && D == o.D; }
};

// w = (u, v): B = [Bu Bv], D = [Du 0].
StateSpace merged(const Odecs2& o);
// Inverse of merged; the last columns of D must vanish.
Odecs2 split(const StateSpace& ss, std::size_t m);

struct ExplicitationRecord {
  RatMatrix Q;          // Q E = [E1; 0]
  RatMatrix E1;
  RatMatrix E1_dagger;  // E1 E1_dagger = I
  RatMatrix Bv;         // Im Bv = ker E
  std::size_t q = 0;
};

struct ExFbTransform {
  RatMatrix Q, P, F, G;
  static ExFbTransform identity(std::size_t l, std::size_t n, std::size_t m);
};

struct EmTransform {
  RatMatrix Tx, Tu, Tv, Ty, Fu, Fv, R, K;
  static EmTransform identity(std::size_t n, std::size_t m, std::size_t s, std::size_t p);
};

struct MorseTransform {
  RatMatrix Tx, Tu, Ty, F, K;
  static MorseTransform identity(std::size_t n, std::size_t m, std::size_t p);
};

std::pair<Odecs2, ExplicitationRecord> explicitate(const Dacs& d);

Dacs apply_exfb(const Dacs& d, const ExFbTransform& t);
Odecs2 apply_em(const Odecs2& o, const EmTransform& t);
StateSpace apply_morse(const StateSpace& ss, const MorseTransform& t);

bool verify_exfb(const Dacs& d1, const Dacs& d2, const ExFbTransform& t);
bool verify_em(const Odecs2& o1, const Odecs2& o2, const EmTransform& t);
bool verify_morse(const StateSpace& s1, const StateSpace& s2, const MorseTransform& t);

// Composition: apply `first`, then `second`.
ExFbTransform compose(const ExFbTransform& first, const ExFbTransform& second);
EmTransform compose(const EmTransform& first, const EmTransform& second);
MorseTransform compose(const MorseTransform& first, const MorseTransform& second);
ExFbTransform inverse(const ExFbTransform& t);
EmTransform inverse(const EmTransform& t);
MorseTransform inverse(const MorseTransform& t);

// An EM transform is a Morse transform on w = (u, v) whose input change is
// lower block triangular.
MorseTransform to_w(const EmTransform& t);
EmTransform from_w(const MorseTransform& t, std::size_t m);  // SingularTransform if not triangular
bool is_lower_triangular_input(const MorseTransform& t, std::size_t m);

// Witness that o lies in the explicitation class of d: o is obtained from
// explicitate(d) by  A + K C + Bv Fv,  Bu + Bv R + K Du,  Bv Tv^{-1},
// Ty C,  Ty Du.
struct ExplWitness {
  RatMatrix Fv, R, K, Tv, Ty;
};
std::optional<ExplWitness> expl_membership(const Odecs2& o, const Dacs& d);
// The witness as an EM transform from explicitate(d) to o.
EmTransform witness_transform(const ExplWitness& w, std::size_t n, std::size_t m);

// Ex-fb certificate between two DACSs from an EM transform t with
// apply_em(explicitate(d1), t) == explicitate(d2), given both records.
ExFbTransform em_to_exfb(const EmTransform& t, const ExplicitationRecord& r1,
                         const ExplicitationRecord& r2);
// EM transform between the two canonical explicitations of d and
// apply_exfb(d, t).
EmTransform exfb_to_em(const Dacs& d, const ExFbTransform& t);

// z1' = H1 z1 + H2 z2 + L1 u,  y = H3 z1 + H4 z2 + L2 u.
struct SplitSystem {
  RatMatrix H1, H2, H3, H4, L1, L2;
  bool operator==(const SplitSystem& o) const {
    return H1 == o.H1 && H2 == o.H2 && H3 == o.H3 && H4 == o.H4 && L1 == o.L1 && L2 == o.L2;
  }
};

struct VReduction {
  SplitSystem system;
  std::vector<std::size_t> perm;  // state order (z1 states, then z2 states)
};

Odecs2 prolong(const SplitSystem& lz);
VReduction v_reduce(const Odecs2& o);  // NotAProlongation
Dacs implicitate(const SplitSystem& lz);

struct Trajectory {
  std::vector<RatMatrix> x;  // N+1 states
  std::vector<RatMatrix> y;  // N outputs
};
// Explicit Euler with piecewise constant inputs; u[k], v[k] hold on step k.
Trajectory simulate(const Odecs2& o, const RatMatrix& x0, const std::vector<RatMatrix>& u,
                    const std::vector<RatMatrix>& v, const Rational& h);
// E (x[k+1]-x[k])/h - H x[k] - L u[k] for k < N.
std::vector<RatMatrix> dacs_residuals(const Dacs& d, const std::vector<RatMatrix>& x,
                                      const std::vector<RatMatrix>& u, const Rational& h);

}  // namespace dacs
