#include "dacscanon/morse.hpp"

#include <functional>

#include "dacscanon/chains.hpp"
#include "dacscanon/poly.hpp"

namespace dacs {

namespace {

// Offsets of the state, input (block order) and output blocks.
struct Offsets {
  std::size_t x1, x2, x3, x4, w1, w3, y3, y4;
  std::size_t mw1, mw3;
  explicit Offsets(const BlockDims& d)
      : x1(0), x2(d.n1), x3(d.n1 + d.n2), x4(d.n1 + d.n2 + d.n3), w1(0), w3(d.m1 + d.s1), y3(0), y4(d.p3),
        mw1(d.m1 + d.s1), mw3(d.m3 + d.s3) {}
};

// Map X -> L(X) as a matrix acting on column-major vec(X).
RatMatrix vectorize(std::size_t r, std::size_t c, const std::function<RatMatrix(const RatMatrix&)>& L) {
  std::vector<RatMatrix> cols;
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      RatMatrix E(r, c);
      E(i, j) = 1;
      RatMatrix y = L(E);
      RatMatrix v(y.rows() * y.cols(), 1);
      for (std::size_t b = 0; b < y.cols(); ++b)
        for (std::size_t a = 0; a < y.rows(); ++a) v(a + b * y.rows(), 0) = y(a, b);
      cols.push_back(std::move(v));
    }
  if (cols.empty()) {
    RatMatrix y = L(RatMatrix(r, c));
    return RatMatrix(y.rows() * y.cols(), 0);
  }
  return hcat(cols);
}

RatMatrix vec(const RatMatrix& M) {
  RatMatrix v(M.rows() * M.cols(), 1);
  for (std::size_t b = 0; b < M.cols(); ++b)
    for (std::size_t a = 0; a < M.rows(); ++a) v(a + b * M.rows(), 0) = M(a, b);
  return v;
}

RatMatrix unvec(const RatMatrix& v, std::size_t r, std::size_t c) {
  RatMatrix M(r, c);
  for (std::size_t b = 0; b < c; ++b)
    for (std::size_t a = 0; a < r; ++a) M(a, b) = v(a + b * r, 0);
  return M;
}

SylvesterSolution vectorized_solve(std::size_t r, std::size_t c, const std::function<RatMatrix(const RatMatrix&)>& L,
                                   const RatMatrix& rhs) {
  const RatMatrix M = vectorize(r, c, L);
  auto x = solve(M, vec(rhs));
  if (!x) throw NoSolution("linear matrix equation has no solution");
  return {unvec(*x, r, c), rank(M) == r * c};
}

// X with X - P X Q = R, P or Q nilpotent.
RatMatrix stein_series(const RatMatrix& P, const RatMatrix& R, const RatMatrix& Q) {
  RatMatrix X = R, term = R;
  const std::size_t bound = std::max(P.rows(), Q.rows()) + 1;
  for (std::size_t k = 0; k < bound && !term.is_zero(); ++k) {
    term = P * term * Q;
    X += term;
  }
  ensure(term.is_zero(), "Stein series did not terminate");
  ensure(X - P * X * Q == R, "Stein equation residual");
  return X;
}

bool zero_block(const RatMatrix& M, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
  return M.block(r0, c0, nr, nc).is_zero();
}

// Triangular form of the block-ordered merged system given the input basis
// Ti_inv = [block 1 | block 3].
std::pair<StateSpace, MorseTransform> mtf_core(const StateSpace& ss, const InvariantResult& inv,
                                               const RatMatrix& Ti_inv, const BlockDims& d) {
  const std::size_t n = ss.n(), mw = ss.m(), p = ss.p();
  const Offsets o(d);
  const Subspace VW = subspace_intersect(inv.V_star, inv.W_star);
  const RatMatrix Ts_inv = hcat({VW.basis(), complement(VW, inv.V_star), complement(VW, inv.W_star),
                                 complement(subspace_sum(inv.V_star, inv.W_star), Subspace::full(n))});
  const RatMatrix To_inv = hcat({inv.Y_star.basis(), complement(inv.Y_star, Subspace::full(p))});

  MorseTransform t = MorseTransform::identity(n, mw, p);
  t.Tx = inverse(Ts_inv);
  t.Tu = inverse(Ti_inv);
  t.Ty = inverse(To_inv);
  StateSpace S = apply_morse(ss, t);

  // Feedback clearing rows of blocks 3, 4 and all outputs on state blocks 1, 2.
  const std::size_t n12 = d.n1 + d.n2, n34 = d.n3 + d.n4;
  MorseTransform f = MorseTransform::identity(n, mw, p);
  if (n12 > 0 && o.mw3 > 0) {
    RatMatrix lhs = vcat({S.B.block(o.x3, o.w3, n34, o.mw3), S.D.block(0, o.w3, p, o.mw3)});
    RatMatrix rhs = -vcat({S.A.block(o.x3, 0, n34, n12), S.C.block(0, 0, p, n12)});
    auto X = solve(lhs, rhs);
    if (!X) throw InternalInvariantViolation("triangular form: feedback equations unsolvable");
    f.F.set_block(o.w3, 0, *X);
  }
  S = apply_morse(S, f);

  // Injection clearing rows of blocks 2 and 4 on state block 3 and input block 3.
  MorseTransform k = MorseTransform::identity(n, mw, p);
  if (d.p3 > 0) {
    const RatMatrix M = hcat({S.C.block(0, o.x3, d.p3, d.n3), S.D.block(0, o.w3, d.p3, o.mw3)});
    for (auto [r0, nr] : {std::pair{o.x2, d.n2}, std::pair{o.x4, d.n4}}) {
      if (nr == 0) continue;
      RatMatrix rhs = -hcat({S.A.block(r0, o.x3, nr, d.n3), S.B.block(r0, o.w3, nr, o.mw3)});
      auto K = solve_left(M, rhs);
      if (!K) throw InternalInvariantViolation("triangular form: injection equations unsolvable");
      k.K.set_block(r0, 0, *K);
    }
  }
  S = apply_morse(S, k);
  if (!is_mtf_pattern(S, d)) throw InternalInvariantViolation("triangular form: zero pattern violated");
  return {S, compose(compose(t, f), k)};
}

MorseTransform input_change(std::size_t n, const RatMatrix& Tu, std::size_t p) {
  MorseTransform t = MorseTransform::identity(n, Tu.rows(), p);
  t.Tu = Tu;
  return t;
}

}  // namespace

std::vector<std::size_t> block_input_order(const BlockDims& d) {
  std::vector<std::size_t> idx;
  const std::size_t m = d.m();
  for (std::size_t i = 0; i < d.m1; ++i) idx.push_back(i);
  for (std::size_t i = 0; i < d.s1; ++i) idx.push_back(m + i);
  for (std::size_t i = 0; i < d.m3; ++i) idx.push_back(d.m1 + i);
  for (std::size_t i = 0; i < d.s3; ++i) idx.push_back(m + d.s1 + i);
  return idx;
}

StateSpace block_ordered(const Odecs2& o, const BlockDims& d) {
  const RatMatrix P = permutation_matrix(block_input_order(d));
  return apply_morse(merged(o), input_change(o.n(), P, o.p()));
}

bool is_mtf_pattern(const StateSpace& S, const BlockDims& d) {
  if (S.n() != d.n() || S.m() != d.m() + d.s() || S.p() != d.p()) return false;
  const Offsets o(d);
  const std::size_t n = d.n(), mw = S.m(), p = d.p();
  const std::size_t n12 = d.n1 + d.n2;
  return zero_block(S.A, o.x2, d.n2, 0, d.n1) && zero_block(S.A, o.x2, d.n2, o.x3, d.n3) &&
         zero_block(S.A, o.x3, d.n3 + d.n4, 0, n12) && zero_block(S.A, o.x4, d.n4, o.x3, d.n3) &&
         zero_block(S.B, o.x2, d.n2, 0, mw) && zero_block(S.B, o.x4, d.n4, 0, mw) &&
         zero_block(S.B, o.x3, d.n3, 0, o.mw1) && zero_block(S.C, 0, p, 0, n12) &&
         zero_block(S.C, o.y4, d.p4, o.x3, d.n3) && zero_block(S.D, 0, p, 0, o.mw1) &&
         zero_block(S.D, o.y4, d.p4, 0, mw) && n == S.n();
}

bool is_mnf_pattern(const StateSpace& S, const BlockDims& d) {
  if (!is_mtf_pattern(S, d)) return false;
  const Offsets o(d);
  return zero_block(S.A, 0, d.n1, o.x2, d.n() - d.n1) && zero_block(S.A, o.x2, d.n2, o.x4, d.n4) &&
         zero_block(S.A, o.x3, d.n3, o.x4, d.n4) && zero_block(S.B, 0, d.n1, o.w3, o.mw3) &&
         zero_block(S.C, 0, d.p3, o.x4, d.n4);
}

MtfSystem emtf(const Odecs2& o) {
  o.validate();
  const std::size_t n = o.n(), m = o.m(), s = o.s(), p = o.p();
  const StateSpace w = merged(o);
  const InvariantResult inv = invariant_subspaces(w, s);

  const Subspace Uv = Subspace::coordinate(m + s, m, s);
  const Subspace Usv = subspace_intersect(inv.U_star, Uv);
  const RatMatrix Tv1 = Usv.basis();
  const RatMatrix Tu1 = complement(Usv, inv.U_star);
  const RatMatrix Tu3 = complement(subspace_sum(inv.U_star, Uv), Subspace::full(m + s));
  const RatMatrix Tv3 = complement(Usv, Uv);

  BlockDims d;
  d.n1 = inv.n1;
  d.n2 = inv.n2;
  d.n3 = inv.n3;
  d.n4 = inv.n4;
  d.m1 = Tu1.cols();
  d.s1 = Tv1.cols();
  d.m3 = Tu3.cols();
  d.s3 = Tv3.cols();
  d.p3 = inv.p3;
  d.p4 = inv.p4;
  ensure(d.m() == m && d.s() == s, "triangular form: input split does not add up");

  auto [blk, t_blk] = mtf_core(w, inv, hcat({Tu1, Tv1, Tu3, Tv3}), d);
  const MorseTransform to_em = input_change(n, permutation_matrix(block_input_order(d)).transpose(), p);

  MtfSystem r;
  r.dims = d;
  r.system = split(apply_morse(blk, to_em), m);
  r.transform = from_w(compose(t_blk, to_em), m);
  ensure(apply_em(o, r.transform) == r.system, "triangular form: certificate mismatch");
  return r;
}

MtfSystem mtf(const StateSpace& ss) {
  ss.validate();
  return emtf(Odecs2{ss.A, ss.B, RatMatrix(ss.n(), 0), ss.C, ss.D});
}

MnfSystem emnf(const MtfSystem& t) {
  const BlockDims& d = t.dims;
  const Offsets o(d);
  const std::size_t n = d.n(), m = d.m(), mw = d.m() + d.s(), p = d.p();
  const RatMatrix Pi = permutation_matrix(block_input_order(d));
  StateSpace S = block_ordered(t.system, d);
  if (!is_mtf_pattern(S, d)) throw InternalInvariantViolation("normal form: input not triangular");

  MorseTransform total = input_change(n, Pi, p);
  auto step = [&](const MorseTransform& mt) {
    S = apply_morse(S, mt);
    total = compose(total, mt);
  };
  auto A = [&](std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) { return S.A.block(r0, c0, nr, nc); };

  // Disjoint integer spectra on blocks 1, 3, 4, avoiding roots of block 2.
  const Poly p2 = charpoly(A(o.x2, d.n2, o.x2, d.n2));
  const std::size_t need = d.n1 + d.n3 + d.n4;
  long base = 1;
  bool found = false;
  for (std::size_t attempt = 0; attempt <= n && !found; ++attempt) {
    found = true;
    for (std::size_t i = 0; i < need; ++i)
      if (p2.eval(Rational(base + static_cast<long>(i))) == 0) found = false;
    if (!found) base += static_cast<long>(n);
  }
  if (!found) throw InternalInvariantViolation("normal form: no admissible spectrum");
  std::vector<Rational> r1, r3, r4;
  for (std::size_t i = 0; i < need; ++i) {
    Rational r(base + static_cast<long>(i));
    (i < d.n1 ? r1 : i < d.n1 + d.n3 ? r3 : r4).push_back(r);
  }
  {
    MorseTransform mt = MorseTransform::identity(n, mw, p);
    mt.F.set_block(o.w1, o.x1, place_poles(A(o.x1, d.n1, o.x1, d.n1), S.B.block(o.x1, o.w1, d.n1, o.mw1), r1));
    mt.F.set_block(o.w3, o.x3, place_poles(A(o.x3, d.n3, o.x3, d.n3), S.B.block(o.x3, o.w3, d.n3, o.mw3), r3));
    mt.K.set_block(o.x4, o.y4,
                   place_poles(A(o.x4, d.n4, o.x4, d.n4).transpose(), S.C.block(o.y4, o.x4, d.p4, d.n4).transpose(), r4)
                       .transpose());
    step(mt);
  }
  const std::vector<Poly> cps = {charpoly(A(o.x1, d.n1, o.x1, d.n1)), p2, charpoly(A(o.x3, d.n3, o.x3, d.n3)),
                                 charpoly(A(o.x4, d.n4, o.x4, d.n4))};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      ensure(gcd(cps[i], cps[j]) == Poly::constant(1), "normal form: block spectra not disjoint");

  // Block 3 system matrix; its inverse has a nilpotent top-left block.
  const RatMatrix M3 = vcat({hcat({A(o.x3, d.n3, o.x3, d.n3), S.B.block(o.x3, o.w3, d.n3, o.mw3)}),
                             hcat({S.C.block(o.y3, o.x3, d.p3, d.n3), S.D.block(o.y3, o.w3, d.p3, o.mw3)})});
  if (!M3.is_square()) throw InternalInvariantViolation("normal form: block 3 is not square");
  const RatMatrix P = inverse(M3);
  const RatMatrix P11 = P.block(0, 0, d.n3, d.n3), P12 = P.block(0, d.n3, d.n3, d.p3);
  const RatMatrix P21 = P.block(d.n3, 0, o.mw3, d.n3), P22 = P.block(d.n3, d.n3, o.mw3, d.p3);

  {  // clear block 1 <- block 3 coupling (state and input)
    const RatMatrix A1 = A(o.x1, d.n1, o.x1, d.n1), A13 = A(o.x1, d.n1, o.x3, d.n3);
    const RatMatrix B12 = S.B.block(o.x1, o.w3, d.n1, o.mw3);
    const RatMatrix T2 = stein_series(A1, A13 * P11 + B12 * P21, P11);
    MorseTransform mt = MorseTransform::identity(n, mw, p);
    mt.Tx.set_block(o.x1, o.x3, -T2);
    mt.K.set_block(o.x1, o.y3, -((A13 + A1 * T2) * P12 + B12 * P22));
    step(mt);
  }
  {  // clear block 3 <- block 4 coupling (state and output)
    const RatMatrix A4 = A(o.x4, d.n4, o.x4, d.n4), A34 = A(o.x3, d.n3, o.x4, d.n4);
    const RatMatrix C34 = S.C.block(o.y3, o.x4, d.p3, d.n4);
    const RatMatrix T5 = stein_series(P11, -(P11 * A34) - P12 * C34, A4);
    MorseTransform mt = MorseTransform::identity(n, mw, p);
    mt.Tx.set_block(o.x3, o.x4, -T5);
    mt.F.set_block(o.w3, o.x4, P21 * (T5 * A4 - A34) - P22 * C34);
    step(mt);
  }
  auto sylvester_step = [&](std::size_t ra, std::size_t na, std::size_t rb, std::size_t nb) {
    if (na == 0 || nb == 0) return;
    RatMatrix X = solve_sylvester(A(ra, na, ra, na), A(rb, nb, rb, nb), -A(ra, na, rb, nb)).X;
    MorseTransform mt = MorseTransform::identity(n, mw, p);
    mt.Tx.set_block(ra, rb, -X);
    step(mt);
  };
  sylvester_step(o.x2, d.n2, o.x4, d.n4);
  sylvester_step(o.x1, d.n1, o.x2, d.n2);
  sylvester_step(o.x1, d.n1, o.x4, d.n4);
  if (!is_mnf_pattern(S, d)) throw InternalInvariantViolation("normal form: block-diagonal pattern violated");

  const MorseTransform to_em = input_change(n, Pi.transpose(), p);
  total = compose(total, to_em);
  MnfSystem r;
  r.dims = d;
  r.system = split(apply_morse(S, to_em), m);
  const EmTransform stage = from_w(total, m);
  r.transform = compose(t.transform, stage);
  ensure(apply_em(t.system, stage) == r.system, "normal form: certificate mismatch");
  return r;
}

MnfSystem mnf(const MtfSystem& t) { return emnf(t); }

SylvesterSolution solve_sylvester(const RatMatrix& A, const RatMatrix& B, const RatMatrix& C) {
  if (!A.is_square() || !B.is_square() || C.rows() != A.rows() || C.cols() != B.rows())
    throw DimensionError("solve_sylvester: shape mismatch");
  const std::size_t a = A.rows(), b = B.rows();
  if (a == 0 || b == 0) return {RatMatrix(a, b), true};
  const Poly q = charpoly(B);
  if (gcd(charpoly(A), q) == Poly::constant(1)) {
    // q(A) X = sum_k q_k sum_j A^j C B^{k-1-j}
    RatMatrix S(a, b), acc(a, b), Ak = RatMatrix::identity(a);
    for (int k = 1; k <= q.degree(); ++k) {
      S = S * B + Ak * C;
      Ak = A * Ak;
      if (q.coeff(k) != 0) acc += S * q.coeff(k);
    }
    RatMatrix X = inverse(q.eval(A)) * acc;
    ensure(A * X - X * B == C, "Sylvester residual");
    return {X, true};
  }
  return vectorized_solve(a, b, [&](const RatMatrix& X) { return A * X - X * B; }, C);
}

SylvesterSolution solve_constrained_sylvester(const RatMatrix& A, const RatMatrix& B, const RatMatrix& C,
                                              const RatMatrix& Rc, const RatMatrix& Rt, const RatMatrix& Lc,
                                              const RatMatrix& Lt) {
  const std::size_t a = A.rows(), b = B.rows();
  if (C.rows() != a || C.cols() != b || Rc.rows() != b || Rt.rows() != a || Rt.cols() != Rc.cols() ||
      Lc.cols() != a || Lt.cols() != b || Lt.rows() != Lc.rows())
    throw DimensionError("solve_constrained_sylvester: shape mismatch");
  auto L = [&](const RatMatrix& X) { return vcat({vec(A * X - X * B), vec(X * Rc), vec(Lc * X)}); };
  return vectorized_solve(a, b, L, vcat({vec(C), vec(Rt), vec(Lt)}));
}

}  // namespace dacs
