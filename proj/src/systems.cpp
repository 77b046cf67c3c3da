#include "dacscanon/systems.hpp"

#include <algorithm>

namespace dacs {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

RatMatrix inv_checked(const RatMatrix& M, const char* what) {
  if (!is_invertible(M)) throw SingularTransform(what);
  return inverse(M);
}

}  // namespace

void Dacs::validate() const {
  require(H.rows() == E.rows() && L.rows() == E.rows(), "Dacs: E, H, L need the same row count");
  require(H.cols() == E.cols(), "Dacs: E and H need the same column count");
}

void Odecs2::validate() const {
  const std::size_t n = A.rows();
  require(A.cols() == n, "Odecs2: A must be square");
  require(Bu.rows() == n && Bv.rows() == n, "Odecs2: B rows must equal n");
  require(C.cols() == n, "Odecs2: C columns must equal n");
  require(Du.rows() == C.rows() && Du.cols() == Bu.cols(), "Odecs2: Du must be p x m");
}

void StateSpace::validate() const {
  const std::size_t n = A.rows();
  require(A.cols() == n && B.rows() == n && C.cols() == n, "StateSpace: dimension mismatch");
  require(D.rows() == C.rows() && D.cols() == B.cols(), "StateSpace: D must be p x m");
}

StateSpace merged(const Odecs2& o) {
  return {o.A, hcat({o.Bu, o.Bv}), o.C, hcat({o.Du, RatMatrix(o.p(), o.s())})};
}

Odecs2 split(const StateSpace& ss, std::size_t m) {
  const std::size_t s = ss.m() - m;
  if (!ss.D.col_range(m, s).is_zero()) throw DimensionError("split: v-columns of D must vanish");
  return {ss.A, ss.B.col_range(0, m), ss.B.col_range(m, s), ss.C, ss.D.col_range(0, m)};
}

ExFbTransform ExFbTransform::identity(std::size_t l, std::size_t n, std::size_t m) {
  return {RatMatrix::identity(l), RatMatrix::identity(n), RatMatrix(m, n), RatMatrix::identity(m)};
}

EmTransform EmTransform::identity(std::size_t n, std::size_t m, std::size_t s, std::size_t p) {
  return {RatMatrix::identity(n), RatMatrix::identity(m), RatMatrix::identity(s), RatMatrix::identity(p),
          RatMatrix(m, n),        RatMatrix(s, n),        RatMatrix(s, m),        RatMatrix(n, p)};
}

MorseTransform MorseTransform::identity(std::size_t n, std::size_t m, std::size_t p) {
  return {RatMatrix::identity(n), RatMatrix::identity(m), RatMatrix::identity(p), RatMatrix(m, n),
          RatMatrix(n, p)};
}

std::pair<Odecs2, ExplicitationRecord> explicitate(const Dacs& d) {
  d.validate();
  auto rr = rank_rref(d.E);
  ExplicitationRecord rec;
  rec.q = rr.rank;
  rec.Q = rr.T;
  rec.E1 = rr.R.row_range(0, rec.q);
  rec.E1_dagger = right_inverse(rec.E1);
  rec.Bv = kernel_basis(d.E).basis();
  const RatMatrix QH = rec.Q * d.H;
  const RatMatrix QL = rec.Q * d.L;
  const std::size_t p = d.l() - rec.q;
  Odecs2 o;
  o.A = rec.E1_dagger * QH.row_range(0, rec.q);
  o.Bu = rec.E1_dagger * QL.row_range(0, rec.q);
  o.Bv = rec.Bv;
  o.C = QH.row_range(rec.q, p);
  o.Du = QL.row_range(rec.q, p);
  return {o, rec};
}

Dacs apply_exfb(const Dacs& d, const ExFbTransform& t) {
  d.validate();
  require(t.Q.rows() == d.l() && t.P.rows() == d.n() && t.G.rows() == d.m(), "apply_exfb: dimension mismatch");
  require(t.F.rows() == d.m() && t.F.cols() == d.n(), "apply_exfb: F must be m x n");
  const RatMatrix Pinv = inv_checked(t.P, "apply_exfb: P singular");
  if (!is_invertible(t.Q)) throw SingularTransform("apply_exfb: Q singular");
  if (!is_invertible(t.G)) throw SingularTransform("apply_exfb: G singular");
  return {t.Q * d.E * Pinv, t.Q * (d.H + d.L * t.F) * Pinv, t.Q * d.L * t.G};
}

Odecs2 apply_em(const Odecs2& o, const EmTransform& t) {
  o.validate();
  const RatMatrix Txi = inv_checked(t.Tx, "apply_em: Tx singular");
  const RatMatrix Tui = inv_checked(t.Tu, "apply_em: Tu singular");
  const RatMatrix Tvi = inv_checked(t.Tv, "apply_em: Tv singular");
  if (!is_invertible(t.Ty)) throw SingularTransform("apply_em: Ty singular");
  const RatMatrix CF = o.C + o.Du * t.Fu;
  Odecs2 r;
  r.A = t.Tx * (o.A + o.Bu * t.Fu + o.Bv * (t.Fv + t.R * t.Fu) + t.K * CF) * Txi;
  r.Bu = t.Tx * (o.Bu + o.Bv * t.R + t.K * o.Du) * Tui;
  r.Bv = t.Tx * o.Bv * Tvi;
  r.C = t.Ty * CF * Txi;
  r.Du = t.Ty * o.Du * Tui;
  return r;
}

StateSpace apply_morse(const StateSpace& ss, const MorseTransform& t) {
  ss.validate();
  const RatMatrix Txi = inv_checked(t.Tx, "apply_morse: Tx singular");
  const RatMatrix Tui = inv_checked(t.Tu, "apply_morse: Tu singular");
  if (!is_invertible(t.Ty)) throw SingularTransform("apply_morse: Ty singular");
  const RatMatrix CF = ss.C + ss.D * t.F;
  StateSpace r;
  r.A = t.Tx * (ss.A + ss.B * t.F + t.K * CF) * Txi;
  r.B = t.Tx * (ss.B + t.K * ss.D) * Tui;
  r.C = t.Ty * CF * Txi;
  r.D = t.Ty * ss.D * Tui;
  return r;
}

bool verify_exfb(const Dacs& d1, const Dacs& d2, const ExFbTransform& t) {
  try {
    if (!is_invertible(t.Q) || !is_invertible(t.P) || !is_invertible(t.G)) return false;
    // Q E = E~ P,  Q (H + L F) = H~ P,  Q L G = L~
    return t.Q * d1.E == d2.E * t.P && t.Q * (d1.H + d1.L * t.F) == d2.H * t.P && t.Q * d1.L * t.G == d2.L;
  } catch (const DimensionError&) {
    return false;
  }
}

bool verify_em(const Odecs2& o1, const Odecs2& o2, const EmTransform& t) {
  try {
    return apply_em(o1, t) == o2;
  } catch (const Error&) {
    return false;
  }
}

bool verify_morse(const StateSpace& s1, const StateSpace& s2, const MorseTransform& t) {
  try {
    return apply_morse(s1, t) == s2;
  } catch (const Error&) {
    return false;
  }
}

ExFbTransform compose(const ExFbTransform& first, const ExFbTransform& second) {
  // x2 = P2 P1 x,  u = F1 x + G1 (F2 P1 x + G2 u2)
  return {second.Q * first.Q, second.P * first.P, first.F + first.G * second.F * first.P,
          first.G * second.G};
}

ExFbTransform inverse(const ExFbTransform& t) {
  const RatMatrix Pi = inverse(t.P), Gi = inverse(t.G);
  return {inverse(t.Q), Pi, -(Gi * t.F * Pi), Gi};
}

MorseTransform compose(const MorseTransform& first, const MorseTransform& second) {
  const RatMatrix T1i = inverse(first.Tx);
  const RatMatrix Tu1i = inverse(first.Tu);
  return {second.Tx * first.Tx, second.Tu * first.Tu, second.Ty * first.Ty,
          first.F + Tu1i * second.F * first.Tx, first.K + T1i * second.K * first.Ty};
}

MorseTransform inverse(const MorseTransform& t) {
  const RatMatrix Ti = inverse(t.Tx), Tui = inverse(t.Tu), Tyi = inverse(t.Ty);
  return {Ti, Tui, Tyi, -(t.Tu * t.F * Ti), -(t.Tx * t.K * Tyi)};
}

MorseTransform to_w(const EmTransform& t) {
  const std::size_t m = t.Tu.rows(), s = t.Tv.rows();
  RatMatrix Tw(m + s, m + s);
  Tw.set_block(0, 0, t.Tu);
  Tw.set_block(m, 0, -(t.Tv * t.R));
  Tw.set_block(m, m, t.Tv);
  return {t.Tx, Tw, t.Ty, vcat({t.Fu, t.Fv + t.R * t.Fu}), t.K};
}

bool is_lower_triangular_input(const MorseTransform& t, std::size_t m) {
  const std::size_t w = t.Tu.rows();
  return t.Tu.block(0, m, m, w - m).is_zero();
}

EmTransform from_w(const MorseTransform& t, std::size_t m) {
  const std::size_t w = t.Tu.rows(), s = w - m;
  if (!is_lower_triangular_input(t, m)) throw SingularTransform("from_w: input change mixes v into u");
  EmTransform e;
  e.Tx = t.Tx;
  e.Ty = t.Ty;
  e.K = t.K;
  e.Tu = t.Tu.block(0, 0, m, m);
  e.Tv = t.Tu.block(m, m, s, s);
  e.R = -(inv_checked(e.Tv, "from_w: Tv singular") * t.Tu.block(m, 0, s, m));
  e.Fu = t.F.row_range(0, m);
  e.Fv = t.F.row_range(m, s) - e.R * e.Fu;
  return e;
}

EmTransform compose(const EmTransform& first, const EmTransform& second) {
  return from_w(compose(to_w(first), to_w(second)), first.Tu.rows());
}

EmTransform inverse(const EmTransform& t) { return from_w(inverse(to_w(t)), t.Tu.rows()); }

std::optional<ExplWitness> expl_membership(const Odecs2& o, const Dacs& d) {
  const auto [base, rec] = explicitate(d);
  if (o.n() != base.n() || o.m() != base.m() || o.s() != base.s() || o.p() != base.p()) return std::nullopt;
  const std::size_t n = base.n(), s = base.s(), p = base.p();

  ExplWitness w;
  // Bv~ = Bv Tv^{-1}
  RatMatrix Tvi = left_inverse(base.Bv) * o.Bv;
  if (base.Bv * Tvi != o.Bv || !is_invertible(Tvi)) return std::nullopt;
  w.Tv = inverse(Tvi);

  // Ty [C Du] = [C~ Du~]
  const RatMatrix N = hcat({base.C, base.Du});
  const RatMatrix Nt = hcat({o.C, o.Du});
  auto rr = rank_rref(N);
  const RatMatrix Nr = rr.R.row_range(0, rr.rank);
  RatMatrix Y1 = rr.rank ? Nt * right_inverse(Nr) : RatMatrix(p, 0);
  if (Y1 * Nr != Nt) return std::nullopt;
  if (rank(Y1) != rr.rank) return std::nullopt;
  const RatMatrix Y2 = complement(image(Y1), Subspace::full(p));
  w.Ty = hcat({Y1, Y2}) * rr.T;

  // [A~ - A, Bu~ - Bu] = K N + Bv [Fv R]
  const RatMatrix M = hcat({o.A - base.A, o.Bu - base.Bu});
  const RatMatrix W = image(base.Bv).annihilator();
  if (W.rows() > 0) {
    auto Kp = solve_left(N, W * M);
    if (!Kp) return std::nullopt;
    w.K = right_inverse(W) * *Kp;
  } else {
    w.K = RatMatrix(n, p);
  }
  const RatMatrix rest = M - w.K * N;
  RatMatrix G = s ? left_inverse(base.Bv) * rest : RatMatrix(0, M.cols());
  if (base.Bv * G != rest) return std::nullopt;
  w.Fv = G.col_range(0, n);
  w.R = G.col_range(n, base.m());
  return w;
}

EmTransform witness_transform(const ExplWitness& w, std::size_t n, std::size_t m) {
  EmTransform t;
  t.Tx = RatMatrix::identity(n);
  t.Tu = RatMatrix::identity(m);
  t.Tv = w.Tv;
  t.Ty = w.Ty;
  t.Fu = RatMatrix(m, n);
  t.Fv = w.Fv;
  t.R = w.R;
  t.K = w.K;
  return t;
}

ExFbTransform em_to_exfb(const EmTransform& t, const ExplicitationRecord& r1, const ExplicitationRecord& r2) {
  const std::size_t q = r1.q;
  const std::size_t p = t.Ty.rows();
  RatMatrix mid(q + p, q + p);
  mid.set_block(0, 0, r2.E1 * t.Tx * r1.E1_dagger);
  mid.set_block(0, q, r2.E1 * t.Tx * t.K);
  mid.set_block(q, q, t.Ty);
  ExFbTransform c;
  c.Q = inverse(r2.Q) * mid * r1.Q;
  c.P = t.Tx;
  c.F = t.Fu;
  c.G = inverse(t.Tu);
  return c;
}

EmTransform exfb_to_em(const Dacs& d, const ExFbTransform& t) {
  const auto [o1, r1] = explicitate(d);
  const Dacs d2 = apply_exfb(d, t);
  // Feedback, state and input change carry the explicitation over directly.
  EmTransform step = EmTransform::identity(o1.n(), o1.m(), o1.s(), o1.p());
  step.Tx = t.P;
  step.Tu = inverse(t.G);
  step.Fu = t.F;
  const Odecs2 mid = apply_em(o1, step);
  auto w = expl_membership(mid, d2);
  ensure(w.has_value(), "exfb_to_em: transported explicitation left the class");
  return compose(step, inverse(witness_transform(*w, o1.n(), o1.m())));
}

Odecs2 prolong(const SplitSystem& lz) {
  const std::size_t n1 = lz.H1.rows(), s = lz.H2.cols(), m = lz.L1.cols();
  Odecs2 o;
  o.A = vcat({hcat({lz.H1, lz.H2}), RatMatrix(s, n1 + s)});
  o.Bu = vcat({lz.L1, RatMatrix(s, m)});
  o.Bv = vcat({RatMatrix(n1, s), RatMatrix::identity(s)});
  o.C = hcat({lz.H3, lz.H4});
  o.Du = lz.L2;
  o.validate();
  return o;
}

VReduction v_reduce(const Odecs2& o) {
  o.validate();
  const std::size_t n = o.n(), s = o.s();
  std::vector<std::size_t> z2;
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < s; ++j) {
    std::size_t hit = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(o.Bv(i, j)) == 0) continue;
      if (o.Bv(i, j) != 1 || hit != n) throw NotAProlongation("v_reduce: Bv column is not a standard basis vector");
      hit = i;
    }
    if (hit == n || used[hit]) throw NotAProlongation("v_reduce: Bv columns are not distinct unit vectors");
    for (std::size_t c = 0; c < n; ++c)
      if (sgn(o.A(hit, c)) != 0) throw NotAProlongation("v_reduce: driven state has a nonzero A row");
    for (std::size_t c = 0; c < o.m(); ++c)
      if (sgn(o.Bu(hit, c)) != 0) throw NotAProlongation("v_reduce: driven state has a nonzero Bu row");
    used[hit] = true;
    z2.push_back(hit);
  }
  std::vector<std::size_t> z1;
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) z1.push_back(i);
  VReduction r;
  r.perm = z1;
  r.perm.insert(r.perm.end(), z2.begin(), z2.end());
  r.system.H1 = o.A.select_rows(z1).select_cols(z1);
  r.system.H2 = o.A.select_rows(z1).select_cols(z2);
  r.system.H3 = o.C.select_cols(z1);
  r.system.H4 = o.C.select_cols(z2);
  r.system.L1 = o.Bu.select_rows(z1);
  r.system.L2 = o.Du;
  return r;
}

Dacs implicitate(const SplitSystem& lz) {
  const std::size_t n1 = lz.H1.rows(), s = lz.H2.cols(), p = lz.H3.rows();
  Dacs d;
  d.E = RatMatrix(n1 + p, n1 + s);
  d.E.set_block(0, 0, RatMatrix::identity(n1));
  d.H = vcat({hcat({lz.H1, lz.H2}), hcat({lz.H3, lz.H4})});
  d.L = vcat({lz.L1, lz.L2});
  d.validate();
  return d;
}

Trajectory simulate(const Odecs2& o, const RatMatrix& x0, const std::vector<RatMatrix>& u,
                    const std::vector<RatMatrix>& v, const Rational& h) {
  if (sgn(h) <= 0) throw DimensionError("simulate: step must be positive");
  if (u.size() != v.size()) throw DimensionError("simulate: u and v step counts differ");
  Trajectory tr;
  tr.x.push_back(x0);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const RatMatrix& x = tr.x.back();
    tr.y.push_back(o.C * x + o.Du * u[k]);
    tr.x.push_back(x + (o.A * x + o.Bu * u[k] + o.Bv * v[k]) * h);
  }
  return tr;
}

std::vector<RatMatrix> dacs_residuals(const Dacs& d, const std::vector<RatMatrix>& x,
                                      const std::vector<RatMatrix>& u, const Rational& h) {
  std::vector<RatMatrix> res;
  const Rational inv_h = 1 / h;
  for (std::size_t k = 0; k + 1 < x.size() && k < u.size(); ++k)
    res.push_back(d.E * (x[k + 1] - x[k]) * inv_h - d.H * x[k] - d.L * u[k]);
  return res;
}

}  // namespace dacs
