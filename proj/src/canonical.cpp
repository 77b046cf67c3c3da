#include "dacscanon/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "dacscanon/chains.hpp"
#include "dacscanon/poly.hpp"

namespace dacs {

namespace {

std::size_t total(const Indices& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

// Permutation reversing the order inside each chain.
RatMatrix chain_reversal(const Indices& lengths) {
  std::vector<std::size_t> perm;
  auto off = chain_offsets(lengths);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    for (std::size_t j = lengths[i]; j-- > 0;) perm.push_back(off[i] + j);
  return permutation_matrix(perm);
}

// Jordan chains of a nilpotent N: columns t, N t, ..., N^{l-1} t per chain,
// longest chains first.
std::pair<RatMatrix, Indices> nilpotent_chains(const RatMatrix& N) {
  const std::size_t n = N.rows();
  std::vector<Subspace> K{Subspace::zero(n)};
  RatMatrix P = RatMatrix::identity(n);
  while (!K.back().is_full()) {
    P = P * N;
    K.push_back(kernel_basis(P));
    ensure(K.size() <= n + 1, "matrix is not nilpotent");
  }
  K.push_back(K.back());
  std::vector<RatMatrix> cols;
  Indices lengths;
  for (std::size_t j = K.size() - 2; j >= 1; --j) {
    const RatMatrix tops = complement(subspace_sum(K[j - 1], apply(N, K[j + 1])), K[j]);
    for (std::size_t c = 0; c < tops.cols(); ++c) {
      RatMatrix v = tops.col_range(c, 1);
      for (std::size_t l = 0; l < j; ++l) {
        cols.push_back(v);
        v = N * v;
      }
      lengths.push_back(j);
    }
  }
  RatMatrix S = cols.empty() ? RatMatrix(n, 0) : hcat(cols);
  ensure(S.cols() == n && is_invertible(S), "Jordan chains do not form a basis");
  return {S, lengths};
}

// EM transform acting as w-Morse (Tx, I, Ty, Fw, K) on a system whose
// inputs are w = (u, v); Fw has m + s rows.
EmTransform state_feedback(const RatMatrix& Tx, const RatMatrix& Ty, const RatMatrix& Fw, const RatMatrix& K,
                           std::size_t m, std::size_t s) {
  EmTransform t = EmTransform::identity(Tx.rows(), m, s, Ty.rows());
  t.Tx = Tx;
  t.Ty = Ty;
  t.Fu = Fw.row_range(0, m);
  t.Fv = Fw.row_range(m, s);
  t.K = K;
  return t;
}

}  // namespace

BrunovskyResult brunovsky_two_inputs(const RatMatrix& A, const RatMatrix& Bu, const RatMatrix& Bv) {
  const std::size_t n = A.rows(), m = Bu.cols(), s = Bv.cols(), k = m + s;
  const ChainForm cf = chain_form(A, hcat({Bu, Bv}));
  const std::size_t r = cf.lengths.size();
  const auto off = chain_offsets(cf.lengths);

  // Coefficients of each chain end in the current input variables, whose
  // definitions in the original inputs are the rows of Phi.
  std::vector<std::vector<Rational>> c(r, std::vector<Rational>(k));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i][j] = cf.Gamma(i, j);
  RatMatrix Phi = RatMatrix::identity(k);
  RatMatrix Tst = RatMatrix::identity(n);
  std::vector<bool> replaced(k, false), v_chain(r, false);
  std::vector<std::size_t> var(r);

  for (std::size_t q = 0; q < r; ++q) {
    std::size_t j = k;
    for (std::size_t jj = m; jj < k && j == k; ++jj)
      if (!replaced[jj] && c[q][jj] != 0) j = jj;
    const bool is_v = j < k;
    for (std::size_t jj = 0; jj < m && j == k; ++jj)
      if (!replaced[jj] && c[q][jj] != 0) j = jj;
    ensure(j < k, "chain without a free input variable");

    RatMatrix row(1, k);
    for (std::size_t l = 0; l < k; ++l)
      if (c[q][l] != 0) row += Phi.row_range(l, 1) * c[q][l];
    Phi.set_block(j, 0, row);
    const Rational piv = c[q][j];
    for (std::size_t i = q + 1; i < r; ++i) {
      const Rational beta = c[i][j];
      if (beta == 0) continue;
      for (std::size_t l = 0; l < k; ++l)
        if (l != j) c[i][l] -= beta * c[q][l] / piv;
      c[i][j] = beta / piv;
    }
    std::fill(c[q].begin(), c[q].end(), Rational(0));
    c[q][j] = 1;
    replaced[j] = true;
    var[q] = j;
    v_chain[q] = is_v;
    if (!is_v) continue;
    // Remove the new v variable from the ends of the remaining chains.
    for (std::size_t i = q + 1; i < r; ++i) {
      const Rational beta = c[i][j];
      if (beta == 0) continue;
      RatMatrix E = RatMatrix::identity(n);
      for (std::size_t l = 0; l < cf.lengths[i]; ++l)
        E(off[i] + l, off[q] + cf.lengths[q] - cf.lengths[i] + l) = -beta;
      Tst = E * Tst;
      c[i][j] = 0;
    }
  }

  BrunovskyResult res;
  std::vector<std::size_t> sperm, iperm_u, iperm_v;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t q = 0; q < r; ++q) {
      if (v_chain[q] != (pass == 1)) continue;
      for (std::size_t l = 0; l < cf.lengths[q]; ++l) sperm.push_back(off[q] + l);
      (pass == 0 ? iperm_u : iperm_v).push_back(var[q]);
      (pass == 0 ? res.eps : res.eps_bar).push_back(cf.lengths[q]);
    }
  for (std::size_t j = 0; j < k; ++j)
    if (!replaced[j]) {
      (j < m ? iperm_u : iperm_v).push_back(j);
      ++(j < m ? res.null_u : res.null_v);
    }
  std::vector<std::size_t> iperm = iperm_u;
  iperm.insert(iperm.end(), iperm_v.begin(), iperm_v.end());

  MorseTransform mt = MorseTransform::identity(n, k, 0);
  mt.Tx = permutation_matrix(sperm) * Tst * cf.T;
  mt.Tu = permutation_matrix(iperm) * Phi;
  mt.F = cf.F;
  res.transform = from_w(mt, m);

  Indices lengths = res.eps;
  lengths.insert(lengths.end(), res.eps_bar.begin(), res.eps_bar.end());
  const RatMatrix ends = chain_ends(lengths);
  const std::size_t a = res.eps.size(), b = res.eps_bar.size();
  Odecs2 expect{shift_chains(lengths), RatMatrix(n, m), RatMatrix(n, s), RatMatrix(0, n), RatMatrix(0, m)};
  expect.Bu.set_block(0, 0, ends.col_range(0, a));
  expect.Bv.set_block(0, 0, ends.col_range(a, b));
  res.system = apply_em(Odecs2{A, Bu, Bv, RatMatrix(0, n), RatMatrix(0, m)}, res.transform);
  ensure(res.system == expect, "two-input chain form not reached");
  return res;
}

PrimeResult prime_canonical(const Odecs2& o0) {
  o0.validate();
  if (!is_prime(merged(o0))) throw NotPrime("4-tuple is not prime");
  const std::size_t n = o0.n(), m = o0.m(), s = o0.s(), p = o0.p();
  PrimeResult res;
  res.transform = EmTransform::identity(n, m, s, p);
  Odecs2 o = o0;
  auto step = [&](const EmTransform& t) {
    o = apply_em(o, t);
    res.transform = compose(res.transform, t);
  };

  // Static part: Du -> [[0, 0], [0, I]], then decouple it.
  const Subspace kerD = kernel_basis(o.Du);
  const RatMatrix M = complement(kerD, Subspace::full(m));
  const std::size_t delta = M.cols(), mc = m - delta, pc = p - delta;
  {
    const RatMatrix Z = o.Du * M;
    EmTransform t = EmTransform::identity(n, m, s, p);
    t.Tu = inverse(hcat({kerD.basis(), M}));
    t.Ty = inverse(hcat({complement(image(Z), Subspace::full(p)), Z}));
    step(t);
    t = EmTransform::identity(n, m, s, p);
    t.Fu.set_block(mc, 0, -o.C.row_range(pc, delta));
    t.K.set_block(0, pc, -o.Bu.col_range(mc, delta));
    step(t);
  }
  if (n + pc != n + mc + s) throw NotPrime("prime block is not square");

  // Chain part through the inverse system matrix, whose state block is
  // nilpotent.
  auto Bchain = [&]() { return hcat({o.Bu.col_range(0, mc), o.Bv}); };
  RatMatrix P;
  try {
    P = inverse(vcat({hcat({o.A, Bchain()}), hcat({o.C.row_range(0, pc), RatMatrix(pc, mc + s)})}));
  } catch (const SingularTransform&) {
    throw NotPrime("system matrix of the prime block is singular");
  }
  const RatMatrix P11 = P.block(0, 0, n, n), P12 = P.block(0, n, n, pc), P21 = P.block(n, 0, mc + s, n);
  auto [S, sigma] = nilpotent_chains(P11);
  const std::size_t r = sigma.size();
  if (r != pc) throw NotPrime("chain count differs from output count");
  const auto off = chain_offsets(sigma);
  const RatMatrix T = inverse(S);
  const RatMatrix tops = S * chain_tops(sigma).transpose();
  {
    const RatMatrix Wq = image(P11).annihilator();
    const RatMatrix Y = inverse(Wq * P12) * Wq * tops;
    auto Z = solve(P11, P12 * Y - tops);
    ensure(Z.has_value(), "prime block: output injection unsolvable");
    const RatMatrix Ty = inverse(Y);
    const RatMatrix Phi = P21 * S;
    RatMatrix G(mc + s, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t l = 0; l + 1 < sigma[i]; ++l) G.set_block(0, off[i] + l + 1, Phi.col_range(off[i] + l, 1));
    RatMatrix K(n, p);
    K.set_block(0, 0, *Z * Ty);
    step(state_feedback(T, blockdiag({Ty, RatMatrix::identity(delta)}),
                        vcat({G.row_range(0, mc), RatMatrix(delta, n), G.row_range(mc, s)}) * T, K, m, s));
  }
  const RatMatrix A0 = shift_chains(sigma), ends = chain_ends(sigma), C0 = chain_tops(sigma);
  RatMatrix Gamma = ends.transpose() * Bchain();
  ensure(Bchain() == ends * Gamma, "prime block: inputs not at chain ends");
  {
    const RatMatrix D = A0 - o.A;
    ensure(ends * ends.transpose() * D == D, "prime block: residual off the chain ends");
    const RatMatrix F2 = inverse(Gamma) * ends.transpose() * D;
    step(state_feedback(RatMatrix::identity(n), RatMatrix::identity(p),
                        vcat({F2.row_range(0, mc), RatMatrix(delta, n), F2.row_range(mc, s)}), RatMatrix(n, p), m,
                        s));
  }
  ensure(o.A == A0 && o.C.row_range(0, pc) == C0, "prime block: chain form not reached");

  // Choose which chains end in v: per length level, as many as the image of
  // the v-columns adds at that level.
  std::vector<RatMatrix> gcols(r);
  std::vector<bool> is_v(r, false);
  {
    const Subspace Sv = image(Gamma.col_range(mc, s));
    for (std::size_t lvl = r ? sigma.front() : 0; lvl >= 1; --lvl) {
      const std::size_t hi = std::count_if(sigma.begin(), sigma.end(), [&](std::size_t x) { return x > lvl; });
      const std::size_t lo = std::count_if(sigma.begin(), sigma.end(), [&](std::size_t x) { return x >= lvl; });
      if (hi == lo) continue;
      const Subspace Uhi = Subspace::coordinate(r, 0, hi), Ulo = Subspace::coordinate(r, 0, lo);
      const RatMatrix vs = complement(subspace_intersect(Sv, Uhi), subspace_intersect(Sv, Ulo));
      const RatMatrix fill = complement(subspace_sum(Uhi, image(vs)), Ulo);
      ensure(vs.cols() + fill.cols() == lo - hi, "prime block: level split does not add up");
      for (std::size_t c = 0; c < vs.cols(); ++c) {
        gcols[hi + c] = vs.col_range(c, 1);
        is_v[hi + c] = true;
      }
      for (std::size_t c = 0; c < fill.cols(); ++c) gcols[hi + vs.cols() + c] = fill.col_range(c, 1);
    }
  }
  if (r > 0) {
    const RatMatrix G = inverse(hcat(gcols));
    RatMatrix Tg(n, n);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < r; ++i) {
        if (G(k, i) == 0) continue;
        ensure(sigma[i] <= sigma[k], "prime block: chain mixing against the length order");
        for (std::size_t l = 0; l < sigma[i]; ++l) Tg(off[k] + sigma[k] - sigma[i] + l, off[i] + l) = G(k, i);
      }
    const RatMatrix Tginv = inverse(Tg);
    const RatMatrix TyGinv = C0 * Tginv * C0.transpose();
    ensure(C0 * Tginv == TyGinv * C0, "prime block: output map not realizable");
    const RatMatrix D = A0 - Tg * A0 * Tginv;
    const RatMatrix Kp = D * C0.transpose();
    const RatMatrix Rm = D - Kp * C0;
    const RatMatrix Fpp = ends.transpose() * Rm;
    ensure(Rm == ends * Fpp, "prime block: residual off the chain ends");
    const RatMatrix Fw = inverse(G * Gamma) * Fpp * Tg;
    RatMatrix K(n, p);
    const RatMatrix TyG = inverse(TyGinv);
    K.set_block(0, 0, Tginv * Kp * TyG);
    step(state_feedback(Tg, blockdiag({TyG, RatMatrix::identity(delta)}),
                        vcat({Fw.row_range(0, mc), RatMatrix(delta, n), Fw.row_range(mc, s)}), K, m, s));
    ensure(o.A == A0 && o.C.row_range(0, pc) == C0, "prime block: chain recombination failed");
    Gamma = G * Gamma;
    ensure(Bchain() == ends * Gamma, "prime block: inputs not at chain ends");
  }

  std::vector<std::size_t> U, V;
  for (std::size_t i = 0; i < r; ++i) (is_v[i] ? V : U).push_back(i);
  if (U.size() != mc || V.size() != s) throw NotPrime("chain kinds do not match the input counts");
  {
    const RatMatrix GU = Gamma.select_rows(U), GV = Gamma.select_rows(V);
    ensure(GU.col_range(mc, s).is_zero(), "prime block: v acts on a u-chain");
    const RatMatrix Tv = GV.col_range(mc, s);
    const RatMatrix R = -(inverse(Tv) * GV.col_range(0, mc));
    const RatMatrix H = GU.col_range(0, mc) + GU.col_range(mc, s) * R;
    EmTransform t = EmTransform::identity(n, m, s, p);
    t.Tu = blockdiag({H, RatMatrix::identity(delta)});
    t.Tv = Tv;
    t.R = hcat({R, RatMatrix(s, delta)});
    step(t);
  }
  {
    std::vector<std::size_t> sperm, yperm;
    for (auto* set : {&U, &V})
      for (std::size_t i : *set)
        for (std::size_t l = 0; l < sigma[i]; ++l) sperm.push_back(off[i] + l);
    for (std::size_t i : U) yperm.push_back(i);
    for (std::size_t i = 0; i < delta; ++i) yperm.push_back(pc + i);
    for (std::size_t i : V) yperm.push_back(i);
    EmTransform t = EmTransform::identity(n, m, s, p);
    t.Tx = permutation_matrix(sperm);
    t.Ty = permutation_matrix(yperm);
    step(t);
  }
  for (std::size_t i : U) res.sigma.push_back(sigma[i]);
  for (std::size_t i : V) res.sigma_bar.push_back(sigma[i]);
  res.delta = delta;

  EmcfIndices e;
  e.sigma = res.sigma;
  e.delta = delta;
  e.sigma_bar = res.sigma_bar;
  ensure(o == build_emcf(e), "prime block: canonical form not reached");
  ensure(apply_em(o0, res.transform) == o, "prime block: certificate mismatch");
  res.system = o;
  return res;
}

ObservableResult observable_dual_canonical(const RatMatrix& C, const RatMatrix& A) {
  const std::size_t n = A.rows(), p = C.rows();
  if (!is_observable(C, A)) throw NotObservable("pair (C, A) is not observable");
  const BrunovskyResult b = brunovsky_two_inputs(A.transpose(), C.transpose(), RatMatrix(n, 0));
  ObservableResult res;
  res.eta = b.eps;
  res.null_outputs = b.null_u;
  res.transform = MorseTransform::identity(n, 0, p);
  res.transform.Tx = chain_reversal(res.eta) * inverse(b.transform.Tx).transpose();
  res.transform.Ty = inverse(b.transform.Tu).transpose();
  res.transform.K = b.transform.Fu.transpose();
  res.A = shift_chains(res.eta);
  res.C = vcat({chain_tops(res.eta), RatMatrix(res.null_outputs, n)});
  const StateSpace out = apply_morse(StateSpace{A, RatMatrix(n, 0), C, RatMatrix(p, 0)}, res.transform);
  ensure(out.A == res.A && out.C == res.C, "observable chain form not reached");
  return res;
}

Odecs2 build_emcf(const EmcfIndices& e) {
  const std::size_t ncu = total(e.eps), ncv = total(e.eps_bar), nnn = e.A_nn.rows();
  const std::size_t npu = total(e.sigma), npv = total(e.sigma_bar), no = total(e.eta);
  const std::size_t n = ncu + ncv + nnn + npu + npv + no;
  const std::size_t a = e.eps.size(), b = e.eps_bar.size(), c = e.sigma.size(), d = e.sigma_bar.size();
  const std::size_t m = a + e.null_inputs + c + e.delta, s = b + d;
  const std::size_t p = c + e.delta + d + e.eta.size() + e.null_outputs;
  const std::size_t xcv = ncu, xpu = ncu + ncv + nnn, xpv = xpu + npu, xo = xpv + npv;

  Odecs2 o{blockdiag({shift_chains(e.eps), shift_chains(e.eps_bar), e.A_nn.empty() ? RatMatrix(nnn, nnn) : e.A_nn,
                      shift_chains(e.sigma), shift_chains(e.sigma_bar), shift_chains(e.eta)}),
           RatMatrix(n, m), RatMatrix(n, s), RatMatrix(p, n), RatMatrix(p, m)};
  o.Bu.set_block(0, 0, chain_ends(e.eps));
  o.Bu.set_block(xpu, a + e.null_inputs, chain_ends(e.sigma));
  o.Bv.set_block(xcv, 0, chain_ends(e.eps_bar));
  o.Bv.set_block(xpv, b, chain_ends(e.sigma_bar));
  o.C.set_block(0, xpu, chain_tops(e.sigma));
  o.C.set_block(c + e.delta, xpv, chain_tops(e.sigma_bar));
  o.C.set_block(c + e.delta + d, xo, chain_tops(e.eta));
  o.Du.set_block(c, a + e.null_inputs + c, RatMatrix::identity(e.delta));
  return o;
}

EmcfResult emcf(const MnfSystem& mn) {
  const BlockDims& d = mn.dims;
  const Odecs2& o = mn.system;
  const std::size_t n = d.n(), m = d.m(), s = d.s(), p = d.p();
  const std::size_t x2 = d.n1, x3 = d.n1 + d.n2, x4 = x3 + d.n3;
  auto A = [&](std::size_t r0, std::size_t nr) { return o.A.block(r0, r0, nr, nr); };

  const BrunovskyResult b1 = brunovsky_two_inputs(A(0, d.n1), o.Bu.block(0, 0, d.n1, d.m1), o.Bv.block(0, 0, d.n1, d.s1));
  ensure(b1.null_v == 0, "canonical form: unused driving variable");
  const RatMatrix T2 = frobenius_transform(A(x2, d.n2));
  const PrimeResult b3 = prime_canonical(Odecs2{A(x3, d.n3), o.Bu.block(x3, d.m1, d.n3, d.m3),
                                                o.Bv.block(x3, d.s1, d.n3, d.s3), o.C.block(0, x3, d.p3, d.n3),
                                                o.Du.block(0, d.m1, d.p3, d.m3)});
  const ObservableResult b4 = observable_dual_canonical(o.C.block(d.p3, x4, d.p4, d.n4), A(x4, d.n4));

  EmTransform t = EmTransform::identity(n, m, s, p);
  t.Tx = blockdiag({b1.transform.Tx, T2, b3.transform.Tx, b4.transform.Tx});
  t.Tu = blockdiag({b1.transform.Tu, b3.transform.Tu});
  t.Tv = blockdiag({b1.transform.Tv, b3.transform.Tv});
  t.Ty = blockdiag({b3.transform.Ty, b4.transform.Ty});
  t.Fu.set_block(0, 0, b1.transform.Fu);
  t.Fu.set_block(d.m1, x3, b3.transform.Fu);
  t.Fv.set_block(0, 0, b1.transform.Fv);
  t.Fv.set_block(d.s1, x3, b3.transform.Fv);
  t.R.set_block(0, 0, b1.transform.R);
  t.R.set_block(d.s1, d.m1, b3.transform.R);
  t.K.set_block(x3, 0, b3.transform.K);
  t.K.set_block(x4, d.p3, b4.transform.K);

  EmcfResult res;
  res.indices.eps = b1.eps;
  res.indices.eps_bar = b1.eps_bar;
  res.indices.null_inputs = b1.null_u;
  res.indices.A_nn = d.n2 ? T2 * A(x2, d.n2) * inverse(T2) : RatMatrix(0, 0);
  res.indices.sigma = b3.sigma;
  res.indices.delta = b3.delta;
  res.indices.sigma_bar = b3.sigma_bar;
  res.indices.eta = b4.eta;
  res.indices.null_outputs = b4.null_outputs;
  res.stage = t;
  res.transform = compose(mn.transform, t);
  res.system = apply_em(o, t);
  ensure(res.system == build_emcf(res.indices), "canonical form: assembled system mismatch");
  return res;
}

FbcfIndices translate_indices(const EmcfIndices& e) {
  FbcfIndices f;
  f.eps_p = e.eps;
  f.eps_bar_p = e.eps_bar;
  for (std::size_t x : e.sigma) f.sigma_p.push_back(x + 1);
  f.sigma_p.insert(f.sigma_p.end(), e.delta, 1);
  f.sigma_bar_p = e.sigma_bar;
  for (std::size_t x : e.eta) f.eta_p.push_back(x + 1);
  f.eta_p.insert(f.eta_p.end(), e.null_outputs, 1);
  f.n_rho = e.A_nn.rows();
  f.A_rho = e.A_nn;
  f.zero_inputs = e.null_inputs;
  return f;
}

Dacs build_fbcf(const FbcfIndices& f) {
  // Per block: (rows, cols, E, H)
  std::vector<RatMatrix> Es, Hs;
  auto add = [&](RatMatrix E, RatMatrix H) {
    Es.push_back(std::move(E));
    Hs.push_back(std::move(H));
  };
  auto ident = [](std::size_t r, std::size_t c, std::size_t r0, std::size_t c0, std::size_t k) {
    RatMatrix M(r, c);
    for (std::size_t i = 0; i < k; ++i) M(r0 + i, c0 + i) = 1;
    return M;
  };
  for (std::size_t i : f.eps_p) add(RatMatrix::identity(i), shift_chains({i}));
  for (std::size_t i : f.eps_bar_p) add(ident(i - 1, i, 0, 0, i - 1), ident(i - 1, i, 0, 1, i - 1));
  add(RatMatrix::identity(f.n_rho), f.n_rho ? f.A_rho : RatMatrix(0, 0));
  for (std::size_t i : f.sigma_p) add(ident(i, i - 1, 1, 0, i - 1), ident(i, i - 1, 0, 0, i - 1));
  for (std::size_t i : f.sigma_bar_p) add(ident(i, i, 1, 0, i - 1), RatMatrix::identity(i));
  for (std::size_t i : f.eta_p) add(ident(i, i - 1, 0, 0, i - 1), ident(i, i - 1, 1, 0, i - 1));

  Dacs d{blockdiag(Es), blockdiag(Hs), RatMatrix()};
  const std::size_t l = d.E.rows();
  const std::size_t a = f.eps_p.size(), c = f.sigma_p.size();
  d.L = RatMatrix(l, a + c + f.zero_inputs);
  std::size_t row = 0;
  for (std::size_t i = 0; i < a; ++i) {
    row += f.eps_p[i];
    d.L(row - 1, i) = 1;
  }
  row += total(f.eps_bar_p) - f.eps_bar_p.size() + f.n_rho;
  for (std::size_t i = 0; i < c; ++i) {
    row += f.sigma_p[i];
    d.L(row - 1, a + i) = 1;
  }
  return d;
}

FbcfResult fbcf(const Dacs& d) {
  d.validate();
  const auto [o, rec] = explicitate(d);
  const MtfSystem t = emtf(o);
  const MnfSystem nf = emnf(t);
  const EmcfResult ec = emcf(nf);

  FbcfResult res;
  res.emcf_indices = ec.indices;
  res.indices = translate_indices(ec.indices);
  res.canonical = build_fbcf(res.indices);

  // Reorder to the canonical column order: observation chains reversed,
  // inputs [driving chains, static, unused].
  const EmcfIndices& e = ec.indices;
  const std::size_t n = o.n(), m = o.m(), s = o.s(), p = o.p();
  const std::size_t no = total(e.eta);
  EmTransform t4 = EmTransform::identity(n, m, s, p);
  t4.Tx = blockdiag({RatMatrix::identity(n - no), chain_reversal(e.eta)});
  {
    const std::size_t a = e.eps.size(), z = e.null_inputs, c = e.sigma.size() + e.delta;
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < a; ++i) perm.push_back(i);
    for (std::size_t i = 0; i < c; ++i) perm.push_back(a + z + i);
    for (std::size_t i = 0; i < z; ++i) perm.push_back(a + i);
    t4.Tu = permutation_matrix(perm);
  }
  const Odecs2 lam4 = apply_em(ec.system, t4);
  const auto [ofb, recfb] = explicitate(res.canonical);
  const auto w = expl_membership(lam4, res.canonical);
  ensure(w.has_value(), "canonical form is not an explicitation of the assembled system");
  res.em_transform = compose(compose(ec.transform, t4), inverse(witness_transform(*w, n, m)));
  ensure(apply_em(o, res.em_transform) == ofb, "pipeline transform mismatch");
  res.certificate = em_to_exfb(res.em_transform, rec, recfb);
  ensure(verify_exfb(d, res.canonical, res.certificate), "certificate does not verify");
  return res;
}

}  // namespace dacs
