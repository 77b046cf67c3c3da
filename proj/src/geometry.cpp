#include "dacscanon/geometry.hpp"

namespace dacs {

namespace {

// Run x_{i+1} = step(x_i) from x0 for n steps, stopping early at a repeat.
template <typename Step>
std::vector<Subspace> iterate(const Subspace& x0, std::size_t n, Step step, bool must_settle = true) {
  std::vector<Subspace> seq{x0};
  while (seq.size() < n + 1) {
    Subspace next = step(seq.back());
    if (next == seq.back()) break;
    seq.push_back(std::move(next));
  }
  if (must_settle)
    ensure(seq.size() < n + 1 || step(seq.back()) == seq.back(), "subspace sequence failed to stabilize");
  while (seq.size() < n + 1) seq.push_back(seq.back());
  return seq;
}

// [S; 0] in Q^{k+extra}
Subspace embed_top(const Subspace& S, std::size_t extra) {
  return Subspace(vcat({S.basis(), RatMatrix(extra, S.dim())}));
}

}  // namespace

WongResult wong_sequences(const Dacs& d) {
  d.validate();
  const std::size_t n = d.n();
  const Subspace imL = image(d.L);
  WongResult r;
  r.V_seq = iterate(Subspace::full(n), n,
                    [&](const Subspace& V) { return preimage(d.H, subspace_sum(apply(d.E, V), imL)); });
  auto w_step = [&](const Subspace& W) { return preimage(d.E, subspace_sum(apply(d.H, W), imL)); };
  r.W_seq = iterate(Subspace::zero(n), n, w_step);
  if (n > 0) {
    r.What_seq = iterate(kernel_basis(d.E), n - 1, w_step, false);
  }
  r.V_star = r.V_seq.back();
  r.W_star = r.W_seq.back();
  return r;
}

InvariantResult invariant_subspaces(const StateSpace& ss, std::size_t s) {
  ss.validate();
  const std::size_t n = ss.n(), mw = ss.m(), p = ss.p();
  const RatMatrix AC = vcat({ss.A, ss.C});
  const RatMatrix BD = vcat({ss.B, ss.D});
  const RatMatrix AB = hcat({ss.A, ss.B});
  const RatMatrix CD = hcat({ss.C, ss.D});
  const Subspace imBD = image(BD);
  const Subspace kerCD = kernel_basis(CD);

  auto times_inputs = [&](const Subspace& W) {
    return Subspace(blockdiag({W.basis(), RatMatrix::identity(mw)}));
  };

  InvariantResult r;
  r.V_seq = iterate(Subspace::full(n), n, [&](const Subspace& V) {
    return preimage(AC, subspace_sum(embed_top(V, p), imBD));
  });
  auto w_step = [&](const Subspace& W) { return apply(AB, subspace_intersect(times_inputs(W), kerCD)); };
  r.W_seq = iterate(Subspace::zero(n), n, w_step);
  if (n > 0) {
    r.What_seq = iterate(image(ss.B.col_range(mw - s, s)), n - 1, w_step, false);
  }
  for (const auto& V : r.V_seq) r.U_seq.push_back(preimage(BD, embed_top(V, p)));
  for (const auto& W : r.W_seq) r.Y_seq.push_back(apply(CD, times_inputs(W)));

  r.V_star = r.V_seq.back();
  r.W_star = r.W_seq.back();
  r.U_star = r.U_seq.back();
  r.Y_star = r.Y_seq.back();
  const std::size_t vw = subspace_intersect(r.V_star, r.W_star).dim();
  r.n1 = vw;
  r.n2 = r.V_star.dim() - vw;
  r.n3 = r.W_star.dim() - vw;
  r.n4 = n - subspace_sum(r.V_star, r.W_star).dim();
  r.m1 = r.U_star.dim();
  r.m3 = mw - r.m1;
  r.p3 = r.Y_star.dim();
  r.p4 = p - r.p3;
  return r;
}

InvariantResult invariant_subspaces(const Odecs2& o) { return invariant_subspaces(merged(o), o.s()); }

StateSpace dualize(const StateSpace& ss) {
  return {ss.A.transpose(), ss.C.transpose(), ss.B.transpose(), ss.D.transpose()};
}

Subspace reachable_subspace(const RatMatrix& A, const RatMatrix& B) {
  const std::size_t n = A.rows();
  Subspace R = image(B);
  for (std::size_t k = 0; k < n; ++k) {
    Subspace next = subspace_sum(R, apply(A, R));
    if (next == R) break;
    R = std::move(next);
  }
  return R;
}

bool is_controllable(const RatMatrix& A, const RatMatrix& B) { return reachable_subspace(A, B).is_full(); }

bool is_observable(const RatMatrix& C, const RatMatrix& A) {
  return reachable_subspace(A.transpose(), C.transpose()).is_full();
}

bool is_prime(const StateSpace& ss) {
  auto r = invariant_subspaces(ss);
  return r.V_star.is_zero() && r.U_star.is_zero() && r.W_star.is_full() && r.Y_star.is_full();
}

}  // namespace dacs
