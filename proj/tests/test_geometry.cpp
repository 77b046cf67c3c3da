#include <gtest/gtest.h>

#include "circuit.hpp"
#include "dacscanon/harness.hpp"
#include "oracle.hpp"

using namespace dacs;

TEST(Wong, RegularSystemWithoutInputs) {
  Rng rng(1);
  const std::size_t n = 4;
  const Dacs d{RatMatrix::identity(n), random_invertible(rng, n, 2), RatMatrix(n, 0)};
  const WongResult w = wong_sequences(d);
  ASSERT_EQ(w.V_seq.size(), n + 1);
  for (const Subspace& V : w.V_seq) EXPECT_TRUE(V.is_full());
  for (const Subspace& W : w.W_seq) EXPECT_TRUE(W.is_zero());
}

TEST(Wong, CircuitLimits) {
  for (const Dacs& d : {fixtures::circuit(), fixtures::circuit(2, 3, 5, 7, 11)}) {
    const WongResult w = wong_sequences(d);
    EXPECT_EQ(w.V_star.dim(), 5u);
    EXPECT_TRUE(w.W_star.is_full());
  }
}

TEST(Wong, LimitsAreFixedPoints) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const Dacs d = random_dacs(rng, 4, 5, 1, 3);
    const WongResult w = wong_sequences(d);
    const Subspace imL = image(d.L);
    EXPECT_EQ(preimage(d.H, subspace_sum(apply(d.E, w.V_star), imL)), w.V_star);
    EXPECT_EQ(preimage(d.E, subspace_sum(apply(d.H, w.W_star), imL)), w.W_star);
    // V_i decreasing, W_i increasing
    for (std::size_t i = 1; i < w.V_seq.size(); ++i) {
      EXPECT_TRUE(w.V_seq[i - 1].contains(w.V_seq[i]));
      EXPECT_TRUE(w.W_seq[i].contains(w.W_seq[i - 1]));
    }
  }
}

TEST(Wong, CoincidesWithExplicitation) {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + t % 5;
    const Dacs d = random_dacs(rng, n - 1 + t % 3, n, 1 + t % 2, n / 2);
    const WongResult w = wong_sequences(d);
    const InvariantResult inv = invariant_subspaces(explicitate(d).first);
    EXPECT_EQ(w.V_seq, inv.V_seq);
    EXPECT_EQ(w.W_seq, inv.W_seq);
    EXPECT_EQ(w.What_seq, inv.What_seq);
  }
}

TEST(Invariants, NoOutputConstraint) {
  Rng rng(4);
  const StateSpace ss{random_matrix(rng, 3, 3, 2), random_matrix(rng, 3, 2, 2), RatMatrix(2, 3), RatMatrix(2, 2)};
  const InvariantResult inv = invariant_subspaces(ss);
  EXPECT_TRUE(inv.V_star.is_full());
  EXPECT_TRUE(inv.Y_star.is_zero());
}

TEST(Invariants, Circuit) {
  for (const Dacs& d : {fixtures::circuit(), fixtures::circuit(2, 3, 5, 7, 11)}) {
    const InvariantResult inv = invariant_subspaces(explicitate(d).first);
    EXPECT_EQ(inv.V_star.dim(), 5u);
    EXPECT_TRUE(inv.W_star.is_full());
    EXPECT_EQ(inv.W_star.ambient(), 14u);
    EXPECT_TRUE(inv.Y_star.is_full());
    EXPECT_EQ(inv.Y_star.ambient(), 11u);
  }
}

// V* is (A,B)-invariant modulo the input directions that keep y = 0.
TEST(Invariants, ControlledInvarianceOfVStar) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const StateSpace ss = merged(random_odecs(rng, 5, 2, 1, 2));
    const InvariantResult inv = invariant_subspaces(ss);
    const RatMatrix V = inv.V_star.basis();
    // exists U with A V + B U in V and C V + D U = 0
    const RatMatrix lhs = vcat({hcat({inv.V_star.annihilator() * ss.B}), ss.D});
    const RatMatrix rhs = vcat({-(inv.V_star.annihilator() * ss.A * V), -(ss.C * V)});
    EXPECT_TRUE(solve(lhs, rhs).has_value());
  }
}

TEST(Dualize, Involution) {
  Rng rng(6);
  const StateSpace ss = merged(random_odecs(rng, 4, 2, 1, 3));
  EXPECT_EQ(dualize(dualize(ss)), ss);
  RatMatrix S = random_matrix(rng, 3, 3, 2);
  S = S + S.transpose();
  const RatMatrix B = random_matrix(rng, 3, 2, 2);
  RatMatrix D = random_matrix(rng, 2, 2, 2);
  D = D + D.transpose();
  const StateSpace sym{S, B, B.transpose(), D};
  EXPECT_EQ(dualize(sym), sym);
}

TEST(Dualize, InvariantSubspaceDuality) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const StateSpace ss = merged(random_odecs(rng, 2 + t % 4, 1 + t % 2, t % 2, 1 + t % 3));
    const InvariantResult a = invariant_subspaces(ss), b = invariant_subspaces(dualize(ss));
    EXPECT_EQ(a.V_star, orth_complement(b.W_star));
    EXPECT_EQ(a.W_star, orth_complement(b.V_star));
    EXPECT_EQ(a.U_star, orth_complement(b.Y_star));
    EXPECT_EQ(a.Y_star, orth_complement(b.U_star));
  }
}

TEST(Controllability, ReachableSubspace) {
  const RatMatrix A{{0, 1, 0}, {0, 0, 0}, {0, 0, 1}};
  const RatMatrix B{{0}, {1}, {0}};
  EXPECT_EQ(reachable_subspace(A, B), Subspace::coordinate(3, 0, 2));
  EXPECT_FALSE(is_controllable(A, B));
  EXPECT_TRUE(is_controllable(A, RatMatrix{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(is_observable(RatMatrix{{1, 0, 0}, {0, 0, 1}}, A));
  EXPECT_FALSE(is_observable(RatMatrix{{0, 1, 0}}, A));
}

TEST(Prime, IntegratorChains) {
  // y = x1, x1' = x2, x2' = w: prime
  const StateSpace chain{RatMatrix{{0, 1}, {0, 0}}, RatMatrix{{0}, {1}}, RatMatrix{{1, 0}}, RatMatrix{{0}}};
  EXPECT_TRUE(is_prime(chain));
  const StateSpace free_state{RatMatrix{{0}}, RatMatrix{{0}}, RatMatrix{{0}}, RatMatrix{{0}}};
  EXPECT_FALSE(is_prime(free_state));
}
