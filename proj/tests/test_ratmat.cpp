#include <gtest/gtest.h>

#include "circuit.hpp"
#include "dacscanon/harness.hpp"
#include "oracle.hpp"

using namespace dacs;

TEST(RatMatrix, EntriesStayInLowestTerms) {
  RatMatrix M{{Rational(2, 4), Rational(-3, 6)}};
  M(0, 0) += Rational(1, 2);
  EXPECT_EQ(M(0, 0), 1);
  EXPECT_EQ(M(0, 1).get_den(), 2);
  EXPECT_EQ(M(0, 1).get_num(), -1);
}

TEST(RatMatrix, EmptyShapes) {
  RatMatrix a(0, 3), b(3, 0);
  EXPECT_EQ((b * a).rows(), 3u);
  EXPECT_EQ((b * a).cols(), 3u);
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ((a * b).rows(), 0u);
  EXPECT_EQ(rank(a), 0u);
  EXPECT_EQ(hcat({b, RatMatrix::identity(3)}), RatMatrix::identity(3));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(RatMatrix{{1, 0}, {0, 0}}), 1u);
  EXPECT_EQ(rank(fixtures::circuit().E), 2u);
  EXPECT_EQ(rank(fixtures::circuit(2, 3, 5, 7, 11).E), 2u);
}

TEST(Rank, MatchesLargestNonvanishingMinor) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    // low-rank products as well as plain random fills
    RatMatrix M = t % 2 ? random_matrix(rng, 4, 2, 3) * random_matrix(rng, 2, 6, 3) : random_matrix(rng, 4, 6, 2, 3, 0.4);
    EXPECT_EQ(rank(M), oracle::rank_by_minors(M)) << M.str();
  }
}

TEST(Inverse, RoundTripAndSingular) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const RatMatrix M = random_invertible(rng, 5, 3, 2);
    EXPECT_EQ(M * inverse(M), RatMatrix::identity(5));
    EXPECT_EQ(inverse(M) * M, RatMatrix::identity(5));
  }
  EXPECT_THROW(inverse(RatMatrix{{1, 2}, {2, 4}}), SingularTransform);
}

TEST(Solve, ConsistentAndInconsistent) {
  const RatMatrix A{{1, 1}, {2, 2}};
  const auto x = solve(A, RatMatrix{{3}, {6}});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(A * *x, (RatMatrix{{3}, {6}}));
  EXPECT_FALSE(solve(A, RatMatrix{{3}, {7}}).has_value());
  const auto y = solve_left(A, RatMatrix{{1, 1}});
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y * A, (RatMatrix{{1, 1}}));
}

TEST(Kernel, Examples) {
  EXPECT_TRUE(kernel_basis(RatMatrix::identity(3)).is_zero());
  EXPECT_EQ(kernel_basis(RatMatrix{{1, 0}, {0, 0}}), Subspace::coordinate(2, 1, 1));
}

TEST(Kernel, RankNullity) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix M = random_matrix(rng, 3, 5, 2, 1, 0.5);
    const Subspace K = kernel_basis(M);
    EXPECT_TRUE((M * K.basis()).is_zero());
    EXPECT_EQ(K.dim() + oracle::bareiss_rank(M), 5u);
  }
}

TEST(Preimage, Examples) {
  const Subspace S = Subspace::coordinate(2, 0, 1);
  EXPECT_EQ(preimage(RatMatrix::identity(2), S), S);
  EXPECT_TRUE(preimage(RatMatrix::zero(2, 2), S).is_full());
  EXPECT_EQ(preimage(RatMatrix{{1, 1}, {0, 1}}, S), S);
}

TEST(Preimage, ContainsExactlyTheVectorsMappedInside) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix M = random_matrix(rng, 4, 4, 2, 1, 0.5);
    const Subspace S = image(random_matrix(rng, 4, 2, 2));
    const Subspace P = preimage(M, S);
    EXPECT_TRUE(S.contains(M * P.basis()));
    // dim M^{-1}(S) = dim ker M + dim (S ∩ Im M)
    EXPECT_EQ(P.dim(), kernel_basis(M).dim() + subspace_intersect(S, image(M)).dim());
  }
}

TEST(SubspaceLattice, Examples) {
  const Subspace e1 = Subspace::coordinate(2, 0, 1), e2 = Subspace::coordinate(2, 1, 1);
  EXPECT_TRUE(subspace_sum(e1, e2).is_full());
  EXPECT_EQ(subspace_intersect(e1, e1), e1);
  EXPECT_TRUE(subspace_intersect(e1, e2).is_zero());
}

TEST(SubspaceLattice, GrassmannIdentity) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const Subspace a = image(random_matrix(rng, 5, 3, 2, 1, 0.6));
    const Subspace b = image(random_matrix(rng, 5, 3, 2, 1, 0.6));
    EXPECT_EQ(a.dim() + b.dim(), subspace_sum(a, b).dim() + subspace_intersect(a, b).dim());
    EXPECT_TRUE(oracle::same_span(subspace_sum(a, b).basis(), hcat({a.basis(), b.basis()})));
  }
}

TEST(SubspaceLattice, EqualityIsBasisEquality) {
  Rng rng(4);
  const RatMatrix X = random_matrix(rng, 5, 3, 3);
  const RatMatrix Y = X * random_invertible(rng, 3, 2);
  EXPECT_EQ(image(X), image(Y));
  EXPECT_EQ(image(X).basis(), image(Y).basis());
}

TEST(OrthComplement, Involution) {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const Subspace S = image(random_matrix(rng, 5, 2, 2));
    const Subspace P = orth_complement(S);
    EXPECT_EQ(P.dim() + S.dim(), 5u);
    EXPECT_TRUE((S.basis().transpose() * P.basis()).is_zero());
    EXPECT_EQ(orth_complement(P), S);
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement(Subspace::zero(2), Subspace::full(2)), RatMatrix::identity(2));
  const Subspace S = Subspace::coordinate(3, 1, 1);
  EXPECT_EQ(complement(S, S).cols(), 0u);
  EXPECT_THROW(complement(Subspace::full(2), Subspace::coordinate(2, 0, 1)), NotNested);
}

TEST(Complement, FillsTheOuterSpace) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix big = random_matrix(rng, 6, 4, 2);
    const Subspace outer = image(big);
    const Subspace inner = image(big * random_matrix(rng, 4, 2, 2));
    const RatMatrix C = complement(inner, outer);
    EXPECT_EQ(oracle::bareiss_rank(hcat({inner.basis(), C})), outer.dim());
    EXPECT_EQ(inner.dim() + C.cols(), outer.dim());
  }
}

TEST(RightInverse, Examples) {
  EXPECT_EQ(right_inverse(RatMatrix{{1, 0}}), (RatMatrix{{1}, {0}}));
  EXPECT_EQ(right_inverse(RatMatrix::identity(3)), RatMatrix::identity(3));
  EXPECT_THROW(right_inverse(RatMatrix{{1, 1}, {1, 1}}), NotFullRowRank);
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    RatMatrix M;
    do M = random_matrix(rng, 2, 4, 3);
    while (oracle::bareiss_rank(M) < 2);
    EXPECT_EQ(M * right_inverse(M), RatMatrix::identity(2));
  }
}
