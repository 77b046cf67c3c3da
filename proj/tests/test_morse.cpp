#include <gtest/gtest.h>

#include "circuit.hpp"
#include "dacscanon/harness.hpp"
#include "dacscanon/poly.hpp"
#include "oracle.hpp"

using namespace dacs;

namespace {

struct Blocks {
  RatMatrix A[4], B1, B3, C3, D3, C4;
};

Blocks split_blocks(const StateSpace& blk, const BlockDims& d) {
  const std::size_t x[4] = {0, d.n1, d.n1 + d.n2, d.n1 + d.n2 + d.n3};
  const std::size_t nn[4] = {d.n1, d.n2, d.n3, d.n4};
  const std::size_t w1 = d.m1 + d.s1, w3 = d.m3 + d.s3;
  Blocks b;
  for (int i = 0; i < 4; ++i) b.A[i] = blk.A.block(x[i], x[i], nn[i], nn[i]);
  b.B1 = blk.B.block(0, 0, d.n1, w1);
  b.B3 = blk.B.block(x[2], w1, d.n3, w3);
  b.C3 = blk.C.block(0, x[2], d.p3, d.n3);
  b.D3 = blk.D.block(0, w1, d.p3, w3);
  b.C4 = blk.C.block(d.p3, x[3], d.p4, d.n4);
  return b;
}

std::vector<Odecs2> sample_systems(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Odecs2> out;
  for (int t = 0; t < count; ++t) {
    if (t % 2)
      out.push_back(random_structured_odecs(rng));
    else
      out.push_back(random_odecs(rng, 2 + t % 4, 1 + t % 2, t % 3, 1 + t % 3));
  }
  return out;
}

RatMatrix integer_spectrum(Rng& rng, const std::vector<Rational>& roots) {
  const RatMatrix T = random_invertible(rng, roots.size(), 2);
  return T * companion(Poly::from_roots(roots)) * inverse(T);
}

}  // namespace

TEST(Sylvester, ScalarExample) {
  const auto s = solve_sylvester(RatMatrix{{0}}, RatMatrix{{1}}, RatMatrix{{-2}});
  EXPECT_EQ(s.X, (RatMatrix{{2}}));
  EXPECT_TRUE(s.unique);
}

TEST(Sylvester, Inconsistent) {
  EXPECT_THROW(solve_sylvester(RatMatrix(2, 2), RatMatrix(2, 2), RatMatrix::identity(2)), NoSolution);
}

TEST(Sylvester, NonUniqueIsFlagged) {
  const auto s = solve_sylvester(RatMatrix(2, 2), RatMatrix(1, 1), RatMatrix(2, 1));
  EXPECT_FALSE(s.unique);
  EXPECT_TRUE(s.X.is_zero());
}

TEST(Sylvester, DisjointSpectra) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix A = integer_spectrum(rng, {1, 2});
    const RatMatrix B = integer_spectrum(rng, {-1, 0, 3});
    const RatMatrix C = random_matrix(rng, 2, 3, 3, 2);
    const auto s = solve_sylvester(A, B, C);
    EXPECT_TRUE(s.unique);
    EXPECT_EQ(A * s.X - s.X * B, C);
  }
}

TEST(Sylvester, ConstructThenSolveSharedSpectrum) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const RatMatrix A = random_matrix(rng, 3, 3, 2), B = random_matrix(rng, 2, 2, 2) * Rational(0);
    const RatMatrix X = random_matrix(rng, 3, 2, 2);
    const RatMatrix C = A * X - X * B;
    const auto s = solve_sylvester(A, B, C);
    EXPECT_EQ(A * s.X - s.X * B, C);
  }
}

TEST(ConstrainedSylvester, VacuousConstraintsReduce) {
  Rng rng(3);
  const RatMatrix A = integer_spectrum(rng, {1, 2}), B = integer_spectrum(rng, {5});
  const RatMatrix C = random_matrix(rng, 2, 1, 3);
  const auto plain = solve_sylvester(A, B, C);
  const auto con = solve_constrained_sylvester(A, B, C, RatMatrix(1, 0), RatMatrix(2, 0), RatMatrix(0, 2),
                                               RatMatrix(0, 1));
  EXPECT_EQ(plain.X, con.X);
  EXPECT_EQ(plain.unique, con.unique);
}

TEST(ConstrainedSylvester, ConstructThenSolve) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t p = 2 + t % 3, q = 1 + t % 3;
    const RatMatrix A = random_matrix(rng, p, p, 2, 1, 0.5), B = random_matrix(rng, q, q, 2, 1, 0.5);
    const RatMatrix X = random_matrix(rng, p, q, 2);
    const RatMatrix Rc = random_matrix(rng, q, 1, 2), Lc = random_matrix(rng, 1, p, 2);
    const auto s = solve_constrained_sylvester(A, B, A * X - X * B, Rc, X * Rc, Lc, Lc * X);
    EXPECT_EQ(A * s.X - s.X * B, A * X - X * B);
    EXPECT_EQ(s.X * Rc, X * Rc);
    EXPECT_EQ(Lc * s.X, Lc * X);
  }
}

TEST(ConstrainedSylvester, InconsistentConstraint) {
  // unique Sylvester solution X = 0 contradicts X * 1 = 1
  EXPECT_THROW(solve_constrained_sylvester(RatMatrix{{1}}, RatMatrix{{2}}, RatMatrix{{0}}, RatMatrix{{1}},
                                           RatMatrix{{1}}, RatMatrix(0, 1), RatMatrix(0, 1)),
               NoSolution);
}

TEST(Emtf, PatternCertificateAndTriangularInputs) {
  for (const Odecs2& o : sample_systems(10, 30)) {
    const MtfSystem t = emtf(o);
    EXPECT_TRUE(verify_em(o, t.system, t.transform));
    EXPECT_TRUE(is_mtf_pattern(block_ordered(t.system, t.dims), t.dims));
    EXPECT_TRUE(is_lower_triangular_input(to_w(t.transform), o.m()));
    EXPECT_EQ(t.dims.n(), o.n());
    EXPECT_EQ(t.dims.m(), o.m());
    EXPECT_EQ(t.dims.s(), o.s());
    EXPECT_EQ(t.dims.p(), o.p());
  }
}

TEST(Emtf, DiagonalBlockProperties) {
  for (const Odecs2& o : sample_systems(11, 30)) {
    const MtfSystem t = emtf(o);
    const Blocks b = split_blocks(block_ordered(t.system, t.dims), t.dims);
    EXPECT_TRUE(is_controllable(b.A[0], b.B1));
    EXPECT_TRUE(is_observable(b.C4, b.A[3]));
    EXPECT_TRUE(is_prime(StateSpace{b.A[2], b.B3, b.C3, b.D3}));
  }
}

TEST(Emtf, WithoutVInputsMatchesMtf) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const Odecs2 o = random_odecs(rng, 4, 2, 0, 2);
    const MtfSystem a = emtf(o), b = mtf(merged(o));
    EXPECT_EQ(a.system, b.system);
    EXPECT_EQ(a.dims, b.dims);
  }
}

TEST(Emtf, AlreadyTriangular) {
  for (const Odecs2& o : sample_systems(13, 10)) {
    const MtfSystem t = emtf(o);
    const MtfSystem again = emtf(t.system);
    EXPECT_EQ(again.dims, t.dims);
    EXPECT_TRUE(is_mtf_pattern(block_ordered(again.system, again.dims), again.dims));
  }
}

TEST(Emnf, PatternAndCoprimeSpectra) {
  for (const Odecs2& o : sample_systems(14, 30)) {
    const MnfSystem nf = emnf(emtf(o));
    EXPECT_TRUE(verify_em(o, nf.system, nf.transform));
    EXPECT_TRUE(is_lower_triangular_input(to_w(nf.transform), o.m()));
    const StateSpace blk = block_ordered(nf.system, nf.dims);
    EXPECT_TRUE(is_mnf_pattern(blk, nf.dims));
    const Blocks b = split_blocks(blk, nf.dims);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) EXPECT_EQ(gcd(charpoly(b.A[i]), charpoly(b.A[j])), Poly::constant(1));
  }
}

TEST(Emnf, BlockDiagonalInputIsKept) {
  for (const Odecs2& o : sample_systems(15, 6)) {
    const MnfSystem nf = emnf(emtf(o));
    const MnfSystem again = emnf(nf);
    EXPECT_TRUE(is_mnf_pattern(block_ordered(again.system, again.dims), again.dims));
    EXPECT_EQ(again.dims, nf.dims);
  }
}

TEST(Emtf, CircuitDimensions) {
  for (const Dacs& d : {fixtures::circuit(), fixtures::circuit(2, 3, 5, 7, 11)}) {
    const MtfSystem t = emtf(explicitate(d).first);
    EXPECT_EQ(t.dims, (BlockDims{5, 0, 9, 0, 0, 2, 3, 9, 11, 0}));
  }
}

TEST(Morse, Deterministic) {
  for (const Odecs2& o : sample_systems(16, 4)) {
    const MnfSystem a = emnf(emtf(o)), b = emnf(emtf(o));
    EXPECT_EQ(a.system, b.system);
    EXPECT_EQ(a.transform.Tx, b.transform.Tx);
  }
}
