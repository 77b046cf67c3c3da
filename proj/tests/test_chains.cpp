#include <gtest/gtest.h>

#include "dacscanon/chains.hpp"
#include "dacscanon/harness.hpp"
#include "dacscanon/poly.hpp"
#include "oracle.hpp"

using namespace dacs;

namespace {

std::pair<RatMatrix, RatMatrix> random_controllable(Rng& rng, std::size_t n, std::size_t m) {
  for (;;) {
    RatMatrix A = random_matrix(rng, n, n, 2, 1, 0.5), B = random_matrix(rng, n, m, 2, 1, 0.5);
    if (is_controllable(A, B)) return {A, B};
  }
}

}  // namespace

TEST(ChainForm, ShiftHelpers) {
  const std::vector<std::size_t> len{2, 1};
  EXPECT_EQ(shift_chains(len), (RatMatrix{{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(chain_ends(len), (RatMatrix{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(chain_tops(len), (RatMatrix{{1, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(chain_offsets(len), (std::vector<std::size_t>{0, 2}));
}

TEST(ChainForm, ClosedLoopIsChains) {
  Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 5, m = 1 + t % 3;
    const auto [A, B] = random_controllable(rng, n, m);
    const ChainForm cf = chain_form(A, B);
    const RatMatrix Ti = inverse(cf.T);
    EXPECT_EQ(cf.T * (A + B * cf.F) * Ti, shift_chains(cf.lengths));
    EXPECT_EQ(cf.T * B, chain_ends(cf.lengths) * cf.Gamma);
    EXPECT_EQ(cf.lengths, oracle::controllability_indices(A, B));
  }
}

TEST(ChainForm, Uncontrollable) {
  EXPECT_THROW(chain_form(RatMatrix{{1, 0}, {0, 1}}, RatMatrix{{1}, {1}}), NotControllable);
}

TEST(ControllabilityIndices, MatchRankIncrements) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const RatMatrix A = random_matrix(rng, 5, 5, 2, 1, 0.3), B = random_matrix(rng, 5, 2, 2, 1, 0.4);
    EXPECT_EQ(controllability_indices(A, B), oracle::controllability_indices(A, B));
  }
}

TEST(PlacePoles, ExactCharacteristicPolynomial) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 5, m = 1 + t % 2;
    const auto [A, B] = random_controllable(rng, n, m);
    std::vector<Rational> roots;
    for (std::size_t i = 0; i < n; ++i) roots.push_back(Rational(static_cast<long>(i) - 2) / (1 + t % 3));
    const RatMatrix F = place_poles(A, B, roots);
    EXPECT_EQ(oracle::charpoly(A + B * F), Poly::from_roots(roots).coeffs());
  }
}
