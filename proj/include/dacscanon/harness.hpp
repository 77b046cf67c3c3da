#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dacscanon/canonical.hpp"

namespace dacs {

struct Bounds {
  std::size_t max_list = 3;         // length of each index list
  std::size_t max_index = 4;        // largest index
  std::size_t max_rho = 2;          // size of the regular block
  std::size_t max_zero_inputs = 1;  // zero columns of L
  long entry_bound = 3;             // numerators in [-entry_bound, entry_bound]
  long den_bound = 1;               // denominators in [1, den_bound]
};

using Rng = std::mt19937_64;

Rational random_rational(Rng& rng, long num_bound, long den_bound = 1);
RatMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long num_bound, long den_bound = 1,
                        double density = 1.0);
// Resampled until the determinant is nonzero.
RatMatrix random_invertible(Rng& rng, std::size_t n, long num_bound, long den_bound = 1);
Indices random_indices(Rng& rng, std::size_t max_len, std::size_t max_index);

// Canonical system with known indices.
std::pair<Dacs, FbcfIndices> random_fbcf(std::uint64_t seed, const Bounds& b = {});
// Q, P, G invertible, F arbitrary.
std::pair<Dacs, ExFbTransform> random_exfb_scramble(const Dacs& d, std::uint64_t seed, long entry_bound = 1,
                                                    long den_bound = 1);

// One round trip: canonical system from `seed`, scrambled, canonicalized
// again.  The scramble seed is derived from `seed`.
struct RoundTripCase {
  FbcfIndices expected, recovered;
  bool indices_match = false;
  bool scramble_verified = false;     // certificate of the scramble itself
  bool certificate_verified = false;  // scrambled -> recovered canonical form
  bool em_verified = false;           // between the two explicitations
  std::string error;                  // non-empty when the pipeline threw
  bool ok() const { return error.empty() && indices_match && scramble_verified && certificate_verified && em_verified; }
};
RoundTripCase roundtrip_case(std::uint64_t seed, const Bounds& b = {});
std::uint64_t scramble_seed(std::uint64_t seed);

// Random EM transform (Tx, Tu, Tv, Ty invertible, the rest arbitrary).
EmTransform random_em(Rng& rng, std::size_t n, std::size_t m, std::size_t s, std::size_t p, long entry_bound = 2);

// E of rank about `rank`, H and L sparse.
Dacs random_dacs(Rng& rng, std::size_t l, std::size_t n, std::size_t m, std::size_t rank, long entry_bound = 2);
// Structured two-input ODECS: a random canonical form with all six block
// kinds, scrambled by a random EM transform.
Odecs2 random_structured_odecs(Rng& rng, std::size_t max_list = 2, std::size_t max_index = 3);
// Sparse unstructured ODECS.
Odecs2 random_odecs(Rng& rng, std::size_t n, std::size_t m, std::size_t s, std::size_t p, double density = 0.4);

}  // namespace dacs
