#include "dacscanon/harness.hpp"

#include <algorithm>

#include "dacscanon/poly.hpp"

namespace dacs {

Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound), den(1, std::max(1L, den_bound));
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

RatMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long num_bound, long den_bound, double density) {
  std::bernoulli_distribution keep(density);
  RatMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) M(i, j) = random_rational(rng, num_bound, den_bound);
  return M;
}

RatMatrix random_invertible(Rng& rng, std::size_t n, long num_bound, long den_bound) {
  for (;;) {
    RatMatrix M = random_matrix(rng, n, n, num_bound, den_bound);
    if (is_invertible(M)) return M;
  }
}

Indices random_indices(Rng& rng, std::size_t max_len, std::size_t max_index) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), idx(1, std::max<std::size_t>(1, max_index));
  Indices v(len(rng));
  for (auto& x : v) x = idx(rng);
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::pair<Dacs, FbcfIndices> random_fbcf(std::uint64_t seed, const Bounds& b) {
  Rng rng(seed);
  FbcfIndices f;
  f.eps_p = random_indices(rng, b.max_list, b.max_index);
  f.eps_bar_p = random_indices(rng, b.max_list, b.max_index);
  f.sigma_p = random_indices(rng, b.max_list, b.max_index);
  f.sigma_bar_p = random_indices(rng, b.max_list, b.max_index);
  f.eta_p = random_indices(rng, b.max_list, b.max_index);
  f.n_rho = std::uniform_int_distribution<std::size_t>(0, b.max_rho)(rng);
  f.A_rho = f.n_rho ? frobenius_form(random_matrix(rng, f.n_rho, f.n_rho, b.entry_bound)) : RatMatrix(0, 0);
  f.zero_inputs = std::uniform_int_distribution<std::size_t>(0, b.max_zero_inputs)(rng);
  return {build_fbcf(f), f};
}

std::pair<Dacs, ExFbTransform> random_exfb_scramble(const Dacs& d, std::uint64_t seed, long entry_bound,
                                                    long den_bound) {
  Rng rng(seed);
  ExFbTransform t;
  t.Q = random_invertible(rng, d.l(), entry_bound, den_bound);
  t.P = random_invertible(rng, d.n(), entry_bound, den_bound);
  t.F = random_matrix(rng, d.m(), d.n(), entry_bound, den_bound);
  t.G = random_invertible(rng, d.m(), entry_bound, den_bound);
  return {apply_exfb(d, t), t};
}

std::uint64_t scramble_seed(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

RoundTripCase roundtrip_case(std::uint64_t seed, const Bounds& b) {
  RoundTripCase rc;
  const auto [d, f] = random_fbcf(seed, b);
  rc.expected = f;
  const auto [scrambled, t] = random_exfb_scramble(d, scramble_seed(seed));
  rc.scramble_verified = verify_exfb(d, scrambled, t);
  try {
    const FbcfResult r = fbcf(scrambled);
    rc.recovered = r.indices;
    rc.indices_match = r.indices == f;
    rc.certificate_verified = verify_exfb(scrambled, r.canonical, r.certificate);
    rc.em_verified = verify_em(explicitate(scrambled).first, explicitate(r.canonical).first, r.em_transform);
  } catch (const Error& e) {
    rc.error = e.what();
  }
  return rc;
}

EmTransform random_em(Rng& rng, std::size_t n, std::size_t m, std::size_t s, std::size_t p, long entry_bound) {
  EmTransform t;
  t.Tx = random_invertible(rng, n, entry_bound);
  t.Tu = random_invertible(rng, m, entry_bound);
  t.Tv = random_invertible(rng, s, entry_bound);
  t.Ty = random_invertible(rng, p, entry_bound);
  t.Fu = random_matrix(rng, m, n, entry_bound);
  t.Fv = random_matrix(rng, s, n, entry_bound);
  t.R = random_matrix(rng, s, m, entry_bound);
  t.K = random_matrix(rng, n, p, entry_bound);
  return t;
}

Dacs random_dacs(Rng& rng, std::size_t l, std::size_t n, std::size_t m, std::size_t rank, long entry_bound) {
  rank = std::min({rank, l, n});
  Dacs d;
  d.E = random_matrix(rng, l, rank, entry_bound, 1, 0.6) * random_matrix(rng, rank, n, entry_bound, 1, 0.6);
  d.H = random_matrix(rng, l, n, entry_bound, 1, 0.4);
  d.L = random_matrix(rng, l, m, entry_bound, 1, 0.4);
  return d;
}

Odecs2 random_structured_odecs(Rng& rng, std::size_t max_list, std::size_t max_index) {
  EmcfIndices e;
  e.eps = random_indices(rng, max_list, max_index);
  e.eps_bar = random_indices(rng, max_list, max_index);
  e.sigma = random_indices(rng, max_list, max_index);
  e.delta = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
  e.sigma_bar = random_indices(rng, max_list, max_index);
  e.eta = random_indices(rng, max_list, max_index);
  const std::size_t nn = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  e.A_nn = nn ? frobenius_form(random_matrix(rng, nn, nn, 3)) : RatMatrix(0, 0);
  e.null_inputs = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
  e.null_outputs = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
  const Odecs2 o = build_emcf(e);
  return apply_em(o, random_em(rng, o.n(), o.m(), o.s(), o.p(), 2));
}

Odecs2 random_odecs(Rng& rng, std::size_t n, std::size_t m, std::size_t s, std::size_t p, double density) {
  return Odecs2{random_matrix(rng, n, n, 2, 1, density), random_matrix(rng, n, m, 2, 1, density),
                random_matrix(rng, n, s, 2, 1, density), random_matrix(rng, p, n, 2, 1, density),
                random_matrix(rng, p, m, 2, 1, density)};
}

}  // namespace dacs
