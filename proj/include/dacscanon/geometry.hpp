#pragma once

#include <vector>

#include "dacscanon/systems.hpp"

namespace dacs {

// Augmented Wong sequences of a DACS.  V_seq[i] and W_seq[i] hold the i-th
// iterate for i = 0..n; What_seq[i-1] holds the i-th iterate of the hatted
// sequence for i = 1..n.  Entries past stabilization repeat the limit.
struct WongResult {
  std::vector<Subspace> V_seq, W_seq, What_seq;
  Subspace V_star, W_star;
};

WongResult wong_sequences(const Dacs& d);

struct InvariantResult {
  std::vector<Subspace> V_seq, W_seq, What_seq;  // same indexing as WongResult
  std::vector<Subspace> U_seq, Y_seq;            // U_i, Y_i for i = 0..n
  Subspace V_star, U_star, W_star, Y_star;
  std::size_t n1 = 0, n2 = 0, n3 = 0, n4 = 0, m1 = 0, m3 = 0, p3 = 0, p4 = 0;
};

// Sequences of a 4-tuple; the hatted sequence starts from Im of the last
// `s` input columns (none when s = 0).
InvariantResult invariant_subspaces(const StateSpace& ss, std::size_t s = 0);
// Same on the merged form w = (u, v).
InvariantResult invariant_subspaces(const Odecs2& o);

// (A^T, C^T, B^T, D^T)
StateSpace dualize(const StateSpace& ss);

// Reachable subspace of (A, B).
Subspace reachable_subspace(const RatMatrix& A, const RatMatrix& B);
bool is_controllable(const RatMatrix& A, const RatMatrix& B);
bool is_observable(const RatMatrix& C, const RatMatrix& A);
// Prime: V* = 0, U* = 0, W* and Y* full.
bool is_prime(const StateSpace& ss);

}  // namespace dacs
