#pragma once

#include <vector>

#include "dacscanon/ratmat.hpp"

namespace dacs {

// Luenberger chain form of a controllable pair (A, B).  With z = T x and
// w = F x + w', the closed loop is a set of integrator chains
//   z_i^j' = z_i^{j+1},   z_i^{len_i}' = gamma_i w'
// ordered by nonincreasing length (ties by generating column).
struct ChainForm {
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> columns;  // input column that generated each chain
  RatMatrix T;                       // n x n
  RatMatrix F;                       // inputs x n
  RatMatrix Gamma;                   // chains x inputs, full row rank
};

ChainForm chain_form(const RatMatrix& A, const RatMatrix& B);  // NotControllable

// Upper shift chains: block diagonal of ones on the superdiagonal.
RatMatrix shift_chains(const std::vector<std::size_t>& lengths);
// n x k matrix whose column i is the unit vector at the last state of chain i.
RatMatrix chain_ends(const std::vector<std::size_t>& lengths);
// k x n matrix whose row i selects the first state of chain i.
RatMatrix chain_tops(const std::vector<std::size_t>& lengths);
std::vector<std::size_t> chain_offsets(const std::vector<std::size_t>& lengths);

// Controllability indices from the rank increments of [B, AB, A^2 B, ...],
// sorted nonincreasing.
std::vector<std::size_t> controllability_indices(const RatMatrix& A, const RatMatrix& B);

// F with charpoly(A + B F) = prod (x - r) over `roots` (|roots| = n).
RatMatrix place_poles(const RatMatrix& A, const RatMatrix& B, const std::vector<Rational>& roots);

}  // namespace dacs
