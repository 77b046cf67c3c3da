#pragma once

#include <vector>

#include "dacscanon/morse.hpp"

namespace dacs {

using Indices = std::vector<std::size_t>;

// Chains x^j' = x^{j+1} ended by an input; driving chains (u) come first,
// then v-chains, then unused inputs of each kind.
struct BrunovskyResult {
  EmTransform transform;
  Indices eps, eps_bar;
  std::size_t null_u = 0, null_v = 0;
  Odecs2 system;
};
BrunovskyResult brunovsky_two_inputs(const RatMatrix& A, const RatMatrix& Bu, const RatMatrix& Bv);

// Prime block: u-chains with output at the top, static identity block,
// v-chains with output at the top.  Outputs ordered [u-chains, static,
// v-chains]; inputs u = [u-chains, static].
struct PrimeResult {
  EmTransform transform;
  Indices sigma;
  std::size_t delta = 0;
  Indices sigma_bar;
  Odecs2 system;
};
PrimeResult prime_canonical(const Odecs2& o);  // NotPrime

// Observable pair: upper shift chains read at the top; unused outputs last.
struct ObservableResult {
  MorseTransform transform;  // no inputs
  Indices eta;
  std::size_t null_outputs = 0;
  RatMatrix A, C;
};
ObservableResult observable_dual_canonical(const RatMatrix& C, const RatMatrix& A);  // NotObservable

struct EmcfIndices {
  Indices eps, eps_bar;
  RatMatrix A_nn;  // Frobenius form
  Indices sigma;
  std::size_t delta = 0;
  Indices sigma_bar, eta;
  std::size_t null_inputs = 0;   // u-columns that act on nothing
  std::size_t null_outputs = 0;  // identically zero outputs
  bool operator==(const EmcfIndices&) const = default;
};

struct FbcfIndices {
  Indices eps_p, eps_bar_p, sigma_p, sigma_bar_p, eta_p;
  std::size_t n_rho = 0;
  RatMatrix A_rho;
  std::size_t zero_inputs = 0;  // zero columns of L
  bool operator==(const FbcfIndices&) const = default;
};

struct EmcfResult {
  EmTransform transform;  // from the system the normal form was computed from
  EmTransform stage;      // from the normal form
  EmcfIndices indices;
  Odecs2 system;
};
EmcfResult emcf(const MnfSystem& m);

// State order [cu, cv, nn, pu, pv, o]; u = [cu, null, pu, static];
// v = [cv, pv]; y = [pu, static, pv, o, null].
Odecs2 build_emcf(const EmcfIndices& e);

FbcfIndices translate_indices(const EmcfIndices& e);
Dacs build_fbcf(const FbcfIndices& f);

struct FbcfResult {
  ExFbTransform certificate;  // apply_exfb(input, certificate) == canonical
  FbcfIndices indices;
  Dacs canonical;
  EmcfIndices emcf_indices;
  EmTransform em_transform;  // explicitate(input) -> explicitate(canonical)
};
FbcfResult fbcf(const Dacs& d);

}  // namespace dacs
