#pragma once

#include <vector>

#include "dacscanon/geometry.hpp"
#include "dacscanon/systems.hpp"

namespace dacs {

// Block sizes of the triangular / normal forms.  States split into four
// blocks n1..n4, outputs into p3 (block 3) and p4 (block 4).  Inputs of
// block 1 are m1 driving inputs plus s1 driving v-inputs, block 3 likewise.
// For a plain 4-tuple s1 = s3 = 0.
struct BlockDims {
  std::size_t n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  std::size_t m1 = 0, m3 = 0, s1 = 0, s3 = 0;
  std::size_t p3 = 0, p4 = 0;

  std::size_t n() const { return n1 + n2 + n3 + n4; }
  std::size_t m() const { return m1 + m3; }
  std::size_t s() const { return s1 + s3; }
  std::size_t p() const { return p3 + p4; }
  bool operator==(const BlockDims&) const = default;
};

// The system is stored with inputs in EM order [u1, u3 | v1, v3].
struct MtfSystem {
  Odecs2 system;
  BlockDims dims;
  EmTransform transform;  // from the input system to `system`
};
using MnfSystem = MtfSystem;

// Input order [u1, v1, u3, v3] as indices into the EM order.
std::vector<std::size_t> block_input_order(const BlockDims& d);
// merged(system) with its inputs permuted to block order.
StateSpace block_ordered(const Odecs2& o, const BlockDims& d);

bool is_mtf_pattern(const StateSpace& blk, const BlockDims& d);
bool is_mnf_pattern(const StateSpace& blk, const BlockDims& d);

MtfSystem mtf(const StateSpace& ss);
MtfSystem emtf(const Odecs2& o);
// Normal form from a triangular one; the spectra of the blocks are chosen
// pairwise disjoint and disjoint from that of block 2.
MnfSystem mnf(const MtfSystem& t);
MnfSystem emnf(const MtfSystem& t);

struct SylvesterSolution {
  RatMatrix X;
  bool unique = true;
};
// A X - X B = C.  NoSolution if inconsistent; when not unique the first
// echelon solution is returned with unique = false.
SylvesterSolution solve_sylvester(const RatMatrix& A, const RatMatrix& B, const RatMatrix& C);
// A X - X B = C together with X Rc = Rt and Lc X = Lt.
SylvesterSolution solve_constrained_sylvester(const RatMatrix& A, const RatMatrix& B, const RatMatrix& C,
                                              const RatMatrix& Rc, const RatMatrix& Rt,
                                              const RatMatrix& Lc, const RatMatrix& Lt);

}  // namespace dacs
