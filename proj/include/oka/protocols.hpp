#pragma once

#include "oka/protocol.hpp"

namespace oka {

enum class MerkleSampling { IID, SubsetWithoutReplacement };

// Puzzle exchange: A sends the oracle answers on her sample, B replies with
// the index of a matching answer; both end up holding a common element.
// Default sampling is a uniform subset without replacement (the uniform-query
// convention); IID keeps the literal independent-samples variant.
ProtocolSpec merkle_puzzles(
    size_t ell, uint64_t universe_size,
    MerkleSampling mode = MerkleSampling::SubsetWithoutReplacement);

// A queries a row of an ell x ell matrix and announces the row; B queries a
// column and replies with the oracle value at the crossing cell, from which A
// recovers the column. Key is the low bit of the column index.
ProtocolSpec matrix_rowcol(size_t ell);

// Same as matrix_rowcol, but both parties also query point 1 and every
// message is XOR-masked with F(1).
ProtocolSpec xor_masked_rowcol(size_t ell);

// One-message adaptive protocol over chained evaluations of two tagged
// functions f, g sharing one oracle: no fixed point is likely to be queried,
// yet the single message pins down B's output.
ProtocolSpec hash_chain_adaptive(int n);

// Both parties query point 1 and output its answer; no communication.
ProtocolSpec trivial_point();

// Smallest width w with 2^w >= n.
int ceil_log2(uint64_t n);

// Uniform k-subset of {0,...,universe-1} via partial Fisher-Yates; returned
// in the shuffled draw order.
std::vector<Point> uniform_subset(Rng& rng, size_t k, uint64_t universe);

}  // namespace oka
