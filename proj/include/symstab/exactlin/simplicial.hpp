#pragma once

#include <vector>

#include "symstab/exactlin/chain_complex.hpp"

namespace symstab {

using Simplex = std::vector<int>;

/// Downward closure of the given simplices (vertices sorted, duplicates removed),
/// grouped by dimension and sorted lexicographically within each dimension.
std::vector<std::vector<Simplex>> close_under_faces(const std::vector<Simplex>& simplices);

/// Simplicial chain complex (degrees 0..top) with the alternating-sum boundary.
/// When augmented, a copy of Q in degree -1 receives every vertex.
ChainComplex simplicial_chains(const std::vector<std::vector<Simplex>>& by_dim, bool augmented = false);

/// Simplicial cone: every simplex joined with the new vertex apex.
std::vector<Simplex> cone_simplices(const std::vector<Simplex>& simplices, int apex);

}  // namespace symstab
