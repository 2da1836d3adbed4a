#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "symstab/spectral/pages.hpp"

namespace symstab {

/// Levels A_0..A_N of chain complexes (all on one degree range) with face maps
/// d_i: A_p -> A_{p-1}, i = 0..p, and an optional augmentation A_0 -> A_{-1}.
/// faces[p][i][k] is d_i in internal degree lo + k; faces[0] is empty.
struct SemisimplicialComplex {
  std::vector<ChainComplex> levels;
  std::vector<std::vector<std::vector<QMatrix>>> faces;
  std::optional<ChainComplex> augmented_to;
  std::vector<QMatrix> augmentation;  // per internal degree

  int top() const { return static_cast<int>(levels.size()) - 1; }
};

/// Chain maps, simplicial identities d_i d_j = d_{j-1} d_i (i < j) and, when
/// augmented, e d_0 = e d_1. Throws InvalidComplex.
void validate(const SemisimplicialComplex& ss);

struct Totalization {
  FilteredComplex filtered;  // chain complex filtered by simplicial level
  /// block_offset[p - level_lo][n - lo]: position of A_{p, n-p} inside Tot_n.
  std::vector<std::vector<std::size_t>> block_offset;
  int level_lo = 0;
};

/// Tot_n = sum over p of A_{p, n-p} with D = sum_i (-1)^i d_i + (-1)^p d_internal.
/// With augment, A_{-1} sits at level -1 and d_0 on level 0 is the augmentation.
Totalization totalize(const SemisimplicialComplex& ss, bool augment = false);

/// Spectral sequence of the level filtration; homological bidegrees (-r, r-1).
SpectralPages realization_ss(const SemisimplicialComplex& ss);

/// Levelwise homology H_q(A_p) and the alternating sum of induced face maps;
/// the E^1 page and d_1 computed without the total complex.
struct LevelwiseE1 {
  std::map<PQ, std::size_t> dims;     // (p, q) -> dim H_q(A_p)
  std::map<PQ, std::size_t> d1_rank;  // rank of the induced map out of (p, q)
};
LevelwiseE1 levelwise_e1(const SemisimplicialComplex& ss);

struct AugmentationReport {
  int lo = 0;
  std::vector<std::size_t> h_total, h_target, rank;  // per total degree
  /// Largest n such that the augmentation is an isomorphism on H_m for all m <= n
  /// (lo - 1 when it already fails at lo).
  int iso_through = 0;
};
AugmentationReport augmentation_report(const SemisimplicialComplex& ss);

/// Finite flag data on vertices 0..n-1. Edges are ordered pairs; a p-simplex is
/// an ordered (p+1)-tuple whose entries are pairwise joined by edges.
struct FlagSetReport {
  std::size_t vertices = 0;
  int truncation = 0;
  bool has_hub = false;
  /// Every collection of at most this many vertices has a common neighbour.
  std::size_t dominated_up_to = 0;
  std::vector<std::size_t> simplices;       // per level 0..N
  std::vector<std::size_t> reduced_betti;   // ordered realization, degrees 0..N-1
  std::vector<std::size_t> clique_reduced_betti;  // unordered clique complex, degrees 0..N-1
  bool ordered_vanishes() const;
  bool clique_vanishes() const;
};

/// Builds the flag semisimplicial set up to level N and reports what it verified.
/// Throws std::invalid_argument if the relation is reflexive somewhere, not
/// symmetric, or names a vertex outside the range.
FlagSetReport flag_set_check(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                             int truncation);

/// Semisimplicial set of ordered flags as a semisimplicial complex of
/// degree-0 chain complexes, augmented to a point.
SemisimplicialComplex flag_semisimplicial(std::size_t vertices,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                          int truncation);

namespace io {
Json semisimplicial_to_json(const SemisimplicialComplex& ss);
/// {"levels": [complex...], "faces": [[[matrix per degree] per i] per p >= 1],
///  "augmentation": {"target": complex, "maps": [matrix per degree]}}
SemisimplicialComplex semisimplicial_from_json(const Json& j);
}  // namespace io

}  // namespace symstab
