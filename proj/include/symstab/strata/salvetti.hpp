#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "symstab/exactlin/group_action.hpp"
#include "symstab/partitions/partition.hpp"

namespace symstab {

/// Cell of the braid-arrangement cell model of the ordered configuration space
/// of n points in the plane. order lists the points by the chamber C; bit g of
/// cuts separates positions g and g+1 into different blocks of the face F.
/// Dimension is the number of missing cuts.
struct SalvettiCell {
  std::vector<std::uint8_t> order;
  std::uint32_t cuts = 0;

  friend auto operator<=>(const SalvettiCell&, const SalvettiCell&) = default;
};

struct SalvettiComplex {
  std::size_t points = 0;
  std::vector<std::vector<SalvettiCell>> cells;  // by dimension
  ChainComplex chains;                           // chain direction, degrees 0..points-1
  /// boundary[d][i]: (facet index in dimension d-1, incidence sign).
  std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> boundary;
  std::vector<std::map<SalvettiCell, std::size_t>> positions;

  std::size_t index(const SalvettiCell& c) const;
  /// Cellular action of label permutations (signed permutation matrices).
  GroupAction action(const std::vector<Permutation>& generators) const;
};

inline constexpr std::size_t kSalvettiMaxPoints = 6;

/// Built once per n and shared. n in [1, kSalvettiMaxPoints].
const SalvettiComplex& salvetti_complex(std::size_t n);

/// Adjacent transpositions generating the Young subgroup that permutes the
/// positions of equal parts (parts stored increasing, so equal parts are adjacent).
std::vector<Permutation> young_generators(const Partition& colors);

/// Rational homology of the colored configuration space S_colors(R^2):
/// coinvariants of the cell model under the Young subgroup, then homology.
/// The empty partition gives a point.
BettiTable colored_configuration_homology(const Partition& colors);

}  // namespace symstab
