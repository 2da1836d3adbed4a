#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "symstab/exactlin/group_action.hpp"
#include "symstab/exactlin/simplicial.hpp"

namespace symstab {

/// Simplicial complex on letters x colors vertices (vertex = letter + n * color),
/// closed under S_n acting on letters, with a subgroup generated by adjacent
/// transpositions acting on its chains. Optionally twisted by the sign
/// character and conjugated by a random signed permutation in each degree.
struct EquivariantInstance {
  std::size_t letters = 0;
  std::size_t colors = 1;
  std::vector<Simplex> seeds;
  std::vector<std::size_t> blocks;  // Young subgroup block sizes
  bool twisted = false;
  bool conjugated = false;
  ChainComplex complex;
  GroupAction action;

  std::string describe() const;
};

struct RandomEquivariantOptions {
  std::size_t max_letters = 5;
  std::size_t max_cells = 360;
};

EquivariantInstance random_equivariant_instance(std::mt19937_64& rng,
                                                const RandomEquivariantOptions& opt = {});

struct ExactnessReport {
  BettiTable homology_then_coinvariants;
  BettiTable coinvariants_then_homology;
  bool agree() const;
};

/// dim H_n(C)_G through the induced action versus H_n(C_G).
ExactnessReport coinvariant_exactness(const ChainComplex& c, const GroupAction& g,
                                      CoinvariantMethod method = CoinvariantMethod::automatic);

}  // namespace symstab
