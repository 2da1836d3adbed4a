#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "symstab/spectral/filtered.hpp"

namespace symstab {

struct RandomFilteredOptions {
  Direction direction = Direction::cochain;
  int lo = 0, hi = 4;               // degree range of the complex
  int basis_lo = 0, basis_hi = 4;   // degrees that may carry basis elements
  std::size_t max_basis = 40;
  int max_stages = 5;
  int coefficient_bound = 2;        // basis-change entries drawn from [-b, b]
};

/// Random finite filtered complex. Built as a sum of one- and two-element
/// filtered pieces and then conjugated by a random filtration-preserving basis
/// change, which reaches every filtered complex up to filtered isomorphism.
FilteredComplex random_filtered_complex(std::mt19937_64& rng, const RandomFilteredOptions& opt = {});

/// Block sum; both filtrations are padded to a common label range.
FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b);

/// Conjugates by a random filtered automorphism T (per degree). Returns the new
/// complex; T is written to `t` when non-null.
FilteredComplex random_filtered_conjugate(std::mt19937_64& rng, const FilteredComplex& fc,
                                          std::vector<DenseMatrix>* t = nullptr, int bound = 2);

struct CompareInstance {
  std::string kind;
  FilteredComplex src, tgt;
  std::vector<QMatrix> map;
  int threshold = 0;
  bool engineered = false;  // constructed so that the E^1 hypothesis holds
};

/// kind cycles through: inclusion of a low-degree summand, projection away
/// from one, the same with extra low noise reaching degree threshold-2, and
/// inclusion of a filtration stage (hypothesis not engineered).
CompareInstance random_compare_instance(std::mt19937_64& rng, std::size_t index);

}  // namespace symstab
