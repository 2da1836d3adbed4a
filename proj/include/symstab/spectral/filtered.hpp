#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "symstab/exactlin/chain_complex.hpp"
#include "symstab/io/json_io.hpp"

namespace symstab {

struct InvalidFiltration : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Increasing filtration of a complex by coordinate subcomplexes.
///
/// Basis elements are numbered globally: degree lo first, then lo+1, and so on.
/// steps[i] is the index set of the filtration stage labelled p0 + i; stages
/// below p0 are empty and stages past the last one equal the whole basis.
struct FilteredComplex {
  ChainComplex ambient;
  int p0 = 0;
  std::vector<std::vector<std::size_t>> steps;

  int p_lo() const { return p0; }
  int p_hi() const { return p0 + static_cast<int>(steps.size()) - 1; }
};

/// Global index of the first basis element in degree n.
std::size_t global_offset(const ChainComplex& c, int n);

/// Filtration label of each global basis index (the first stage containing it).
std::vector<int> filtration_levels(const FilteredComplex& fc);

/// Sorted, nested, exhaustive and closed under the differential; throws
/// InvalidFiltration otherwise. Also validates the ambient complex.
void validate(const FilteredComplex& fc);

/// Drops leading empty stages (shifting p0) and trailing repeats of the full
/// basis. Interior repeats stay: they are genuine zero columns.
FilteredComplex normalize(FilteredComplex fc);

/// Stage p as a per-degree membership mask over the whole basis.
std::vector<char> stage_mask(const FilteredComplex& fc, int p);

/// Filtration by levels: element i lies in stage level[i] and above.
FilteredComplex filtration_from_levels(ChainComplex c, const std::vector<int>& level);

namespace io {
Json filtered_to_json(const FilteredComplex& fc);
/// Complex payload plus "filtration" (list of index arrays) and optional "p0".
FilteredComplex filtered_from_json(const Json& j);
}  // namespace io

}  // namespace symstab
