#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace symstab {

/// Limits shared by the suite and the command line.
struct Caps {
  int partition_weight = 40;  // largest accepted weight; exhaustive checks stop at 8
  int plane_points = 5;       // plane oracle cap
  std::size_t sites = 5;      // configuration model sites
  std::size_t group_order = 3628800;
  std::size_t cosets = 8;     // largest S_n in coset enumeration
};

/// Reads SYMSTAB_PARTITION_CAP, SYMSTAB_PLANE_CAP, SYMSTAB_SITE_CAP,
/// SYMSTAB_GROUP_CAP and SYMSTAB_COSET_CAP. Non-positive or unparsable values
/// throw std::invalid_argument.
Caps caps_from_environment(Caps base = {});

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string anchor;  // the property checked, in words
  std::size_t checks = 0;
  std::vector<std::string> failures;
  nlohmann::json data;  // counts and replay information

  bool passed() const { return failures.empty(); }
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  std::vector<std::string> caveats;

  bool passed() const;
  nlohmann::json to_json() const;
  /// One "PASS"/"FAIL" line per criterion.
  std::string summary() const;
};

inline constexpr int kCriterionCount = 12;

/// Random criteria draw from std::mt19937_64 seeded with seed * 1000 + id, so a
/// failing instance is replayed from (seed, id, index).
CriterionResult run_criterion(int id, std::uint64_t seed, const Caps& caps = {});

/// All criteria, dispatched concurrently and assembled in id order.
SuiteReport run_suite(std::uint64_t seed, const Caps& caps = {});

/// Scope notes emitted with every report: which statements are rational only.
std::vector<std::string> coefficient_caveats();

}  // namespace symstab
