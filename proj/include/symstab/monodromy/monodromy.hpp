#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "symstab/exactlin/group_action.hpp"
#include "symstab/partitions/partition.hpp"

namespace symstab {

/// A loop in a stratum, seen through the data the sign formulas consume:
/// the permutation of each block of equal-multiplicity particles, and the
/// orientation character of M on each particle's path. Particles are ordered as
/// lambda.parts() (blocks of equal multiplicity are consecutive).
struct LoopDatum {
  Partition lambda;
  std::map<int, Permutation> perms;  // multiplicity -> permutation of its block
  std::vector<int> u;                // +1 / -1 per particle
  int d = 2;

  /// One permutation of the right size per multiplicity present, nothing else;
  /// one sign per particle. Throws std::invalid_argument.
  void validate() const;
  const Permutation& perm(int m) const;
  static LoopDatum identity(const Partition& lambda, int d);
};

/// prod_m sign(pi_m)^m
int s1(const LoopDatum& ld);
/// prod_m sign(pi_m)
int s2(const LoopDatum& ld);

struct OrientationChars {
  int o1 = 1;  // prod u^{multiplicity}
  int o2 = 1;  // prod u
};
OrientationChars orientation_chars(const LoopDatum& ld);

struct MonodromyValues {
  int orientation = 1;         // o1 * s1^d
  int orientation_lambda = 1;  // o2 * s2^d
  int tensor = 1;
};
MonodromyValues monodromy_pair(const LoopDatum& ld);

enum class Agreement { agree, disagree, not_applicable };
std::string to_string(Agreement a);

/// not_applicable unless every even-multiplicity block is fixed with u = +1.
Agreement odd_move_agreement(const LoopDatum& ld);

/// Loop concatenation: a first, then b (permutations compose, signs multiply
/// after transporting b's signs along a's permutation).
LoopDatum concatenate(const LoopDatum& a, const LoopDatum& b);

/// Changes the base-point ordering inside each block by r_m (conjugation).
LoopDatum reorder(const LoopDatum& ld, const std::map<int, Permutation>& r);

/// Every datum with cardinality <= max_particles, parts <= max_multiplicity and
/// the given d, in a fixed order.
void for_each_loop_datum(std::size_t max_particles, int max_multiplicity, int d,
                         const std::function<void(const LoopDatum&)>& f);

nlohmann::json loop_datum_to_json(const LoopDatum& ld);
/// {"lambda":[1,1,2],"perms":{"1":[2,1],"2":[1]},"u":[1,-1,1],"d":3}; omitted blocks
/// are identities. Throws io::MalformedInput.
LoopDatum loop_datum_from_json(const nlohmann::json& j);

}  // namespace symstab
