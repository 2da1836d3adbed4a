#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symstab/exactlin/chain_complex.hpp"

namespace symstab {

/// Bijection of {0..n-1}; img[i] is the image of i.
struct Permutation {
  std::vector<std::size_t> img;

  static Permutation identity(std::size_t n);
  /// From 1-based images, validating bijectivity. Throws std::invalid_argument.
  static Permutation from_one_based(const std::vector<long>& images);
  std::size_t size() const { return img.size(); }
  std::size_t operator()(std::size_t i) const { return img[i]; }
  Permutation inverse() const;
  bool is_identity() const;
  int sign() const;
  std::string str() const;  // one-based image list

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

/// a o b: apply b first.
Permutation compose(const Permutation& a, const Permutation& b);

/// All permutations of {0..n-1} in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

inline constexpr std::size_t kDefaultGroupCap = 3628800;  // 10!

/// Subgroup of S_letters given by generators, acting degreewise on a complex.
/// matrices[g][i] is the action of generator g on degree lo + i.
struct GroupAction {
  std::size_t letters = 0;
  std::vector<Permutation> generators;
  std::vector<std::vector<QMatrix>> matrices;
};

struct GroupElement {
  Permutation perm;
  std::vector<QMatrix> matrices;
};

struct GroupTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumerates the generated group together with its action matrices. Throws
/// GroupTooLarge past the cap and InvalidComplex when two words for the same
/// permutation act differently (the matrices do not respect the relations).
std::vector<GroupElement> expand_group(const ChainComplex& c, const GroupAction& g,
                                       std::size_t cap = kDefaultGroupCap);

/// Shapes, invertibility, {0,+1,-1} entries and commuting with differentials.
/// When the group fits under the cap, relation consistency is checked too.
void validate_action(const ChainComplex& c, const GroupAction& g,
                     std::size_t cap = kDefaultGroupCap);

enum class CoinvariantMethod { automatic, averaging, generator_quotient, signed_orbits };
std::string to_string(CoinvariantMethod m);

struct Coinvariants {
  ChainComplex complex;
  std::vector<QMatrix> projection;  // per degree: V -> V_G
  std::vector<QMatrix> section;     // per degree: V_G -> V, projection o section = id
  CoinvariantMethod method = CoinvariantMethod::automatic;
};

Coinvariants coinvariants(const ChainComplex& c, const GroupAction& g,
                          CoinvariantMethod method = CoinvariantMethod::automatic,
                          std::size_t cap = kDefaultGroupCap);

/// Induced action of each generator on H_n(c), in the representative basis of
/// the homology subquotient. Result[g][i] for degree lo + i.
std::vector<std::vector<DenseMatrix>> homology_action(const ChainComplex& c, const GroupAction& g);

/// dim V_G = dim V - rank [g_1 - 1; ...; g_s - 1].
std::size_t coinvariant_dim(std::size_t dim, const std::vector<DenseMatrix>& generator_matrices);

}  // namespace symstab
