#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symstab {

struct InvalidPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multiset of positive integers stored weakly increasing. The empty partition
/// (weight 0) is allowed.
class Partition {
 public:
  Partition() = default;

  /// Sorts; throws InvalidPartition on any part < 1.
  static Partition normalize(std::vector<long> raw);
  /// Accepts "1+1+2", "2", "()" or "" (empty).
  static Partition parse(std::string_view text);
  static Partition ones(std::size_t k);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  std::size_t cardinality() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  std::size_t count(int m) const;
  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// 1^j lambda.
Partition add_ones(const Partition& lambda, std::size_t j);

/// Distinct results of merging one unordered pair of parts, sorted.
std::vector<Partition> elementary_collapses(const Partition& lambda);

/// lambda' <= lambda: the parts of lambda group into blocks summing to the parts of lambda'.
bool is_collapse(const Partition& coarse, const Partition& fine);

/// Breadth-first reachability in the elementary-collapse graph. Reference for is_collapse.
bool is_collapse_bfs(const Partition& coarse, const Partition& fine);

inline constexpr int kDefaultPartitionCap = 40;

/// All partitions of k, lexicographic on the increasing part sequence.
std::vector<Partition> enumerate_partitions(int k, int cap = kDefaultPartitionCap);

/// Partitions of k with exactly n parts, in the same order.
std::vector<Partition> partitions_with_parts(int k, std::size_t n, int cap = kDefaultPartitionCap);

/// col_p(lambda): partitions of weight(lambda) with cardinality weight - p that are not <= lambda.
std::vector<Partition> col(const Partition& lambda, int p);

struct StabilizationReport {
  Partition lambda;
  int j = 0;
  int p = 0;
  std::vector<Partition> source;   // col_p(1^j lambda)
  std::vector<Partition> target;   // col_p(1^{j+1} lambda)
  std::vector<Partition> images;   // add_ones(x, 1) for x in source
  std::vector<Partition> missed;   // target minus images
  bool images_in_target = true;
  bool injective = true;
  bool surjective = true;
  bool missed_one_free = true;     // no missed element has a part equal to 1
  bool in_window = false;          // 2p <= j + k
  std::size_t min_ones_in_target = 0;  // fewest parts equal to 1 among target members
  bool bijective() const { return images_in_target && injective && surjective; }
};

StabilizationReport stab_collapse_map(const Partition& lambda, int j, int p);

/// Every maximal chain of elementary collapses from 1^k down to lambda, as
/// lengths. Exhaustive; intended for k <= 10.
std::vector<std::size_t> collapse_chain_lengths(const Partition& lambda);

}  // namespace symstab
