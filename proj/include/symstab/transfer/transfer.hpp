#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symstab/exactlin/group_action.hpp"

namespace symstab {

inline constexpr std::size_t kDefaultCosetCap = 8;

/// One representative per right coset H g of H = S_small (embedded fixing the
/// letters small..big-1) in S_big. The representative sends the chosen ordered
/// letters x_small..x_{big-1} to positions small..big-1 and the remaining letters
/// increasingly to 0..small-1. Throws ResourceLimit past the cap, invalid_argument
/// when small > big.
std::vector<Permutation> coset_representatives(std::size_t small, std::size_t big,
                                               std::size_t cap = kDefaultCosetCap);

/// Whether reps are a transversal of the right cosets of S_small in S_big.
bool is_right_transversal(const std::vector<Permutation>& reps, std::size_t small, std::size_t big);

struct IotaMap {
  Coinvariants source;        // under S_big
  Coinvariants target;        // under S_small
  std::vector<QMatrix> map;   // per degree: source coinvariants -> target coinvariants
};

/// [x] -> [sum over reps of g.x] from S_big- to S_small-coinvariants. g must act
/// with letters == big and its generated group must contain every representative.
/// reps defaults to coset_representatives(small, big).
IotaMap iota(const ChainComplex& c, const GroupAction& g, std::size_t small, std::size_t big,
             const std::vector<Permutation>* reps = nullptr);

/// Zero-dimensional stand-in for configuration spaces: particles on a finite site
/// set, optionally with a collar site that holds any number of particles (its
/// ordered configurations are connected, so they carry one class per count).
/// An ordered configuration of n particles is a tuple of sites, injective away
/// from the collar (kCollar). Level j means j + k particles.
struct ConfigurationModel {
  static constexpr int kCollar = -1;

  ConfigurationModel() = default;
  ConfigurationModel(std::size_t sites_, bool collar_, int k_ = 0) : sites(sites_), collar(collar_), k(k_) {}

  std::size_t sites = 0;
  bool collar = false;
  int k = 0;
  std::size_t max_particles = kDefaultCosetCap;

  /// Lexicographic list of ordered configurations of n particles.
  const std::vector<std::vector<int>>& tuples(std::size_t n) const;
  std::size_t index(const std::vector<int>& t) const;
  ChainComplex complex(std::size_t n) const;  // degree 0 only
  /// S_n relabelling particles: particle x of f becomes particle g(x).
  GroupAction action(std::size_t n) const;
  Coinvariants coinvariants(std::size_t n) const;
  /// Forget particles to_n..from_n-1.
  QMatrix deletion(std::size_t from_n, std::size_t to_n) const;
  /// Append a collar particle: n-1 -> n. Requires the collar.
  QMatrix stabilization(std::size_t n) const;

 private:
  void check(std::size_t n) const;
  mutable std::map<std::size_t, std::vector<std::vector<int>>> cache_;
  mutable std::map<std::vector<int>, std::size_t> where_;
};

/// Applies g to an ordered configuration.
std::vector<int> relabel(const Permutation& g, const std::vector<int>& tuple);

/// tau_{i,j} = (del_{i,j})_* o iota on coinvariants of levels j -> i (i <= j).
QMatrix transfer_map(const ConfigurationModel& m, int i, int j,
                     const std::vector<Permutation>* reps = nullptr);

/// Same map assembled through iota on the ordered model followed by deletion.
QMatrix transfer_map_via_iota(const ConfigurationModel& m, int i, int j);

/// Map on coinvariants induced by a site-set inclusion (small.sites <= big.sites,
/// sites keep their labels, same collar and k).
QMatrix site_inclusion(const ConfigurationModel& small, const ConfigurationModel& big, std::size_t n);

/// B_0..B_P with sigma_p: B_{p-1} -> B_p (sigma_0 from the zero space) and
/// theta_{q,p}: B_p -> B_q for q <= p.
struct DoldSystem {
  std::vector<std::size_t> dims;
  std::vector<QMatrix> sigma;
  std::map<std::pair<int, int>, QMatrix> theta;  // key (q, p)

  int top() const { return static_cast<int>(dims.size()) - 1; }
  /// Throws std::invalid_argument on missing maps or wrong shapes.
  void check_shapes() const;
};

/// B_p = Q, sigma = 1, theta_{q,p} = C(p, q).
DoldSystem binomial_system(int top);

/// Collar model with B_p the coinvariants of p particles in total (level p - k),
/// p = 0..top; theta_{q,p} = tau_{q,p} / (p-q)!.
DoldSystem model_system(const ConfigurationModel& m, int top);

struct DoldReport {
  std::vector<std::string> checked;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Identity diagonal, the stabilization relation
///   theta_{q,p} sigma_p = theta_{q,p-1} + sigma_q theta_{q-1,p-1},
/// the binomial identity C(p-q, p-m) theta_{q,p} = theta_{q,m} theta_{m,p},
/// the splitting B_p = sum_{q<=p} B_q / im sigma_q and the eigenvalues p-q of
/// theta_{p-1,p} sigma_p on it. Shape problems throw std::invalid_argument.
DoldReport dold_verify(const DoldSystem& sys);

struct DoldConclusions {
  std::vector<bool> sigma_injective;    // index p = 1..P (entry 0 unused)
  std::vector<bool> theta_sigma_iso;    // theta_{p-1,p} sigma_p
  std::vector<std::optional<bool>> theta_iso_where_sigma_iso;  // set only where sigma_p is iso
  bool all() const;
};

/// Rank certificates; throws std::logic_error unless the report passed.
DoldConclusions dold_conclusions(const DoldSystem& sys, const DoldReport& verified);

/// {"dims":[..],"matrices":{"sigma_1":M,..,"theta_0_2":M,..}} with the matrix
/// format of the complex JSON. sigma_0 may be omitted.
nlohmann::json dold_to_json(const DoldSystem& sys);
DoldSystem dold_from_json(const nlohmann::json& j);

}  // namespace symstab
