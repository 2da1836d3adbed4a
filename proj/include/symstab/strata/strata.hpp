#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symstab/exactlin/rational.hpp"
#include "symstab/partitions/partition.hpp"
#include "symstab/ranges/ranges.hpp"

namespace symstab {

/// The stratum S_lambda'(M); its dimension is d * cardinality(lambda').
struct StratumDescriptor {
  Partition lambda;
  ManifoldClass mc;
  int dimension() const { return mc.dim * static_cast<int>(lambda.cardinality()); }
};

struct FiltrationLayer {
  int p = 0;
  std::vector<Partition> members;  // col_p(lambda)
};

/// Layers p = 0 .. last nonempty column, interior empty columns included.
/// W_lambda is empty exactly when there are no layers (lambda = 1^k).
struct FiltrationReport {
  Partition lambda;
  std::vector<FiltrationLayer> layers;
  bool u0_finest = true;     // layer 0, when present, is {1^k}
  bool within_bound = true;  // last layer index <= k - 1
};

FiltrationReport filtration_report(const Partition& lambda);

enum class Provenance { builtin, user, unknown };
std::string to_string(Provenance p);
Provenance parse_provenance(const std::string& s);

/// Compactly supported Betti numbers b_c^i, i = 0 .. betti_c.size() - 1.
struct StratumBetti {
  std::vector<std::size_t> betti_c;
  Provenance provenance = Provenance::unknown;
  bool twisted = false;

  std::size_t at(int i) const {
    return (i < 0 || i >= static_cast<int>(betti_c.size())) ? 0 : betti_c[static_cast<std::size_t>(i)];
  }
  long euler_c() const;
};

class BettiOracle {
 public:
  virtual ~BettiOracle() = default;
  /// nullopt when the oracle has no data for this stratum.
  virtual std::optional<StratumBetti> lookup(const Partition& stratum, const ManifoldClass& mc) const = 0;
  virtual std::string name() const = 0;
};

inline constexpr int kDefaultPlaneCap = 5;

/// H_c Betti numbers of S_lambda'(R^2) from the cell model, dualized
/// (b_c^{2n-i} = b_i with n = cardinality). Throws ResourceLimit past the cap.
StratumBetti plane_oracle(const Partition& stratum, int cap = kDefaultPlaneCap);

/// Answers only for the plane (dim 2, orientable, open, no punctures) within the cap.
class PlaneOracle final : public BettiOracle {
 public:
  explicit PlaneOracle(int cap = kDefaultPlaneCap) : cap_(cap) {}
  std::optional<StratumBetti> lookup(const Partition& stratum, const ManifoldClass& mc) const override;
  std::string name() const override { return "builtin-plane"; }
  int cap() const { return cap_; }

 private:
  int cap_;
};

/// User-supplied entries. JSON: {"entries":[{"partition":"1+2","class":{..},
/// "betti_c":[..],"provenance":"user","twisted":false}]}
class TableOracle final : public BettiOracle {
 public:
  void insert(const Partition& stratum, const ManifoldClass& mc, StratumBetti b);
  std::optional<StratumBetti> lookup(const Partition& stratum, const ManifoldClass& mc) const override;
  std::string name() const override { return "table"; }
  std::size_t size() const { return entries_.size(); }

  nlohmann::json to_json() const;
  /// Throws io::MalformedInput on structure errors or Betti data outside [0, dimension].
  static TableOracle from_json(const nlohmann::json& j);

 private:
  struct Entry {
    Partition stratum;
    ManifoldClass mc;
    StratumBetti betti;
  };
  std::vector<Entry> entries_;
};

/// First oracle with an answer wins.
class CompositeOracle final : public BettiOracle {
 public:
  void add(std::shared_ptr<const BettiOracle> o) { parts_.push_back(std::move(o)); }
  std::optional<StratumBetti> lookup(const Partition& stratum, const ManifoldClass& mc) const override;
  std::string name() const override;

 private:
  std::vector<std::shared_ptr<const BettiOracle>> parts_;
};

struct E1Component {
  Partition stratum;
  std::size_t dim = 0;
  Provenance provenance = Provenance::unknown;
};

struct E1Cell {
  std::size_t dim = 0;
  std::vector<E1Component> components;
};

/// E^1_{p,q} = sum over lambda' in col_p(lambda) of b_c^{p+q}(S_lambda').
struct E1Table {
  Partition lambda;
  ManifoldClass mc;
  std::vector<FiltrationLayer> layers;
  std::map<std::pair<int, int>, E1Cell> cells;  // nonzero cells only
  std::map<int, std::vector<Partition>> unknown;  // column -> strata the oracle lacked
  bool twisted = false;

  bool complete() const { return unknown.empty(); }
  std::size_t dim(int p, int q) const;
  /// Alternating sum over all cells; nullopt when incomplete.
  std::optional<long> euler_c() const;
  /// dim H_c^n(W) <= sum_{p+q=n} E^1_{p,q}; index n. nullopt when incomplete.
  std::optional<std::vector<std::size_t>> hc_upper_bound() const;
  /// Cells outside 0 <= p <= weight-1, 0 <= p+q <= d (weight - p).
  std::vector<std::string> support_violations() const;
  /// Header p,q,dim,components; unknown strata as p,,unknown,stratum rows.
  std::string csv() const;
  nlohmann::json to_json() const;
};

/// Lookups for distinct strata run concurrently.
E1Table assemble_e1(const Partition& lambda, const ManifoldClass& mc, const BettiOracle& oracle);

struct DualDegree {
  int degree = 0;
  bool twisted = false;
};

/// Homological degree dimension - i dual to compactly supported degree i.
/// Requires an orientable even-dimensional class unless twisted is set
/// (std::invalid_argument); i outside [0, dimension] throws std::out_of_range.
DualDegree duality_degree(const StratumDescriptor& sd, int i, bool twisted = false);

struct CertificateCell {
  int p = 0, q = 0;
  int h = 0;            // dual homological degree d(j+k+1-p) - (p+q)
  Rational bound;       // right-hand side of the stratum range inequality
  bool strict = false;  // h < bound rather than h <= bound
  bool vacuous = false; // h < 0: the group vanishes
  bool ok = true;
};

struct RangeCertificate {
  int d = 0, k = 0, j = 0;
  RangeCase range_case = RangeCase::dim_gt_2;
  int a = 0;
  Rational f;           // f_{M,k}(j) for this case
  Rational threshold;   // d(j+k+1) - f
  int window_start = 0; // smallest p+q scanned
  int weakened = 0;
  std::vector<CertificateCell> cells;
  std::optional<CertificateCell> counterexample;  // first failing cell

  bool passed() const { return !counterexample.has_value(); }
  nlohmann::json to_json() const;
};

/// Scans every integer cell 0 <= p <= k+j, q >= 0, p+q >= ceil(threshold) - weaken,
/// p+q <= d(j+k+1). Throws std::invalid_argument when the case does not apply to d
/// (dim_gt_2 needs d > 2, the dim2 cases d = 2, star_a needs 1 <= a < d-1).
RangeCertificate range_certificate(int d, int k, int j, RangeCase c, int a = 0, int weaken = 0);

/// Every case applicable in dimension d: the dim case(s) plus star_a for each a.
std::vector<std::pair<RangeCase, int>> applicable_cases(int d);

struct EulerReport {
  bool conclusive = false;
  bool consistent = false;
  std::vector<std::pair<Partition, long>> per_stratum;
  std::optional<long> strata_sum;
  std::optional<long> e1_sum;
  std::optional<long> reference;
  std::string note;
};

/// Compares sum of chi_c over strata, the E1 alternating sum and, when given,
/// chi_c of the reference Betti data for W_lambda(M).
EulerReport euler_consistency(const Partition& lambda, const ManifoldClass& mc,
                              const BettiOracle& oracle,
                              const std::optional<std::vector<std::size_t>>& reference_betti_c);

/// Known identifications of W_lambda(M): empty for 1^k, and C_{j+2}(M) = S_{1^{j+2}}
/// for lambda = 1^j 2. Betti data comes from the oracle; nullopt otherwise.
std::optional<std::vector<std::size_t>> known_reference(const Partition& lambda, const ManifoldClass& mc,
                                                        const BettiOracle& oracle);

}  // namespace symstab
