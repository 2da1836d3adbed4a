#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "symstab/exactlin/rational.hpp"

namespace symstab {

struct InvalidManifoldClass : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Abstract descriptor of a manifold M. connectivity is the declared a with
/// vanishing reduced rational homology through degree a; it is never computed.
struct ManifoldClass {
  int dim = 2;
  bool orientable = true;
  bool open_interior = true;
  int connectivity = 0;
  int punctures = 0;

  /// dim >= 2, 0 <= connectivity < dim - 1, punctures >= 0.
  void validate() const;
  /// Whether the (*)_a case of the range formula applies (a >= 1 and orientable).
  bool star_case() const { return connectivity >= 1 && orientable; }

  static ManifoldClass plane() { return {2, true, true, 0, 0}; }

  friend bool operator==(const ManifoldClass&, const ManifoldClass&) = default;
};

nlohmann::json to_json(const ManifoldClass& mc);
ManifoldClass manifold_class_from_json(const nlohmann::json& j);

enum class RangeCase { dim_gt_2, dim2_orientable, dim2_nonorientable, star_a };
std::string to_string(RangeCase c);

struct RangeReport {
  Rational value;
  std::vector<std::pair<RangeCase, Rational>> candidates;  // every applicable case
  RangeCase chosen = RangeCase::dim_gt_2;
  bool stabilization_defined = true;  // false for closed manifolds
};

RangeReport stability_range_report(const ManifoldClass& mc, int k, int j);

/// f_{M,k}(j): maximum over the applicable cases.
Rational stability_range(const ManifoldClass& mc, int k, int j);

/// The value a single case gives (used by the range certificate).
Rational case_range(RangeCase c, int dim, int a, int k, int j);

/// j + k - 1.
int theorem_range(int k, int j);

/// (j + k) / 2.
Rational integral_surface_range(int k, int j);

/// Removes r >= 1 points: same dim, orientability and connectivity; open.
ManifoldClass puncture(const ManifoldClass& mc, int r);

}  // namespace symstab
