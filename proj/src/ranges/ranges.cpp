#include "symstab/ranges/ranges.hpp"

#include <algorithm>

namespace symstab {

void ManifoldClass::validate() const {
  if (dim < 2) throw InvalidManifoldClass("dimension must be >= 2");
  if (connectivity < 0) throw InvalidManifoldClass("connectivity must be >= 0");
  if (connectivity >= dim - 1)
    throw InvalidManifoldClass("connectivity a must satisfy a < dim - 1");
  if (punctures < 0) throw InvalidManifoldClass("punctures must be >= 0");
  if (connectivity >= 1 && !orientable)
    throw InvalidManifoldClass("connectivity a >= 1 is only meaningful for orientable classes");
}

nlohmann::json to_json(const ManifoldClass& mc) {
  return {{"dim", mc.dim},
          {"orientable", mc.orientable},
          {"open_interior", mc.open_interior},
          {"connectivity", mc.connectivity},
          {"punctures", mc.punctures}};
}

ManifoldClass manifold_class_from_json(const nlohmann::json& j) {
  ManifoldClass mc;
  try {
    mc.dim = j.at("dim").get<int>();
    mc.orientable = j.value("orientable", true);
    mc.open_interior = j.value("open_interior", true);
    mc.connectivity = j.value("connectivity", 0);
    mc.punctures = j.value("punctures", 0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidManifoldClass(std::string("manifold class: ") + e.what());
  }
  mc.validate();
  return mc;
}

std::string to_string(RangeCase c) {
  switch (c) {
    case RangeCase::dim_gt_2: return "dim>2";
    case RangeCase::dim2_orientable: return "dim=2 orientable";
    case RangeCase::dim2_nonorientable: return "dim=2 non-orientable";
    case RangeCase::star_a: return "(*)_a";
  }
  return "?";
}

Rational case_range(RangeCase c, int dim, int a, int k, int j) {
  const Rational n(j + k);
  switch (c) {
    case RangeCase::dim_gt_2: return n;
    case RangeCase::dim2_orientable: return n - 1;
    case RangeCase::dim2_nonorientable: return n;
    case RangeCase::star_a: {
      const Rational factor = std::min(Rational(a + 1), make_rational(dim, 2));
      return factor * n - 1;
    }
  }
  return 0;
}

RangeReport stability_range_report(const ManifoldClass& mc, int k, int j) {
  mc.validate();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (j < 0) throw std::invalid_argument("j must be >= 0");
  RangeReport r;
  auto add = [&](RangeCase c) {
    r.candidates.emplace_back(c, case_range(c, mc.dim, mc.connectivity, k, j));
  };
  if (mc.dim > 2) add(RangeCase::dim_gt_2);
  if (mc.dim == 2) add(mc.orientable ? RangeCase::dim2_orientable : RangeCase::dim2_nonorientable);
  if (mc.star_case()) add(RangeCase::star_a);
  r.value = r.candidates.front().second;
  r.chosen = r.candidates.front().first;
  for (const auto& [c, v] : r.candidates)
    if (v > r.value) {
      r.value = v;
      r.chosen = c;
    }
  r.stabilization_defined = mc.open_interior;
  return r;
}

Rational stability_range(const ManifoldClass& mc, int k, int j) {
  return stability_range_report(mc, k, j).value;
}

int theorem_range(int k, int j) { return j + k - 1; }

Rational integral_surface_range(int k, int j) { return make_rational(j + k, 2); }

ManifoldClass puncture(const ManifoldClass& mc, int r) {
  if (r < 1) throw std::invalid_argument("puncture count must be >= 1");
  ManifoldClass out = mc;
  out.open_interior = true;
  out.punctures += r;
  return out;
}

}  // namespace symstab
