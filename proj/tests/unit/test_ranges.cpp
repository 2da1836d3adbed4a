#include "doctest.h"
#include "symstab/ranges/ranges.hpp"

using namespace symstab;

TEST_CASE("stability range examples") {
  CHECK(stability_range({3, true, true, 0, 0}, 2, 5) == 7);
  CHECK(stability_range({2, true, true, 0, 0}, 2, 5) == 6);
  CHECK(stability_range({6, true, true, 2, 0}, 2, 3) == 14);
  CHECK(stability_range({2, false, true, 0, 0}, 2, 5) == 7);
  // odd dimension: min(a+1, d/2) = 5/2
  CHECK(stability_range({5, true, true, 3, 0}, 1, 1) == make_rational(4, 1));
  CHECK(stability_range({5, true, true, 3, 0}, 1, 0) == make_rational(3, 2));
}

TEST_CASE("theorem and surface ranges") {
  CHECK(theorem_range(2, 0) == 1);
  CHECK(theorem_range(1, 0) == 0);
  CHECK(theorem_range(4, 3) == 6);
  CHECK(integral_surface_range(2, 4) == 3);
  CHECK(integral_surface_range(1, 0) == make_rational(1, 2));
  CHECK(integral_surface_range(3, 3) == 3);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(ManifoldClass({1, true, true, 0, 0}).validate(), InvalidManifoldClass);
  CHECK_THROWS_AS(ManifoldClass({3, true, true, 2, 0}).validate(), InvalidManifoldClass);
  CHECK_THROWS_AS(ManifoldClass({4, false, true, 1, 0}).validate(), InvalidManifoldClass);
  CHECK_NOTHROW(ManifoldClass({4, true, false, 2, 0}).validate());
}

TEST_CASE("puncture") {
  ManifoldClass closed{4, true, false, 2, 0};
  auto p = puncture(closed, 1);
  CHECK(p.open_interior);
  CHECK(p.dim == 4);
  CHECK(p.connectivity == 2);
  CHECK(puncture(puncture(closed, 1), 1) == puncture(closed, 2));
  CHECK_FALSE(stability_range_report(closed, 2, 2).stabilization_defined);
  CHECK(stability_range_report(p, 2, 2).stabilization_defined);
}

TEST_CASE("range properties over classes") {
  std::vector<ManifoldClass> classes;
  for (int d = 2; d <= 7; ++d)
    for (bool o : {true, false})
      for (int a = 0; a < d - 1; ++a)
        for (bool open : {true, false}) {
          ManifoldClass mc{d, o, open, a, 0};
          if (a >= 1 && !o) continue;
          classes.push_back(mc);
        }
  for (const auto& mc : classes)
    for (int k = 1; k <= 8; ++k)
      for (int j = 0; j <= 12; ++j) {
        const Rational f = stability_range(mc, k, j);
        CHECK(f >= theorem_range(k, j));
        CHECK(f == stability_range(puncture(mc, 1 + j % 3), k, j));
        if (j > 0) CHECK(f >= stability_range(mc, k, j - 1));
        if (k > 1) CHECK(f >= stability_range(mc, k - 1, j));
        if (mc.dim == 2) CHECK(f == (mc.orientable ? j + k - 1 : j + k));
      }
}

TEST_CASE("json round trip") {
  ManifoldClass mc{4, true, true, 2, 1};
  CHECK(manifold_class_from_json(to_json(mc)) == mc);
  CHECK_THROWS_AS(manifold_class_from_json(nlohmann::json::parse(R"({"dim":1})")), InvalidManifoldClass);
}
