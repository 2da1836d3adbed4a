#include <doctest.h>

#include <set>

#include "symstab/exactlin/linalg.hpp"
#include "symstab/exactlin/simplicial.hpp"
#include "symstab/io/json_io.hpp"
#include "symstab/strata/salvetti.hpp"
#include "symstab/strata/strata.hpp"

using namespace symstab;

namespace {

Partition P(const char* s) { return Partition::parse(s); }

std::vector<Partition> parts_of(std::initializer_list<const char*> xs) {
  std::vector<Partition> out;
  for (auto x : xs) out.push_back(P(x));
  return out;
}

// Coefficients of prod_{i<n} (1 + i t).
std::vector<std::size_t> stirling_row(std::size_t n) {
  std::vector<std::size_t> c{1};
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> next(c.size() + 1, 0);
    for (std::size_t e = 0; e < c.size(); ++e) {
      next[e] += c[e];
      next[e + 1] += i * c[e];
    }
    c = next;
  }
  return c;
}

}  // namespace

TEST_CASE("cell model: ordered configuration spaces of the plane") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto& cx = salvetti_complex(n);
    std::size_t total = 0;
    for (const auto& d : cx.cells) total += d.size();
    std::size_t fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    CHECK(total == fact * (std::size_t{1} << (n - 1)));
    const auto b = homology(cx.chains);
    CHECK(b.betti == stirling_row(n));
  }
}

TEST_CASE("cell model: permutation action is a signed chain action") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto& cx = salvetti_complex(n);
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto p = Permutation::identity(n);
      std::swap(p.img[i], p.img[i + 1]);
      gens.push_back(p);
    }
    CHECK_NOTHROW(validate_action(cx.chains, cx.action(gens)));
  }
}

TEST_CASE("colored configuration homology: coinvariants first agrees with homology first") {
  for (const auto* s : {"1+1", "1+1+1", "1+1+2", "1+1+1+1", "1+1+2+2", "1+1+1+2", "1+2+2"}) {
    const Partition colors = P(s);
    const auto& cx = salvetti_complex(colors.cardinality());
    const auto gens = young_generators(colors);
    const auto act = homology_action(cx.chains, cx.action(gens));
    const auto full = homology(cx.chains);
    const auto quotient = colored_configuration_homology(colors);
    for (std::size_t i = 0; i < full.betti.size(); ++i) {
      std::vector<DenseMatrix> mats;
      for (const auto& per : act) mats.push_back(per[i]);
      CHECK_MESSAGE(quotient.at(static_cast<int>(i)) == coinvariant_dim(full.betti[i], mats), s);
    }
  }
}

TEST_CASE("colored configuration homology: unordered spaces have b0 = b1 = 1") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto b = colored_configuration_homology(Partition::ones(n));
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 1);
    for (int i = 2; i < static_cast<int>(n); ++i) CHECK(b.at(i) == 0);
  }
}

TEST_CASE("plane oracle: 1+1 against an independent quotient model") {
  // S^1 as a hexagon with the antipodal free action; the quotient is a triangle.
  std::vector<Simplex> hex;
  for (int i = 0; i < 6; ++i) hex.push_back({i, (i + 1) % 6});
  const auto hex_cells = close_under_faces(hex);
  const ChainComplex c = simplicial_chains(hex_cells);
  auto index_of = [&](std::size_t dim, Simplex s) {
    std::sort(s.begin(), s.end());
    const auto& v = hex_cells[dim];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  GroupAction g;
  g.letters = 2;
  g.generators = {Permutation::from_one_based({2, 1})};
  std::vector<QMatrix> per;
  for (std::size_t dim = 0; dim < 2; ++dim) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < hex_cells[dim].size(); ++i) {
      Simplex img;
      for (int v : hex_cells[dim][i]) img.push_back((v + 3) % 6);
      // Edges are oriented by vertex order; the image of [a,b] is [g a, g b].
      const int sign = (dim == 1 && img[0] > img[1]) ? -1 : 1;
      t.push_back({index_of(dim, img), i, Rational(sign)});
    }
    per.push_back(QMatrix::from_triplets(hex_cells[dim].size(), hex_cells[dim].size(), t));
  }
  g.matrices = {per};
  const auto hex_quot = homology(coinvariants(c, g).complex);
  const auto triangle = homology(simplicial_chains(close_under_faces({{0, 1}, {1, 2}, {0, 2}})));
  CHECK(hex_quot.betti == triangle.betti);

  const auto b = plane_oracle(P("1+1"));
  REQUIRE(b.betti_c.size() == 5);
  CHECK(b.at(4) == triangle.at(0));
  CHECK(b.at(3) == triangle.at(1));
  CHECK(b.at(2) == 0);
}

TEST_CASE("plane oracle: examples and duality sanity") {
  CHECK(plane_oracle(P("1")).betti_c == std::vector<std::size_t>{0, 0, 1});
  const auto b12 = plane_oracle(P("1+2"));
  CHECK(b12.betti_c == std::vector<std::size_t>{0, 0, 0, 1, 1});
  CHECK(b12.provenance == Provenance::builtin);
  CHECK(plane_oracle(Partition()).betti_c == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(plane_oracle(P("1+1+1+1+2")), ResourceLimit);
  CHECK_NOTHROW(plane_oracle(P("1+1+1+1+2"), 6));

  for (int k = 1; k <= 5; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const auto b = plane_oracle(l);
      const int n = static_cast<int>(l.cardinality());
      const int top = 2 * n;
      CHECK(b.at(top) == 1);
      for (int i = 0; i < top - (n - 1); ++i) CHECK(b.at(i) == 0);
    }
}

TEST_CASE("oracles: plane restriction, table JSON and composition") {
  PlaneOracle plane;
  CHECK(plane.lookup(P("1+1"), ManifoldClass::plane()).has_value());
  CHECK_FALSE(plane.lookup(P("1+1"), ManifoldClass{3, true, true, 0, 0}).has_value());
  CHECK_FALSE(plane.lookup(P("1+1"), puncture(ManifoldClass::plane(), 1)).has_value());
  CHECK_FALSE(plane.lookup(P("1+1+1+1+1+1"), ManifoldClass::plane()).has_value());

  const ManifoldClass m3{3, true, true, 0, 0};
  TableOracle t;
  t.insert(P("1+1"), m3, {{0, 0, 0, 1, 0, 0, 1}, Provenance::user, false});
  const auto back = TableOracle::from_json(t.to_json());
  REQUIRE(back.size() == 1);
  CHECK(back.lookup(P("1+1"), m3)->betti_c == std::vector<std::size_t>{0, 0, 0, 1, 0, 0, 1});
  CHECK_FALSE(back.lookup(P("1+1"), ManifoldClass::plane()).has_value());

  CHECK_THROWS_AS(t.insert(P("1"), m3, {{0, 0, 0, 1, 1}, Provenance::user, false}), std::invalid_argument);
  nlohmann::json bad = t.to_json();
  bad["entries"][0]["betti_c"] = {1, 1, 1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(TableOracle::from_json(bad), io::MalformedInput);
  CHECK_THROWS_AS(TableOracle::from_json(nlohmann::json{{"entries", {{{"partition", "1"}}}}}),
                  io::MalformedInput);

  CompositeOracle both;
  both.add(std::make_shared<TableOracle>(t));
  both.add(std::make_shared<PlaneOracle>());
  CHECK(both.lookup(P("1+1"), m3)->provenance == Provenance::user);
  CHECK(both.lookup(P("1+1"), ManifoldClass::plane())->provenance == Provenance::builtin);
}

TEST_CASE("filtration report") {
  const auto r = filtration_report(P("1+3"));
  REQUIRE(r.layers.size() == 3);
  CHECK(r.layers[0].members == parts_of({"1+1+1+1"}));
  CHECK(r.layers[1].members == parts_of({"1+1+2"}));
  CHECK(r.layers[2].members == parts_of({"2+2"}));
  CHECK(r.u0_finest);
  CHECK(r.within_bound);

  for (std::size_t k = 1; k <= 6; ++k) {
    // Every partition of k is a collapse of 1^k, so W_{1^k} has no strata.
    const auto ones = filtration_report(Partition::ones(k));
    CHECK(ones.layers.empty());

    const Partition single = P(std::to_string(k).c_str());
    const auto s = filtration_report(single);
    std::set<Partition> listed;
    for (const auto& l : s.layers) {
      for (const auto& x : l.members) {
        CHECK(static_cast<int>(x.cardinality()) == static_cast<int>(k) - l.p);
        listed.insert(x);
      }
    }
    std::set<Partition> expected;
    for (const auto& x : enumerate_partitions(static_cast<int>(k)))
      if (x != single) expected.insert(x);
    CHECK(listed == expected);
    if (k > 1) {
      CHECK(s.u0_finest);
      CHECK(s.within_bound);
    }
  }

  for (int k = 1; k <= 8; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const auto rep = filtration_report(l);
      CHECK(rep.u0_finest);
      CHECK(rep.within_bound);
      if (!rep.layers.empty()) CHECK(!rep.layers.back().members.empty());
    }
}

TEST_CASE("assemble_e1 on the plane") {
  PlaneOracle o;
  const auto t2 = assemble_e1(P("2"), ManifoldClass::plane(), o);
  REQUIRE(t2.layers.size() == 1);
  CHECK(t2.layers[0].members == parts_of({"1+1"}));
  CHECK(t2.dim(0, 4) == 1);
  CHECK(t2.dim(0, 3) == 1);
  CHECK(t2.cells.size() == 2);

  const auto t = assemble_e1(P("1+3"), ManifoldClass::plane(), o);
  CHECK(t.complete());
  std::set<int> cols;
  for (const auto& [pq, c] : t.cells) cols.insert(pq.first);
  CHECK(cols == std::set<int>{0, 1, 2});
  const std::vector<std::pair<int, Partition>> col_members{
      {0, P("1+1+1+1")}, {1, P("1+1+2")}, {2, P("2+2")}};
  for (const auto& [p, s] : col_members) {
    const auto b = plane_oracle(s);
    for (int i = 0; i < static_cast<int>(b.betti_c.size()); ++i) CHECK(t.dim(p, i - p) == b.at(i));
  }
  CHECK(t.support_violations().empty());
  CHECK(t.csv().rfind("p,q,dim,components\n", 0) == 0);
  CHECK(t.euler_c() == 0);

  // Every partition of weight <= 5 respects the support bounds.
  for (int k = 1; k <= 5; ++k)
    for (const auto& l : enumerate_partitions(k)) CHECK(assemble_e1(l, ManifoldClass::plane(), o).support_violations().empty());
}

TEST_CASE("assemble_e1: one-layer lambda and missing data") {
  const ManifoldClass m3{3, true, true, 0, 0};
  TableOracle t;
  t.insert(P("1+1"), m3, {{0, 0, 0, 1, 0, 0, 1}, Provenance::user, false});
  const auto e = assemble_e1(P("2"), m3, t);
  CHECK(e.complete());
  CHECK(e.dim(0, 6) == 1);
  CHECK(e.dim(0, 3) == 1);
  for (const auto& [pq, c] : e.cells) CHECK(pq.first == 0);

  const auto missing = assemble_e1(P("1+3"), m3, t);
  CHECK_FALSE(missing.complete());
  CHECK_FALSE(missing.euler_c().has_value());
  CHECK_FALSE(missing.hc_upper_bound().has_value());
  CHECK(missing.csv().find("unknown") != std::string::npos);
  const auto rep = euler_consistency(P("1+3"), m3, t, std::nullopt);
  CHECK_FALSE(rep.conclusive);
}

TEST_CASE("E1 stabilization correspondence") {
  PlaneOracle o;
  for (const auto* s : {"2", "3", "1+2", "2+2"}) {
    const Partition lambda = P(s);
    const int k = lambda.weight();
    for (int j = 0; j + k + 1 <= 5; ++j) {
      const auto a = assemble_e1(add_ones(lambda, static_cast<std::size_t>(j)), ManifoldClass::plane(), o);
      const auto b = assemble_e1(add_ones(lambda, static_cast<std::size_t>(j + 1)), ManifoldClass::plane(), o);
      for (int p = 0; 2 * p <= j + k; ++p) {
        std::set<Partition> src, tgt;
        for (const auto& l : a.layers)
          if (l.p == p)
            for (const auto& x : l.members) src.insert(add_ones(x, 1));
        for (const auto& l : b.layers)
          if (l.p == p) tgt.insert(l.members.begin(), l.members.end());
        CHECK_MESSAGE(src == tgt, s << " j=" << j << " p=" << p);
      }
    }
  }
}

TEST_CASE("duality degree") {
  CHECK(duality_degree({Partition::ones(3), ManifoldClass::plane()}, 6).degree == 0);
  CHECK(duality_degree({P("1+2"), ManifoldClass::plane()}, 3).degree == 1);
  const StratumDescriptor sd{P("1+1+2"), ManifoldClass::plane()};
  for (int i = 0; i <= sd.dimension(); ++i)
    CHECK(duality_degree(sd, duality_degree(sd, i).degree).degree == i);
  CHECK_THROWS_AS(duality_degree(sd, -1), std::out_of_range);
  CHECK_THROWS_AS(duality_degree(sd, 7), std::out_of_range);
  const StratumDescriptor odd{P("1+1"), ManifoldClass{3, true, true, 0, 0}};
  CHECK_THROWS_AS(duality_degree(odd, 2), std::invalid_argument);
  const auto tw = duality_degree(odd, 2, true);
  CHECK(tw.twisted);
  CHECK(tw.degree == 4);
  CHECK_THROWS_AS(duality_degree({P("1"), ManifoldClass{2, false, true, 0, 0}}, 0), std::invalid_argument);
}

TEST_CASE("range certificate") {
  const auto c = range_certificate(4, 2, 3, RangeCase::dim_gt_2);
  CHECK(c.passed());
  CHECK(c.threshold == 19);
  CHECK_FALSE(c.cells.empty());

  const auto o = range_certificate(2, 2, 3, RangeCase::dim2_orientable);
  CHECK(o.passed());
  CHECK(o.f == 4);
  for (const auto& cell : o.cells) CHECK(cell.strict);

  const auto w = range_certificate(4, 2, 3, RangeCase::dim_gt_2, 0, 1);
  REQUIRE_FALSE(w.passed());
  CHECK(w.counterexample->p == 0);
  CHECK(w.counterexample->q == 18);
  CHECK(w.counterexample->h == 6);

  for (int d : {2, 3, 4, 6})
    for (int k = 1; k <= 4; ++k)
      for (int j = 0; j <= 6; ++j)
        for (const auto& [rc, a] : applicable_cases(d)) {
          CHECK(range_certificate(d, k, j, rc, a).passed());
          // The weakened window must fail whenever the case's range is sharp.
          const bool factor_capped = rc == RangeCase::star_a && 2 * (a + 1) > d;
          if (!factor_capped) CHECK_FALSE(range_certificate(d, k, j, rc, a, 1).passed());
        }

  CHECK_THROWS_AS(range_certificate(1, 1, 0, RangeCase::dim_gt_2), std::invalid_argument);
  CHECK_THROWS_AS(range_certificate(2, 1, 0, RangeCase::dim_gt_2), std::invalid_argument);
  CHECK_THROWS_AS(range_certificate(3, 1, 0, RangeCase::dim2_orientable), std::invalid_argument);
  CHECK_THROWS_AS(range_certificate(3, 1, 0, RangeCase::star_a, 2), std::invalid_argument);
  const auto js = c.to_json();
  CHECK(js.at("passed").get<bool>());
  CHECK(js.at("cells").size() == c.cells.size());
}

TEST_CASE("euler consistency on the plane") {
  PlaneOracle o;
  for (int k = 1; k <= 4; ++k)
    for (const auto& l : enumerate_partitions(k)) {
      const auto ref = known_reference(l, ManifoldClass::plane(), o);
      const auto r = euler_consistency(l, ManifoldClass::plane(), o, ref);
      CHECK(r.conclusive);
      CHECK_MESSAGE(r.consistent, l.str());
    }
  // W_{1^j 2} is the unordered configuration space of j+2 points.
  for (std::size_t j = 0; j + 2 <= 4; ++j) {
    const Partition l = add_ones(P("2"), j);
    const auto t = assemble_e1(l, ManifoldClass::plane(), o);
    REQUIRE(t.layers.size() == 1);
    CHECK(t.layers[0].members == std::vector<Partition>{Partition::ones(j + 2)});
    const auto ref = known_reference(l, ManifoldClass::plane(), o);
    REQUIRE(ref.has_value());
    CHECK(*ref == plane_oracle(Partition::ones(j + 2)).betti_c);
  }
  const auto bad = euler_consistency(P("1+2"), ManifoldClass::plane(), o, std::vector<std::size_t>{1});
  CHECK(bad.conclusive);
  CHECK_FALSE(bad.consistent);
}
