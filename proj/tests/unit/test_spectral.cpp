#include <random>

#include "doctest.h"
#include "symstab/spectral/pages.hpp"
#include "symstab/spectral/random.hpp"
#include "symstab/spectral/semisimplicial.hpp"

using namespace symstab;

namespace {

ChainComplex cochain(int lo, std::vector<std::size_t> dims,
                     std::vector<std::pair<int, std::vector<Triplet>>> diffs) {
  ChainComplex c(Direction::cochain, lo, std::move(dims));
  for (auto& [n, t] : diffs) c.set_differential(n, QMatrix::from_triplets(c.dim(n + 1), c.dim(n), t));
  return c;
}

std::vector<std::size_t> dims_of(const ChainComplex& c) { return c.dims(); }

}  // namespace

TEST_CASE("one-stage filtration: E^1 is the ambient homology") {
  // Cochains of a triangle: H^0 = H^1 = Q.
  auto c = cochain(0, {3, 3}, {{0, {{0, 0, -1}, {0, 1, 1}, {1, 1, -1}, {1, 2, 1}, {2, 0, 1}, {2, 2, -1}}}});
  FilteredComplex fc{c, 0, {{0, 1, 2, 3, 4, 5}}};
  auto ss = compute_pages(fc);
  CHECK(ss.dim(1, 0, 0) == 1);
  CHECK(ss.dim(1, 0, 1) == 1);
  CHECK(ss.infinity_dim(0, 0) == 1);
  CHECK(ss.infinity_dim(0, 1) == 1);
  CHECK(check_pages(ss).empty());
}

TEST_CASE("two-stage cone: d_1 is an isomorphism and E^2 is the homology") {
  // a in degree 0 at level 1, b in degree 1 at level 0, d a = b.
  auto c = cochain(0, {1, 1}, {{0, {{0, 0, 1}}}});
  FilteredComplex fc{c, 0, {{1}, {0, 1}}};
  auto ss = compute_pages(fc);
  CHECK(ss.dim(1, 1, -1) == 1);
  CHECK(ss.dim(1, 0, 1) == 1);
  CHECK(rank(ss.pages[0].differentials.at({1, -1})) == 1);
  CHECK(ss.dim(2, 1, -1) == 0);
  CHECK(ss.dim(2, 0, 1) == 0);
  CHECK(homology(c).at(0) == 0);
  CHECK(check_pages(ss).empty());
}

TEST_CASE("a genuine d_2") {
  auto c = cochain(0, {1, 1}, {{0, {{0, 0, 3}}}});
  FilteredComplex fc{c, 0, {{1}, {1}, {0, 1}}};
  auto ss = compute_pages(fc);
  CHECK(ss.pages.size() == 4);
  CHECK(ss.dim(1, 2, -2) == 1);
  CHECK(ss.pages[0].differentials.at({2, -2}).rows() == 0);  // E^1_{1,0} = 0
  CHECK(ss.dim(2, 2, -2) == 1);
  CHECK(differential_bidegree(Direction::cochain, 2) == PQ{-2, 3});
  CHECK(rank(ss.pages[1].differentials.at({2, -2})) == 1);
  CHECK(ss.dim(3, 2, -2) == 0);
  CHECK(check_pages(ss).empty());
  auto dc = derived_couple_dims(fc, 3);
  for (int r = 1; r <= 3; ++r) CHECK(dc[static_cast<std::size_t>(r - 1)] == ss.pages[static_cast<std::size_t>(r - 1)].dims);
}

TEST_CASE("filtration validation and normalization") {
  auto c = cochain(0, {1, 1}, {{0, {{0, 0, 1}}}});
  CHECK_THROWS_AS(validate(FilteredComplex{c, 0, {{0}, {0, 1}}}), InvalidFiltration);  // d a leaves stage 0
  CHECK_THROWS_AS(validate(FilteredComplex{c, 0, {{1}, {0}}}), InvalidFiltration);     // not nested
  CHECK_THROWS_AS(validate(FilteredComplex{c, 0, {{1}}}), InvalidFiltration);          // not exhaustive
  CHECK_THROWS_AS(validate(FilteredComplex{c, 0, {{5}, {0, 1}}}), InvalidFiltration);  // index out of range
  FilteredComplex deg{c, 0, {{}, {}, {1}, {1}, {0, 1}, {0, 1}, {0, 1}}};
  auto n = normalize(deg);
  CHECK(n.p0 == 2);
  CHECK(n.steps.size() == 3);
  auto ss = compute_pages(deg);
  CHECK(ss.p_lo == 2);
  CHECK(ss.dim(1, 3, -3) == 0);  // interior repeat is a zero column
  CHECK(check_pages(ss).empty());
}

TEST_CASE("random filtered complexes: abutment, page invariants, derived couples") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fc = random_filtered_complex(rng);
    REQUIRE_NOTHROW(validate(fc));
    CHECK(fc.ambient.total_dim() <= 40);
    CHECK(fc.steps.size() <= 5);
    const auto ss = compute_pages(fc);
    const auto direct = homology(fc.ambient);
    for (int n = fc.ambient.lo(); n <= fc.ambient.hi(); ++n) CHECK(ss.abutment(n) == direct.at(n));
    const auto problems = check_pages(ss);
    CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
    const auto dc = derived_couple_dims(fc, static_cast<int>(ss.pages.size()));
    for (std::size_t r = 0; r < ss.pages.size(); ++r) CHECK(dc[r] == ss.pages[r].dims);
  }
}

TEST_CASE("two-step long exact sequence") {
  SUBCASE("open interval inside the closed interval") {
    // Cochains of [v0, v1]: basis v0*, v1* in degree 0, e* in degree 1.
    auto c = cochain(0, {2, 1}, {{0, {{0, 0, -1}, {0, 1, 1}}}});
    FilteredComplex fc{c, 0, {{2}, {0, 1, 2}}};
    auto les = two_step_les(fc);
    CHECK(les.exact());
    CHECK(les.degrees[0].h_total == 1);
    CHECK(les.degrees[0].h_quot == 2);
    CHECK(les.degrees[1].h_sub == 1);
    CHECK(les.degrees[0].rank_j == 1);
    CHECK(les.degrees[0].rank_k == 1);
  }
  SUBCASE("U = X and U empty") {
    auto c = cochain(0, {3, 3}, {{0, {{0, 0, -1}, {0, 1, 1}, {1, 1, -1}, {1, 2, 1}, {2, 0, 1}, {2, 2, -1}}}});
    FilteredComplex same{c, 0, {{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}}};
    auto a = two_step_les(same);
    CHECK(a.exact());
    for (const auto& d : a.degrees) {
      CHECK(d.h_quot == 0);
      CHECK(d.rank_i == d.h_total);
    }
    FilteredComplex none{c, 0, {{}, {0, 1, 2, 3, 4, 5}}};
    auto b = two_step_les(none);
    CHECK(b.exact());
    for (const auto& d : b.degrees) {
      CHECK(d.h_sub == 0);
      CHECK(d.rank_j == d.h_total);
    }
  }
  SUBCASE("random two-stage complexes") {
    std::mt19937_64 rng(5);
    RandomFilteredOptions opt;
    opt.max_stages = 2;
    int proper = 0;
    for (int t = 0; t < 40; ++t) {
      auto fc = random_filtered_complex(rng, opt);
      if (fc.steps.size() != 2) continue;
      ++proper;
      auto les = two_step_les(fc);
      CHECK_MESSAGE(les.exact(), (les.exact() ? "" : les.failures.front()));
    }
    CHECK(proper > 10);
  }
  auto c = cochain(0, {1, 1}, {{0, {{0, 0, 1}}}});
  CHECK_THROWS_AS(two_step_les(FilteredComplex{c, 0, {{1}, {1}, {0, 1}}}), InvalidFiltration);
}

TEST_CASE("compare_pages") {
  std::mt19937_64 rng(99);
  SUBCASE("identity is an isomorphism on every page") {
    auto fc = random_filtered_complex(rng);
    std::vector<QMatrix> id;
    for (auto d : dims_of(fc.ambient)) id.push_back(QMatrix::identity(d));
    for (int s = -2; s <= 6; ++s) {
      auto rep = compare_pages(fc, fc, id, s);
      CHECK(rep.hypothesis);
      CHECK(rep.conclusion);
      for (const auto& pg : rep.pages)
        for (const auto& m : pg) CHECK((m.injective() && m.surjective()));
    }
  }
  SUBCASE("random instances never contradict the comparison verdict") {
    int engineered = 0, low_violation = 0;
    for (std::size_t i = 0; i < 80; ++i) {
      auto inst = random_compare_instance(rng, i);
      auto rep = compare_pages(inst.src, inst.tgt, inst.map, inst.threshold);
      CHECK(rep.consistent());
      if (inst.engineered) {
        ++engineered;
        CHECK(rep.hypothesis);
        CHECK(rep.conclusion);
        // Failure two below the threshold does not matter.
        if (!comparison_condition(rep.pages.front(), rep.direction, inst.threshold - 2)) ++low_violation;
      }
    }
    CHECK(engineered >= 50);
    CHECK(low_violation > 0);
  }
  SUBCASE("bad maps are rejected") {
    auto c = cochain(0, {1, 1}, {{0, {{0, 0, 1}}}});
    FilteredComplex a{c, 0, {{1}, {0, 1}}};
    FilteredComplex b{c, 0, {{0, 1}, {0, 1}}};
    std::vector<QMatrix> id{QMatrix::identity(1), QMatrix::identity(1)};
    CHECK_NOTHROW(compare_pages(a, b, id, 0));
    CHECK_THROWS_AS(compare_pages(b, a, id, 0), std::invalid_argument);  // lowers the filtration
    std::vector<QMatrix> broken{QMatrix::identity(1), QMatrix(1, 1)};
    CHECK_THROWS_AS(compare_pages(a, a, broken, 0), std::invalid_argument);
  }
}

namespace {

// A_p = C^{S^{p+1}} for a finite set S, faces delete a tuple entry, augmented to C.
SemisimplicialComplex tuples_over(const ChainComplex& c, std::size_t s, int top) {
  SemisimplicialComplex ss;
  std::vector<std::size_t> count{s};
  for (int p = 1; p <= top; ++p) count.push_back(count.back() * s);
  auto level = [&](std::size_t copies) {
    std::vector<std::size_t> d;
    for (auto x : c.dims()) d.push_back(x * copies);
    ChainComplex l(Direction::chain, c.lo(), d);
    for (int n = c.lo() + 1; n <= c.hi(); ++n) {
      std::vector<Triplet> t;
      for (std::size_t k = 0; k < copies; ++k)
        for (const auto& e : c.differential(n).triplets())
          t.push_back({k * c.dim(n - 1) + e.row, k * c.dim(n) + e.col, e.value});
      l.set_differential(n, QMatrix::from_triplets(l.dim(n - 1), l.dim(n), t));
    }
    return l;
  };
  for (int p = 0; p <= top; ++p) ss.levels.push_back(level(count[static_cast<std::size_t>(p)]));
  ss.faces.resize(ss.levels.size());
  auto digits = [&](std::size_t code, int len) {
    std::vector<std::size_t> v(static_cast<std::size_t>(len));
    for (int i = len - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = code % s;
      code /= s;
    }
    return v;
  };
  auto encode = [&](const std::vector<std::size_t>& v) {
    std::size_t code = 0;
    for (auto x : v) code = code * s + x;
    return code;
  };
  for (int p = 1; p <= top; ++p)
    for (int i = 0; i <= p; ++i) {
      std::vector<QMatrix> per;
      for (int n = c.lo(); n <= c.hi(); ++n) {
        std::vector<Triplet> t;
        const std::size_t dn = c.dim(n);
        for (std::size_t code = 0; code < count[static_cast<std::size_t>(p)]; ++code) {
          auto v = digits(code, p + 1);
          v.erase(v.begin() + i);
          const std::size_t tgt = encode(v);
          for (std::size_t k = 0; k < dn; ++k) t.push_back({tgt * dn + k, code * dn + k, Rational(1)});
        }
        per.push_back(QMatrix::from_triplets(ss.levels[static_cast<std::size_t>(p - 1)].dim(n),
                                             ss.levels[static_cast<std::size_t>(p)].dim(n), t));
      }
      ss.faces[static_cast<std::size_t>(p)].push_back(std::move(per));
    }
  ss.augmented_to = c;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    std::vector<Triplet> t;
    for (std::size_t code = 0; code < s; ++code)
      for (std::size_t k = 0; k < c.dim(n); ++k) t.push_back({k, code * c.dim(n) + k, Rational(1)});
    ss.augmentation.push_back(QMatrix::from_triplets(c.dim(n), s * c.dim(n), t));
  }
  return ss;
}

ChainComplex small_chain(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 3), coef(-2, 2);
  ChainComplex c(Direction::chain, 0, {static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng))});
  QMatrix d(c.dim(0), c.dim(1));
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t k = 0; k < d.cols(); ++k) d.set(r, k, coef(rng));
  c.set_differential(1, d);
  return c;
}

}  // namespace

TEST_CASE("totalization") {
  SUBCASE("constant object on a point") {
    ChainComplex pt(Direction::chain, 0, {1});
    SemisimplicialComplex ss;
    for (int p = 0; p <= 2; ++p) ss.levels.push_back(pt);
    ss.faces.resize(3);
    for (int p = 1; p <= 2; ++p)
      for (int i = 0; i <= p; ++i) ss.faces[static_cast<std::size_t>(p)].push_back({QMatrix::identity(1)});
    const auto tot = totalize(ss);
    const auto b = homology(tot.filtered.ambient);
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 0);
    CHECK(b.at(2) == 0);
  }
  SUBCASE("face identities are enforced") {
    ChainComplex pt(Direction::chain, 0, {2});
    SemisimplicialComplex ss;
    for (int p = 0; p <= 2; ++p) ss.levels.push_back(pt);
    ss.faces.resize(3);
    QMatrix swap = QMatrix::from_triplets(2, 2, std::vector<Triplet>{{0, 1, 1}, {1, 0, 1}});
    ss.faces[1] = {{QMatrix::identity(2)}, {QMatrix::identity(2)}};
    ss.faces[2] = {{swap}, {QMatrix::identity(2)}, {QMatrix::identity(2)}};
    CHECK_THROWS_AS(validate(ss), InvalidComplex);
  }
  SUBCASE("levelwise-acyclic augmented object") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
      const ChainComplex c = small_chain(rng);
      const int top = 3;
      const auto ss = tuples_over(c, 2, top);
      const auto aug = homology(totalize(ss, true).filtered.ambient);
      for (int n = -1; n < top; ++n) CHECK(aug.at(n) == 0);
      const auto rep = augmentation_report(ss);
      CHECK(rep.iso_through >= top - 1);
    }
  }
  SUBCASE("realization E^1 is levelwise homology and d_1 the alternating face sum") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 6; ++t) {
      const ChainComplex c = small_chain(rng);
      auto ss = tuples_over(c, 2, 2);
      ss.augmented_to.reset();
      ss.augmentation.clear();
      const auto pages = realization_ss(ss);
      const auto lw = levelwise_e1(ss);
      CHECK(differential_bidegree(pages.direction, 1) == PQ{-1, 0});
      for (const auto& [pq, d] : lw.dims) CHECK(pages.dim(1, pq.first, pq.second) == d);
      for (const auto& [pq, d] : lw.dims) {
        const auto [p, q] = pq;
        const std::size_t in = lw.d1_rank.count({p + 1, q}) ? lw.d1_rank.at({p + 1, q}) : 0;
        CHECK(pages.dim(2, p, q) == d - lw.d1_rank.at(pq) - in);
      }
      CHECK(check_pages(pages).empty());
    }
  }
  SUBCASE("one-level augmented object is the mapping cone") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 6; ++t) {
      const ChainComplex c = small_chain(rng);
      auto ss = tuples_over(c, 3, 0);  // A_0 = C^3, augmentation sums the copies
      const auto tot = totalize(ss, true);
      const auto les = two_step_les(tot.filtered);
      CHECK(les.exact());
      const auto rep = augmentation_report(ss);
      for (const auto& d : les.degrees) {
        // k out of total degree n is the augmentation on H_n(A_0).
        const int n = d.n;
        const std::size_t idx = static_cast<std::size_t>(n - rep.lo);
        if (idx < rep.rank.size()) CHECK(d.rank_k == rep.rank[idx]);
      }
    }
  }
}

TEST_CASE("flag sets") {
  SUBCASE("complete relation on four vertices") {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        if (a != b) e.push_back({a, b});
    auto rep = flag_set_check(4, e, 3);
    CHECK(rep.has_hub);
    CHECK(rep.simplices == std::vector<std::size_t>{4, 12, 24, 24});
    CHECK(rep.reduced_betti == std::vector<std::size_t>{0, 0, 0});
    CHECK(rep.ordered_vanishes());
    CHECK(rep.dominated_up_to == 3);
  }
  SUBCASE("two vertices, no edge") {
    auto rep = flag_set_check(2, {}, 1);
    CHECK(rep.reduced_betti == std::vector<std::size_t>{1});  // b_0 = 2
    CHECK_FALSE(rep.has_hub);
    CHECK(rep.dominated_up_to == 0);
  }
  SUBCASE("star: the clique complex is a cone, the ordered flag set is not") {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t leaf = 1; leaf <= 3; ++leaf) {
      e.push_back({0, leaf});
      e.push_back({leaf, 0});
    }
    auto rep = flag_set_check(4, e, 2);
    CHECK(rep.has_hub);
    CHECK(rep.clique_vanishes());
    // Each leaf contributes the loop (0, leaf) + (leaf, 0).
    CHECK(rep.reduced_betti == std::vector<std::size_t>{0, 3});
    CHECK(rep.dominated_up_to == 1);
  }
  CHECK_THROWS_AS(flag_set_check(2, {{0, 1}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(flag_set_check(2, {{0, 0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(flag_set_check(2, {{0, 2}, {2, 0}}, 1), std::invalid_argument);
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(1);
  auto fc = random_filtered_complex(rng);
  auto back = io::filtered_from_json(io::filtered_to_json(fc));
  CHECK(back.steps == fc.steps);
  CHECK(back.p0 == fc.p0);
  CHECK(compute_pages(back).csv() == compute_pages(fc).csv());
  auto ss = flag_semisimplicial(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}, 2);
  auto ss2 = io::semisimplicial_from_json(io::semisimplicial_to_json(ss));
  CHECK(homology(totalize(ss2, true).filtered.ambient).betti == homology(totalize(ss, true).filtered.ambient).betti);
  CHECK_THROWS_AS(io::filtered_from_json(io::Json::parse(R"({"direction":"cochain","lo":0,"dims":[1]})")),
                  io::MalformedInput);
}
