#include <random>

#include "doctest.h"
#include "symstab/exactlin/group_action.hpp"
#include "symstab/exactlin/linalg.hpp"
#include "symstab/exactlin/rational.hpp"
#include "symstab/exactlin/simplicial.hpp"
#include "symstab/io/json_io.hpp"

using namespace symstab;

namespace {

QMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density_pct, long span) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 100) < density_pct)
        m.set(i, j, Rational(static_cast<long>(rng() % (2 * span + 1)) - span));
  return m;
}

// Gaussian elimination over doubles would be a weak oracle; use dense RREF.
std::size_t rref_rank(const QMatrix& m) {
  DenseMatrix d = m.to_dense();
  return d.rref().size();
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -4 ") == Rational(-4));
  CHECK(to_string(Rational(6, -4)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("rank and kernel: fixed examples") {
  CHECK(rank(QMatrix::identity(3)) == 3);
  const QMatrix z(2, 5);
  CHECK(rank(z) == 0);
  CHECK(kernel_basis(z).cols() == 5);
}

TEST_CASE("rank: random integer matrices agree with transpose and with RREF") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    QMatrix m = random_int_matrix(rng, 20, 20, 30, 3);
    // force rank deficiency sometimes by duplicating combinations of rows
    if (trial % 3 == 0) {
      for (std::size_t c = 0; c < 20; ++c) m.set(19, c, m.at(0, c) * 2 - m.at(1, c));
    }
    const std::size_t r = rank(m);
    CHECK(r == rank(m.transpose()));
    CHECK(r == rref_rank(m));
    CHECK(r == rank_exact(m));
    const QMatrix k = kernel_basis(m);
    CHECK(k.cols() == 20 - r);
    CHECK((m * k).is_zero());
  }
}

TEST_CASE("rank with rational entries and large values") {
  QMatrix m(2, 2);
  m.set(0, 0, Rational(1, 3));
  m.set(0, 1, Rational(1, 7));
  m.set(1, 0, Rational(7));
  m.set(1, 1, Rational(3));
  CHECK(rank(m) == 1);
  m.set(1, 1, Rational(Integer("123456789012345678901234567890")));
  CHECK(rank(m) == 2);
}

TEST_CASE("subquotient coordinates") {
  // N = span(e0, e1, e2), D = span(e0 + e1)
  DenseMatrix n = DenseMatrix::identity(3);
  DenseMatrix d(3, 1);
  d(0, 0) = 1;
  d(1, 0) = 1;
  Subquotient sq(n, d);
  CHECK(sq.dim() == 2);
  std::vector<Rational> v{Rational(1), Rational(1), Rational(0)};
  CHECK(sq.in_denominator(v));
  auto x = sq.coordinates(v);
  CHECK(sgn(x[0]) == 0);
  CHECK(sgn(x[1]) == 0);
  DenseMatrix small(3, 1);
  small(0, 0) = 1;
  Subquotient line(small, DenseMatrix(3, 0));
  CHECK_THROWS(line.coordinates(std::vector<Rational>{0, 1, 0}));
  CHECK_THROWS(Subquotient(small, d));
}

TEST_CASE("homology of standard complexes") {
  SUBCASE("circle") {
    auto c = simplicial_chains(close_under_faces({{0, 1}, {1, 2}, {0, 2}}));
    auto b = homology(c);
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 1);
  }
  SUBCASE("boundary of the 3-simplex") {
    auto c = simplicial_chains(close_under_faces({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
    auto b = homology(c);
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 0);
    CHECK(b.at(2) == 1);
    CHECK(euler_characteristic(c) == euler_characteristic(b));
  }
  SUBCASE("invalid complex is rejected") {
    ChainComplex c(Direction::chain, 0, {1, 1, 1});
    c.set_differential(1, QMatrix::identity(1));
    c.set_differential(2, QMatrix::identity(1));
    CHECK_THROWS_AS(homology(c), InvalidComplex);
  }
}

TEST_CASE("cones over random simplicial complexes are acyclic") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Simplex> s;
    const int nv = 3 + static_cast<int>(rng() % 5);
    for (int k = 0; k < 6; ++k) {
      Simplex t;
      for (int v = 0; v < nv; ++v)
        if (rng() % 2) t.push_back(v);
      if (t.size() > 3) t.resize(3);
      if (!t.empty()) s.push_back(t);
    }
    if (s.empty()) s.push_back({0});
    auto aug = simplicial_chains(close_under_faces(cone_simplices(s, 100)), true);
    auto b = homology(aug);
    for (std::size_t i = 0; i < b.betti.size(); ++i) CHECK(b.betti[i] == 0);
  }
}

TEST_CASE("euler characteristic and basis-change invariance on random complexes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Simplex> s;
    for (int k = 0; k < 8; ++k) {
      Simplex t;
      for (int v = 0; v < 6; ++v)
        if (rng() % 3 == 0) t.push_back(v);
      if (!t.empty()) s.push_back(t);
    }
    if (s.empty()) s.push_back({1, 2});
    auto c = simplicial_chains(close_under_faces(s));
    auto b = homology(c);
    CHECK(euler_characteristic(c) == euler_characteristic(b));
    std::vector<DenseMatrix> t;
    for (auto d : c.dims()) {
      DenseMatrix m = DenseMatrix::identity(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) m(i, j) = static_cast<long>(rng() % 5) - 2;
      t.push_back(m);
    }
    auto c2 = change_basis(c, t);
    auto b2 = homology(c2);
    CHECK(b.betti == b2.betti);
  }
}

TEST_CASE("chain map check") {
  auto c = simplicial_chains(close_under_faces({{0, 1}, {1, 2}, {0, 2}}));
  std::vector<QMatrix> id, zero;
  for (auto d : c.dims()) {
    id.push_back(QMatrix::identity(d));
    zero.push_back(QMatrix(d, d));
  }
  CHECK(is_chain_map(id, c, c));
  CHECK(is_chain_map(zero, c, c));
  auto bad = id;
  bad[0].set(0, 0, 2);  // scales one vertex only
  CHECK_FALSE(is_chain_map(bad, c, c));
}

TEST_CASE("coinvariants: sign and regular representations") {
  SUBCASE("sign representation of S_2") {
    ChainComplex c(Direction::chain, 0, {1});
    GroupAction g{2, {Permutation::from_one_based({2, 1})}, {{QMatrix::identity(1) * Rational(-1)}}};
    for (auto m : {CoinvariantMethod::averaging, CoinvariantMethod::generator_quotient,
                   CoinvariantMethod::signed_orbits})
      CHECK(coinvariants(c, g, m).complex.dim(0) == 0);
  }
  SUBCASE("regular representation of S_3") {
    auto elems = all_permutations(3);
    ChainComplex c(Direction::chain, 0, {elems.size()});
    GroupAction g;
    g.letters = 3;
    for (auto gen : {Permutation::from_one_based({2, 1, 3}), Permutation::from_one_based({2, 3, 1})}) {
      QMatrix m(6, 6);
      for (std::size_t j = 0; j < 6; ++j) {
        auto img = compose(gen, elems[j]);
        auto it = std::find(elems.begin(), elems.end(), img);
        m.set(static_cast<std::size_t>(it - elems.begin()), j, 1);
      }
      g.generators.push_back(gen);
      g.matrices.push_back({m});
    }
    for (auto m : {CoinvariantMethod::averaging, CoinvariantMethod::generator_quotient,
                   CoinvariantMethod::signed_orbits}) {
      auto co = coinvariants(c, g, m);
      CHECK(co.complex.dim(0) == 1);
      CHECK((co.projection[0] * co.section[0]) == QMatrix::identity(1));
    }
    CHECK(expand_group(c, g).size() == 6);
  }
  SUBCASE("action that breaks a relation") {
    ChainComplex c(Direction::chain, 0, {2});
    QMatrix swap(2, 2);
    swap.set(0, 1, 1);
    swap.set(1, 0, -1);  // order 4, but the permutation has order 2
    GroupAction g{2, {Permutation::from_one_based({2, 1})}, {{swap}}};
    CHECK_THROWS_AS(expand_group(c, g), InvalidComplex);
  }
  SUBCASE("non-equivariant action is rejected") {
    auto c = simplicial_chains(close_under_faces({{0, 1}}));
    QMatrix sw(2, 2);
    sw.set(0, 1, 1);
    sw.set(1, 0, 1);
    GroupAction g{2, {Permutation::from_one_based({2, 1})}, {{sw, QMatrix::identity(1)}}};
    CHECK_THROWS_AS(coinvariants(c, g), InvalidComplex);
  }
}

TEST_CASE("group cap falls back to the generator quotient") {
  ChainComplex c(Direction::chain, 0, {1});
  GroupAction g{4, {Permutation::from_one_based({2, 3, 4, 1}), Permutation::from_one_based({2, 1, 3, 4})},
                {{QMatrix::identity(1)}, {QMatrix::identity(1)}}};
  QMatrix half(1, 1);
  half.set(0, 0, Rational(1));
  auto co = coinvariants(c, g, CoinvariantMethod::averaging, 5);
  CHECK(co.method == CoinvariantMethod::generator_quotient);
  CHECK(co.complex.dim(0) == 1);
}

TEST_CASE("json round trip") {
  auto c = simplicial_chains(close_under_faces({{0, 1, 2}}));
  auto j = io::complex_to_json(c);
  auto c2 = io::complex_from_json(j);
  CHECK(c2.dims() == c.dims());
  for (int n = c.lo(); n <= c.hi(); ++n) CHECK(c2.differential(n) == c.differential(n));
  CHECK_THROWS_AS(io::complex_from_json(io::Json::parse(R"({"dims":[1,1],"differentials":[{"degree":1,"rows":1,"cols":1,"entries":[[0,0,"1/0"]]}]})")),
                  io::MalformedInput);
}
