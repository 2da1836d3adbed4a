#include <doctest.h>

#include <random>

#include "symstab/exactlin/linalg.hpp"
#include "symstab/io/json_io.hpp"
#include "symstab/partitions/partition.hpp"
#include "symstab/transfer/transfer.hpp"

using namespace symstab;

namespace {

long fact(long n) { return n <= 1 ? 1 : n * fact(n - 1); }

// Random alternative transversal: left-multiply each representative by an element of H.
std::vector<Permutation> reshuffle(const std::vector<Permutation>& reps, std::size_t small, std::mt19937& rng) {
  std::vector<Permutation> out;
  for (const auto& g : reps) {
    auto h = Permutation::identity(g.size());
    std::shuffle(h.img.begin(), h.img.begin() + static_cast<std::ptrdiff_t>(small), rng);
    out.push_back(compose(h, g));
  }
  return out;
}

// Degree-0 complex with S_n acting on Q[S_n] by left multiplication.
std::pair<ChainComplex, GroupAction> regular_rep(std::size_t n) {
  const auto elems = all_permutations(n);
  std::map<Permutation, std::size_t> pos;
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  GroupAction g;
  g.letters = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto s = Permutation::identity(n);
    std::swap(s.img[i], s.img[i + 1]);
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < elems.size(); ++c) t.push_back({pos.at(compose(s, elems[c])), c, Rational(1)});
    g.generators.push_back(s);
    g.matrices.push_back({QMatrix::from_triplets(elems.size(), elems.size(), t)});
  }
  return {ChainComplex(Direction::chain, 0, {elems.size()}), g};
}

QMatrix scalar(std::size_t n, const Rational& s) { return QMatrix::identity(n) * s; }

}  // namespace

TEST_CASE("coset representatives") {
  CHECK(coset_representatives(2, 3).size() == 3);
  CHECK(coset_representatives(1, 3).size() == 6);
  const auto id = coset_representatives(4, 4);
  REQUIRE(id.size() == 1);
  CHECK(id[0].is_identity());
  for (std::size_t big = 0; big <= 6; ++big)
    for (std::size_t small = 0; small <= big; ++small) {
      const auto reps = coset_representatives(small, big);
      CHECK(static_cast<long>(reps.size()) == fact(static_cast<long>(big)) / fact(static_cast<long>(small)));
      CHECK(is_right_transversal(reps, small, big));
    }
  // Two representatives of the same coset are rejected.
  auto reps = coset_representatives(1, 3);
  reps[1] = compose(Permutation::identity(3), reps[0]);
  CHECK_FALSE(is_right_transversal(reps, 1, 3));
  CHECK_THROWS_AS(coset_representatives(2, 9), ResourceLimit);
  CHECK_THROWS_AS(coset_representatives(3, 2), std::invalid_argument);
}

TEST_CASE("iota: trivial, regular and sign representations") {
  // Trivial action on Q^2: coinvariants are Q^2 on both sides, iota = big!/small!.
  {
    ChainComplex c(Direction::chain, 0, {2});
    GroupAction g;
    g.letters = 3;
    for (std::size_t i = 0; i < 2; ++i) {
      auto s = Permutation::identity(3);
      std::swap(s.img[i], s.img[i + 1]);
      g.generators.push_back(s);
      g.matrices.push_back({QMatrix::identity(2)});
    }
    const auto io = iota(c, g, 1, 3);
    CHECK(io.map[0] == scalar(2, 6));
  }
  // Q[S_3] with small = 2: coinvariants Q -> Q[S_2 \ S_3] = Q^3, image the sum of all cosets.
  {
    const auto [c, g] = regular_rep(3);
    const auto io = iota(c, g, 2, 3);
    REQUIRE(io.map[0].rows() == 3);
    REQUIRE(io.map[0].cols() == 1);
    CHECK(rank(io.map[0]) == 1);
    // Direct computation: the class of sum_R g e_id, with e_h in coset H h.
    const auto reps = coset_representatives(2, 3);
    std::vector<Rational> direct(6);
    const auto elems = all_permutations(3);
    for (const auto& r : reps)
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == r) direct[i] += 1;
    const auto projected = io.target.projection[0].apply(direct);
    std::vector<Rational> e_id(6);
    e_id[0] = 1;
    const auto src = io.source.projection[0].apply(e_id);
    CHECK(io.map[0].apply(src) == projected);
    for (const auto& v : projected) CHECK(v == projected[0]);
  }
  // Sign representation of S_2: the source coinvariants vanish.
  {
    ChainComplex c(Direction::chain, 0, {1});
    GroupAction g;
    g.letters = 2;
    g.generators = {Permutation::from_one_based({2, 1})};
    g.matrices = {{scalar(1, -1)}};
    const auto io = iota(c, g, 1, 2);
    CHECK(io.source.complex.dims()[0] == 0);
    CHECK(io.map[0].cols() == 0);
    CHECK(io.map[0].is_zero());
  }
}

TEST_CASE("iota: independent of the representative choice") {
  std::mt19937 rng(11);
  const auto [c, g] = regular_rep(4);
  for (std::size_t small = 0; small <= 4; ++small) {
    const auto base = iota(c, g, small, 4);
    for (int trial = 0; trial < 3; ++trial) {
      const auto alt = reshuffle(coset_representatives(small, 4), small, rng);
      REQUIRE(is_right_transversal(alt, small, 4));
      CHECK(iota(c, g, small, 4, &alt).map[0] == base.map[0]);
    }
  }
}

TEST_CASE("configuration model: deletion and equivariance") {
  ConfigurationModel m{4, true, 0};
  for (std::size_t j = 0; j <= 4; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const QMatrix del = m.deletion(j, i);
      for (std::size_t mid = i; mid <= j; ++mid) CHECK(del == m.deletion(mid, i) * m.deletion(j, mid));
      // Equivariance for S_i acting on the first i particles.
      for (std::size_t s = 0; s + 1 < i; ++s) {
        auto g = Permutation::identity(j);
        std::swap(g.img[s], g.img[s + 1]);
        auto h = Permutation::identity(i);
        std::swap(h.img[s], h.img[s + 1]);
        const auto& ts = m.tuples(j);
        for (const auto& t : ts) {
          auto lhs = relabel(g, t);
          lhs.resize(i);
          auto rhs = t;
          rhs.resize(i);
          CHECK(lhs == relabel(h, rhs));
        }
      }
    }
}

TEST_CASE("transfer: pair to points and the collar") {
  ConfigurationModel m{4, false, 0};
  const QMatrix t = transfer_map(m, 1, 2);
  const auto src = m.coinvariants(2);
  const auto tgt = m.coinvariants(1);
  // {a,b} -> {a} + {b}
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::vector<Rational> e(m.tuples(2).size());
      e[m.index({a, b})] = 1;
      const auto img = t.apply(src.projection[0].apply(e));
      std::vector<Rational> expect(m.tuples(1).size());
      expect[m.index({a})] += 1;
      expect[m.index({b})] += 1;
      CHECK(img == tgt.projection[0].apply(expect));
    }

  // Collar only: one class per count, tau = coset count.
  ConfigurationModel c{0, true, 0};
  for (int p = 0; p <= 5; ++p)
    for (int q = 0; q <= p; ++q) CHECK(transfer_map(c, q, p) == scalar(1, fact(p) / fact(q)));
}

TEST_CASE("transfer: factorial composition, iota route and representative independence") {
  std::mt19937 rng(5);
  for (const auto& m : {ConfigurationModel{3, false, 0}, ConfigurationModel{2, true, 0},
                        ConfigurationModel{3, true, 1}}) {
    const int top = m.collar ? 4 - m.k : 3;
    for (int p = 0; p <= top; ++p)
      for (int q = 0; q <= p; ++q) {
        const QMatrix tau = transfer_map(m, q, p);
        CHECK(tau == transfer_map_via_iota(m, q, p));
        const auto alt = reshuffle(coset_representatives(static_cast<std::size_t>(q + m.k),
                                                         static_cast<std::size_t>(p + m.k)),
                                   static_cast<std::size_t>(q + m.k), rng);
        CHECK(transfer_map(m, q, p, &alt) == tau);
        // Unit steps compose to tau; normalized by (p-q)! they give (p-q)! theta.
        QMatrix chain = QMatrix::identity(tau.cols());
        for (int s = p; s > q; --s) chain = transfer_map(m, s - 1, s) * chain;
        CHECK(chain == tau);
        const QMatrix theta = tau * Rational(Integer(1), Integer(fact(p - q)));
        CHECK(chain == theta * Rational(fact(p - q)));
      }
  }
}

TEST_CASE("transfer: commutes with site inclusions") {
  for (bool collar : {false, true}) {
    ConfigurationModel small{2, collar, 0}, big{4, collar, 0};
    const int top = collar ? 4 : 2;
    for (int p = 0; p <= top; ++p)
      for (int q = 0; q <= p; ++q)
        CHECK(transfer_map(big, q, p) * site_inclusion(small, big, static_cast<std::size_t>(p)) ==
              site_inclusion(small, big, static_cast<std::size_t>(q)) * transfer_map(small, q, p));
  }
}

TEST_CASE("Dold systems: binomial") {
  for (int top = 0; top <= 10; ++top) {
    const auto sys = binomial_system(top);
    const auto r = dold_verify(sys);
    CHECK_MESSAGE(r.passed(), (r.failures.empty() ? "" : r.failures.front()));
    const auto c = dold_conclusions(sys, r);
    CHECK(c.all());
    for (int p = 1; p <= top; ++p) CHECK(c.theta_iso_where_sigma_iso[p] == std::optional<bool>(true));
  }
}

TEST_CASE("Dold systems: collar configuration models") {
  for (const auto& m : {ConfigurationModel{2, true, 0}, ConfigurationModel{3, true, 0},
                        ConfigurationModel{1, true, 2}}) {
    const int top = 5;
    const auto sys = model_system(m, top);
    const auto r = dold_verify(sys);
    CHECK_MESSAGE(r.passed(), (r.failures.empty() ? "" : r.failures.front()));
    const auto c = dold_conclusions(sys, r);
    CHECK(c.all());
    // sigma_p is an isomorphism once every site can be filled.
    for (int p = 1; p <= top; ++p) {
      const bool iso = sys.dims[p] == sys.dims[p - 1];
      CHECK(iso == (p > static_cast<int>(m.sites)));
      CHECK(c.theta_iso_where_sigma_iso[p].has_value() == iso);
    }
    const auto back = dold_from_json(dold_to_json(sys));
    CHECK(back.dims == sys.dims);
    CHECK(dold_verify(back).passed());
  }
}

TEST_CASE("Dold systems: violations are itemized") {
  auto sys = binomial_system(6);
  sys.theta.at({2, 5}).set(0, 0, 11);
  const auto r = dold_verify(sys);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(dold_conclusions(sys, r), std::logic_error);

  auto broken = binomial_system(5);
  broken.sigma[3] = QMatrix(1, 1);
  CHECK_FALSE(dold_verify(broken).passed());

  auto shape = binomial_system(3);
  shape.sigma[2] = QMatrix(2, 1);
  CHECK_THROWS_AS(dold_verify(shape), std::invalid_argument);

  auto js = dold_to_json(binomial_system(2));
  js["matrices"].erase("theta_0_2");
  CHECK_THROWS_AS(dold_from_json(js), io::MalformedInput);
}
