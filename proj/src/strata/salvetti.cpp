#include "symstab/strata/salvetti.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace symstab {

namespace {

std::size_t cell_dim(const SalvettiCell& c, std::size_t n) {
  return n - 1 - static_cast<std::size_t>(std::popcount(c.cuts));
}

// Faces one dimension down: split one block B of F into (S, B \ S), each part
// keeping the chamber order.
std::vector<SalvettiCell> facets(const SalvettiCell& c, std::size_t n) {
  std::vector<SalvettiCell> out;
  std::size_t s = 0;
  while (s < n) {
    std::size_t e = s;
    while (e + 1 < n && !((c.cuts >> e) & 1u)) ++e;
    const std::size_t m = e - s + 1;
    for (std::uint32_t sub = 1; sub + 1 < (1u << m); ++sub) {
      SalvettiCell f = c;
      std::size_t pos = s;
      for (std::size_t i = 0; i < m; ++i)
        if ((sub >> i) & 1u) f.order[pos++] = c.order[s + i];
      const std::size_t first = pos - s;
      for (std::size_t i = 0; i < m; ++i)
        if (!((sub >> i) & 1u)) f.order[pos++] = c.order[s + i];
      f.cuts |= 1u << (s + first - 1);
      out.push_back(std::move(f));
    }
    s = e + 1;
  }
  return out;
}

std::unique_ptr<SalvettiComplex> build(std::size_t n) {
  auto cx = std::make_unique<SalvettiComplex>();
  cx->points = n;
  cx->cells.resize(n);
  cx->positions.resize(n);
  cx->boundary.resize(n);

  std::vector<std::uint8_t> base(n);
  std::iota(base.begin(), base.end(), std::uint8_t{0});
  const std::uint32_t full = (n > 1) ? (1u << (n - 1)) : 1u;
  for (std::uint32_t cuts = 0; cuts < full; ++cuts) {
    auto order = base;
    do {
      SalvettiCell c{order, cuts};
      cx->cells[cell_dim(c, n)].push_back(std::move(c));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  for (std::size_t d = 0; d < n; ++d) {
    std::sort(cx->cells[d].begin(), cx->cells[d].end());
    for (std::size_t i = 0; i < cx->cells[d].size(); ++i) cx->positions[d].emplace(cx->cells[d][i], i);
  }

  std::vector<std::size_t> dims(n);
  for (std::size_t d = 0; d < n; ++d) dims[d] = cx->cells[d].size();
  cx->chains = ChainComplex(Direction::chain, 0, dims);

  cx->boundary[0].assign(dims[0], {});
  for (std::size_t d = 1; d < n; ++d) {
    auto& bd = cx->boundary[d];
    bd.resize(dims[d]);
    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < dims[d]; ++i) {
      std::vector<std::size_t> fac;
      for (const auto& f : facets(cx->cells[d][i], n)) fac.push_back(cx->positions[d - 1].at(f));
      std::vector<int> sign(fac.size(), 0);
      if (d == 1) {
        if (fac.size() != 2) throw std::logic_error("cell model: edge without two endpoints");
        sign = {1, -1};
      } else {
        // Each ridge lies in exactly two facets; their signed contributions cancel.
        std::map<std::size_t, std::vector<std::pair<std::size_t, int>>> ridges;
        for (std::size_t t = 0; t < fac.size(); ++t)
          for (const auto& [r, s] : cx->boundary[d - 1][fac[t]]) ridges[r].push_back({t, s});
        std::vector<std::vector<std::pair<std::size_t, int>>> adj(fac.size());
        for (const auto& [r, inc] : ridges) {
          if (inc.size() != 2) throw std::logic_error("cell model: ridge not in exactly two facets");
          const int factor = -inc[0].second * inc[1].second;
          adj[inc[0].first].push_back({inc[1].first, factor});
          adj[inc[1].first].push_back({inc[0].first, factor});
        }
        sign[0] = 1;
        std::queue<std::size_t> todo;
        todo.push(0);
        while (!todo.empty()) {
          const std::size_t t = todo.front();
          todo.pop();
          for (const auto& [u, factor] : adj[t]) {
            const int want = sign[t] * factor;
            if (sign[u] == 0) {
              sign[u] = want;
              todo.push(u);
            } else if (sign[u] != want) {
              throw std::logic_error("cell model: inconsistent incidence signs");
            }
          }
        }
        if (std::find(sign.begin(), sign.end(), 0) != sign.end())
          throw std::logic_error("cell model: disconnected facet graph");
      }
      for (std::size_t t = 0; t < fac.size(); ++t) {
        bd[i].push_back({fac[t], sign[t]});
        trip.push_back({fac[t], i, Rational(sign[t])});
      }
    }
    cx->chains.set_differential(static_cast<int>(d),
                                QMatrix::from_triplets(dims[d - 1], dims[d], trip));
  }
  cx->chains.validate();
  return cx;
}

}  // namespace

std::size_t SalvettiComplex::index(const SalvettiCell& c) const {
  return positions.at(cell_dim(c, points)).at(c);
}

GroupAction SalvettiComplex::action(const std::vector<Permutation>& generators) const {
  GroupAction g;
  g.letters = points;
  g.generators = generators;
  for (const auto& perm : generators) {
    if (perm.size() != points) throw std::invalid_argument("cell model action: wrong permutation size");
    std::vector<QMatrix> per;
    std::vector<int> prev_eps;
    for (std::size_t d = 0; d < points; ++d) {
      const auto& cs = cells[d];
      std::vector<int> eps(cs.size(), 1);
      std::vector<Triplet> trip;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        SalvettiCell img = cs[i];
        for (auto& x : img.order) x = static_cast<std::uint8_t>(perm(x));
        const std::size_t j = positions[d].at(img);
        if (d > 0) {
          // eps(g, s) [g s : g t] = [s : t] eps(g, t) for the first facet t.
          const auto [t, a] = boundary[d][i].front();
          SalvettiCell ft = cells[d - 1][t];
          for (auto& x : ft.order) x = static_cast<std::uint8_t>(perm(x));
          const std::size_t gt = positions[d - 1].at(ft);
          int b = 0;
          for (const auto& [f, s] : boundary[d][j])
            if (f == gt) b = s;
          if (b == 0) throw std::logic_error("cell model action: image facet missing");
          eps[i] = a * b * prev_eps[t];
        }
        trip.push_back({j, i, Rational(eps[i])});
      }
      per.push_back(QMatrix::from_triplets(cs.size(), cs.size(), trip));
      prev_eps = std::move(eps);
    }
    g.matrices.push_back(std::move(per));
  }
  return g;
}

const SalvettiComplex& salvetti_complex(std::size_t n) {
  if (n < 1 || n > kSalvettiMaxPoints)
    throw ResourceLimit("cell model supports 1.." + std::to_string(kSalvettiMaxPoints) + " points");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<SalvettiComplex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = build(n);
  return *slot;
}

std::vector<Permutation> young_generators(const Partition& colors) {
  const auto& parts = colors.parts();
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    if (parts[i] == parts[i + 1]) {
      auto p = Permutation::identity(parts.size());
      std::swap(p.img[i], p.img[i + 1]);
      gens.push_back(std::move(p));
    }
  return gens;
}

BettiTable colored_configuration_homology(const Partition& colors) {
  if (colors.empty()) return BettiTable{0, {1}};
  const auto& cx = salvetti_complex(colors.cardinality());
  const auto gens = young_generators(colors);
  if (gens.empty()) return homology(cx.chains);
  const auto co = coinvariants(cx.chains, cx.action(gens), CoinvariantMethod::signed_orbits);
  return homology(co.complex);
}

}  // namespace symstab
