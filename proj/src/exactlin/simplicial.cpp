#include "symstab/exactlin/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace symstab {

std::vector<std::vector<Simplex>> close_under_faces(const std::vector<Simplex>& simplices) {
  std::set<Simplex> all;
  std::vector<Simplex> stack;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty()) stack.push_back(std::move(s));
  }
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    if (!all.insert(s).second) continue;
    if (s.size() == 1) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      stack.push_back(std::move(f));
    }
  }
  std::vector<std::vector<Simplex>> by_dim;
  for (const auto& s : all) {
    if (by_dim.size() < s.size()) by_dim.resize(s.size());
    by_dim[s.size() - 1].push_back(s);
  }
  return by_dim;
}

ChainComplex simplicial_chains(const std::vector<std::vector<Simplex>>& by_dim, bool augmented) {
  std::vector<std::size_t> dims;
  if (augmented) dims.push_back(1);
  for (const auto& level : by_dim) dims.push_back(level.size());
  const int lo = augmented ? -1 : 0;
  ChainComplex c(Direction::chain, lo, dims);
  if (augmented && !by_dim.empty()) {
    QMatrix eps(1, by_dim[0].size());
    for (std::size_t v = 0; v < by_dim[0].size(); ++v) eps.set(0, v, 1);
    c.set_differential(0, std::move(eps));
  }
  for (std::size_t d = 1; d < by_dim.size(); ++d) {
    std::map<Simplex, std::size_t> idx;
    for (std::size_t i = 0; i < by_dim[d - 1].size(); ++i) idx[by_dim[d - 1][i]] = i;
    QMatrix m(by_dim[d - 1].size(), by_dim[d].size());
    for (std::size_t j = 0; j < by_dim[d].size(); ++j) {
      const Simplex& s = by_dim[d][j];
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        m.set(idx.at(f), j, Rational(i % 2 == 0 ? 1 : -1));
      }
    }
    c.set_differential(static_cast<int>(d), std::move(m));
  }
  return c;
}

std::vector<Simplex> cone_simplices(const std::vector<Simplex>& simplices, int apex) {
  std::vector<Simplex> out;
  for (const auto& s : simplices) {
    if (std::find(s.begin(), s.end(), apex) != s.end())
      throw std::invalid_argument("cone apex already a vertex");
    Simplex t = s;
    t.push_back(apex);
    out.push_back(std::move(t));
  }
  out.push_back({apex});
  return out;
}

}  // namespace symstab
