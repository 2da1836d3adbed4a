#include "symstab/exactlin/random_equivariant.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "symstab/exactlin/linalg.hpp"

namespace symstab {

namespace {

int sort_sign(std::vector<int>& v) {
  int inv = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inv;
  std::sort(v.begin(), v.end());
  return inv % 2 ? -1 : 1;
}

Simplex act(const Permutation& g, const Simplex& s, std::size_t n, int& sign) {
  Simplex out;
  out.reserve(s.size());
  for (int v : s) {
    const auto letter = static_cast<std::size_t>(v) % n;
    const auto color = static_cast<std::size_t>(v) / n;
    out.push_back(static_cast<int>(g(letter) + n * color));
  }
  sign = sort_sign(out);
  return out;
}

// Action matrices must stay in {0, +1, -1}, so the basis change is a signed
// permutation: a random relabelling of cells with random orientations.
DenseMatrix random_signed_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  std::shuffle(rows.begin(), rows.end(), rng);
  DenseMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i) t(rows[i], i) = Rational(rng() % 2 ? -1 : 1);
  return t;
}

}  // namespace

std::string EquivariantInstance::describe() const {
  std::ostringstream os;
  os << "letters=" << letters << " colors=" << colors << " blocks=";
  for (std::size_t i = 0; i < blocks.size(); ++i) os << (i ? "+" : "") << blocks[i];
  os << " twisted=" << twisted << " conjugated=" << conjugated << " seeds=";
  for (const auto& s : seeds) {
    os << "[";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "]";
  }
  return os.str();
}

EquivariantInstance random_equivariant_instance(std::mt19937_64& rng, const RandomEquivariantOptions& opt) {
  EquivariantInstance inst;
  const std::size_t max_letters = std::max<std::size_t>(opt.max_letters, 1);
  inst.letters = 1 + rng() % max_letters;
  const std::size_t n = inst.letters;
  inst.colors = 1 + rng() % (n <= 3 ? 3 : 2);
  const std::size_t verts = n * inst.colors;
  const auto group = all_permutations(n);

  std::set<Simplex> top;
  const std::size_t seeds = 1 + rng() % 3;
  for (std::size_t s = 0; s < seeds; ++s) {
    const std::size_t size = 1 + rng() % std::min<std::size_t>(verts, 4);
    std::vector<int> all(verts);
    for (std::size_t v = 0; v < verts; ++v) all[v] = static_cast<int>(v);
    std::shuffle(all.begin(), all.end(), rng);
    Simplex seed(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(seed.begin(), seed.end());
    std::set<Simplex> orbit;
    for (const auto& g : group) {
      int sign = 1;
      orbit.insert(act(g, seed, n, sign));
    }
    std::set<Simplex> trial = top;
    trial.insert(orbit.begin(), orbit.end());
    std::size_t cells = 0;
    for (const auto& d : close_under_faces({trial.begin(), trial.end()})) cells += d.size();
    if (cells > opt.max_cells && !top.empty()) continue;
    inst.seeds.push_back(seed);
    top = std::move(trial);
  }
  const auto by_dim = close_under_faces({top.begin(), top.end()});
  inst.complex = simplicial_chains(by_dim);

  // Young subgroup S_{b1} x S_{b2} x ... on consecutive letters.
  if (rng() % 2 == 0) {
    inst.blocks = {n};
  } else {
    std::size_t left = n;
    while (left > 0) {
      const std::size_t b = 1 + rng() % left;
      inst.blocks.push_back(b);
      left -= b;
    }
  }
  inst.twisted = rng() % 3 == 0;

  std::vector<std::map<Simplex, std::size_t>> pos(by_dim.size());
  for (std::size_t d = 0; d < by_dim.size(); ++d)
    for (std::size_t i = 0; i < by_dim[d].size(); ++i) pos[d][by_dim[d][i]] = i;

  inst.action.letters = n;
  std::size_t start = 0;
  for (std::size_t b : inst.blocks) {
    for (std::size_t i = start; i + 1 < start + b; ++i) {
      auto g = Permutation::identity(n);
      std::swap(g.img[i], g.img[i + 1]);
      std::vector<QMatrix> mats;
      for (std::size_t d = 0; d < by_dim.size(); ++d) {
        std::vector<Triplet> t;
        for (std::size_t c = 0; c < by_dim[d].size(); ++c) {
          int sign = 1;
          const auto img = act(g, by_dim[d][c], n, sign);
          if (inst.twisted) sign = -sign;
          t.push_back({pos[d].at(img), c, Rational(sign)});
        }
        mats.push_back(QMatrix::from_triplets(by_dim[d].size(), by_dim[d].size(), t));
      }
      inst.action.generators.push_back(g);
      inst.action.matrices.push_back(std::move(mats));
    }
    start += b;
  }

  inst.conjugated = rng() % 2 == 0;
  if (inst.conjugated) {
    std::vector<DenseMatrix> t, tinv;
    for (std::size_t d : inst.complex.dims()) {
      t.push_back(random_signed_permutation(rng, d));
      tinv.push_back(inverse(t.back()));
    }
    inst.complex = change_basis(inst.complex, t);
    for (auto& mats : inst.action.matrices)
      for (std::size_t d = 0; d < mats.size(); ++d)
        mats[d] = QMatrix::from_dense(t[d] * (mats[d] * tinv[d]));
  }
  return inst;
}

bool ExactnessReport::agree() const {
  const int lo = std::min(homology_then_coinvariants.lo, coinvariants_then_homology.lo);
  const int hi = lo + static_cast<int>(std::max(homology_then_coinvariants.betti.size(),
                                                coinvariants_then_homology.betti.size()));
  for (int n = lo; n <= hi; ++n)
    if (homology_then_coinvariants.at(n) != coinvariants_then_homology.at(n)) return false;
  return true;
}

ExactnessReport coinvariant_exactness(const ChainComplex& c, const GroupAction& g, CoinvariantMethod method) {
  ExactnessReport r;
  const BettiTable h = homology(c);
  r.homology_then_coinvariants.lo = c.lo();
  if (g.generators.empty()) {
    r.homology_then_coinvariants = h;
  } else {
    const auto act = homology_action(c, g);
    for (std::size_t i = 0; i < c.length(); ++i) {
      std::vector<DenseMatrix> gens;
      for (const auto& per_gen : act) gens.push_back(per_gen[i]);
      r.homology_then_coinvariants.betti.push_back(coinvariant_dim(h.at(c.lo() + static_cast<int>(i)), gens));
    }
  }
  r.coinvariants_then_homology = homology(coinvariants(c, g, method).complex);
  return r;
}

}  // namespace symstab
