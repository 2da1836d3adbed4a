#include "symstab/spectral/semisimplicial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "symstab/exactlin/simplicial.hpp"

namespace symstab {

namespace {

constexpr std::size_t kMaxFlagSimplices = 200000;

const ChainComplex& level_at(const SemisimplicialComplex& ss, int p) {
  return p < 0 ? *ss.augmented_to : ss.levels[static_cast<std::size_t>(p)];
}

// Face d_i out of level p in internal degree q (p = 0 means the augmentation).
QMatrix face(const SemisimplicialComplex& ss, int p, std::size_t i, int q) {
  const int lo = ss.levels.front().lo();
  const std::size_t k = static_cast<std::size_t>(q - lo);
  if (p == 0) return ss.augmentation[k];
  return ss.faces[static_cast<std::size_t>(p)][i][k];
}

Subquotient level_homology(const ChainComplex& c, int q) {
  const std::size_t dim = c.dim(q);
  DenseMatrix cyc = DenseMatrix::identity(dim);
  if (q - 1 >= c.lo()) cyc = kernel_basis(c.differential(q).to_dense());
  DenseMatrix bd(dim, 0);
  if (q + 1 <= c.hi()) bd = c.differential(q + 1).to_dense();
  return Subquotient(cyc, bd);
}

}  // namespace

void validate(const SemisimplicialComplex& ss) {
  if (ss.levels.empty()) throw InvalidComplex("semisimplicial complex has no levels");
  const ChainComplex& base = ss.levels.front();
  auto same_shape = [&](const ChainComplex& c, const std::string& what) {
    if (c.direction() != Direction::chain || c.lo() != base.lo() || c.length() != base.length())
      throw InvalidComplex(what + " must be a chain complex on the degree range of level 0");
    c.validate();
  };
  for (std::size_t p = 0; p < ss.levels.size(); ++p) same_shape(ss.levels[p], "level " + std::to_string(p));
  if (ss.faces.size() != ss.levels.size())
    throw InvalidComplex("need one list of face maps per level (empty for level 0)");
  for (int p = 1; p <= ss.top(); ++p) {
    const auto& fp = ss.faces[static_cast<std::size_t>(p)];
    if (fp.size() != static_cast<std::size_t>(p + 1))
      throw InvalidComplex("level " + std::to_string(p) + " needs " + std::to_string(p + 1) + " face maps");
    for (std::size_t i = 0; i < fp.size(); ++i)
      if (!is_chain_map(fp[i], ss.levels[static_cast<std::size_t>(p)], ss.levels[static_cast<std::size_t>(p - 1)]))
        throw InvalidComplex("face d_" + std::to_string(i) + " on level " + std::to_string(p) +
                             " is not a chain map");
  }
  for (int p = 2; p <= ss.top(); ++p)
    for (std::size_t j = 1; j <= static_cast<std::size_t>(p); ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (int q = base.lo(); q <= base.hi(); ++q)
          if (!(face(ss, p - 1, i, q) * face(ss, p, j, q) == face(ss, p - 1, j - 1, q) * face(ss, p, i, q)))
            throw InvalidComplex("face identity d_" + std::to_string(i) + " d_" + std::to_string(j) +
                                 " = d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                                 " fails on level " + std::to_string(p));
  if (ss.augmented_to) {
    same_shape(*ss.augmented_to, "augmentation target");
    if (!is_chain_map(ss.augmentation, ss.levels.front(), *ss.augmented_to))
      throw InvalidComplex("augmentation is not a chain map");
    if (ss.top() >= 1)
      for (int q = base.lo(); q <= base.hi(); ++q)
        if (!(face(ss, 0, 0, q) * face(ss, 1, 0, q) == face(ss, 0, 0, q) * face(ss, 1, 1, q)))
          throw InvalidComplex("augmentation does not coequalize d_0 and d_1");
  } else if (!ss.augmentation.empty()) {
    throw InvalidComplex("augmentation maps given without a target");
  }
}

Totalization totalize(const SemisimplicialComplex& ss, bool augment) {
  validate(ss);
  if (augment && !ss.augmented_to) throw InvalidComplex("no augmentation to totalize with");
  const int plo = augment ? -1 : 0, phi = ss.top();
  const int qlo = ss.levels.front().lo(), qhi = ss.levels.front().hi();
  const int nlo = qlo + plo, nhi = qhi + phi;

  Totalization tot;
  tot.level_lo = plo;
  std::vector<std::size_t> dims;
  for (int p = plo; p <= phi; ++p) tot.block_offset.emplace_back(static_cast<std::size_t>(nhi - nlo + 1), 0);
  for (int n = nlo; n <= nhi; ++n) {
    std::size_t off = 0;
    for (int p = plo; p <= phi; ++p) {
      tot.block_offset[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(n - nlo)] = off;
      off += level_at(ss, p).dim(n - p);
    }
    dims.push_back(off);
  }
  ChainComplex c(Direction::chain, nlo, dims);
  auto offset = [&](int p, int n) {
    return tot.block_offset[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(n - nlo)];
  };
  for (int n = nlo + 1; n <= nhi; ++n) {
    std::vector<Triplet> tr;
    for (int p = plo; p <= phi; ++p) {
      const int q = n - p;
      if (q < qlo || q > qhi) continue;
      const std::size_t src = offset(p, n);
      // Simplicial part into level p - 1, same internal degree.
      if (p - 1 >= plo) {
        const std::size_t tgt = offset(p - 1, n - 1);
        const std::size_t nfaces = p == 0 ? 1 : static_cast<std::size_t>(p + 1);
        for (std::size_t i = 0; i < nfaces; ++i) {
          const Rational sign = (i % 2 == 0) ? 1 : -1;
          for (const auto& t : face(ss, p, i, q).triplets()) tr.push_back({tgt + t.row, src + t.col, sign * t.value});
        }
      }
      // Internal part, sign (-1)^p.
      if (q - 1 >= qlo) {
        const std::size_t tgt = offset(p, n - 1);
        const Rational sign = (p % 2 == 0) ? 1 : -1;
        for (const auto& t : level_at(ss, p).differential(q).triplets())
          tr.push_back({tgt + t.row, src + t.col, sign * t.value});
      }
    }
    // Accumulate duplicates through add_to.
    QMatrix d(c.dim(n - 1), c.dim(n));
    for (const auto& t : tr) d.add_to(t.row, t.col, t.value);
    c.set_differential(n, std::move(d));
  }
  c.validate();
  std::vector<int> level;
  for (int n = nlo; n <= nhi; ++n)
    for (int p = plo; p <= phi; ++p)
      for (std::size_t i = 0; i < level_at(ss, p).dim(n - p); ++i) level.push_back(p);
  // Every level label is kept, even for zero levels.
  FilteredComplex& fc = tot.filtered;
  fc.ambient = std::move(c);
  fc.p0 = plo;
  for (int p = plo; p <= phi; ++p) {
    std::vector<std::size_t> s;
    for (std::size_t g = 0; g < level.size(); ++g)
      if (level[g] <= p) s.push_back(g);
    fc.steps.push_back(std::move(s));
  }
  return tot;
}

SpectralPages realization_ss(const SemisimplicialComplex& ss) {
  const Totalization tot = totalize(ss, false);
  return PageSystem(tot.filtered).summary();
}

LevelwiseE1 levelwise_e1(const SemisimplicialComplex& ss) {
  validate(ss);
  LevelwiseE1 out;
  const ChainComplex& base = ss.levels.front();
  for (int q = base.lo(); q <= base.hi(); ++q) {
    std::vector<Subquotient> h;
    for (int p = 0; p <= ss.top(); ++p) {
      h.push_back(level_homology(ss.levels[static_cast<std::size_t>(p)], q));
      out.dims[{p, q}] = h.back().dim();
    }
    out.d1_rank[{0, q}] = 0;
    for (int p = 1; p <= ss.top(); ++p) {
      QMatrix alt(ss.levels[static_cast<std::size_t>(p - 1)].dim(q), ss.levels[static_cast<std::size_t>(p)].dim(q));
      for (std::size_t i = 0; i <= static_cast<std::size_t>(p); ++i) {
        const QMatrix fi = face(ss, p, i, q);
        if (i % 2 == 0) alt += fi; else alt -= fi;
      }
      const DenseMatrix m = h[static_cast<std::size_t>(p - 1)].coordinates(alt * h[static_cast<std::size_t>(p)].representatives());
      out.d1_rank[{p, q}] = rank(m);
    }
  }
  return out;
}

AugmentationReport augmentation_report(const SemisimplicialComplex& ss) {
  if (!ss.augmented_to) throw InvalidComplex("augmentation report needs an augmentation");
  const Totalization tot = totalize(ss, false);
  const ChainComplex& t = tot.filtered.ambient;
  const ChainComplex& a = *ss.augmented_to;
  AugmentationReport rep;
  rep.lo = std::min(t.lo(), a.lo());
  const int hi = std::max(t.hi(), a.hi());
  rep.iso_through = rep.lo - 1;
  bool ok = true;
  for (int n = rep.lo; n <= hi; ++n) {
    std::size_t ht = 0, ha = 0, rk = 0;
    std::optional<Subquotient> st, sa;
    if (n >= t.lo() && n <= t.hi()) { st = level_homology(t, n); ht = st->dim(); }
    if (n >= a.lo() && n <= a.hi()) { sa = level_homology(a, n); ha = sa->dim(); }
    if (st && sa && ht > 0 && ha > 0) {
      // e on the level-0 block of Tot_n.
      const QMatrix& e = ss.augmentation[static_cast<std::size_t>(n - a.lo())];
      const std::size_t off = tot.block_offset[0][static_cast<std::size_t>(n - t.lo())];
      const DenseMatrix reps = st->representatives();
      DenseMatrix block(e.cols(), reps.cols());
      for (std::size_t r = 0; r < e.cols(); ++r)
        for (std::size_t cc = 0; cc < reps.cols(); ++cc) block(r, cc) = reps(off + r, cc);
      rk = rank(sa->coordinates(e * block));
    }
    rep.h_total.push_back(ht);
    rep.h_target.push_back(ha);
    rep.rank.push_back(rk);
    ok = ok && ht == ha && rk == ht;
    if (ok) rep.iso_through = n;
  }
  return rep;
}

bool FlagSetReport::ordered_vanishes() const {
  return std::all_of(reduced_betti.begin(), reduced_betti.end(), [](std::size_t b) { return b == 0; });
}

bool FlagSetReport::clique_vanishes() const {
  return std::all_of(clique_reduced_betti.begin(), clique_reduced_betti.end(), [](std::size_t b) { return b == 0; });
}

namespace {

std::vector<std::vector<char>> adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::invalid_argument("flag set: edge names a vertex outside 0.." + std::to_string(n - 1));
    if (a == b) throw std::invalid_argument("flag set: loop at vertex " + std::to_string(a));
    adj[a][b] = 1;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (adj[a][b] && !adj[b][a])
        throw std::invalid_argument("flag set: edge (" + std::to_string(a) + "," + std::to_string(b) +
                                    ") present without its reverse");
  return adj;
}

// Ordered (p+1)-tuples of pairwise adjacent vertices, p = 0..N.
std::vector<std::vector<std::vector<std::size_t>>> ordered_flags(const std::vector<std::vector<char>>& adj, int N) {
  const std::size_t n = adj.size();
  std::vector<std::vector<std::vector<std::size_t>>> lv(static_cast<std::size_t>(N + 1));
  std::size_t total = 0;
  for (std::size_t v = 0; v < n; ++v) lv[0].push_back({v});
  total += n;
  for (int p = 1; p <= N; ++p)
    for (const auto& t : lv[static_cast<std::size_t>(p - 1)])
      for (std::size_t v = 0; v < n; ++v) {
        if (!std::all_of(t.begin(), t.end(), [&](std::size_t u) { return adj[u][v] != 0; })) continue;
        auto u = t;
        u.push_back(v);
        lv[static_cast<std::size_t>(p)].push_back(std::move(u));
        if (++total > kMaxFlagSimplices) throw std::length_error("flag set: too many simplices");
      }
  return lv;
}

}  // namespace

SemisimplicialComplex flag_semisimplicial(std::size_t vertices,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                          int truncation) {
  if (truncation < 0) throw std::invalid_argument("flag set: truncation must be >= 0");
  const auto adj = adjacency(vertices, edges);
  const auto lv = ordered_flags(adj, truncation);
  SemisimplicialComplex ss;
  for (const auto& l : lv) ss.levels.emplace_back(Direction::chain, 0, std::vector<std::size_t>{l.size()});
  ss.faces.resize(lv.size());
  for (std::size_t p = 1; p < lv.size(); ++p) {
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < lv[p - 1].size(); ++i) index[lv[p - 1][i]] = i;
    for (std::size_t i = 0; i <= p; ++i) {
      std::vector<Triplet> tr;
      for (std::size_t s = 0; s < lv[p].size(); ++s) {
        auto f = lv[p][s];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        tr.push_back({index.at(f), s, Rational(1)});
      }
      ss.faces[p].push_back({QMatrix::from_triplets(lv[p - 1].size(), lv[p].size(), tr)});
    }
  }
  ss.augmented_to = ChainComplex(Direction::chain, 0, {1});
  std::vector<Triplet> tr;
  for (std::size_t v = 0; v < lv[0].size(); ++v) tr.push_back({0, v, Rational(1)});
  ss.augmentation = {QMatrix::from_triplets(1, lv[0].size(), tr)};
  return ss;
}

FlagSetReport flag_set_check(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                             int truncation) {
  if (vertices == 0) throw std::invalid_argument("flag set: no vertices");
  const auto adj = adjacency(vertices, edges);
  FlagSetReport rep;
  rep.vertices = vertices;
  rep.truncation = truncation;
  for (std::size_t h = 0; h < vertices && !rep.has_hub; ++h) {
    bool all = true;
    for (std::size_t v = 0; v < vertices; ++v)
      if (v != h && !adj[h][v]) all = false;
    rep.has_hub = all;
  }

  // Domination over collections of size t = 1, 2, ... (capped at N + 1).
  const std::size_t tmax = std::min<std::size_t>(vertices, static_cast<std::size_t>(truncation) + 1);
  for (std::size_t t = 1; t <= tmax; ++t) {
    bool every = true;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (!every) return;
      if (pick.size() == t) {
        bool found = false;
        for (std::size_t v = 0; v < vertices && !found; ++v)
          found = std::all_of(pick.begin(), pick.end(), [&](std::size_t u) { return adj[u][v] != 0; });
        every = found;
        return;
      }
      for (std::size_t v = start; v < vertices; ++v) {
        pick.push_back(v);
        rec(v + 1);
        pick.pop_back();
      }
    };
    rec(0);
    if (!every) break;
    rep.dominated_up_to = t;
  }

  const SemisimplicialComplex ss = flag_semisimplicial(vertices, edges, truncation);
  for (const auto& l : ss.levels) rep.simplices.push_back(l.dim(0));
  // Augmented totalization = reduced chains of the realization.
  const BettiTable b = homology(totalize(ss, true).filtered.ambient);
  for (int n = 0; n < truncation; ++n) rep.reduced_betti.push_back(b.at(n));

  std::vector<Simplex> cliques;
  for (const auto& l : ordered_flags(adj, truncation))
    for (const auto& t : l)
      if (std::is_sorted(t.begin(), t.end())) cliques.emplace_back(t.begin(), t.end());
  const BettiTable cb = homology(simplicial_chains(close_under_faces(cliques), true));
  for (int n = 0; n < truncation; ++n) rep.clique_reduced_betti.push_back(cb.at(n));
  return rep;
}

namespace io {

Json semisimplicial_to_json(const SemisimplicialComplex& ss) {
  Json j;
  j["levels"] = Json::array();
  for (const auto& l : ss.levels) j["levels"].push_back(complex_to_json(l));
  j["faces"] = Json::array();
  for (std::size_t p = 1; p < ss.faces.size(); ++p) {
    Json fp = Json::array();
    for (const auto& fi : ss.faces[p]) {
      Json per = Json::array();
      for (const auto& m : fi) per.push_back(matrix_to_json(m));
      fp.push_back(per);
    }
    j["faces"].push_back(fp);
  }
  if (ss.augmented_to) {
    Json maps = Json::array();
    for (const auto& m : ss.augmentation) maps.push_back(matrix_to_json(m));
    j["augmentation"] = {{"target", complex_to_json(*ss.augmented_to)}, {"maps", maps}};
  }
  return j;
}

SemisimplicialComplex semisimplicial_from_json(const Json& j) {
  SemisimplicialComplex ss;
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
    throw MalformedInput("semisimplicial complex needs a \"levels\" array");
  for (const auto& l : j["levels"]) ss.levels.push_back(complex_from_json(l));
  ss.faces.resize(ss.levels.size());
  const Json faces = j.value("faces", Json::array());
  if (!faces.is_array() || faces.size() + 1 != ss.levels.size())
    throw MalformedInput("\"faces\" needs one entry per level above 0");
  for (std::size_t p = 0; p < faces.size(); ++p)
    for (const auto& fi : faces[p]) {
      std::vector<QMatrix> per;
      for (const auto& m : fi) per.push_back(matrix_from_json(m));
      ss.faces[p + 1].push_back(std::move(per));
    }
  if (j.contains("augmentation")) {
    const Json& a = j["augmentation"];
    if (!a.contains("target") || !a.contains("maps")) throw MalformedInput("augmentation needs target and maps");
    ss.augmented_to = complex_from_json(a["target"]);
    for (const auto& m : a["maps"]) ss.augmentation.push_back(matrix_from_json(m));
  }
  return ss;
}

}  // namespace io

}  // namespace symstab
