#include "symstab/exactlin/group_action.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "symstab/exactlin/linalg.hpp"

namespace symstab {

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), std::size_t{0});
  return p;
}

Permutation Permutation::from_one_based(const std::vector<long>& images) {
  Permutation p;
  std::vector<char> seen(images.size(), 0);
  for (long v : images) {
    if (v < 1 || v > static_cast<long>(images.size()) || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("not a permutation of 1.." + std::to_string(images.size()));
    seen[static_cast<std::size_t>(v - 1)] = 1;
    p.img.push_back(static_cast<std::size_t>(v - 1));
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation q;
  q.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) q.img[img[i]] = i;
  return q;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] != i) return false;
  return true;
}

int Permutation::sign() const {
  std::vector<char> seen(img.size(), 0);
  int s = 1;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = img[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(img[i] + 1);
  }
  return s + "]";
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Permutation c;
  c.img.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c.img[i] = a.img[b.img[i]];
  return c;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.img.begin(), p.img.end()));
  return out;
}

std::string to_string(CoinvariantMethod m) {
  switch (m) {
    case CoinvariantMethod::automatic: return "automatic";
    case CoinvariantMethod::averaging: return "averaging";
    case CoinvariantMethod::generator_quotient: return "generator_quotient";
    case CoinvariantMethod::signed_orbits: return "signed_orbits";
  }
  return "?";
}

namespace {

void check_shapes(const ChainComplex& c, const GroupAction& g) {
  if (g.matrices.size() != g.generators.size())
    throw InvalidComplex("group action: one matrix list per generator required");
  for (std::size_t k = 0; k < g.generators.size(); ++k) {
    if (g.generators[k].size() != g.letters)
      throw InvalidComplex("group action: generator " + std::to_string(k) + " has wrong size");
    if (g.matrices[k].size() != c.length())
      throw InvalidComplex("group action: generator " + std::to_string(k) +
                           " needs one matrix per degree");
    for (std::size_t i = 0; i < c.length(); ++i) {
      const auto& m = g.matrices[k][i];
      if (m.rows() != c.dims()[i] || m.cols() != c.dims()[i])
        throw InvalidComplex("group action: matrix shape mismatch");
    }
  }
}

bool all_signed_permutations(const GroupAction& g) {
  for (const auto& per : g.matrices)
    for (const auto& m : per)
      if (!m.is_signed_permutation()) return false;
  return true;
}

struct DegreeQuotient {
  QMatrix projection;
  QMatrix section;
};

DegreeQuotient quotient_by_orbits(std::size_t n, const std::vector<QMatrix>& gens_t) {
  // gens_t are transposes: row b holds the single entry s at b' with g e_b = s e_b'.
  // Classes satisfy [e_b'] = s [e_b]; a sign clash kills the orbit.
  std::vector<long> orbit(n, -1);
  std::vector<int> sign(n, 0);
  std::vector<char> killed;
  std::vector<std::size_t> reps;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] >= 0) continue;
    const long id = static_cast<long>(reps.size());
    reps.push_back(start);
    killed.push_back(0);
    orbit[start] = id;
    sign[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t b = queue.front();
      queue.pop_front();
      for (const QMatrix& mt : gens_t) {
        const auto& e = mt.row(b).front();
        const int s = sgn(e.value) * sign[b];
        if (orbit[e.col] < 0) {
          orbit[e.col] = id;
          sign[e.col] = s;
          queue.push_back(e.col);
        } else if (sign[e.col] != s) {
          killed[static_cast<std::size_t>(id)] = 1;
        }
      }
    }
  }
  std::vector<long> slot(reps.size(), -1);
  std::size_t m = 0;
  for (std::size_t o = 0; o < reps.size(); ++o)
    if (!killed[o]) slot[o] = static_cast<long>(m++);
  DegreeQuotient q{QMatrix(m, n), QMatrix(n, m)};
  for (std::size_t b = 0; b < n; ++b) {
    const long s = slot[static_cast<std::size_t>(orbit[b])];
    if (s >= 0) q.projection.set(static_cast<std::size_t>(s), b, Rational(sign[b]));
  }
  for (std::size_t o = 0; o < reps.size(); ++o)
    if (slot[o] >= 0) q.section.set(reps[o], static_cast<std::size_t>(slot[o]), Rational(1));
  return q;
}

DegreeQuotient quotient_by_averaging(std::size_t n, const std::vector<const QMatrix*>& elems) {
  QMatrix avg(n, n);
  for (const QMatrix* m : elems) avg += *m;
  avg *= Rational(1, static_cast<long>(elems.size()));
  const DenseMatrix p = avg.to_dense();
  const DenseMatrix basis = column_basis(p);
  const Subquotient sq(basis, DenseMatrix(n, 0));
  const DenseMatrix proj = sq.coordinates(p);
  return {QMatrix::from_dense(proj), QMatrix::from_dense(basis)};
}

DegreeQuotient quotient_by_generators(std::size_t n, const std::vector<const QMatrix*>& gens) {
  DenseMatrix diffs(n, 0);
  for (const QMatrix* m : gens)
    diffs = DenseMatrix::hstack(diffs, (*m - QMatrix::identity(n)).to_dense());
  const Subquotient sq(DenseMatrix::identity(n), diffs);
  return {QMatrix::from_dense(sq.coordinates(DenseMatrix::identity(n))),
          QMatrix::from_dense(sq.representatives())};
}

}  // namespace

std::vector<GroupElement> expand_group(const ChainComplex& c, const GroupAction& g,
                                       std::size_t cap) {
  check_shapes(c, g);
  std::vector<GroupElement> elems;
  std::map<Permutation, std::size_t> index;
  GroupElement id{Permutation::identity(g.letters), {}};
  for (auto d : c.dims()) id.matrices.push_back(QMatrix::identity(d));
  index.emplace(id.perm, 0);
  elems.push_back(std::move(id));
  for (std::size_t at = 0; at < elems.size(); ++at) {
    for (std::size_t k = 0; k < g.generators.size(); ++k) {
      Permutation p = compose(g.generators[k], elems[at].perm);
      std::vector<QMatrix> mats;
      mats.reserve(c.length());
      for (std::size_t i = 0; i < c.length(); ++i)
        mats.push_back(g.matrices[k][i] * elems[at].matrices[i]);
      auto it = index.find(p);
      if (it != index.end()) {
        if (!(elems[it->second].matrices == mats))
          throw InvalidComplex("group action does not respect relations at element " + p.str());
        continue;
      }
      if (elems.size() >= cap)
        throw GroupTooLarge("group order exceeds cap " + std::to_string(cap));
      index.emplace(p, elems.size());
      elems.push_back({std::move(p), std::move(mats)});
    }
  }
  return elems;
}

void validate_action(const ChainComplex& c, const GroupAction& g, std::size_t cap) {
  check_shapes(c, g);
  for (std::size_t k = 0; k < g.generators.size(); ++k)
    for (std::size_t i = 0; i < c.length(); ++i) {
      const QMatrix& m = g.matrices[k][i];
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r))
          if (abs(e.value) != 1)
            throw InvalidComplex("group action entries must lie in {0, 1, -1}");
      if (rank(m) != m.rows()) throw InvalidComplex("group action matrix is singular");
    }
  const int s = step(c.direction());
  for (std::size_t k = 0; k < g.generators.size(); ++k)
    for (int n = c.lo(); n <= c.hi(); ++n) {
      const int t = n + s;
      if (t < c.lo() || t > c.hi()) continue;
      const QMatrix& gn = g.matrices[k][static_cast<std::size_t>(n - c.lo())];
      const QMatrix& gt = g.matrices[k][static_cast<std::size_t>(t - c.lo())];
      if (!(c.differential(n) * gn == gt * c.differential(n)))
        throw InvalidComplex("generator " + std::to_string(k) +
                             " does not commute with the differential in degree " +
                             std::to_string(n));
    }
  try {
    expand_group(c, g, cap);
  } catch (const GroupTooLarge&) {
    // Relations are not checked beyond the cap.
  }
}

Coinvariants coinvariants(const ChainComplex& c, const GroupAction& g, CoinvariantMethod method,
                          std::size_t cap) {
  validate_action(c, g, cap);
  if (method == CoinvariantMethod::automatic) {
    if (all_signed_permutations(g))
      method = CoinvariantMethod::signed_orbits;
    else
      method = CoinvariantMethod::averaging;
  }
  if (method == CoinvariantMethod::signed_orbits && !all_signed_permutations(g))
    throw InvalidComplex("signed-orbit coinvariants need signed permutation matrices");

  std::vector<GroupElement> elems;
  if (method == CoinvariantMethod::averaging) {
    try {
      elems = expand_group(c, g, cap);
    } catch (const GroupTooLarge&) {
      method = CoinvariantMethod::generator_quotient;
    }
  }

  Coinvariants out;
  out.method = method;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < c.length(); ++i) {
    const std::size_t n = c.dims()[i];
    DegreeQuotient q;
    if (method == CoinvariantMethod::signed_orbits) {
      std::vector<QMatrix> gt;
      for (const auto& per : g.matrices) gt.push_back(per[i].transpose());
      q = quotient_by_orbits(n, gt);
    } else if (method == CoinvariantMethod::averaging) {
      std::vector<const QMatrix*> ms;
      for (const auto& e : elems) ms.push_back(&e.matrices[i]);
      q = quotient_by_averaging(n, ms);
    } else {
      std::vector<const QMatrix*> ms;
      for (const auto& per : g.matrices) ms.push_back(&per[i]);
      q = quotient_by_generators(n, ms);
    }
    dims.push_back(q.projection.rows());
    out.projection.push_back(std::move(q.projection));
    out.section.push_back(std::move(q.section));
  }
  out.complex = ChainComplex(c.direction(), c.lo(), dims);
  const int s = step(c.direction());
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const int t = n + s;
    if (t < c.lo() || t > c.hi()) continue;
    out.complex.set_differential(n, out.projection[static_cast<std::size_t>(t - c.lo())] *
                                        c.differential(n) *
                                        out.section[static_cast<std::size_t>(n - c.lo())]);
  }
  out.complex.validate();
  return out;
}

std::vector<std::vector<DenseMatrix>> homology_action(const ChainComplex& c, const GroupAction& g) {
  check_shapes(c, g);
  std::vector<Subquotient> h;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const DenseMatrix z = kernel_basis(c.differential(n).to_dense());
    const DenseMatrix b = c.incoming(n).to_dense();
    h.emplace_back(z, b);
  }
  std::vector<std::vector<DenseMatrix>> out(g.generators.size());
  for (std::size_t k = 0; k < g.generators.size(); ++k)
    for (std::size_t i = 0; i < c.length(); ++i) {
      const DenseMatrix reps = h[i].representatives();
      out[k].push_back(h[i].coordinates(g.matrices[k][i] * reps));
    }
  return out;
}

std::size_t coinvariant_dim(std::size_t dim, const std::vector<DenseMatrix>& generator_matrices) {
  if (dim == 0) return 0;
  DenseMatrix stacked(0, dim);
  for (const auto& m : generator_matrices)
    stacked = DenseMatrix::vstack(stacked, m - DenseMatrix::identity(dim));
  return dim - rank(stacked);
}

}  // namespace symstab
