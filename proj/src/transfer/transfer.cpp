#include "symstab/transfer/transfer.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>

#include "symstab/exactlin/linalg.hpp"
#include "symstab/io/json_io.hpp"
#include "symstab/partitions/partition.hpp"

namespace symstab {

namespace {

Integer factorial(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer binomial(long n, long r) {
  if (r < 0 || r > n) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return b;
}

// Injective sequences of length len from {0..n-1}, lexicographic.
void sequences(std::size_t n, std::size_t len, std::vector<std::size_t>& cur, std::vector<char>& used,
               std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (used[x]) continue;
    used[x] = 1;
    cur.push_back(x);
    sequences(n, len, cur, used, out);
    cur.pop_back();
    used[x] = 0;
  }
}

std::vector<Permutation> adjacent_transpositions(std::size_t letters, std::size_t upto) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i + 1 < upto; ++i) {
    auto p = Permutation::identity(letters);
    std::swap(p.img[i], p.img[i + 1]);
    out.push_back(std::move(p));
  }
  return out;
}

// Coinvariants that also accept the trivial group.
Coinvariants coinvariants_or_identity(const ChainComplex& c, const GroupAction& g) {
  if (!g.generators.empty()) return coinvariants(c, g, CoinvariantMethod::signed_orbits);
  Coinvariants out;
  out.complex = c;
  for (std::size_t i = 0; i < c.length(); ++i) {
    out.projection.push_back(QMatrix::identity(c.dims()[i]));
    out.section.push_back(QMatrix::identity(c.dims()[i]));
  }
  out.method = CoinvariantMethod::signed_orbits;
  return out;
}

QMatrix zero(std::size_t r, std::size_t c) { return QMatrix(r, c); }

DenseMatrix vstack(const std::vector<DenseMatrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  DenseMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = b(r, c);
    r0 += b.rows();
  }
  return out;
}

}  // namespace

std::vector<Permutation> coset_representatives(std::size_t small, std::size_t big, std::size_t cap) {
  if (small > big) throw std::invalid_argument("coset representatives need small <= big");
  if (big > cap) throw ResourceLimit("coset enumeration capped at S_" + std::to_string(cap));
  std::vector<std::vector<std::size_t>> seqs;
  std::vector<std::size_t> cur;
  std::vector<char> used(big, 0);
  sequences(big, big - small, cur, used, seqs);
  std::vector<Permutation> reps;
  reps.reserve(seqs.size());
  for (const auto& s : seqs) {
    Permutation g;
    g.img.assign(big, 0);
    std::vector<char> moved(big, 0);
    for (std::size_t t = 0; t < s.size(); ++t) {
      g.img[s[t]] = small + t;
      moved[s[t]] = 1;
    }
    std::size_t next = 0;
    for (std::size_t x = 0; x < big; ++x)
      if (!moved[x]) g.img[x] = next++;
    reps.push_back(std::move(g));
  }
  return reps;
}

bool is_right_transversal(const std::vector<Permutation>& reps, std::size_t small, std::size_t big) {
  if (small > big) return false;
  if (Integer(static_cast<unsigned long>(reps.size())) != factorial(static_cast<long>(big)) / factorial(static_cast<long>(small)))
    return false;
  // H g = H g' iff g^{-1} and g'^{-1} agree on the letters H fixes.
  std::set<std::vector<std::size_t>> keys;
  for (const auto& g : reps) {
    if (g.size() != big) return false;
    const auto inv = g.inverse();
    std::vector<std::size_t> key(inv.img.begin() + static_cast<std::ptrdiff_t>(small), inv.img.end());
    if (!keys.insert(std::move(key)).second) return false;
  }
  return true;
}

IotaMap iota(const ChainComplex& c, const GroupAction& g, std::size_t small, std::size_t big,
             const std::vector<Permutation>* reps) {
  if (g.letters != big) throw InvalidComplex("iota: action must be on " + std::to_string(big) + " letters");
  std::vector<Permutation> own;
  if (!reps) {
    own = coset_representatives(small, big);
    reps = &own;
  } else if (!is_right_transversal(*reps, small, big)) {
    throw std::invalid_argument("iota: representatives are not a right coset transversal");
  }
  const auto elems = expand_group(c, g);
  std::map<Permutation, const std::vector<QMatrix>*> by_perm;
  for (const auto& e : elems) by_perm[e.perm] = &e.matrices;
  auto mats = [&](const Permutation& p) -> const std::vector<QMatrix>& {
    auto it = by_perm.find(p);
    if (it == by_perm.end()) throw InvalidComplex("iota: action does not contain " + p.str());
    return *it->second;
  };

  IotaMap out;
  out.source = coinvariants_or_identity(c, g);
  GroupAction sub;
  sub.letters = big;
  sub.generators = adjacent_transpositions(big, small);
  for (const auto& p : sub.generators) sub.matrices.push_back(mats(p));
  out.target = coinvariants_or_identity(c, sub);
  for (std::size_t i = 0; i < c.length(); ++i) {
    QMatrix sum(c.dims()[i], c.dims()[i]);
    for (const auto& r : *reps) sum += mats(r)[i];
    out.map.push_back(out.target.projection[i] * sum * out.source.section[i]);
  }
  return out;
}

std::vector<int> relabel(const Permutation& g, const std::vector<int>& tuple) {
  std::vector<int> out(tuple.size());
  for (std::size_t x = 0; x < tuple.size(); ++x) out[g(x)] = tuple[x];
  return out;
}

void ConfigurationModel::check(std::size_t n) const {
  if (k < 0) throw std::invalid_argument("configuration model: k must be >= 0");
  if (n > max_particles)
    throw ResourceLimit("configuration model capped at " + std::to_string(max_particles) + " particles");
  if (!collar && n > sites)
    throw std::invalid_argument("configuration model: more particles than sites");
}

const std::vector<std::vector<int>>& ConfigurationModel::tuples(std::size_t n) const {
  check(n);
  auto it = cache_.find(n);
  if (it != cache_.end()) return it->second;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(sites, 0);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    if (collar) {
      cur.push_back(kCollar);
      self(self);
      cur.pop_back();
    }
    for (std::size_t s = 0; s < sites; ++s) {
      if (used[s]) continue;
      used[s] = 1;
      cur.push_back(static_cast<int>(s));
      self(self);
      cur.pop_back();
      used[s] = 0;
    }
  };
  rec(rec);
  for (std::size_t i = 0; i < out.size(); ++i) where_[out[i]] = i;
  return cache_.emplace(n, std::move(out)).first->second;
}

std::size_t ConfigurationModel::index(const std::vector<int>& t) const {
  tuples(t.size());
  auto it = where_.find(t);
  if (it == where_.end()) throw std::invalid_argument("configuration model: not a configuration");
  return it->second;
}

ChainComplex ConfigurationModel::complex(std::size_t n) const {
  return ChainComplex(Direction::chain, 0, {tuples(n).size()});
}

GroupAction ConfigurationModel::action(std::size_t n) const {
  const auto& ts = tuples(n);
  GroupAction g;
  g.letters = n;
  g.generators = adjacent_transpositions(n, n);
  for (const auto& p : g.generators) {
    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < ts.size(); ++i) trip.push_back({index(relabel(p, ts[i])), i, Rational(1)});
    g.matrices.push_back({QMatrix::from_triplets(ts.size(), ts.size(), trip)});
  }
  return g;
}

Coinvariants ConfigurationModel::coinvariants(std::size_t n) const {
  return coinvariants_or_identity(complex(n), action(n));
}

QMatrix ConfigurationModel::deletion(std::size_t from_n, std::size_t to_n) const {
  if (to_n > from_n) throw std::invalid_argument("deletion needs to_n <= from_n");
  const auto& src = tuples(from_n);
  const std::size_t rows = tuples(to_n).size();
  std::vector<Triplet> trip;
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<int> kept(src[i].begin(), src[i].begin() + static_cast<std::ptrdiff_t>(to_n));
    trip.push_back({index(kept), i, Rational(1)});
  }
  return QMatrix::from_triplets(rows, src.size(), trip);
}

QMatrix ConfigurationModel::stabilization(std::size_t n) const {
  if (!collar) throw std::invalid_argument("stabilization needs the collar site");
  if (n == 0) throw std::invalid_argument("stabilization needs n >= 1");
  const auto& src = tuples(n - 1);
  const std::size_t rows = tuples(n).size();
  std::vector<Triplet> trip;
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto t = src[i];
    t.push_back(kCollar);
    trip.push_back({index(t), i, Rational(1)});
  }
  return QMatrix::from_triplets(rows, src.size(), trip);
}

QMatrix transfer_map(const ConfigurationModel& m, int i, int j, const std::vector<Permutation>* reps) {
  if (i < 0 || i > j) throw std::invalid_argument("transfer needs 0 <= i <= j");
  const auto small = static_cast<std::size_t>(i + m.k);
  const auto big = static_cast<std::size_t>(j + m.k);
  std::vector<Permutation> own;
  if (!reps) {
    own = coset_representatives(small, big, m.max_particles);
    reps = &own;
  } else if (!is_right_transversal(*reps, small, big)) {
    throw std::invalid_argument("transfer: representatives are not a right coset transversal");
  }
  const auto src = m.coinvariants(big);
  const auto tgt = m.coinvariants(small);
  const auto& ts = m.tuples(big);
  std::vector<Triplet> trip;
  for (std::size_t c = 0; c < ts.size(); ++c)
    for (const auto& g : *reps) {
      auto t = relabel(g, ts[c]);
      t.resize(small);
      trip.push_back({m.index(t), c, Rational(1)});
    }
  const QMatrix del_sum = QMatrix::from_triplets(m.tuples(small).size(), ts.size(), trip);
  return tgt.projection[0] * del_sum * src.section[0];
}

QMatrix transfer_map_via_iota(const ConfigurationModel& m, int i, int j) {
  if (i < 0 || i > j) throw std::invalid_argument("transfer needs 0 <= i <= j");
  const auto small = static_cast<std::size_t>(i + m.k);
  const auto big = static_cast<std::size_t>(j + m.k);
  const auto io = iota(m.complex(big), m.action(big), small, big);
  const auto tgt = m.coinvariants(small);
  // del is S_small-equivariant, so it descends to S_small-coinvariants.
  return tgt.projection[0] * m.deletion(big, small) * io.target.section[0] * io.map[0];
}

QMatrix site_inclusion(const ConfigurationModel& small, const ConfigurationModel& big, std::size_t n) {
  if (small.sites > big.sites || small.collar != big.collar || small.k != big.k)
    throw std::invalid_argument("site inclusion needs a sub-site-set of the same model type");
  const auto& ts = small.tuples(n);
  std::vector<Triplet> trip;
  for (std::size_t c = 0; c < ts.size(); ++c) trip.push_back({big.index(ts[c]), c, Rational(1)});
  const QMatrix inc = QMatrix::from_triplets(big.tuples(n).size(), ts.size(), trip);
  return big.coinvariants(n).projection[0] * inc * small.coinvariants(n).section[0];
}

void DoldSystem::check_shapes() const {
  const int P = top();
  if (P < 0) throw std::invalid_argument("Dold system: no spaces");
  if (sigma.size() != dims.size()) throw std::invalid_argument("Dold system: one sigma per index required");
  if (sigma[0].rows() != dims[0] || sigma[0].cols() != 0)
    throw std::invalid_argument("Dold system: sigma_0 must map the zero space to B_0");
  for (int p = 1; p <= P; ++p)
    if (sigma[p].rows() != dims[p] || sigma[p].cols() != dims[p - 1])
      throw std::invalid_argument("Dold system: sigma_" + std::to_string(p) + " has the wrong shape");
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= p; ++q) {
      auto it = theta.find({q, p});
      if (it == theta.end())
        throw std::invalid_argument("Dold system: theta_" + std::to_string(q) + "_" + std::to_string(p) + " missing");
      if (it->second.rows() != dims[q] || it->second.cols() != dims[p])
        throw std::invalid_argument("Dold system: theta_" + std::to_string(q) + "_" + std::to_string(p) +
                                    " has the wrong shape");
    }
}

DoldSystem binomial_system(int top) {
  DoldSystem s;
  s.dims.assign(static_cast<std::size_t>(top) + 1, 1);
  s.sigma.push_back(zero(1, 0));
  for (int p = 1; p <= top; ++p) s.sigma.push_back(QMatrix::identity(1));
  for (int p = 0; p <= top; ++p)
    for (int q = 0; q <= p; ++q) {
      QMatrix m(1, 1);
      m.set(0, 0, Rational(binomial(p, q)));
      s.theta.emplace(std::make_pair(q, p), std::move(m));
    }
  return s;
}

DoldSystem model_system(const ConfigurationModel& model, int top) {
  if (!model.collar) throw std::invalid_argument("a Dold system needs the collar for stabilization");
  // Index p counts all particles, so B_0 is the empty configuration and the
  // fixed offset k only relabels levels.
  ConfigurationModel m(model.sites, true, 0);
  m.max_particles = model.max_particles;
  DoldSystem s;
  std::vector<Coinvariants> co;
  for (int p = 0; p <= top; ++p) {
    co.push_back(m.coinvariants(static_cast<std::size_t>(p + m.k)));
    s.dims.push_back(co.back().complex.dims()[0]);
  }
  s.sigma.push_back(zero(s.dims[0], 0));
  for (int p = 1; p <= top; ++p)
    s.sigma.push_back(co[p].projection[0] * m.stabilization(static_cast<std::size_t>(p + m.k)) *
                      co[p - 1].section[0]);
  for (int p = 0; p <= top; ++p)
    for (int q = 0; q <= p; ++q) {
      const Rational scale(Integer(1), factorial(p - q));
      s.theta.emplace(std::make_pair(q, p), transfer_map(m, q, p) * scale);
    }
  return s;
}

DoldReport dold_verify(const DoldSystem& sys) {
  sys.check_shapes();
  const int P = sys.top();
  auto th = [&](int q, int p) -> QMatrix {
    if (q < 0 || q > p) return zero(q < 0 ? 0 : sys.dims[static_cast<std::size_t>(q)], sys.dims[static_cast<std::size_t>(p)]);
    return sys.theta.at({q, p});
  };

  // B_q -> B_q / im sigma_q as coordinates.
  std::vector<DenseMatrix> pi;
  for (int q = 0; q <= P; ++q) {
    const Subquotient sq(DenseMatrix::identity(sys.dims[q]), sys.sigma[q].to_dense());
    pi.push_back(sq.coordinates(DenseMatrix::identity(sys.dims[q])));
  }
  auto splitting = [&](int p) {
    std::vector<DenseMatrix> blocks;
    for (int q = 0; q <= p; ++q) blocks.push_back(pi[q] * th(q, p).to_dense());
    return vstack(blocks, sys.dims[p]);
  };

  auto check_index = [&](int p) {
    DoldReport r;
    auto expect = [&](bool ok, const std::string& what) {
      r.checked.push_back(what);
      if (!ok) r.failures.push_back(what);
    };
    const std::string ps = std::to_string(p);
    expect(th(p, p) == QMatrix::identity(sys.dims[p]), "theta_" + ps + "_" + ps + " is the identity");
    if (p >= 1)
      for (int q = 0; q <= p; ++q) {
        QMatrix rhs = q <= p - 1 ? th(q, p - 1) : zero(sys.dims[q], sys.dims[p - 1]);
        if (q >= 1) rhs += sys.sigma[q] * th(q - 1, p - 1);
        expect(th(q, p) * sys.sigma[p] == rhs,
               "theta_" + std::to_string(q) + "_" + ps + " sigma_" + ps + " relation");
      }
    for (int q = 0; q <= p; ++q)
      for (int m = q; m <= p; ++m)
        expect(th(q, p) * Rational(binomial(p - q, p - m)) == th(q, m) * th(m, p),
               "binomial identity q=" + std::to_string(q) + " m=" + std::to_string(m) + " p=" + ps);
    const DenseMatrix phi = splitting(p);
    expect(phi.rows() == phi.cols() && rank(phi) == phi.rows(),
           "B_" + ps + " splits as the sum of B_q / im sigma_q");
    if (p >= 1) {
      const DenseMatrix prev = splitting(p - 1);
      const DenseMatrix lhs = prev * (th(p - 1, p) * sys.sigma[p]).to_dense();
      DenseMatrix rhs = prev;
      std::size_t row = 0;
      for (int q = 0; q <= p - 1; ++q)
        for (std::size_t i = 0; i < pi[q].rows(); ++i, ++row)
          for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(row, c) *= Rational(p - q);
      expect(lhs == rhs, "theta_" + std::to_string(p - 1) + "_" + ps + " sigma_" + ps +
                             " acts as p-q on the splitting");
    }
    return r;
  };

  std::vector<std::future<DoldReport>> jobs;
  for (int p = 0; p <= P; ++p) jobs.push_back(std::async(std::launch::async, check_index, p));
  DoldReport out;
  for (auto& j : jobs) {
    auto r = j.get();
    out.checked.insert(out.checked.end(), r.checked.begin(), r.checked.end());
    out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
  }
  return out;
}

bool DoldConclusions::all() const {
  for (std::size_t p = 1; p < sigma_injective.size(); ++p) {
    if (!sigma_injective[p] || !theta_sigma_iso[p]) return false;
    if (theta_iso_where_sigma_iso[p] && !*theta_iso_where_sigma_iso[p]) return false;
  }
  return true;
}

DoldConclusions dold_conclusions(const DoldSystem& sys, const DoldReport& verified) {
  if (!verified.passed() || verified.checked.empty())
    throw std::logic_error("Dold conclusions need a passing verification report");
  const int P = sys.top();
  DoldConclusions c;
  c.sigma_injective.assign(static_cast<std::size_t>(P) + 1, true);
  c.theta_sigma_iso.assign(static_cast<std::size_t>(P) + 1, true);
  c.theta_iso_where_sigma_iso.assign(static_cast<std::size_t>(P) + 1, std::nullopt);
  for (int p = 1; p <= P; ++p) {
    const std::size_t lo = sys.dims[p - 1], hi = sys.dims[p];
    const std::size_t rs = rank(sys.sigma[p]);
    c.sigma_injective[p] = rs == lo;
    c.theta_sigma_iso[p] = rank(sys.theta.at({p - 1, p}) * sys.sigma[p]) == lo;
    if (rs == lo && lo == hi) c.theta_iso_where_sigma_iso[p] = rank(sys.theta.at({p - 1, p})) == lo;
  }
  return c;
}

nlohmann::json dold_to_json(const DoldSystem& sys) {
  nlohmann::json mats = nlohmann::json::object();
  for (int p = 1; p <= sys.top(); ++p) mats["sigma_" + std::to_string(p)] = io::matrix_to_json(sys.sigma[p]);
  for (const auto& [qp, m] : sys.theta)
    mats["theta_" + std::to_string(qp.first) + "_" + std::to_string(qp.second)] = io::matrix_to_json(m);
  nlohmann::json j = nlohmann::json::object();
  j["dims"] = sys.dims;
  j["matrices"] = mats;
  return j;
}

DoldSystem dold_from_json(const nlohmann::json& j) {
  DoldSystem s;
  try {
    s.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (s.dims.empty()) throw io::MalformedInput("Dold system: dims must be nonempty");
    const auto& mats = j.at("matrices");
    s.sigma.push_back(mats.contains("sigma_0") ? io::matrix_from_json(mats.at("sigma_0")) : zero(s.dims[0], 0));
    for (int p = 1; p <= s.top(); ++p) s.sigma.push_back(io::matrix_from_json(mats.at("sigma_" + std::to_string(p))));
    for (int p = 0; p <= s.top(); ++p)
      for (int q = 0; q <= p; ++q)
        s.theta.emplace(std::make_pair(q, p),
                        io::matrix_from_json(mats.at("theta_" + std::to_string(q) + "_" + std::to_string(p))));
    s.check_shapes();
  } catch (const nlohmann::json::exception& e) {
    throw io::MalformedInput(std::string("Dold system: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw io::MalformedInput(e.what());
  }
  return s;
}

}  // namespace symstab
