#include "symstab/strata/strata.hpp"

#include <algorithm>
#include <future>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "symstab/io/json_io.hpp"
#include "symstab/strata/salvetti.hpp"

namespace symstab {

namespace {

bool is_plane(const ManifoldClass& mc) {
  return mc.dim == 2 && mc.orientable && mc.open_interior && mc.punctures == 0;
}

int ceil_int(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(c.get_si());
}

std::string join_strata(const std::vector<E1Component>& cs) {
  std::string s;
  for (const auto& c : cs) {
    if (!s.empty()) s += ' ';
    s += c.stratum.str() + ":" + std::to_string(c.dim);
  }
  return s;
}

}  // namespace

FiltrationReport filtration_report(const Partition& lambda) {
  FiltrationReport r;
  r.lambda = lambda;
  const int k = lambda.weight();
  int last = -1;
  std::vector<FiltrationLayer> all;
  for (int p = 0; p < std::max(k, 1); ++p) {
    all.push_back({p, col(lambda, p)});
    if (!all.back().members.empty()) last = p;
  }
  all.resize(static_cast<std::size_t>(last + 1));
  r.layers = std::move(all);
  if (!r.layers.empty()) {
    const auto& l0 = r.layers.front().members;
    r.u0_finest = l0.size() == 1 && l0.front() == Partition::ones(static_cast<std::size_t>(k));
    r.within_bound = r.layers.back().p <= k - 1;
  }
  return r;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::builtin: return "builtin";
    case Provenance::user: return "user";
    case Provenance::unknown: return "unknown";
  }
  return "unknown";
}

Provenance parse_provenance(const std::string& s) {
  if (s == "builtin") return Provenance::builtin;
  if (s == "user") return Provenance::user;
  if (s == "unknown") return Provenance::unknown;
  throw std::invalid_argument("unknown provenance '" + s + "'");
}

long StratumBetti::euler_c() const {
  long e = 0;
  for (std::size_t i = 0; i < betti_c.size(); ++i)
    e += (i % 2 ? -1L : 1L) * static_cast<long>(betti_c[i]);
  return e;
}

StratumBetti plane_oracle(const Partition& stratum, int cap) {
  if (stratum.weight() > cap)
    throw ResourceLimit("plane oracle: weight " + std::to_string(stratum.weight()) +
                        " exceeds cap " + std::to_string(cap));
  static std::mutex mu;
  static std::map<Partition, StratumBetti> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(stratum); it != memo.end()) return it->second;
  }
  const auto h = colored_configuration_homology(stratum);
  const StratumDescriptor sd{stratum, ManifoldClass::plane()};
  StratumBetti out;
  out.provenance = Provenance::builtin;
  out.betti_c.assign(static_cast<std::size_t>(sd.dimension()) + 1, 0);
  for (int i = 0; i <= sd.dimension(); ++i) out.betti_c[static_cast<std::size_t>(i)] =
      h.at(duality_degree(sd, i).degree);
  std::lock_guard lock(mu);
  memo.emplace(stratum, out);
  return out;
}

std::optional<StratumBetti> PlaneOracle::lookup(const Partition& stratum, const ManifoldClass& mc) const {
  if (!is_plane(mc) || stratum.weight() > cap_) return std::nullopt;
  return plane_oracle(stratum, cap_);
}

void TableOracle::insert(const Partition& stratum, const ManifoldClass& mc, StratumBetti b) {
  const StratumDescriptor sd{stratum, mc};
  if (b.betti_c.size() > static_cast<std::size_t>(sd.dimension()) + 1)
    throw std::invalid_argument("oracle entry for " + stratum.str() +
                                ": Betti data beyond the stratum dimension");
  for (auto& e : entries_)
    if (e.stratum == stratum && e.mc == mc) {
      e.betti = std::move(b);
      return;
    }
  entries_.push_back({stratum, mc, std::move(b)});
}

std::optional<StratumBetti> TableOracle::lookup(const Partition& stratum, const ManifoldClass& mc) const {
  for (const auto& e : entries_)
    if (e.stratum == stratum && e.mc == mc) return e.betti;
  return std::nullopt;
}

nlohmann::json TableOracle::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_)
    arr.push_back({{"partition", e.stratum.str()},
                   {"class", symstab::to_json(e.mc)},
                   {"betti_c", e.betti.betti_c},
                   {"provenance", to_string(e.betti.provenance)},
                   {"twisted", e.betti.twisted}});
  return {{"entries", arr}};
}

TableOracle TableOracle::from_json(const nlohmann::json& j) {
  TableOracle t;
  try {
    for (const auto& e : j.at("entries")) {
      StratumBetti b;
      b.betti_c = e.at("betti_c").get<std::vector<std::size_t>>();
      b.provenance = parse_provenance(e.value("provenance", std::string("user")));
      b.twisted = e.value("twisted", false);
      t.insert(Partition::parse(e.at("partition").get<std::string>()),
               manifold_class_from_json(e.at("class")), std::move(b));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw io::MalformedInput(std::string("oracle table: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw io::MalformedInput(std::string("oracle table: ") + ex.what());
  }
  return t;
}

std::optional<StratumBetti> CompositeOracle::lookup(const Partition& stratum, const ManifoldClass& mc) const {
  for (const auto& o : parts_)
    if (auto b = o->lookup(stratum, mc)) return b;
  return std::nullopt;
}

std::string CompositeOracle::name() const {
  std::string s;
  for (const auto& o : parts_) s += (s.empty() ? "" : "+") + o->name();
  return s;
}

std::size_t E1Table::dim(int p, int q) const {
  auto it = cells.find({p, q});
  return it == cells.end() ? 0 : it->second.dim;
}

std::optional<long> E1Table::euler_c() const {
  if (!complete()) return std::nullopt;
  long e = 0;
  for (const auto& [pq, c] : cells) e += ((pq.first + pq.second) % 2 ? -1L : 1L) * static_cast<long>(c.dim);
  return e;
}

std::optional<std::vector<std::size_t>> E1Table::hc_upper_bound() const {
  if (!complete()) return std::nullopt;
  std::vector<std::size_t> out(static_cast<std::size_t>(mc.dim * lambda.weight()) + 1, 0);
  for (const auto& [pq, c] : cells) {
    const int n = pq.first + pq.second;
    if (n >= static_cast<int>(out.size())) out.resize(static_cast<std::size_t>(n) + 1, 0);
    out[static_cast<std::size_t>(n)] += c.dim;
  }
  return out;
}

std::vector<std::string> E1Table::support_violations() const {
  std::vector<std::string> v;
  const int w = lambda.weight();
  for (const auto& [pq, c] : cells) {
    const auto [p, q] = pq;
    if (c.dim == 0) continue;
    if (p < 0 || p > w - 1 || p + q < 0 || p + q > mc.dim * (w - p))
      v.push_back("nonzero E1 at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }
  return v;
}

std::string E1Table::csv() const {
  std::ostringstream os;
  os << "p,q,dim,components\n";
  for (const auto& [pq, c] : cells)
    os << pq.first << ',' << pq.second << ',' << c.dim << ',' << join_strata(c.components) << '\n';
  for (const auto& [p, strata] : unknown)
    for (const auto& s : strata) os << p << ",,unknown," << s.str() << '\n';
  return os.str();
}

nlohmann::json E1Table::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& [pq, c] : cells) {
    nlohmann::json comp = nlohmann::json::array();
    for (const auto& x : c.components)
      comp.push_back({{"stratum", x.stratum.str()}, {"dim", x.dim}, {"provenance", to_string(x.provenance)}});
    cs.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", c.dim}, {"components", comp}});
  }
  nlohmann::json unk = nlohmann::json::object();
  for (const auto& [p, strata] : unknown) {
    std::vector<std::string> names;
    for (const auto& s : strata) names.push_back(s.str());
    unk[std::to_string(p)] = names;
  }
  nlohmann::json layers_json = nlohmann::json::array();
  for (const auto& l : layers) {
    std::vector<std::string> names;
    for (const auto& s : l.members) names.push_back(s.str());
    layers_json.push_back({{"p", l.p}, {"strata", names}});
  }
  return {{"lambda", lambda.str()}, {"class", symstab::to_json(mc)}, {"layers", layers_json},
          {"cells", cs}, {"unknown", unk}, {"complete", complete()}, {"twisted", twisted}};
}

E1Table assemble_e1(const Partition& lambda, const ManifoldClass& mc, const BettiOracle& oracle) {
  mc.validate();
  E1Table t;
  t.lambda = lambda;
  t.mc = mc;
  t.layers = filtration_report(lambda).layers;

  std::vector<Partition> distinct;
  for (const auto& l : t.layers) distinct.insert(distinct.end(), l.members.begin(), l.members.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<std::future<std::optional<StratumBetti>>> jobs;
  for (const auto& s : distinct)
    jobs.push_back(std::async(std::launch::async, [&oracle, &mc, s] { return oracle.lookup(s, mc); }));
  std::map<Partition, std::optional<StratumBetti>> data;
  for (std::size_t i = 0; i < distinct.size(); ++i) data[distinct[i]] = jobs[i].get();

  for (const auto& l : t.layers)
    for (const auto& s : l.members) {
      const auto& b = data.at(s);
      if (!b) {
        t.unknown[l.p].push_back(s);
        continue;
      }
      t.twisted = t.twisted || b->twisted;
      for (std::size_t i = 0; i < b->betti_c.size(); ++i) {
        if (b->betti_c[i] == 0) continue;
        auto& cell = t.cells[{l.p, static_cast<int>(i) - l.p}];
        cell.dim += b->betti_c[i];
        cell.components.push_back({s, b->betti_c[i], b->provenance});
      }
    }
  return t;
}

DualDegree duality_degree(const StratumDescriptor& sd, int i, bool twisted) {
  if (!twisted && !(sd.mc.orientable && sd.mc.dim % 2 == 0))
    throw std::invalid_argument("duality needs an orientable even-dimensional class or twisted coefficients");
  if (i < 0 || i > sd.dimension())
    throw std::out_of_range("degree " + std::to_string(i) + " outside [0, " +
                            std::to_string(sd.dimension()) + "]");
  return {sd.dimension() - i, twisted};
}

nlohmann::json RangeCertificate::to_json() const {
  auto cell_json = [](const CertificateCell& c) {
    nlohmann::json o = nlohmann::json::object();
    o["p"] = c.p;
    o["q"] = c.q;
    o["h"] = c.h;
    o["bound"] = symstab::to_string(c.bound);
    o["relation"] = c.strict ? "<" : "<=";
    o["vacuous"] = c.vacuous;
    o["ok"] = c.ok;
    return o;
  };
  nlohmann::json j = nlohmann::json::object();
  j["d"] = d;
  j["k"] = k;
  j["j"] = this->j;
  j["case"] = symstab::to_string(range_case);
  j["a"] = a;
  j["f"] = symstab::to_string(f);
  j["threshold"] = symstab::to_string(threshold);
  j["window_start"] = window_start;
  j["weakened"] = weakened;
  j["passed"] = passed();
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) j["cells"].push_back(cell_json(c));
  j["counterexample"] = counterexample ? cell_json(*counterexample) : nlohmann::json(nullptr);
  return j;
}

std::vector<std::pair<RangeCase, int>> applicable_cases(int d) {
  std::vector<std::pair<RangeCase, int>> out;
  if (d == 2) {
    out.push_back({RangeCase::dim2_orientable, 0});
    out.push_back({RangeCase::dim2_nonorientable, 0});
  } else if (d > 2) {
    out.push_back({RangeCase::dim_gt_2, 0});
  }
  for (int a = 1; a < d - 1; ++a) out.push_back({RangeCase::star_a, a});
  return out;
}

RangeCertificate range_certificate(int d, int k, int j, RangeCase c, int a, int weaken) {
  if (d < 2) throw std::invalid_argument("range certificate needs d >= 2");
  if (k < 1 || j < 0) throw std::invalid_argument("range certificate needs k >= 1, j >= 0");
  switch (c) {
    case RangeCase::dim_gt_2:
      if (d <= 2) throw std::invalid_argument("case dim>2 needs d > 2");
      break;
    case RangeCase::dim2_orientable:
    case RangeCase::dim2_nonorientable:
      if (d != 2) throw std::invalid_argument("dimension-2 case needs d = 2");
      break;
    case RangeCase::star_a:
      if (a < 1 || a >= d - 1) throw std::invalid_argument("(*)_a needs 1 <= a < d - 1");
      break;
  }
  RangeCertificate cert;
  cert.d = d;
  cert.k = k;
  cert.j = j;
  cert.range_case = c;
  cert.a = c == RangeCase::star_a ? a : 0;
  cert.weakened = weaken;
  cert.f = case_range(c, d, a, k, j);
  const int top = d * (j + k + 1);
  cert.threshold = Rational(top) - cert.f;
  cert.window_start = ceil_int(cert.threshold) - weaken;

  for (int p = 0; p <= k + j; ++p)
    for (int q = std::max(0, cert.window_start - p); p + q <= top; ++q) {
      CertificateCell cell;
      cell.p = p;
      cell.q = q;
      cell.h = d * (j + k + 1 - p) - (p + q);
      const int span = k + j - 2 * p;
      switch (c) {
        case RangeCase::dim_gt_2:
        case RangeCase::dim2_nonorientable:
          cell.bound = span;
          break;
        case RangeCase::dim2_orientable:
          cell.bound = span;
          cell.strict = true;
          break;
        case RangeCase::star_a:
          cell.bound = (a + 1) * span;
          cell.strict = true;
          break;
      }
      cell.vacuous = cell.h < 0;
      const Rational h(cell.h);
      cell.ok = cell.vacuous || (cell.strict ? h < cell.bound : h <= cell.bound);
      if (!cell.ok && !cert.counterexample) cert.counterexample = cell;
      cert.cells.push_back(cell);
    }
  return cert;
}

EulerReport euler_consistency(const Partition& lambda, const ManifoldClass& mc, const BettiOracle& oracle,
                              const std::optional<std::vector<std::size_t>>& reference_betti_c) {
  EulerReport r;
  const E1Table t = assemble_e1(lambda, mc, oracle);
  if (!t.complete()) {
    r.note = "oracle lacks data for some strata";
    return r;
  }
  // Per-stratum chi_c regrouped from the cell components; the E1 sum runs over cells.
  std::map<Partition, long> chi;
  for (const auto& l : t.layers)
    for (const auto& s : l.members) chi[s] = 0;
  for (const auto& [pq, c] : t.cells)
    for (const auto& x : c.components)
      chi[x.stratum] += ((pq.first + pq.second) % 2 ? -1L : 1L) * static_cast<long>(x.dim);
  long sum = 0;
  for (const auto& [s, e] : chi) {
    r.per_stratum.push_back({s, e});
    sum += e;
  }
  r.strata_sum = sum;
  r.e1_sum = t.euler_c();
  r.conclusive = true;
  r.consistent = *r.strata_sum == *r.e1_sum;
  if (reference_betti_c) {
    StratumBetti ref;
    ref.betti_c = *reference_betti_c;
    r.reference = ref.euler_c();
    r.consistent = r.consistent && *r.reference == sum;
  } else {
    r.note = "no reference; strata and E1 summation orders compared";
  }
  return r;
}

std::optional<std::vector<std::size_t>> known_reference(const Partition& lambda, const ManifoldClass& mc,
                                                        const BettiOracle& oracle) {
  const std::size_t k = static_cast<std::size_t>(lambda.weight());
  if (lambda == Partition::ones(k)) return std::vector<std::size_t>{};
  if (lambda.count(2) == 1 && lambda.count(1) + 1 == lambda.cardinality()) {
    if (auto b = oracle.lookup(Partition::ones(k), mc)) return b->betti_c;
  }
  return std::nullopt;
}

}  // namespace symstab
