#include "symstab/monodromy/monodromy.hpp"

#include <stdexcept>

#include "symstab/io/json_io.hpp"

namespace symstab {

namespace {

// Start of the block of multiplicity m within the particle order.
std::size_t block_start(const Partition& lambda, int m) {
  const auto& parts = lambda.parts();
  std::size_t i = 0;
  while (i < parts.size() && parts[i] != m) ++i;
  return i;
}

int power(int sign, long e) { return (sign < 0 && e % 2 != 0) ? -1 : 1; }

std::vector<int> distinct_parts(const Partition& lambda) {
  std::vector<int> out;
  for (int x : lambda.parts())
    if (out.empty() || out.back() != x) out.push_back(x);
  return out;
}

}  // namespace

void LoopDatum::validate() const {
  if (u.size() != lambda.cardinality())
    throw std::invalid_argument("loop datum: need one orientation sign per particle");
  for (int x : u)
    if (x != 1 && x != -1) throw std::invalid_argument("loop datum: orientation signs must be +1 or -1");
  if (d < 1) throw std::invalid_argument("loop datum: d must be >= 1");
  for (const auto& [m, p] : perms) {
    if (lambda.count(m) == 0)
      throw std::invalid_argument("loop datum: permutation for absent multiplicity " + std::to_string(m));
    if (p.size() != lambda.count(m))
      throw std::invalid_argument("loop datum: permutation for multiplicity " + std::to_string(m) +
                                  " must act on " + std::to_string(lambda.count(m)) + " particles");
  }
  for (int m : distinct_parts(lambda))
    if (!perms.count(m)) throw std::invalid_argument("loop datum: no permutation for multiplicity " + std::to_string(m));
}

const Permutation& LoopDatum::perm(int m) const { return perms.at(m); }

LoopDatum LoopDatum::identity(const Partition& lambda, int d) {
  LoopDatum ld;
  ld.lambda = lambda;
  ld.d = d;
  ld.u.assign(lambda.cardinality(), 1);
  for (int m : distinct_parts(lambda)) ld.perms[m] = Permutation::identity(lambda.count(m));
  return ld;
}

int s1(const LoopDatum& ld) {
  ld.validate();
  int s = 1;
  for (const auto& [m, p] : ld.perms) s *= power(p.sign(), m);
  return s;
}

int s2(const LoopDatum& ld) {
  ld.validate();
  int s = 1;
  for (const auto& [m, p] : ld.perms) s *= p.sign();
  return s;
}

OrientationChars orientation_chars(const LoopDatum& ld) {
  ld.validate();
  OrientationChars o;
  for (std::size_t i = 0; i < ld.u.size(); ++i) {
    o.o1 *= power(ld.u[i], ld.lambda.parts()[i]);
    o.o2 *= ld.u[i];
  }
  return o;
}

MonodromyValues monodromy_pair(const LoopDatum& ld) {
  const auto o = orientation_chars(ld);
  MonodromyValues v;
  v.orientation = o.o1 * power(s1(ld), ld.d);
  v.orientation_lambda = o.o2 * power(s2(ld), ld.d);
  v.tensor = v.orientation * v.orientation_lambda;
  return v;
}

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::agree: return "agree";
    case Agreement::disagree: return "disagree";
    case Agreement::not_applicable: return "not applicable";
  }
  return "?";
}

Agreement odd_move_agreement(const LoopDatum& ld) {
  ld.validate();
  for (std::size_t i = 0; i < ld.u.size(); ++i)
    if (ld.lambda.parts()[i] % 2 == 0 && ld.u[i] != 1) return Agreement::not_applicable;
  for (const auto& [m, p] : ld.perms)
    if (m % 2 == 0 && !p.is_identity()) return Agreement::not_applicable;
  const auto v = monodromy_pair(ld);
  return v.orientation == v.orientation_lambda ? Agreement::agree : Agreement::disagree;
}

LoopDatum concatenate(const LoopDatum& a, const LoopDatum& b) {
  a.validate();
  b.validate();
  if (!(a.lambda == b.lambda) || a.d != b.d) throw std::invalid_argument("concatenation needs the same stratum");
  LoopDatum out = a;
  for (auto& [m, p] : out.perms) {
    const auto& pa = a.perm(m);
    const auto& pb = b.perm(m);
    p = compose(pb, pa);
    const std::size_t s = block_start(a.lambda, m);
    // The particle at x follows a's path, then b's path from position pa(x).
    for (std::size_t x = 0; x < pa.size(); ++x) out.u[s + x] = a.u[s + x] * b.u[s + pa(x)];
  }
  return out;
}

LoopDatum reorder(const LoopDatum& ld, const std::map<int, Permutation>& r) {
  ld.validate();
  LoopDatum out = ld;
  for (const auto& [m, rm] : r) {
    const auto& p = ld.perm(m);
    if (rm.size() != p.size()) throw std::invalid_argument("reorder: wrong block size");
    out.perms[m] = compose(compose(rm, p), rm.inverse());
    const std::size_t s = block_start(ld.lambda, m);
    for (std::size_t x = 0; x < rm.size(); ++x) out.u[s + rm(x)] = ld.u[s + x];
  }
  return out;
}

void for_each_loop_datum(std::size_t max_particles, int max_multiplicity, int d,
                         const std::function<void(const LoopDatum&)>& f) {
  for (int w = 1; w <= static_cast<int>(max_particles) * max_multiplicity; ++w)
    for (const auto& lambda : enumerate_partitions(w)) {
      if (lambda.cardinality() > max_particles || lambda.parts().back() > max_multiplicity) continue;
      const auto blocks = distinct_parts(lambda);
      std::vector<std::vector<Permutation>> choices;
      for (int m : blocks) choices.push_back(all_permutations(lambda.count(m)));
      LoopDatum ld = LoopDatum::identity(lambda, d);
      const std::size_t n = lambda.cardinality();
      auto rec = [&](auto&& self, std::size_t b) -> void {
        if (b == blocks.size()) {
          for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            for (std::size_t i = 0; i < n; ++i) ld.u[i] = ((mask >> i) & 1u) ? -1 : 1;
            f(ld);
          }
          return;
        }
        for (const auto& p : choices[b]) {
          ld.perms[blocks[b]] = p;
          self(self, b + 1);
        }
      };
      rec(rec, 0);
    }
}

nlohmann::json loop_datum_to_json(const LoopDatum& ld) {
  nlohmann::json perms = nlohmann::json::object();
  for (const auto& [m, p] : ld.perms) {
    std::vector<std::size_t> one_based;
    for (auto x : p.img) one_based.push_back(x + 1);
    perms[std::to_string(m)] = one_based;
  }
  nlohmann::json j = nlohmann::json::object();
  j["lambda"] = ld.lambda.parts();
  j["perms"] = perms;
  j["u"] = ld.u;
  j["d"] = ld.d;
  return j;
}

LoopDatum loop_datum_from_json(const nlohmann::json& j) {
  try {
    LoopDatum ld;
    ld.lambda = Partition::normalize(j.at("lambda").get<std::vector<long>>());
    ld.d = j.at("d").get<int>();
    ld.u = j.at("u").get<std::vector<int>>();
    for (int m : distinct_parts(ld.lambda)) ld.perms[m] = Permutation::identity(ld.lambda.count(m));
    if (j.contains("perms"))
      for (const auto& [key, val] : j.at("perms").items()) {
        std::size_t used = 0;
        const int m = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument("multiplicity key '" + key + "'");
        if (ld.lambda.count(m) == 0) throw std::invalid_argument("permutation for absent multiplicity " + key);
        ld.perms[m] = Permutation::from_one_based(val.get<std::vector<long>>());
      }
    ld.validate();
    return ld;
  } catch (const nlohmann::json::exception& e) {
    throw io::MalformedInput(std::string("loop datum: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw io::MalformedInput(std::string("loop datum: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw io::MalformedInput(std::string("loop datum: ") + e.what());
  }
}

}  // namespace symstab
