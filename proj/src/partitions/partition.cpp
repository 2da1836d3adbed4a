#include "symstab/partitions/partition.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace symstab {

Partition Partition::normalize(std::vector<long> raw) {
  Partition p;
  for (long v : raw) {
    if (v < 1) throw InvalidPartition("partition parts must be >= 1, got " + std::to_string(v));
    if (v > INT_MAX / 2) throw InvalidPartition("partition part too large");
    p.parts_.push_back(static_cast<int>(v));
  }
  std::sort(p.parts_.begin(), p.parts_.end());
  p.weight_ = std::accumulate(p.parts_.begin(), p.parts_.end(), 0);
  return p;
}

Partition Partition::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty() || s == "()" || s == "[]") return {};
  if (s.front() == '[' && s.back() == ']') {
    s = s.substr(1, s.size() - 2);
    std::replace(s.begin(), s.end(), ',', '+');
  }
  std::vector<long> raw;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find('+', pos);
    const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InvalidPartition("cannot parse partition \"" + std::string(text) + "\"");
    raw.push_back(std::stol(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return normalize(std::move(raw));
}

Partition Partition::ones(std::size_t k) { return normalize(std::vector<long>(k, 1)); }

std::size_t Partition::count(int m) const {
  return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), m));
}

std::string Partition::str() const {
  if (parts_.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(parts_[i]);
  }
  return s;
}

Partition add_ones(const Partition& lambda, std::size_t j) {
  std::vector<long> raw(j, 1);
  raw.insert(raw.end(), lambda.parts().begin(), lambda.parts().end());
  return Partition::normalize(std::move(raw));
}

std::vector<Partition> elementary_collapses(const Partition& lambda) {
  std::set<Partition> out;
  const auto& p = lambda.parts();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      std::vector<long> raw;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (i != a && i != b) raw.push_back(p[i]);
      raw.push_back(p[a] + p[b]);
      out.insert(Partition::normalize(std::move(raw)));
    }
  return {out.begin(), out.end()};
}

bool is_collapse(const Partition& coarse, const Partition& fine) {
  if (coarse.weight() != fine.weight()) return false;
  if (coarse.cardinality() > fine.cardinality()) return false;
  if (coarse == fine) return true;
  // Place parts of the fine partition, largest first, into blocks whose
  // remaining capacities start at the coarse parts.
  std::vector<int> items(fine.parts().rbegin(), fine.parts().rend());
  std::set<std::pair<std::size_t, std::vector<int>>> dead;
  std::function<bool(std::size_t, std::vector<int>&)> place = [&](std::size_t i,
                                                                   std::vector<int>& cap) -> bool {
    if (i == items.size()) return true;  // weights agree, so every block is exactly full
    std::vector<int> key = cap;
    std::sort(key.begin(), key.end());
    if (dead.count({i, key})) return false;
    std::set<int> tried;
    for (std::size_t b = 0; b < cap.size(); ++b) {
      if (cap[b] < items[i] || !tried.insert(cap[b]).second) continue;
      cap[b] -= items[i];
      const bool ok = place(i + 1, cap);
      cap[b] += items[i];
      if (ok) return true;
    }
    dead.insert({i, std::move(key)});
    return false;
  };
  std::vector<int> cap(coarse.parts().begin(), coarse.parts().end());
  return place(0, cap);
}

bool is_collapse_bfs(const Partition& coarse, const Partition& fine) {
  if (coarse.weight() != fine.weight()) return false;
  std::set<Partition> seen{fine};
  std::deque<Partition> queue{fine};
  while (!queue.empty()) {
    Partition cur = queue.front();
    queue.pop_front();
    if (cur == coarse) return true;
    if (cur.cardinality() <= coarse.cardinality()) continue;
    for (auto& next : elementary_collapses(cur))
      if (seen.insert(next).second) queue.push_back(std::move(next));
  }
  return false;
}

namespace {

void enumerate_into(int remaining, int min_part, std::vector<long>& prefix,
                    std::vector<Partition>& out, std::size_t want_parts) {
  if (remaining == 0) {
    if (want_parts == 0 || prefix.size() == want_parts) out.push_back(Partition::normalize(prefix));
    return;
  }
  if (want_parts != 0 && prefix.size() >= want_parts) return;
  for (int m = min_part; m <= remaining; ++m) {
    prefix.push_back(m);
    enumerate_into(remaining - m, m, prefix, out, want_parts);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int k, int cap) {
  if (k < 0) throw InvalidPartition("weight must be non-negative");
  if (k > cap)
    throw ResourceLimit("partition weight " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  std::vector<Partition> out;
  std::vector<long> prefix;
  if (k == 0) return {Partition{}};
  enumerate_into(k, 1, prefix, out, 0);
  return out;
}

std::vector<Partition> partitions_with_parts(int k, std::size_t n, int cap) {
  if (k > cap)
    throw ResourceLimit("partition weight " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  if (k < 0) return {};
  if (n == 0) return k == 0 ? std::vector<Partition>{Partition{}} : std::vector<Partition>{};
  std::vector<Partition> out;
  std::vector<long> prefix;
  enumerate_into(k, 1, prefix, out, n);
  return out;
}

std::vector<Partition> col(const Partition& lambda, int p) {
  const int k = lambda.weight();
  if (p < 0 || p >= k) return {};
  std::vector<Partition> out;
  for (auto& cand : partitions_with_parts(k, static_cast<std::size_t>(k - p), std::max(k, kDefaultPartitionCap)))
    if (!is_collapse(cand, lambda)) out.push_back(std::move(cand));
  return out;
}

StabilizationReport stab_collapse_map(const Partition& lambda, int j, int p) {
  StabilizationReport r;
  r.lambda = lambda;
  r.j = j;
  r.p = p;
  const int k = lambda.weight();
  r.in_window = 2 * p <= j + k;
  r.source = col(add_ones(lambda, static_cast<std::size_t>(j)), p);
  r.target = col(add_ones(lambda, static_cast<std::size_t>(j + 1)), p);
  std::set<Partition> tgt(r.target.begin(), r.target.end());
  std::set<Partition> img;
  for (const auto& x : r.source) {
    Partition y = add_ones(x, 1);
    if (!tgt.count(y)) r.images_in_target = false;
    if (!img.insert(y).second) r.injective = false;
    r.images.push_back(std::move(y));
  }
  for (const auto& t : r.target)
    if (!img.count(t)) {
      r.missed.push_back(t);
      if (t.count(1) > 0) r.missed_one_free = false;
    }
  r.surjective = r.missed.empty();
  r.min_ones_in_target = SIZE_MAX;
  for (const auto& t : r.target) r.min_ones_in_target = std::min(r.min_ones_in_target, t.count(1));
  return r;
}

std::vector<std::size_t> collapse_chain_lengths(const Partition& lambda) {
  const Partition top = Partition::ones(static_cast<std::size_t>(lambda.weight()));
  std::map<Partition, std::set<std::size_t>> memo;
  std::function<const std::set<std::size_t>&(const Partition&)> lengths =
      [&](const Partition& cur) -> const std::set<std::size_t>& {
    auto it = memo.find(cur);
    if (it != memo.end()) return it->second;
    std::set<std::size_t> out;
    if (cur == lambda) {
      out.insert(0);
    } else {
      for (const auto& next : elementary_collapses(cur))
        if (is_collapse(lambda, next))
          for (auto l : lengths(next)) out.insert(l + 1);
    }
    return memo.emplace(cur, std::move(out)).first->second;
  };
  const auto& s = lengths(top);
  return {s.begin(), s.end()};
}

}  // namespace symstab
