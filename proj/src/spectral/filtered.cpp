#include "symstab/spectral/filtered.hpp"

#include <algorithm>
#include <string>

namespace symstab {

std::size_t global_offset(const ChainComplex& c, int n) {
  std::size_t off = 0;
  for (int m = c.lo(); m < n && m <= c.hi(); ++m) off += c.dim(m);
  return off;
}

std::vector<int> filtration_levels(const FilteredComplex& fc) {
  const std::size_t total = fc.ambient.total_dim();
  std::vector<int> level(total, fc.p_hi() + 1);
  for (std::size_t i = fc.steps.size(); i-- > 0;)
    for (auto g : fc.steps[i])
      if (g < total) level[g] = fc.p0 + static_cast<int>(i);
  return level;
}

std::vector<char> stage_mask(const FilteredComplex& fc, int p) {
  const std::size_t total = fc.ambient.total_dim();
  if (p < fc.p_lo()) return std::vector<char>(total, 0);
  if (p > fc.p_hi()) return std::vector<char>(total, 1);
  std::vector<char> m(total, 0);
  for (auto g : fc.steps[static_cast<std::size_t>(p - fc.p0)]) m[g] = 1;
  return m;
}

void validate(const FilteredComplex& fc) {
  fc.ambient.validate();
  const std::size_t total = fc.ambient.total_dim();
  if (fc.steps.empty()) throw InvalidFiltration("filtration has no stages");
  for (std::size_t i = 0; i < fc.steps.size(); ++i) {
    const auto& s = fc.steps[i];
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t] >= total)
        throw InvalidFiltration("stage " + std::to_string(i) + " has index " + std::to_string(s[t]) +
                                " outside the basis of size " + std::to_string(total));
      if (t > 0 && s[t] <= s[t - 1])
        throw InvalidFiltration("stage " + std::to_string(i) + " is not strictly increasing");
    }
    if (i > 0 && !std::includes(s.begin(), s.end(), fc.steps[i - 1].begin(), fc.steps[i - 1].end()))
      throw InvalidFiltration("stage " + std::to_string(i) + " does not contain stage " +
                              std::to_string(i - 1));
  }
  if (fc.steps.back().size() != total) throw InvalidFiltration("last stage is not the whole basis");

  // Closure: an entry of d from basis element b to basis element a needs level(a) <= level(b).
  const auto level = filtration_levels(fc);
  const ChainComplex& c = fc.ambient;
  const int s = step(c.direction());
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const int tgt = n + s;
    if (tgt < c.lo() || tgt > c.hi()) continue;
    const QMatrix d = c.differential(n);
    const std::size_t src_off = global_offset(c, n), tgt_off = global_offset(c, tgt);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& e : d.row(r))
        if (level[tgt_off + r] > level[src_off + e.col])
          throw InvalidFiltration("stage " + std::to_string(level[src_off + e.col]) +
                                  " is not closed under the differential (basis element " +
                                  std::to_string(src_off + e.col) + " hits " +
                                  std::to_string(tgt_off + r) + ")");
  }
}

FilteredComplex normalize(FilteredComplex fc) {
  std::size_t lead = 0;
  while (lead + 1 < fc.steps.size() && fc.steps[lead].empty()) ++lead;
  fc.steps.erase(fc.steps.begin(), fc.steps.begin() + static_cast<std::ptrdiff_t>(lead));
  fc.p0 += static_cast<int>(lead);
  const std::size_t total = fc.ambient.total_dim();
  while (fc.steps.size() >= 2 && fc.steps[fc.steps.size() - 2].size() == total) fc.steps.pop_back();
  return fc;
}

FilteredComplex filtration_from_levels(ChainComplex c, const std::vector<int>& level) {
  FilteredComplex fc;
  if (level.size() != c.total_dim()) throw InvalidFiltration("one level per basis element required");
  int lo = 0, hi = 0;
  if (!level.empty()) {
    lo = *std::min_element(level.begin(), level.end());
    hi = *std::max_element(level.begin(), level.end());
  }
  fc.ambient = std::move(c);
  fc.p0 = lo;
  for (int p = lo; p <= hi; ++p) {
    std::vector<std::size_t> s;
    for (std::size_t g = 0; g < level.size(); ++g)
      if (level[g] <= p) s.push_back(g);
    fc.steps.push_back(std::move(s));
  }
  return fc;
}

namespace io {

Json filtered_to_json(const FilteredComplex& fc) {
  Json j = complex_to_json(fc.ambient);
  j["p0"] = fc.p0;
  j["filtration"] = fc.steps;
  return j;
}

FilteredComplex filtered_from_json(const Json& j) {
  FilteredComplex fc;
  fc.ambient = complex_from_json(j);
  if (!j.contains("filtration") || !j["filtration"].is_array())
    throw MalformedInput("filtered complex needs a \"filtration\" array");
  try {
    fc.p0 = j.value("p0", 0);
    for (const auto& s : j["filtration"]) {
      auto v = s.get<std::vector<std::size_t>>();
      std::sort(v.begin(), v.end());
      fc.steps.push_back(std::move(v));
    }
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad filtration: ") + e.what());
  }
  return fc;
}

}  // namespace io

}  // namespace symstab
