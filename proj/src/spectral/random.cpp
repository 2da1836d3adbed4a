#include "symstab/spectral/random.hpp"

#include <algorithm>
#include <numeric>

#include "symstab/exactlin/linalg.hpp"

namespace symstab {

namespace {

int uniform(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

int nonzero(std::mt19937_64& rng, int bound) {
  int v = 0;
  while (v == 0) v = uniform(rng, -bound, bound);
  return v;
}

// Per-degree bookkeeping for assembling a complex from pieces.
struct Builder {
  Direction dir;
  int lo, hi;
  std::vector<std::vector<int>> levels;            // per degree
  std::vector<std::vector<Triplet>> diff;          // per source degree

  Builder(Direction d, int l, int h)
      : dir(d), lo(l), hi(h), levels(static_cast<std::size_t>(h - l + 1)), diff(levels.size()) {}

  std::size_t add(int n, int level) {
    auto& v = levels[static_cast<std::size_t>(n - lo)];
    v.push_back(level);
    return v.size() - 1;
  }

  FilteredComplex build() const {
    std::vector<std::size_t> dims;
    for (const auto& v : levels) dims.push_back(v.size());
    ChainComplex c(dir, lo, dims);
    for (int n = lo; n <= hi; ++n) {
      const int t = n + step(dir);
      if (t < lo || t > hi) continue;
      c.set_differential(n, QMatrix::from_triplets(c.dim(t), c.dim(n), diff[static_cast<std::size_t>(n - lo)]));
    }
    std::vector<int> flat;
    for (const auto& v : levels) flat.insert(flat.end(), v.begin(), v.end());
    return filtration_from_levels(std::move(c), flat);
  }
};

// Ensures labels run over [p_lo, p_hi] even when some stage adds nothing.
FilteredComplex with_labels(FilteredComplex fc, int p_lo, int p_hi) {
  std::vector<std::size_t> all(fc.ambient.total_dim());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (fc.steps.empty()) fc.p0 = p_lo;
  while (fc.p0 > p_lo) {
    fc.steps.insert(fc.steps.begin(), std::vector<std::size_t>{});
    --fc.p0;
  }
  while (fc.p_hi() < p_hi) fc.steps.push_back(all);
  return fc;
}

}  // namespace

FilteredComplex random_filtered_complex(std::mt19937_64& rng, const RandomFilteredOptions& opt) {
  const int stages = uniform(rng, 1, std::max(1, opt.max_stages));
  const std::size_t target = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(std::max<std::size_t>(1, opt.max_basis))));
  Builder b(opt.direction, opt.lo, opt.hi);
  const int s = step(opt.direction);
  std::size_t count = 0;
  for (int guard = 0; count < target && guard < 1000; ++guard) {
    const int n = uniform(rng, opt.basis_lo, opt.basis_hi);
    const int lx = uniform(rng, 0, stages - 1);
    const bool pair = count + 2 <= target && uniform(rng, 0, 2) > 0;
    if (!pair || n + s < opt.basis_lo || n + s > opt.basis_hi) {
      b.add(n, lx);
      ++count;
      continue;
    }
    const int ly = uniform(rng, 0, lx);
    const std::size_t x = b.add(n, lx);
    const std::size_t y = b.add(n + s, ly);
    b.diff[static_cast<std::size_t>(n - opt.lo)].push_back({y, x, Rational(nonzero(rng, 2))});
    count += 2;
  }
  FilteredComplex fc = with_labels(b.build(), 0, stages - 1);
  return random_filtered_conjugate(rng, fc, nullptr, opt.coefficient_bound);
}

FilteredComplex random_filtered_conjugate(std::mt19937_64& rng, const FilteredComplex& fc,
                                          std::vector<DenseMatrix>* t, int bound) {
  const ChainComplex& c = fc.ambient;
  const auto level = filtration_levels(fc);
  std::vector<DenseMatrix> ts;
  std::vector<int> new_level(level.size());
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const std::size_t dim = c.dim(n), off = global_offset(c, n);
    // Unitriangular in level order, then a random relabelling of positions.
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return level[off + x] < level[off + y]; });
    DenseMatrix u = DenseMatrix::identity(dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t bb = a + 1; bb < dim; ++bb)
        if (uniform(rng, 0, 2) == 0) u(order[a], order[bb]) = uniform(rng, -bound, bound);
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    DenseMatrix pm(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      pm(perm[i], i) = 1;
      new_level[off + perm[i]] = level[off + i];
    }
    ts.push_back(pm * u);
  }
  ChainComplex conj = change_basis(c, ts);
  FilteredComplex out = with_labels(filtration_from_levels(std::move(conj), new_level), fc.p_lo(), fc.p_hi());
  if (t) *t = std::move(ts);
  return out;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
  const ChainComplex& x = a.ambient;
  const ChainComplex& y = b.ambient;
  if (x.direction() != y.direction()) throw std::invalid_argument("direct sum: directions differ");
  const int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  const int s = step(x.direction());
  std::vector<std::size_t> dims;
  for (int n = lo; n <= hi; ++n) dims.push_back(x.dim(n) + y.dim(n));
  ChainComplex c(x.direction(), lo, dims);
  for (int n = lo; n <= hi; ++n) {
    const int t = n + s;
    if (t < lo || t > hi) continue;
    std::vector<Triplet> tr;
    for (const auto& e : x.differential(n).triplets()) tr.push_back(e);
    for (const auto& e : y.differential(n).triplets()) tr.push_back({e.row + x.dim(t), e.col + x.dim(n), e.value});
    c.set_differential(n, QMatrix::from_triplets(c.dim(t), c.dim(n), tr));
  }
  const auto la = filtration_levels(a), lb = filtration_levels(b);
  std::vector<int> level;
  for (int n = lo; n <= hi; ++n) {
    for (std::size_t i = 0; i < x.dim(n); ++i) level.push_back(la[global_offset(x, n) + i]);
    for (std::size_t i = 0; i < y.dim(n); ++i) level.push_back(lb[global_offset(y, n) + i]);
  }
  return with_labels(filtration_from_levels(std::move(c), level), std::min(a.p_lo(), b.p_lo()),
                     std::max(a.p_hi(), b.p_hi()));
}

CompareInstance random_compare_instance(std::mt19937_64& rng, std::size_t index) {
  CompareInstance inst;
  const int lo = 0, hi = 5;
  inst.threshold = uniform(rng, 2, 4);
  const int s = inst.threshold;
  RandomFilteredOptions ox;
  ox.lo = lo;
  ox.hi = hi;
  ox.basis_lo = lo;
  ox.basis_hi = hi;
  ox.max_basis = 16;
  ox.max_stages = 4;
  FilteredComplex x = random_filtered_complex(rng, ox);

  const std::size_t kind = index % 4;

  // Low-degree noise: lives in degrees <= s - 2, so its E^1 vanishes from s - 1
  // on. Kind 0 keeps it one degree lower still.
  RandomFilteredOptions ok = ox;
  ok.basis_lo = lo;
  ok.basis_hi = kind == 0 ? s - 3 : s - 2;
  ok.max_basis = 8;
  FilteredComplex k;
  if (ok.basis_hi >= ok.basis_lo) {
    k = random_filtered_complex(rng, ok);
  } else {
    k.ambient = ChainComplex(Direction::cochain, lo, std::vector<std::size_t>(static_cast<std::size_t>(hi - lo + 1), 0));
    k.steps = {{}};
  }

  auto block_map = [&](const FilteredComplex& from, const FilteredComplex& to) {
    std::vector<QMatrix> f;
    for (int n = lo; n <= hi; ++n) {
      const std::size_t xs = x.ambient.dim(n);
      std::vector<Triplet> tr;
      for (std::size_t i = 0; i < xs; ++i) tr.push_back({i, i, Rational(1)});
      f.push_back(QMatrix::from_triplets(to.ambient.dim(n), from.ambient.dim(n), tr));
    }
    return f;
  };

  if (kind == 0 || kind == 2) {
    inst.kind = kind == 0 ? "inclusion" : "inclusion-low-noise";
    inst.src = x;
    inst.tgt = direct_sum(x, k);
    inst.map = block_map(inst.src, inst.tgt);
    inst.engineered = true;
  } else if (kind == 1) {
    inst.kind = "projection";
    inst.src = direct_sum(x, k);
    inst.tgt = x;
    inst.map = block_map(inst.src, inst.tgt);
    inst.engineered = true;
  } else {
    // Inclusion of the stage F_m with the induced filtration.
    inst.kind = "stage-inclusion";
    const int m = uniform(rng, x.p_lo(), x.p_hi());
    const auto level = filtration_levels(x);
    const ChainComplex& c = x.ambient;
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::size_t>> keep;
    std::vector<int> sub_level;
    for (int n = lo; n <= hi; ++n) {
      std::vector<std::size_t> kk;
      for (std::size_t i = 0; i < c.dim(n); ++i)
        if (level[global_offset(c, n) + i] <= m) {
          kk.push_back(i);
          sub_level.push_back(level[global_offset(c, n) + i]);
        }
      dims.push_back(kk.size());
      keep.push_back(std::move(kk));
    }
    ChainComplex sub(c.direction(), lo, dims);
    for (int n = lo; n <= hi; ++n) {
      const int t = n + step(c.direction());
      if (t < lo || t > hi) continue;
      const DenseMatrix d = c.differential(n).to_dense().select_rows(keep[static_cast<std::size_t>(t - lo)])
                                .select_cols(keep[static_cast<std::size_t>(n - lo)]);
      sub.set_differential(n, QMatrix::from_dense(d));
    }
    inst.src = with_labels(filtration_from_levels(std::move(sub), sub_level), x.p_lo(), x.p_hi());
    inst.tgt = x;
    for (int n = lo; n <= hi; ++n) {
      std::vector<Triplet> tr;
      const auto& kk = keep[static_cast<std::size_t>(n - lo)];
      for (std::size_t j = 0; j < kk.size(); ++j) tr.push_back({kk[j], j, Rational(1)});
      inst.map.push_back(QMatrix::from_triplets(c.dim(n), kk.size(), tr));
    }
    inst.engineered = false;
  }

  // Hide the block structure on both sides.
  std::vector<DenseMatrix> ts, tt;
  inst.src = random_filtered_conjugate(rng, inst.src, &ts);
  inst.tgt = random_filtered_conjugate(rng, inst.tgt, &tt);
  for (std::size_t i = 0; i < inst.map.size(); ++i)
    inst.map[i] = QMatrix::from_dense(tt[i] * inst.map[i].to_dense() * inverse(ts[i]));
  return inst;
}

}  // namespace symstab
