#include "symstab/spectral/pages.hpp"

#include <algorithm>
#include <sstream>

namespace symstab {

namespace {

DenseMatrix unit_columns(std::size_t dim, const std::vector<std::size_t>& idx) {
  DenseMatrix m(dim, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) m(idx[j], j) = 1;
  return m;
}

DenseMatrix empty_cols(std::size_t rows) { return DenseMatrix(rows, 0); }

std::size_t cell_or_zero(const std::map<PQ, std::size_t>& m, int p, int q) {
  auto it = m.find({p, q});
  return it == m.end() ? 0 : it->second;
}

// Pads a filtration with empty stages below and full stages above.
FilteredComplex pad(FilteredComplex fc, int p_lo, int p_hi) {
  std::vector<std::size_t> all(fc.ambient.total_dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  while (fc.p0 > p_lo) {
    fc.steps.insert(fc.steps.begin(), std::vector<std::size_t>{});
    --fc.p0;
  }
  while (fc.p_hi() < p_hi) fc.steps.push_back(all);
  return fc;
}

}  // namespace

PQ differential_bidegree(Direction dir, int r) {
  return dir == Direction::cochain ? PQ{-r, r + 1} : PQ{-r, r - 1};
}

std::size_t SpectralPages::dim(int r, int p, int q) const {
  if (pages.empty()) return 0;
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(std::max(r, 1) - 1), pages.size() - 1);
  return cell_or_zero(pages[i].dims, p, q);
}

std::size_t SpectralPages::infinity_dim(int p, int q) const { return cell_or_zero(infinity, p, q); }

std::size_t SpectralPages::abutment(int n) const {
  std::size_t s = 0;
  for (int p = p_lo; p <= p_hi; ++p) s += infinity_dim(p, n - p);
  return s;
}

std::string SpectralPages::csv() const {
  std::ostringstream out;
  out << "r,p,q,dim\n";
  for (const auto& pg : pages)
    for (const auto& [pq, d] : pg.dims) out << pg.r << ',' << pq.first << ',' << pq.second << ',' << d << '\n';
  for (const auto& [pq, d] : infinity) out << "inf," << pq.first << ',' << pq.second << ',' << d << '\n';
  return out.str();
}

PageSystem::PageSystem(FilteredComplex fc, int last_page) : fc_(std::move(fc)) {
  validate(fc_);
  level_ = filtration_levels(fc_);
  last_ = last_page > 0 ? last_page : (p_hi() - p_lo() + 2);
  const ChainComplex& c = fc_.ambient;
  for (int n = c.lo(); n <= c.hi(); ++n) d_[n] = c.differential(n).to_dense();

  const int s = step(direction());
  for (int r = 1; r <= last_; ++r)
    for (int p = p_lo(); p <= p_hi(); ++p)
      for (int n = n_lo(); n <= n_hi(); ++n) {
        DenseMatrix num = cycles_rel(r, p, n);
        DenseMatrix den = DenseMatrix::hstack(cycles_rel(r - 1, p - 1, n), boundaries(r, p, n));
        cells_.emplace(Key{r, p, n}, Subquotient(num, den));
      }
  for (int r = 1; r <= last_; ++r)
    for (int p = p_lo(); p <= p_hi(); ++p)
      for (int n = n_lo(); n <= n_hi(); ++n) {
        const Subquotient& src = cell(r, p, n);
        const int tp = p - r, tn = n + s;
        if (tp < p_lo() || tn < n_lo() || tn > n_hi()) {
          diffs_.emplace(Key{r, p, n}, DenseMatrix(0, src.dim()));
          continue;
        }
        const DenseMatrix images = d_.at(n) * src.representatives();
        diffs_.emplace(Key{r, p, n}, cell(r, tp, tn).coordinates(images));
      }
  z_cache_.clear();
}

std::vector<std::size_t> PageSystem::stage(int p, int n) const {
  std::vector<std::size_t> out;
  if (n < n_lo() || n > n_hi()) return out;
  const std::size_t off = global_offset(fc_.ambient, n);
  for (std::size_t i = 0; i < fc_.ambient.dim(n); ++i)
    if (level_[off + i] <= p) out.push_back(i);
  return out;
}

DenseMatrix PageSystem::cycles_rel(int r, int p, int n) {
  const Key key{r, p, n};
  if (auto it = z_cache_.find(key); it != z_cache_.end()) return it->second;
  const ChainComplex& c = fc_.ambient;
  const std::size_t dim = c.dim(n);
  const auto cols = stage(p, n);
  DenseMatrix z;
  const int tn = n + step(direction());
  if (r <= 0 || tn < n_lo() || tn > n_hi()) {
    z = unit_columns(dim, cols);
  } else {
    std::vector<std::size_t> outside;
    const std::size_t toff = global_offset(c, tn);
    for (std::size_t i = 0; i < c.dim(tn); ++i)
      if (level_[toff + i] > p - r) outside.push_back(i);
    const DenseMatrix m = d_.at(n).select_rows(outside).select_cols(cols);
    z = unit_columns(dim, cols) * kernel_basis(m);
  }
  z_cache_.emplace(key, z);
  return z;
}

DenseMatrix PageSystem::boundaries(int r, int p, int n) {
  const int sn = n - step(direction());
  if (sn < n_lo() || sn > n_hi()) return empty_cols(fc_.ambient.dim(n));
  return d_.at(sn) * cycles_rel(r - 1, p + r - 1, sn);
}

const Subquotient& PageSystem::cell(int r, int p, int n) const { return cells_.at(Key{r, p, n}); }

const DenseMatrix& PageSystem::differential(int r, int p, int n) const { return diffs_.at(Key{r, p, n}); }

SpectralPages PageSystem::summary() const {
  SpectralPages ss;
  ss.direction = direction();
  ss.p_lo = p_lo();
  ss.p_hi = p_hi();
  ss.n_lo = n_lo();
  ss.n_hi = n_hi();
  for (int r = 1; r <= last_; ++r) {
    SpectralPage pg;
    pg.r = r;
    for (int p = p_lo(); p <= p_hi(); ++p)
      for (int n = n_lo(); n <= n_hi(); ++n) {
        pg.dims[{p, n - p}] = cell(r, p, n).dim();
        pg.differentials[{p, n - p}] = QMatrix::from_dense(differential(r, p, n));
      }
    ss.pages.push_back(std::move(pg));
  }
  ss.infinity = ss.pages.back().dims;
  ss.target = homology(fc_.ambient);
  return ss;
}

SpectralPages compute_pages(const FilteredComplex& fc) {
  validate(fc);
  return PageSystem(normalize(fc)).summary();
}

std::vector<std::string> check_pages(const SpectralPages& ss) {
  std::vector<std::string> bad;
  auto where = [](int r, int p, int q) {
    return "r=" + std::to_string(r) + " (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")";
  };
  for (std::size_t i = 0; i < ss.pages.size(); ++i) {
    const auto& pg = ss.pages[i];
    const auto [dp, dq] = differential_bidegree(ss.direction, pg.r);
    for (const auto& [pq, d] : pg.differentials) {
      const auto [p, q] = pq;
      auto next = pg.differentials.find({p + dp, q + dq});
      if (next != pg.differentials.end() && next->second.cols() == d.rows() && d.rows() > 0 &&
          !(next->second * d).is_zero())
        bad.push_back("d_r o d_r != 0 at " + where(pg.r, p, q));
      if (d.cols() != cell_or_zero(pg.dims, p, q)) bad.push_back("differential shape mismatch at " + where(pg.r, p, q));
    }
    if (i + 1 < ss.pages.size()) {
      const auto& nx = ss.pages[i + 1];
      for (const auto& [pq, dim] : pg.dims) {
        const auto [p, q] = pq;
        const std::size_t out = rank(pg.differentials.at(pq));
        std::size_t in = 0;
        if (auto it = pg.differentials.find({p - dp, q - dq}); it != pg.differentials.end()) in = rank(it->second);
        const std::size_t expect = dim - out - in;
        if (cell_or_zero(nx.dims, p, q) != expect)
          bad.push_back("E^{r+1} differs from H(E^r, d_r) at " + where(pg.r, p, q));
        if (cell_or_zero(nx.dims, p, q) > dim) bad.push_back("dimension increased at " + where(pg.r, p, q));
      }
      if (pg.r > ss.filtration_length() && nx.dims != pg.dims)
        bad.push_back("page " + std::to_string(nx.r) + " changed past the filtration length");
    }
  }
  for (int n = ss.n_lo; n <= ss.n_hi; ++n)
    if (ss.abutment(n) != ss.target.at(n))
      bad.push_back("E-infinity in total degree " + std::to_string(n) + " sums to " +
                    std::to_string(ss.abutment(n)) + ", ambient Betti number is " +
                    std::to_string(ss.target.at(n)));
  return bad;
}

std::vector<std::map<PQ, std::size_t>> derived_couple_dims(const FilteredComplex& given, int last_page) {
  validate(given);
  const FilteredComplex fc = normalize(given);
  const ChainComplex& c = fc.ambient;
  const int s = step(c.direction());
  const int plo = fc.p_lo(), phi = fc.p_hi(), nlo = c.lo(), nhi = c.hi();
  const auto level = filtration_levels(fc);
  auto stage = [&](int p, int n) {
    std::vector<std::size_t> out;
    if (n < nlo || n > nhi) return out;
    const std::size_t off = global_offset(c, n);
    for (std::size_t i = 0; i < c.dim(n); ++i)
      if (level[off + i] <= p) out.push_back(i);
    return out;
  };
  auto dense_d = [&](int n) { return c.differential(n).to_dense(); };
  auto in_range = [&](int n) { return n >= nlo && n <= nhi; };

  // A_{p,n} = H^n(F_p) for p in [plo - 1, phi].
  std::map<PQ, Subquotient> A;
  for (int p = plo - 1; p <= phi; ++p)
    for (int n = nlo; n <= nhi; ++n) {
      const auto cols = stage(p, n);
      const DenseMatrix basis = unit_columns(c.dim(n), cols);
      DenseMatrix cyc = basis;
      if (in_range(n + s)) cyc = basis * kernel_basis(dense_d(n).select_cols(cols));
      DenseMatrix bd = empty_cols(c.dim(n));
      if (in_range(n - s)) bd = dense_d(n - s) * unit_columns(c.dim(n - s), stage(p, n - s));
      A.emplace(PQ{p, n}, Subquotient(cyc, bd));
    }
  // E^1 only through the first page of the direct model.
  PageSystem first(fc, 1);
  auto E1 = [&](int p, int n) -> const Subquotient& { return first.cell(1, p, n); };

  std::map<PQ, DenseMatrix> i_map, j_map, k_map;
  for (int p = plo; p <= phi; ++p)
    for (int n = nlo; n <= nhi; ++n) {
      i_map[{p, n}] = A.at({p, n}).coordinates(A.at({p - 1, n}).representatives());
      j_map[{p, n}] = E1(p, n).coordinates(A.at({p, n}).representatives());
      if (in_range(n + s))
        k_map[{p, n}] = A.at({p - 1, n + s}).coordinates(dense_d(n) * E1(p, n).representatives());
      else
        k_map[{p, n}] = DenseMatrix(0, E1(p, n).dim());
    }

  // E^r as subquotients of E^1 coordinates.
  std::map<PQ, DenseMatrix> Z, B;
  for (int p = plo; p <= phi; ++p)
    for (int n = nlo; n <= nhi; ++n) {
      Z[{p, n}] = DenseMatrix::identity(E1(p, n).dim());
      B[{p, n}] = empty_cols(E1(p, n).dim());
    }

  std::vector<std::map<PQ, std::size_t>> out;
  for (int r = 1; r <= last_page; ++r) {
    std::map<PQ, Subquotient> Er;
    std::map<PQ, std::size_t> dims;
    for (int p = plo; p <= phi; ++p)
      for (int n = nlo; n <= nhi; ++n) {
        Er.emplace(PQ{p, n}, Subquotient(Z.at({p, n}), B.at({p, n})));
        dims[{p, n - p}] = Er.at({p, n}).dim();
      }
    out.push_back(dims);
    if (r == last_page) break;

    // d_r [x] = [j b] where i^{r-1} b = k x.
    std::map<PQ, DenseMatrix> dr;
    for (int p = plo; p <= phi; ++p)
      for (int n = nlo; n <= nhi; ++n) {
        const Subquotient& src = Er.at({p, n});
        const int tp = p - r, tn = n + s;
        if (tp < plo || !in_range(tn)) {
          dr[{p, n}] = DenseMatrix(0, src.dim());
          continue;
        }
        DenseMatrix iter = DenseMatrix::identity(A.at({tp, tn}).dim());
        for (int m = tp + 1; m <= p - 1; ++m) iter = i_map.at({m, tn}) * iter;
        const DenseMatrix y = k_map.at({p, n}) * src.representatives();
        DenseMatrix img(E1(tp, tn).dim(), y.cols());
        for (std::size_t col = 0; col < y.cols(); ++col) {
          const auto b = solve(iter, y.col(col));
          if (!b) throw std::logic_error("derived couple: k x is not in the image of i^(r-1)");
          const auto e = j_map.at({tp, tn}) * DenseMatrix::column(*b);
          for (std::size_t row = 0; row < e.rows(); ++row) img(row, col) = e(row, 0);
        }
        dr[{p, n}] = Er.at({tp, tn}).coordinates(img);
      }
    std::map<PQ, DenseMatrix> Z2, B2;
    for (int p = plo; p <= phi; ++p)
      for (int n = nlo; n <= nhi; ++n) {
        const DenseMatrix reps = Er.at({p, n}).representatives();
        Z2[{p, n}] = DenseMatrix::hstack(B.at({p, n}), reps * kernel_basis(dr.at({p, n})));
        DenseMatrix b2 = B.at({p, n});
        const int sp = p + r, sn = n - s;
        if (sp <= phi && in_range(sn)) b2 = DenseMatrix::hstack(b2, reps * dr.at({sp, sn}));
        B2[{p, n}] = std::move(b2);
      }
    Z = std::move(Z2);
    B = std::move(B2);
  }
  return out;
}

LesReport two_step_les(const FilteredComplex& fc) {
  validate(fc);
  if (fc.steps.size() != 2) throw InvalidFiltration("the long exact sequence needs exactly two stages U <= X");
  const int pu = fc.p0, px = fc.p0 + 1;
  PageSystem ps(fc, 1);
  const ChainComplex& c = fc.ambient;
  const int s = step(c.direction());
  const auto level = filtration_levels(fc);
  auto in_range = [&](int n) { return n >= c.lo() && n <= c.hi(); };
  auto stage = [&](int p, int n) {
    std::vector<std::size_t> out;
    if (!in_range(n)) return out;
    const std::size_t off = global_offset(c, n);
    for (std::size_t i = 0; i < c.dim(n); ++i)
      if (level[off + i] <= p) out.push_back(i);
    return out;
  };
  auto homology_of_stage = [&](int p, int n) {
    const auto cols = stage(p, n);
    const DenseMatrix basis = unit_columns(c.dim(n), cols);
    DenseMatrix cyc = basis;
    if (in_range(n + s)) cyc = basis * kernel_basis(c.differential(n).to_dense().select_cols(cols));
    DenseMatrix bd = empty_cols(c.dim(n));
    if (in_range(n - s)) bd = c.differential(n - s).to_dense() * unit_columns(c.dim(n - s), stage(p, n - s));
    return Subquotient(cyc, bd);
  };

  LesReport rep;
  std::map<int, DenseMatrix> mi, mj, mk;
  std::map<int, Subquotient> hu, hx;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    hu.emplace(n, homology_of_stage(pu, n));
    hx.emplace(n, homology_of_stage(px, n));
  }
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const Subquotient& hc = ps.cell(1, px, n);
    mi[n] = hx.at(n).coordinates(hu.at(n).representatives());
    mj[n] = hc.coordinates(hx.at(n).representatives());
    mk[n] = in_range(n + s) ? hu.at(n + s).coordinates(c.differential(n).to_dense() * hc.representatives())
                            : DenseMatrix(0, hc.dim());
    rep.degrees.push_back({n, hu.at(n).dim(), hx.at(n).dim(), hc.dim(), rank(mi[n]), rank(mj[n]), rank(mk[n])});
  }
  auto fail = [&](const std::string& what, int n) { rep.failures.push_back(what + " in degree " + std::to_string(n)); };
  for (const auto& d : rep.degrees) {
    const int n = d.n;
    if (!(mj[n] * mi[n]).is_zero()) fail("j o i != 0", n);
    if (!(mk[n] * mj[n]).is_zero()) fail("k o j != 0", n);
    if (d.h_total - d.rank_j != d.rank_i) fail("not exact at H(X)", n);
    if (d.h_quot - d.rank_k != d.rank_j) fail("not exact at H(C)", n);
    if (in_range(n + s)) {
      if (!(mi[n + s] * mk[n]).is_zero()) fail("i o k != 0", n);
      const auto& up = rep.degrees[static_cast<std::size_t>(n + s - c.lo())];
      if (up.h_sub - up.rank_i != d.rank_k) fail("not exact at H(U)", n + s);
    } else if (d.rank_k != 0) {
      fail("connecting map leaves the complex", n);
    }
  }
  // Exactness at H(U) in the first degree reached by nothing.
  const int first = s > 0 ? c.lo() : c.hi();
  const auto& d0 = rep.degrees[static_cast<std::size_t>(first - c.lo())];
  if (d0.h_sub != d0.rank_i) fail("not exact at H(U)", first);
  return rep;
}

bool comparison_condition(const std::vector<CellMap>& cells, Direction dir, int s) {
  for (const auto& m : cells) {
    const int n = m.p + m.q;
    const bool stable = dir == Direction::cochain ? n >= s : n <= s;
    const bool edge = dir == Direction::cochain ? n == s - 1 : n == s + 1;
    if (stable && !(m.injective() && m.surjective())) return false;
    if (edge && !m.surjective()) return false;
  }
  return true;
}

CompareReport compare_pages(const FilteredComplex& src0, const FilteredComplex& tgt0,
                            const std::vector<QMatrix>& f, int threshold) {
  validate(src0);
  validate(tgt0);
  const ChainComplex& a = src0.ambient;
  const ChainComplex& b = tgt0.ambient;
  if (a.direction() != b.direction() || a.lo() != b.lo() || a.length() != b.length())
    throw std::invalid_argument("compare: complexes must share direction and degree range");
  if (!is_chain_map(f, a, b)) throw std::invalid_argument("compare: map is not a chain map");
  const auto la = filtration_levels(src0), lb = filtration_levels(tgt0);
  for (int n = a.lo(); n <= a.hi(); ++n) {
    const QMatrix& fn = f[static_cast<std::size_t>(n - a.lo())];
    const std::size_t oa = global_offset(a, n), ob = global_offset(b, n);
    for (std::size_t r = 0; r < fn.rows(); ++r)
      for (const auto& e : fn.row(r))
        if (lb[ob + r] > la[oa + e.col])
          throw std::invalid_argument("compare: map does not preserve the filtration (degree " +
                                      std::to_string(n) + ")");
  }
  const int plo = std::min(src0.p_lo(), tgt0.p_lo()), phi = std::max(src0.p_hi(), tgt0.p_hi());
  const int last = phi - plo + 2;
  PageSystem ps(pad(src0, plo, phi), last), pt(pad(tgt0, plo, phi), last);

  CompareReport rep;
  rep.direction = a.direction();
  rep.threshold = threshold;
  for (int r = 1; r <= last; ++r) {
    std::vector<CellMap> cells;
    for (int p = plo; p <= phi; ++p)
      for (int n = a.lo(); n <= a.hi(); ++n) {
        const Subquotient& cs = ps.cell(r, p, n);
        const Subquotient& ct = pt.cell(r, p, n);
        const DenseMatrix m = ct.coordinates(f[static_cast<std::size_t>(n - a.lo())] * cs.representatives());
        cells.push_back({p, n - p, cs.dim(), ct.dim(), rank(m)});
      }
    rep.pages.push_back(std::move(cells));
  }
  rep.infinity = rep.pages.back();
  rep.hypothesis = comparison_condition(rep.pages.front(), rep.direction, threshold);
  rep.conclusion = comparison_condition(rep.infinity, rep.direction, threshold);
  return rep;
}

}  // namespace symstab
