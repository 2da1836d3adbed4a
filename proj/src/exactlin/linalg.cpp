#include "symstab/exactlin/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "symstab/kernels/modp.hpp"

namespace symstab {

namespace {

struct IntEntry {
  std::size_t col;
  Integer value;
};
using IntRow = std::vector<IntEntry>;

// Scales a rational row to a primitive integer row.
IntRow primitive_row(std::span<const QMatrix::Entry> row) {
  Integer l = 1;
  for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& e : row) {
    Integer v = e.value.get_num() * (l / e.value.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back({e.col, std::move(v)});
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  return out;
}

const Integer* find_col(const IntRow& r, std::size_t c) {
  auto it = std::lower_bound(r.begin(), r.end(), c,
                             [](const IntEntry& e, std::size_t col) { return e.col < col; });
  return (it != r.end() && it->col == c) ? &it->value : nullptr;
}

// r <- a*r - b*piv, then divide out the content.
void eliminate(IntRow& r, const IntRow& piv, const Integer& a, const Integer& b) {
  IntRow out;
  out.reserve(r.size() + piv.size());
  std::size_t i = 0, j = 0;
  Integer g = 0;
  auto push = [&](std::size_t col, Integer v) {
    if (sgn(v) == 0) return;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back({col, std::move(v)});
  };
  while (i < r.size() || j < piv.size()) {
    if (j == piv.size() || (i < r.size() && r[i].col < piv[j].col)) {
      push(r[i].col, a * r[i].value);
      ++i;
    } else if (i == r.size() || piv[j].col < r[i].col) {
      push(piv[j].col, -b * piv[j].value);
      ++j;
    } else {
      push(r[i].col, a * r[i].value - b * piv[j].value);
      ++i;
      ++j;
    }
  }
  if (g > 1)
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  r = std::move(out);
}

constexpr std::size_t kModpMaxEntries = std::size_t{1} << 24;

}  // namespace

std::size_t rank_exact(const QMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) rows.push_back(primitive_row(m.row(r)));

  std::size_t rank = 0;
  while (!rows.empty()) {
    // Shortest row as pivot row, its sparsest-looking leading column as pivot.
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].size() < rows[best].size()) best = i;
    std::swap(rows[best], rows.back());
    IntRow piv = std::move(rows.back());
    rows.pop_back();
    ++rank;
    const std::size_t pc = piv.front().col;
    const Integer pv = piv.front().value;
    std::size_t w = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (const Integer* v = find_col(rows[i], pc)) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), v->get_mpz_t());
        const Integer a = pv / g;
        const Integer b = *v / g;
        eliminate(rows[i], piv, a, b);
      }
      if (!rows[i].empty()) {
        if (w != i) rows[w] = std::move(rows[i]);
        ++w;
      }
    }
    rows.resize(w);
  }
  return rank;
}

long rank_modp(const QMatrix& m) {
  if (m.rows() * m.cols() > kModpMaxEntries) return -1;
  const kernels::ModPrime prime;
  const unsigned long p = prime.value();
  std::vector<double> buf(m.rows() * m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    if (row.empty()) continue;
    for (const auto& e : row)
      if (mpz_divisible_ui_p(e.value.get_den_mpz_t(), p)) return -1;
    IntRow ir = primitive_row(row);
    for (const auto& e : ir)
      buf[r * m.cols() + e.col] = static_cast<double>(mpz_fdiv_ui(e.value.get_mpz_t(), p));
  }
  return static_cast<long>(
      kernels::rank_mod_p(std::move(buf), m.rows(), m.cols(), prime, kernels::axpy_kernel()));
}

std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
  const long rp = rank_modp(m);
  // rank mod p never exceeds the rational rank.
  if (rp >= 0 && static_cast<std::size_t>(rp) == std::min(m.rows(), m.cols()))
    return static_cast<std::size_t>(rp);
  return rank_exact(m);
}

std::size_t rank(const DenseMatrix& m) { return rank(QMatrix::from_dense(m)); }

DenseMatrix kernel_basis(const DenseMatrix& m) {
  DenseMatrix r = m;
  const auto piv = r.rref();
  std::vector<char> is_piv(m.cols(), 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  DenseMatrix k(m.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], j) = -r(i, free[j]);
  }
  return k;
}

QMatrix kernel_basis(const QMatrix& m) { return QMatrix::from_dense(kernel_basis(m.to_dense())); }

DenseMatrix column_basis(const DenseMatrix& m) {
  DenseMatrix r = m;
  const auto piv = r.rref();
  return m.select_cols(piv);
}

std::optional<std::vector<Rational>> solve(const DenseMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  DenseMatrix aug = DenseMatrix::hstack(m, DenseMatrix::column(b));
  const auto piv = aug.rref();
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return x;
}

DenseMatrix inverse(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix aug = DenseMatrix::hstack(m, DenseMatrix::identity(n));
  const auto piv = aug.rref();
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1))
    throw std::domain_error("matrix is singular");
  DenseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

Subquotient::Subquotient(const DenseMatrix& numerator, const DenseMatrix& denominator) {
  if (numerator.rows() != denominator.rows())
    throw std::invalid_argument("subquotient: ambient dimension mismatch");
  ambient_ = numerator.rows();
  DenseMatrix both = DenseMatrix::hstack(denominator, numerator);
  DenseMatrix red = both;
  const auto piv = red.rref();
  DenseMatrix num_red = numerator;
  if (num_red.rref().size() != piv.size())
    throw std::invalid_argument("subquotient: denominator not inside numerator");
  std::vector<std::size_t> den_cols, rep_cols;
  for (auto c : piv) (c < denominator.cols() ? den_cols : rep_cols).push_back(c);
  den_dim_ = den_cols.size();
  dim_ = rep_cols.size();
  std::vector<std::size_t> cols = den_cols;
  cols.insert(cols.end(), rep_cols.begin(), rep_cols.end());
  basis_ = both.select_cols(cols);

  // Left inverse through an invertible square block of independent rows.
  const std::size_t m = cols.size();
  left_inv_ = DenseMatrix(m, ambient_);
  if (m == 0) return;
  DenseMatrix bt = basis_.transpose();
  const auto rows = bt.rref();
  DenseMatrix sq = basis_.select_rows(rows);
  DenseMatrix sinv = inverse(sq);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) left_inv_(i, rows[j]) = sinv(i, j);
}

DenseMatrix Subquotient::representatives() const {
  std::vector<std::size_t> idx(dim_);
  for (std::size_t i = 0; i < dim_; ++i) idx[i] = den_dim_ + i;
  return basis_.select_cols(idx);
}

std::vector<Rational> Subquotient::full_coordinates(std::span<const Rational> v, bool& member) const {
  if (v.size() != ambient_) throw std::invalid_argument("subquotient: vector length mismatch");
  const std::size_t m = den_dim_ + dim_;
  std::vector<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(left_inv_(i, j)) != 0 && sgn(v[j]) != 0) x[i] += left_inv_(i, j) * v[j];
  member = true;
  for (std::size_t r = 0; r < ambient_ && member; ++r) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(x[i]) != 0) s += basis_(r, i) * x[i];
    if (s != v[r]) member = false;
  }
  return x;
}

std::vector<Rational> Subquotient::coordinates(std::span<const Rational> v) const {
  bool member = false;
  auto x = full_coordinates(v, member);
  if (!member) throw std::domain_error("subquotient: vector outside numerator span");
  return {x.begin() + static_cast<std::ptrdiff_t>(den_dim_), x.end()};
}

DenseMatrix Subquotient::coordinates(const DenseMatrix& vs) const {
  DenseMatrix out(dim_, vs.cols());
  for (std::size_t c = 0; c < vs.cols(); ++c) {
    const auto x = coordinates(vs.col(c));
    for (std::size_t i = 0; i < dim_; ++i) out(i, c) = x[i];
  }
  return out;
}

bool Subquotient::in_numerator(std::span<const Rational> v) const {
  bool member = false;
  full_coordinates(v, member);
  return member;
}

bool Subquotient::in_denominator(std::span<const Rational> v) const {
  bool member = false;
  auto x = full_coordinates(v, member);
  if (!member) return false;
  for (std::size_t i = den_dim_; i < x.size(); ++i)
    if (sgn(x[i]) != 0) return false;
  return true;
}

}  // namespace symstab
