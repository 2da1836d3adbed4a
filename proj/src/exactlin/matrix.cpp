#include "symstab/exactlin/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace symstab {

std::string describe_shape(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Rational(1)});
  return m;
}

QMatrix QMatrix::from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> t) {
  QMatrix m(rows, cols);
  for (const auto& e : t) {
    if (e.row >= rows || e.col >= cols)
      throw std::out_of_range("triplet (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                              ") outside " + describe_shape(rows, cols));
    m.add_to(e.row, e.col, e.value);
  }
  return m;
}

QMatrix QMatrix::from_dense(const DenseMatrix& d) {
  QMatrix m(d.rows(), d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c)
      if (!symstab::is_zero(d(r, c))) m.data_[r].push_back({c, d(r, c)});
  return m;
}

std::size_t QMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational QMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return Rational(0);
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("QMatrix::set index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  const bool present = it != row.end() && it->col == c;
  if (symstab::is_zero(v)) {
    if (present) row.erase(it);
  } else if (present) {
    it->value = v;
  } else {
    row.insert(it, Entry{c, v});
  }
}

void QMatrix::add_to(std::size_t r, std::size_t c, const Rational& v) {
  if (symstab::is_zero(v)) return;
  if (r >= rows_ || c >= cols_) throw std::out_of_range("QMatrix::add_to index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) {
    it->value += v;
    if (symstab::is_zero(it->value)) row.erase(it);
  } else {
    row.insert(it, Entry{c, v});
  }
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
  return t;
}

DenseMatrix QMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) d(r, e.col) = e.value;
  return d;
}

std::vector<Triplet> QMatrix::triplets() const {
  std::vector<Triplet> out;
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) out.push_back({r, e.col, e.value});
  return out;
}

bool QMatrix::is_signed_permutation() const {
  if (rows_ != cols_) return false;
  std::vector<char> seen(cols_, 0);
  for (const auto& row : data_) {
    if (row.size() != 1) return false;
    const auto& e = row.front();
    if (abs(e.value) != 1 || seen[e.col]) return false;
    seen[e.col] = 1;
  }
  return true;
}

namespace {

template <typename Op>
void merge_rows(std::vector<QMatrix::Entry>& dst, const std::vector<QMatrix::Entry>& src, Op op) {
  std::vector<QMatrix::Entry> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].col < dst[i].col) {
      Rational v;
      op(v, src[j].value);
      out.push_back({src[j].col, std::move(v)});
      ++j;
    } else {
      op(dst[i].value, src[j].value);
      if (!symstab::is_zero(dst[i].value)) out.push_back(std::move(dst[i]));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

}  // namespace

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix += shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r)
    merge_rows(data_[r], o.data_[r], [](Rational& a, const Rational& b) { a += b; });
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMatrix -= shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r)
    merge_rows(data_[r], o.data_[r], [](Rational& a, const Rational& b) { a -= b; });
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& s) {
  if (symstab::is_zero(s)) {
    for (auto& r : data_) r.clear();
    return *this;
  }
  for (auto& r : data_)
    for (auto& e : r) e.value *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("QMatrix product " + describe_shape(a.rows_, a.cols_) + " * " +
                                describe_shape(b.rows_, b.cols_));
  QMatrix out(a.rows_, b.cols_);
  std::vector<Rational> acc(b.cols_);
  std::vector<char> touched(b.cols_, 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    cols.clear();
    for (const auto& ea : a.data_[r])
      for (const auto& eb : b.data_[ea.col]) {
        if (!touched[eb.col]) {
          touched[eb.col] = 1;
          cols.push_back(eb.col);
          acc[eb.col] = 0;
        }
        acc[eb.col] += ea.value * eb.value;
      }
    std::sort(cols.begin(), cols.end());
    for (auto c : cols) {
      touched[c] = 0;
      if (!symstab::is_zero(acc[c])) out.data_[r].push_back({c, acc[c]});
    }
  }
  return out;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& x = a.data_[r];
    const auto& y = b.data_[r];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].col != y[i].col || x[i].value != y[i].value) return false;
  }
  return true;
}

std::vector<Rational> QMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("QMatrix::apply length mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& e : data_[r]) out[r] += e.value * v[e.col];
  return out;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::column(std::span<const Rational> v) {
  DenseMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

std::vector<Rational> DenseMatrix::col(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

DenseMatrix DenseMatrix::select_cols(std::span<const std::size_t> idx) const {
  DenseMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
  return m;
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> idx) const {
  DenseMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

DenseMatrix DenseMatrix::hstack(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
  DenseMatrix m(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) m(r, a.cols_ + c) = b(r, c);
  }
  return m;
}

DenseMatrix DenseMatrix::vstack(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
  DenseMatrix m(a.rows_ + b.rows_, a.cols_);
  std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
  std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a.a_.size()));
  return m;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("DenseMatrix product " + describe_shape(a.rows_, a.cols_) + " * " +
                                describe_shape(b.rows_, b.cols_));
  DenseMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMatrix - shape");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
  return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("DenseMatrix + shape");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
  return out;
}

DenseMatrix operator*(const QMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("QMatrix * DenseMatrix shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& e : a.row(r))
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(e.col, j)) != 0) out(r, j) += e.value * b(e.col, j);
  return out;
}

std::vector<std::size_t> DenseMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
    std::size_t best = rows_;
    for (std::size_t r = row; r < rows_; ++r)
      if (sgn((*this)(r, c)) != 0) {
        best = r;
        break;
      }
    if (best == rows_) continue;
    if (best != row)
      for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(best, k), (*this)(row, k));
    const Rational inv = 1 / (*this)(row, c);
    for (std::size_t k = c; k < cols_; ++k) (*this)(row, k) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Rational f = (*this)(r, c);
      if (sgn(f) == 0) continue;
      for (std::size_t k = c; k < cols_; ++k)
        if (sgn((*this)(row, k)) != 0) (*this)(r, k) -= f * (*this)(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace symstab
