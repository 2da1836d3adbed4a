#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symstab/exactlin/rational.hpp"

namespace symstab {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

class DenseMatrix;

/// Sparse rational matrix stored by rows; entries within a row are sorted by
/// column and no explicit zeros are kept.
class QMatrix {
 public:
  struct Entry {
    std::size_t col;
    Rational value;
  };

  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }
  static QMatrix from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> t);
  static QMatrix from_dense(const DenseMatrix& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add_to(std::size_t r, std::size_t c, const Rational& v);
  std::span<const Entry> row(std::size_t r) const { return data_[r]; }

  QMatrix transpose() const;
  DenseMatrix to_dense() const;
  std::vector<Triplet> triplets() const;

  /// Entries in {0, +1, -1} and exactly one non-zero per row and column.
  bool is_signed_permutation() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& s);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

  std::vector<Rational> apply(std::span<const Rational> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Dense rational matrix, row-major. Used where subspace bookkeeping needs
/// explicit bases (spectral pages, subquotients, small group actions).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix column(std::span<const Rational> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<Rational> col(std::size_t c) const;
  DenseMatrix select_cols(std::span<const std::size_t> idx) const;
  DenseMatrix select_rows(std::span<const std::size_t> idx) const;
  DenseMatrix transpose() const;
  bool is_zero() const;

  /// Horizontal concatenation; row counts must agree.
  static DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b);
  static DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

  /// In-place reduced row echelon form. Returns the pivot columns.
  std::vector<std::size_t> rref();

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

DenseMatrix operator*(const QMatrix& a, const DenseMatrix& b);

std::string describe_shape(std::size_t rows, std::size_t cols);

}  // namespace symstab
