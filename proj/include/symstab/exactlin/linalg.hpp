#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "symstab/exactlin/matrix.hpp"

namespace symstab {

/// Exact rank. Tries the modular fast path first and falls back to
/// fraction-free elimination when the modular rank is not conclusive.
std::size_t rank(const QMatrix& m);
std::size_t rank(const DenseMatrix& m);

/// Fraction-free sparse elimination over the integers; no modular shortcut.
std::size_t rank_exact(const QMatrix& m);

/// Rank of m reduced modulo the kernel prime, or -1 if some denominator is
/// divisible by the prime. Uses the runtime-selected SIMD kernel.
long rank_modp(const QMatrix& m);

/// Columns form a basis of the kernel (in RREF-free-variable normal form).
DenseMatrix kernel_basis(const DenseMatrix& m);
QMatrix kernel_basis(const QMatrix& m);

/// A maximal linearly independent subset of the columns, in original order.
DenseMatrix column_basis(const DenseMatrix& m);

/// Some x with m x = b, or nullopt when b is outside the column span.
std::optional<std::vector<Rational>> solve(const DenseMatrix& m, std::span<const Rational> b);

/// Inverse of a square matrix. Throws std::domain_error when singular.
DenseMatrix inverse(const DenseMatrix& m);

/// Subspace quotient span(N) / span(D) inside Q^n, with span(D) contained in span(N).
///
/// Representatives are the columns of N that extend a basis of span(D); the
/// coordinate map sends any vector of span(N) to its class in that basis.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const DenseMatrix& numerator, const DenseMatrix& denominator);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return dim_; }
  std::size_t denominator_dim() const { return den_dim_; }
  DenseMatrix representatives() const;

  /// Class of v; throws std::domain_error if v is not in span(N).
  std::vector<Rational> coordinates(std::span<const Rational> v) const;
  /// Column-wise coordinates.
  DenseMatrix coordinates(const DenseMatrix& vs) const;
  bool in_numerator(std::span<const Rational> v) const;
  bool in_denominator(std::span<const Rational> v) const;

 private:
  std::vector<Rational> full_coordinates(std::span<const Rational> v, bool& member) const;

  std::size_t ambient_ = 0;
  std::size_t den_dim_ = 0;
  std::size_t dim_ = 0;
  DenseMatrix basis_;     // ambient x (den_dim + dim)
  DenseMatrix left_inv_;  // (den_dim + dim) x ambient
};

}  // namespace symstab
