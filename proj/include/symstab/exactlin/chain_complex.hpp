#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "symstab/exactlin/matrix.hpp"

namespace symstab {

/// chain: differential lowers degree by one; cochain: raises it by one.
enum class Direction { chain = -1, cochain = 1 };

inline int step(Direction d) { return static_cast<int>(d); }
std::string to_string(Direction d);
Direction parse_direction(const std::string& s);

struct InvalidComplex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite graded Q-vector spaces in degrees [lo, lo + dims.size()) with
/// sparse differentials. differential(n) is the map out of degree n.
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(Direction dir, int lo, std::vector<std::size_t> dims);

  Direction direction() const { return dir_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t length() const { return dims_.size(); }
  std::size_t dim(int n) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total_dim() const;

  /// Map out of degree n, shape dim(n + step) x dim(n). Zero outside the range.
  QMatrix differential(int n) const;
  /// Map into degree n.
  QMatrix incoming(int n) const { return differential(n - step(dir_)); }
  void set_differential(int n, QMatrix m);

  /// Checks shapes and d o d = 0; throws InvalidComplex.
  void validate() const;

 private:
  Direction dir_ = Direction::chain;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<QMatrix> diff_;
};

struct BettiTable {
  int lo = 0;
  std::vector<std::size_t> betti;
  std::size_t at(int n) const {
    const int i = n - lo;
    return (i < 0 || i >= static_cast<int>(betti.size())) ? 0 : betti[static_cast<std::size_t>(i)];
  }
};

BettiTable homology(const ChainComplex& c);
long euler_characteristic(const ChainComplex& c);
long euler_characteristic(const BettiTable& b);

/// f[i] maps degree (c1.lo() + i) of c1 to the same degree of c2.
bool is_chain_map(const std::vector<QMatrix>& f, const ChainComplex& c1, const ChainComplex& c2);

/// Per-degree change of basis: differential(n) becomes T_{n+s} d T_n^{-1}.
ChainComplex change_basis(const ChainComplex& c, const std::vector<DenseMatrix>& t);

}  // namespace symstab
