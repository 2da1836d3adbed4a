#include "symstab/exactlin/chain_complex.hpp"

#include "symstab/exactlin/linalg.hpp"

namespace symstab {

std::string to_string(Direction d) { return d == Direction::chain ? "chain" : "cochain"; }

Direction parse_direction(const std::string& s) {
  if (s == "chain") return Direction::chain;
  if (s == "cochain") return Direction::cochain;
  throw std::invalid_argument("direction must be \"chain\" or \"cochain\", got \"" + s + "\"");
}

ChainComplex::ChainComplex(Direction dir, int lo, std::vector<std::size_t> dims)
    : dir_(dir), lo_(lo), dims_(std::move(dims)) {
  diff_.reserve(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const int n = lo_ + static_cast<int>(i);
    diff_.emplace_back(dim(n + step(dir_)), dims_[i]);
  }
}

std::size_t ChainComplex::dim(int n) const {
  const int i = n - lo_;
  return (i < 0 || i >= static_cast<int>(dims_.size())) ? 0 : dims_[static_cast<std::size_t>(i)];
}

std::size_t ChainComplex::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

QMatrix ChainComplex::differential(int n) const {
  const int i = n - lo_;
  if (i < 0 || i >= static_cast<int>(dims_.size())) return QMatrix(dim(n + step(dir_)), 0);
  return diff_[static_cast<std::size_t>(i)];
}

void ChainComplex::set_differential(int n, QMatrix m) {
  const int i = n - lo_;
  if (i < 0 || i >= static_cast<int>(dims_.size()))
    throw InvalidComplex("differential out of degree " + std::to_string(n) + " outside range");
  if (m.rows() != dim(n + step(dir_)) || m.cols() != dim(n))
    throw InvalidComplex("differential out of degree " + std::to_string(n) + " has shape " +
                         describe_shape(m.rows(), m.cols()) + ", expected " +
                         describe_shape(dim(n + step(dir_)), dim(n)));
  diff_[static_cast<std::size_t>(i)] = std::move(m);
}

void ChainComplex::validate() const {
  for (int n = lo_; n <= hi(); ++n) {
    const QMatrix d = differential(n);
    if (d.rows() != dim(n + step(dir_)) || d.cols() != dim(n))
      throw InvalidComplex("shape mismatch in degree " + std::to_string(n));
    const QMatrix dd = differential(n + step(dir_)) * d;
    if (!dd.is_zero())
      throw InvalidComplex("d o d != 0 starting in degree " + std::to_string(n));
  }
}

BettiTable homology(const ChainComplex& c) {
  c.validate();
  BettiTable b;
  b.lo = c.lo();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const std::size_t out = rank(c.differential(n));
    const std::size_t in = rank(c.incoming(n));
    b.betti.push_back(c.dim(n) - out - in);
  }
  return b;
}

long euler_characteristic(const ChainComplex& c) {
  long chi = 0;
  for (int n = c.lo(); n <= c.hi(); ++n)
    chi += ((n % 2 == 0) ? 1 : -1) * static_cast<long>(c.dim(n));
  return chi;
}

long euler_characteristic(const BettiTable& b) {
  long chi = 0;
  for (std::size_t i = 0; i < b.betti.size(); ++i) {
    const int n = b.lo + static_cast<int>(i);
    chi += ((n % 2 == 0) ? 1 : -1) * static_cast<long>(b.betti[i]);
  }
  return chi;
}

bool is_chain_map(const std::vector<QMatrix>& f, const ChainComplex& c1, const ChainComplex& c2) {
  if (c1.direction() != c2.direction() || c1.lo() != c2.lo() || c1.length() != c2.length() ||
      f.size() != c1.length())
    return false;
  const int s = step(c1.direction());
  auto fmap = [&](int n) -> QMatrix {
    const int i = n - c1.lo();
    if (i < 0 || i >= static_cast<int>(f.size())) return QMatrix(c2.dim(n), c1.dim(n));
    return f[static_cast<std::size_t>(i)];
  };
  for (int n = c1.lo(); n <= c1.hi(); ++n) {
    const QMatrix fn = fmap(n);
    if (fn.rows() != c2.dim(n) || fn.cols() != c1.dim(n)) return false;
    if (!(c2.differential(n) * fn == fmap(n + s) * c1.differential(n))) return false;
  }
  return true;
}

ChainComplex change_basis(const ChainComplex& c, const std::vector<DenseMatrix>& t) {
  if (t.size() != c.length()) throw std::invalid_argument("change_basis: one matrix per degree");
  std::vector<DenseMatrix> inv;
  inv.reserve(t.size());
  for (const auto& m : t) inv.push_back(inverse(m));
  ChainComplex out(c.direction(), c.lo(), c.dims());
  const int s = step(c.direction());
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const int tgt = n + s;
    if (tgt < c.lo() || tgt > c.hi()) continue;
    const DenseMatrix d = c.differential(n).to_dense();
    const DenseMatrix m = t[static_cast<std::size_t>(tgt - c.lo())] * d *
                          inv[static_cast<std::size_t>(n - c.lo())];
    out.set_differential(n, QMatrix::from_dense(m));
  }
  return out;
}

}  // namespace symstab
