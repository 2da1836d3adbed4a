#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symstab/exactlin/linalg.hpp"
#include "symstab/spectral/filtered.hpp"

namespace symstab {

using PQ = std::pair<int, int>;

/// Bidegree (dp, dq) of d_r: (-r, r+1) for cochains, (-r, r-1) for chains.
PQ differential_bidegree(Direction dir, int r);

struct SpectralPage {
  int r = 1;
  std::map<PQ, std::size_t> dims;           // every (p, q) in the window
  std::map<PQ, QMatrix> differentials;      // d_r out of (p, q)
};

/// Bigraded pages of the spectral sequence of a filtered complex. p is the
/// filtration label, q = n - p for total degree n.
struct SpectralPages {
  Direction direction = Direction::cochain;
  int p_lo = 0, p_hi = 0, n_lo = 0, n_hi = 0;
  std::vector<SpectralPage> pages;          // pages[i] has r = i + 1
  std::map<PQ, std::size_t> infinity;
  BettiTable target;                        // homology of the ambient complex

  int filtration_length() const { return p_hi - p_lo + 1; }
  std::size_t dim(int r, int p, int q) const;
  std::size_t infinity_dim(int p, int q) const;
  /// Sum of E-infinity dimensions along p + q = n.
  std::size_t abutment(int n) const;
  /// Header "r,p,q,dim"; one row per cell of every page, then r = inf.
  std::string csv() const;
};

/// Direct subquotient model: Z^r_p = {x in F_p : dx in F_{p-r}} and
/// E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}). Keeps bases for every cell
/// so maps between pages can be induced.
class PageSystem {
 public:
  /// Computes pages r = 1 .. last_page(). The filtration is used as given
  /// (validated, not normalized). last_page defaults to filtration length + 1,
  /// where every differential already vanishes.
  explicit PageSystem(FilteredComplex fc, int last_page = 0);

  const FilteredComplex& filtered() const { return fc_; }
  Direction direction() const { return fc_.ambient.direction(); }
  int last_page() const { return last_; }
  int p_lo() const { return fc_.p_lo(); }
  int p_hi() const { return fc_.p_hi(); }
  int n_lo() const { return fc_.ambient.lo(); }
  int n_hi() const { return fc_.ambient.hi(); }

  /// E^r at filtration p and total degree n, as a subquotient of degree-n cochains.
  const Subquotient& cell(int r, int p, int n) const;
  /// d_r out of E^r_{p,n} in representative coordinates; 0 rows when the target is off the window.
  const DenseMatrix& differential(int r, int p, int n) const;

  SpectralPages summary() const;

 private:
  using Key = std::tuple<int, int, int>;
  std::vector<std::size_t> stage(int p, int n) const;
  DenseMatrix cycles_rel(int r, int p, int n);
  DenseMatrix boundaries(int r, int p, int n);

  FilteredComplex fc_;
  int last_ = 1;
  std::vector<int> level_;
  std::map<int, DenseMatrix> d_;  // dense differential out of degree n
  std::map<Key, DenseMatrix> z_cache_;
  std::map<Key, Subquotient> cells_;
  std::map<Key, DenseMatrix> diffs_;
};

/// Normalizes, validates and computes all pages.
SpectralPages compute_pages(const FilteredComplex& fc);

/// Invariant violations of a computed sequence (empty when consistent):
/// d_r o d_r = 0, E^{r+1} = H(E^r, d_r), monotone dimensions, constancy past the
/// filtration length, and E-infinity summing to the ambient Betti numbers.
std::vector<std::string> check_pages(const SpectralPages& ss);

/// E^r dimensions for r = 1 .. last_page obtained by iterating derived couples of
/// the exact couple A_p = H(F_p), E_p = H(F_p / F_{p-1}). Independent of the
/// direct subquotient formula beyond E^1.
std::vector<std::map<PQ, std::size_t>> derived_couple_dims(const FilteredComplex& fc, int last_page);

struct LesDegree {
  int n = 0;
  std::size_t h_sub = 0, h_total = 0, h_quot = 0;
  std::size_t rank_i = 0, rank_j = 0, rank_k = 0;  // k goes to degree n + step
};

struct LesReport {
  std::vector<LesDegree> degrees;
  std::vector<std::string> failures;
  bool exact() const { return failures.empty(); }
};

/// Long exact sequence of a two-stage filtration U <= X with quotient C = X/U:
/// H(U) -> H(X) -> H(C) -> H(U) shifted by one step. Requires exactly two stages.
LesReport two_step_les(const FilteredComplex& fc);

struct CellMap {
  int p = 0, q = 0;
  std::size_t src_dim = 0, tgt_dim = 0, rank = 0;
  bool injective() const { return rank == src_dim; }
  bool surjective() const { return rank == tgt_dim; }
};

struct CompareReport {
  Direction direction = Direction::cochain;
  int threshold = 0;
  std::vector<std::vector<CellMap>> pages;  // pages[i] has r = i + 1
  std::vector<CellMap> infinity;
  bool hypothesis = false;  // E^1 condition at the threshold
  bool conclusion = false;  // E-infinity condition at the threshold
  bool consistent() const { return !hypothesis || conclusion; }
};

/// Cochains: bijective for p+q >= s and surjective at p+q = s-1.
/// Chains: bijective for p+q <= s and surjective at p+q = s+1.
bool comparison_condition(const std::vector<CellMap>& cells, Direction dir, int s);

/// Maps induced on every page by a filtration-preserving chain map
/// f[i]: src degree (lo + i) -> tgt degree (lo + i). Throws std::invalid_argument
/// when f is not a chain map or does not respect the filtrations.
CompareReport compare_pages(const FilteredComplex& src, const FilteredComplex& tgt,
                            const std::vector<QMatrix>& f, int threshold);

}  // namespace symstab
