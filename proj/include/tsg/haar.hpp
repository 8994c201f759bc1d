#pragma once

#include "tsg/rational.hpp"
#include "tsg/rng.hpp"

#include <optional>
#include <vector>

namespace tsg {

// Level n >= 1, offset 0 <= k < 2^{n-1}: the interval
// [k 2^{-n+1}, (k+1) 2^{-n+1}). Level n holds 2^{n-1} intervals.
struct DyadicInterval {
  int level = 1;
  Index offset = 0;

  static Index count_at_level(int n) { return Index(1) << (n - 1); }
  Rational length() const { return Rational(1, Int(1) << (level - 1)); }
  Rational left() const { return Rational(offset, Int(1) << (level - 1)); }

  bool valid() const { return level >= 1 && offset >= 0 && offset < count_at_level(level); }
  auto operator<=>(const DyadicInterval&) const = default;
};

// Real function on [0,1) constant on the 2^G cells of a dyadic grid.
template <class S>
class PiecewiseConstantT {
 public:
  PiecewiseConstantT() : grid_level_(0), cells_(1, S(0)) {}
  explicit PiecewiseConstantT(int grid_level)
      : grid_level_(grid_level), cells_(std::size_t(1) << grid_level, S(0)) {
    if (grid_level < 0 || grid_level > 26) throw std::domain_error("bad grid level");
  }

  int grid_level() const { return grid_level_; }
  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<S>& cells() const { return cells_; }
  S& cell(std::size_t i) { return cells_.at(i); }
  const S& cell(std::size_t i) const { return cells_.at(i); }

  // Same function on a finer grid.
  PiecewiseConstantT refined(int grid_level) const {
    if (grid_level < grid_level_) throw std::domain_error("cannot coarsen");
    PiecewiseConstantT out(grid_level);
    std::size_t rep = std::size_t(1) << (grid_level - grid_level_);
    for (std::size_t i = 0; i < out.cells_.size(); ++i) out.cells_[i] = cells_[i / rep];
    return out;
  }

  PiecewiseConstantT plus(const PiecewiseConstantT& o) const {
    int g = std::max(grid_level_, o.grid_level_);
    PiecewiseConstantT a = refined(g), b = o.refined(g);
    for (std::size_t i = 0; i < a.cells_.size(); ++i) a.cells_[i] += b.cells_[i];
    return a;
  }

  PiecewiseConstantT scaled(const S& c) const {
    PiecewiseConstantT out = *this;
    for (auto& v : out.cells_) v *= c;
    return out;
  }

 private:
  int grid_level_;
  std::vector<S> cells_;
};

using PiecewiseConstant = PiecewiseConstantT<double>;
using PiecewiseConstantQ = PiecewiseConstantT<Rational>;

// L_p-normalized Haar function of I: +len^{-1/p} on the left half,
// -len^{-1/p} on the right half. Grid level defaults to I.level.
PiecewiseConstant haar_function(const DyadicInterval& I, double p, int grid_level = -1);
// Exact variant; only p = 1 keeps rational values.
PiecewiseConstantQ haar_function_exact_l1(const DyadicInterval& I, int grid_level = -1);

double lp_norm(const PiecewiseConstant& f, double p);  // p in (0, inf)
double linf_norm(const PiecewiseConstant& f);
Rational l1_norm(const PiecewiseConstantQ& f);
Rational linf_norm(const PiecewiseConstantQ& f);
double inner_product(const PiecewiseConstant& f, const PiecewiseConstant& g);
Rational integral(const PiecewiseConstantQ& f);

// Both inequalities of the small-overlap L1 perturbation lemma for
// f in L_1(Sigma_n) and g supported on a union of fine cells of measure at
// most 2^{-n} eps:
//   (1 - sqrt(eps)) (||f||_1 + ||g||_1) <= ||f+g||_1
//                                       <= (1 + eps + sqrt(eps)) (...).
// sqrt_eps must satisfy sqrt_eps^2 = eps so the check stays exact.
struct EquiIntegrabilityResult {
  bool measure_ok = false;     // |supp g| <= 2^{-n} eps
  bool integral_ok = false;    // int_{supp g} |f| <= eps ||f||_1
  bool lower_ok = false;
  bool upper_ok = false;
  Rational lhs, mid, rhs;      // the three quantities of the sandwich
};
EquiIntegrabilityResult equi_integrability_check(const PiecewiseConstantQ& f, int sigma_level,
                                                 const PiecewiseConstantQ& g,
                                                 const Rational& eps, const Rational& sqrt_eps);

// Certified enclosure of a truncated infinite product (quadrature-free).
struct Enclosure {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// C1(u) = prod_k (1 - 2^{-(k+u)/2})^{1/p},
// C2(u) = prod_k (1 + 2^{-(k+u)/2} + 2^{-(k+u)})^{1/p};
// truncated at K factors, tails bounded by geometric series.
struct DhkConstants {
  Enclosure c1, c2;
};
DhkConstants dhk_constants(int u, double p, int K = 80);

// Levels phi(1) < phi(2) < ... usable for a spread-out subsystem with slack
// u: phi(i+1) >= 2 phi(i) + i + u + 1 and a cap on how many intervals each
// level may carry.
struct SpreadSpec {
  std::vector<int> levels;
  int u = 0;
  double p = 2.0;

  void validate() const;
  Index level_cap(std::size_t i) const;  // max #intervals at levels[i]
};

// || sum c_I h_I^{(p)} ||_p / (sum |c_I|^p)^{1/p}. The step function is
// evaluated exactly piecewise from interval breakpoints, so levels up to ~30
// cost nothing.
double spread_equivalence_ratio(const SpreadSpec& spec,
                                const std::vector<std::pair<DyadicInterval, double>>& coeffs);

// The |A| normalized Rademacher-type blocks r_n = c_n sum_{I in D_n} h_I^{(p)},
// each a +-1 pattern on Sigma_n cells with ||r_n||_p = 1.
std::vector<PiecewiseConstant> rademacher_block(const std::vector<int>& levels, double p);

}  // namespace tsg
