#include "tsg/haar.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tsg {

PiecewiseConstant haar_function(const DyadicInterval& I, double p, int grid_level) {
  if (!I.valid()) throw std::domain_error("bad dyadic interval");
  if (!(p > 0)) throw std::domain_error("p must be > 0");
  int g = grid_level < 0 ? I.level : grid_level;
  if (g < I.level) throw std::domain_error("grid too coarse for the interval");
  PiecewiseConstant f(g);
  // |I| = 2^{1-level}; value +-|I|^{-1/p}
  double value = std::pow(2.0, static_cast<double>(I.level - 1) / p);
  std::size_t cells_per_half = std::size_t(1) << (g - I.level);
  std::size_t start = static_cast<std::size_t>(I.offset) * 2 * cells_per_half;
  for (std::size_t i = 0; i < cells_per_half; ++i) {
    f.cell(start + i) = value;
    f.cell(start + cells_per_half + i) = -value;
  }
  return f;
}

PiecewiseConstantQ haar_function_exact_l1(const DyadicInterval& I, int grid_level) {
  if (!I.valid()) throw std::domain_error("bad dyadic interval");
  int g = grid_level < 0 ? I.level : grid_level;
  if (g < I.level) throw std::domain_error("grid too coarse for the interval");
  PiecewiseConstantQ f(g);
  Rational value(Int(1) << (I.level - 1));  // |I|^{-1}
  std::size_t cells_per_half = std::size_t(1) << (g - I.level);
  std::size_t start = static_cast<std::size_t>(I.offset) * 2 * cells_per_half;
  for (std::size_t i = 0; i < cells_per_half; ++i) {
    f.cell(start + i) = value;
    f.cell(start + cells_per_half + i) = -value;
  }
  return f;
}

double lp_norm(const PiecewiseConstant& f, double p) {
  if (!(p > 0)) throw std::domain_error("p must be > 0");
  double cell_measure = std::ldexp(1.0, -f.grid_level());
  double s = 0;
  for (double v : f.cells()) s += std::pow(std::abs(v), p) * cell_measure;
  return std::pow(s, 1.0 / p);
}

double linf_norm(const PiecewiseConstant& f) {
  double m = 0;
  for (double v : f.cells()) m = std::max(m, std::abs(v));
  return m;
}

Rational l1_norm(const PiecewiseConstantQ& f) {
  Rational measure(1, Int(1) << f.grid_level());
  Rational s(0);
  for (const auto& v : f.cells()) s += rabs(v);
  return s * measure;
}

Rational linf_norm(const PiecewiseConstantQ& f) {
  Rational m(0);
  for (const auto& v : f.cells()) m = std::max(m, rabs(v));
  return m;
}

double inner_product(const PiecewiseConstant& f, const PiecewiseConstant& g) {
  int lvl = std::max(f.grid_level(), g.grid_level());
  PiecewiseConstant a = f.refined(lvl), b = g.refined(lvl);
  double cell_measure = std::ldexp(1.0, -lvl);
  double s = 0;
  for (std::size_t i = 0; i < a.cell_count(); ++i) s += a.cell(i) * b.cell(i) * cell_measure;
  return s;
}

Rational integral(const PiecewiseConstantQ& f) {
  Rational s(0);
  for (const auto& v : f.cells()) s += v;
  return s / Rational(Int(1) << f.grid_level());
}

EquiIntegrabilityResult equi_integrability_check(const PiecewiseConstantQ& f, int sigma_level,
                                                 const PiecewiseConstantQ& g,
                                                 const Rational& eps, const Rational& sqrt_eps) {
  if (sqrt_eps * sqrt_eps != eps)
    throw std::invalid_argument("sqrt_eps^2 must equal eps exactly");
  if (f.grid_level() > sigma_level - 1)
    throw std::invalid_argument("f must be measurable w.r.t. the level-n dyadic algebra");

  EquiIntegrabilityResult r;
  int lvl = std::max(f.grid_level(), g.grid_level());
  PiecewiseConstantQ ff = f.refined(lvl), gg = g.refined(lvl);
  Rational cell(1, Int(1) << lvl);

  Rational support_measure(0);
  Rational integral_f_on_supp(0);
  Rational norm_f(0), norm_g(0), norm_sum(0);
  for (std::size_t i = 0; i < ff.cell_count(); ++i) {
    Rational af = rabs(ff.cell(i)), ag = rabs(gg.cell(i));
    norm_f += af * cell;
    norm_g += ag * cell;
    norm_sum += rabs(ff.cell(i) + gg.cell(i)) * cell;
    if (gg.cell(i) != 0) {
      support_measure += cell;
      integral_f_on_supp += af * cell;
    }
  }
  Rational delta = eps / Rational(Int(1) << sigma_level);  // 2^{-n} eps
  r.measure_ok = support_measure <= delta;
  r.integral_ok = integral_f_on_supp <= eps * norm_f;
  Rational total = norm_f + norm_g;
  r.lhs = (Rational(1) - sqrt_eps) * total;
  r.mid = norm_sum;
  r.rhs = (Rational(1) + eps + sqrt_eps) * total;
  r.lower_ok = r.lhs <= r.mid;
  r.upper_ok = r.mid <= r.rhs;
  return r;
}

DhkConstants dhk_constants(int u, double p, int K) {
  if (u < 0 || K < 1) throw std::invalid_argument("u >= 0 and K >= 1 required");
  if (!(p > 0)) throw std::invalid_argument("p must be > 0");
  double log_p1 = 0, log_p2 = 0;
  for (int k = 1; k <= K; ++k) {
    double q = std::pow(2.0, -(k + u) / 2.0);
    log_p1 += std::log1p(-q);
    log_p2 += std::log1p(q + q * q);
  }
  // Tails: sum_{k>K} q_k = q_{K+1} / (1 - 1/sqrt2);
  // |log(1-q)| <= q / (1 - q_{K+1}), log(1+w) <= w with w = q + q^2.
  double qn = std::pow(2.0, -(K + 1 + u) / 2.0);
  double geo = qn / (1.0 - std::pow(2.0, -0.5));
  double tail1 = geo / (1.0 - qn);
  double tail2 = geo * (1.0 + qn);
  DhkConstants out;
  out.c1.lo = std::exp((log_p1 - tail1) / p);
  out.c1.hi = std::exp(log_p1 / p);
  out.c2.lo = std::exp(log_p2 / p);
  out.c2.hi = std::exp((log_p2 + tail2) / p);
  return out;
}

void SpreadSpec::validate() const {
  if (levels.empty()) throw std::invalid_argument("spread spec needs at least one level");
  if (!(p > 0)) throw std::invalid_argument("p must be > 0");
  if (u < 0) throw std::invalid_argument("u must be >= 0");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1 || levels[i] > 30) throw std::invalid_argument("levels must be in [1, 30]");
    if (i + 1 < levels.size() && levels[i + 1] < 2 * levels[i] + static_cast<int>(i + 1) + u + 1)
      throw std::invalid_argument("level gaps violate phi(i+1) >= 2 phi(i) + i + u + 1");
  }
}

Index SpreadSpec::level_cap(std::size_t i) const {
  if (i == 0) return DyadicInterval::count_at_level(levels[0]);
  return 2 * DyadicInterval::count_at_level(levels[i - 1]);
}

double spread_equivalence_ratio(const SpreadSpec& spec,
                                const std::vector<std::pair<DyadicInterval, double>>& coeffs) {
  spec.validate();
  std::map<int, Index> per_level;
  for (const auto& [I, c] : coeffs) {
    if (!I.valid()) throw std::invalid_argument("bad interval");
    auto it = std::find(spec.levels.begin(), spec.levels.end(), I.level);
    if (it == spec.levels.end())
      throw std::invalid_argument("interval level outside the spread spec");
    ++per_level[I.level];
  }
  for (std::size_t i = 0; i < spec.levels.size(); ++i) {
    auto it = per_level.find(spec.levels[i]);
    if (it != per_level.end() && it->second > spec.level_cap(i))
      throw std::invalid_argument("too many intervals at one level for the spread spec");
  }

  // Exact piecewise evaluation from breakpoints: endpoints and midpoints are
  // dyadics with exponent <= 30, so doubles represent them and the segment
  // arithmetic below exactly.
  std::vector<double> cuts{0.0, 1.0};
  for (const auto& [I, c] : coeffs) {
    double len = std::ldexp(1.0, -(I.level - 1));
    double left = static_cast<double>(I.offset) * len;
    cuts.push_back(left);
    cuts.push_back(left + len / 2);  // dyadic doubles: exact
    cuts.push_back(left + len);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double sum_p = 0;       // integral of |f|^p
  double coef_p = 0;      // sum |c_I|^p
  for (const auto& [I, c] : coeffs) coef_p += std::pow(std::abs(c), spec.p);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double lo = cuts[s], hi = cuts[s + 1];
    double mid = lo + (hi - lo) / 2;
    double v = 0;
    for (const auto& [I, c] : coeffs) {
      double len = std::ldexp(1.0, -(I.level - 1));
      double left = static_cast<double>(I.offset) * len;
      if (mid < left || mid >= left + len) continue;
      double height = std::pow(2.0, static_cast<double>(I.level - 1) / spec.p);
      v += (mid < left + len / 2) ? c * height : -c * height;
    }
    sum_p += std::pow(std::abs(v), spec.p) * (hi - lo);
  }
  double num = std::pow(sum_p, 1.0 / spec.p);
  double den = std::pow(coef_p, 1.0 / spec.p);
  if (den == 0) return 1.0;
  return num / den;
}

std::vector<PiecewiseConstant> rademacher_block(const std::vector<int>& levels, double p) {
  if (!(p > 0)) throw std::domain_error("p must be > 0");
  std::vector<PiecewiseConstant> out;
  for (int n : levels) {
    if (n < 1 || n > 24) throw std::domain_error("level outside the grid budget");
    // sum over D_n of h_I^{(p)} has constant magnitude 2^{(n-1)/p}; dividing
    // by it leaves the +-1 pattern alternating on the 2^n cells of Sigma_n.
    PiecewiseConstant r(n);
    for (std::size_t i = 0; i < r.cell_count(); ++i) r.cell(i) = (i % 2 == 0) ? 1.0 : -1.0;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tsg
