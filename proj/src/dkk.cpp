#include "tsg/dkk.hpp"

#include <cmath>

namespace tsg {

OrderedPartition OrderedPartition::from_lengths(std::vector<Index> lengths) {
  if (lengths.empty()) throw std::invalid_argument("partition needs at least one block");
  for (Index l : lengths)
    if (l < 1) throw std::invalid_argument("block lengths must be >= 1");
  OrderedPartition p;
  p.lengths_ = std::move(lengths);
  return p;
}

OrderedPartition OrderedPartition::geometric() {
  OrderedPartition p;
  p.generative_ = true;
  return p;
}

Index OrderedPartition::generative_length(Index n) const {
  if (n > 60) throw std::domain_error("geometric block index too large");
  return Index(1) << (n - 1);
}

Index OrderedPartition::block_count() const {
  return generative_ ? -1 : static_cast<Index>(lengths_.size());
}

Index OrderedPartition::length(Index n) const {
  if (n < 1) throw std::domain_error("block index must be >= 1");
  if (generative_) return generative_length(n);
  if (n > static_cast<Index>(lengths_.size()))
    throw std::domain_error("index beyond the last block");
  return lengths_[static_cast<std::size_t>(n) - 1];
}

Index OrderedPartition::cumulative(Index r) const {
  Index m = 0;
  for (Index n = 1; n <= r; ++n) m += length(n);
  return m;
}

Index OrderedPartition::begin(Index n) const { return cumulative(n - 1) + 1; }

Index OrderedPartition::end(Index n) const { return cumulative(n); }

Index OrderedPartition::block_of(Index i) const {
  if (i < 1) throw std::domain_error("index must be >= 1");
  Index n = 1;
  Index upto = length(1);
  while (i > upto) {
    ++n;
    upto += length(n);
  }
  return n;
}

std::vector<Index> OrderedPartition::lengths_upto(Index n) const {
  std::vector<Index> out;
  for (Index i = 1; i <= n; ++i) out.push_back(length(i));
  return out;
}

namespace {

double lp_exponent(const Space& symmetric) {
  // only plain l_p descriptors qualify as the subsymmetric part here
  auto p = symmetric.lp_exponent();
  if (!p) throw std::invalid_argument("symmetric part must be an lp(...) descriptor");
  return *p;
}

}  // namespace

double lambda_fn(const Space& symmetric, Index m) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (m == 0) return 0.0;
  double p = lp_exponent(symmetric);
  return std::pow(static_cast<double>(m), 1.0 / p);
}

SplitVec averaging_projection(const OrderedPartition& sigma, const FinVec& f) {
  SplitVec out;
  if (f.empty()) return out;
  Index last_block = sigma.block_of(f.max_index());
  for (Index n = 1; n <= last_block; ++n) {
    Index lo = sigma.begin(n), hi = sigma.end(n);
    Rational sum(0);
    bool touched = false;
    for (Index i = lo; i <= hi; ++i) {
      Rational v = f.get(i);
      if (v != 0) touched = true;
      sum += v;
    }
    if (!touched) continue;
    Rational mean = sum / Rational(hi - lo + 1);
    for (Index i = lo; i <= hi; ++i) {
      if (mean != 0) out.p_part.set(i, mean);
      Rational q = f.get(i) - mean;
      if (q != 0) out.q_part.set(i, q);
    }
  }
  return out;
}

std::vector<double> block_functionals(const OrderedPartition& sigma, const Space& symmetric,
                                      const FinVec& f) {
  std::vector<double> out;
  if (f.empty()) return out;
  Index last_block = sigma.block_of(f.max_index());
  for (Index n = 1; n <= last_block; ++n) {
    Index lo = sigma.begin(n), hi = sigma.end(n);
    Rational sum(0);
    for (Index i = lo; i <= hi; ++i) sum += f.get(i);
    double lam = lambda_fn(symmetric, hi - lo + 1);
    out.push_back(lam / static_cast<double>(hi - lo + 1) * to_double(sum));
  }
  return out;
}

double dkk_norm(const DkkSpec& spec, const FinVec& f) {
  if (f.empty()) return 0.0;
  SplitVec split = averaging_projection(spec.sigma, f);
  double q_norm = spec.symmetric.norm(split.q_part);
  auto v = block_functionals(spec.sigma, spec.symmetric, f);
  FinVec base_coeffs;
  for (std::size_t n = 0; n < v.size(); ++n)
    base_coeffs.set(static_cast<Index>(n) + 1, rational_from_double(v[n]));
  return q_norm + spec.base.norm(base_coeffs);
}

ImpEstimate imp_estimate_check(const DkkSpec& spec, const FinVec& f,
                               const std::vector<Index>& A, double s) {
  double p = lp_exponent(spec.symmetric);
  if (s > p)
    throw std::invalid_argument("need s <= p so the lower s-estimate constant is 1");
  FinVec sa = f.restricted(A);
  SplitVec qsa = averaging_projection(spec.sigma, sa);
  ImpEstimate out;
  out.lhs = spec.symmetric.norm(qsa.q_part);

  SplitVec qf = averaging_projection(spec.sigma, f);
  double term1 = 5.0 * spec.symmetric.norm(qf.q_part);
  auto v = block_functionals(spec.sigma, spec.symmetric, f);
  Index last_block = v.empty() ? 0 : static_cast<Index>(v.size());
  double sum = 0;
  for (Index n = 1; n <= last_block; ++n) {
    Index lo = spec.sigma.begin(n), hi = spec.sigma.end(n);
    Index in_a = 0;
    for (Index i : A)
      if (i >= lo && i <= hi) ++in_a;
    if (in_a == 0) continue;
    double lam_a = lambda_fn(spec.symmetric, in_a);
    double lam = lambda_fn(spec.symmetric, hi - lo + 1);
    sum += std::pow(lam_a / lam, s) *
           std::pow(std::abs(v[static_cast<std::size_t>(n) - 1]), s);
  }
  out.rhs = term1 + 2.0 * std::pow(sum, 1.0 / s);
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + 1e-12;
  return out;
}

AgBasis build_ag_basis(double p, double a, const OrderedPartition& sigma, Index jmax,
                       std::optional<std::vector<Index>> psi) {
  if (!(p > 1)) throw std::invalid_argument("p must be > 1");
  double a_min = std::max(1.0 / p, 1.0 - 1.0 / p);
  if (!(a >= a_min && a < 1))
    throw std::invalid_argument("need max(1/p, 1-1/p) <= a < 1");
  if (jmax < 1) throw std::invalid_argument("jmax must be >= 1");

  std::vector<Index> block_dims;
  if (psi && static_cast<Index>(psi->size()) < jmax)
    throw std::invalid_argument("psi must provide jmax values");
  Index dkk_dim_max = 0;
  for (Index j = 1; j <= jmax; ++j) {
    Index d = psi ? (*psi)[static_cast<std::size_t>(j) - 1] : sigma.cumulative(j);
    dkk_dim_max = std::max(dkk_dim_max, d);
    block_dims.push_back(d);
    block_dims.push_back(j);  // the l_p^j companion block
  }

  // one rotated base shared by every truncation level; it only carries the
  // block functionals, so its dimension is the touched block count
  Index base_dim = sigma.block_of(dkk_dim_max);
  Space rotated = Space::rotated_trig_sum(a, std::max<Index>(base_dim, 2));
  Space lp_space = Space::lp(p);
  Space dkk_space = Space::dkk(rotated, lp_space, sigma);

  std::vector<Space> inners;
  for (Index j = 1; j <= jmax; ++j) {
    inners.push_back(dkk_space);
    inners.push_back(Space::lp_finite(p, j));
  }
  Index total = 0;
  for (Index d : block_dims) total += d;
  Space composite = Space::direct_sum(Space::convexify(Space::tsirelson(), p),
                                      std::move(inners), block_dims);
  return AgBasis{std::move(composite), total, std::move(block_dims),
                 DkkSpec{std::move(rotated), std::move(lp_space), sigma}};
}

}  // namespace tsg
