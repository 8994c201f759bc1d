#pragma once

#include "tsg/finvec.hpp"
#include "tsg/hierarchy.hpp"
#include "tsg/rng.hpp"

#include <memory>
#include <vector>

namespace tsg {

// Fixed point of the norm recursion
//   ||x||_0     = ||x||_inf
//   ||x||_{m+1} = max(||x||_m, 1/2 sup { sum_k ||E_k x||_m }),
// the sup running over families E_1 < ... < E_n of successive finite sets
// with n <= min E_1.
//
// The table iterates the recursion on subintervals of [1, N]. Only interval
// families with an optional dropped head are enumerated: replacing each set
// of a family by its interval hull and widening the hulls to consecutive
// cover never decreases the stage norm and keeps admissibility, so the
// restriction is lossless. tsirelson_norm_bruteforce enumerates arbitrary
// successive sets and pins this reduction down on small supports.
//
// All values are exact: entries are scaled to a common integer grid and every
// stage value is an integer divided by a power of two.
class NormTable {
 public:
  explicit NormTable(const FinVec& f);
  ~NormTable();
  NormTable(NormTable&&) noexcept;

  // Rounds executed until W_{m+1} = W_m held on every interval.
  int rounds() const;

  // Fixed-point value W(a, b) = || x restricted to [a,b] ||_T.
  Rational value(Index a, Index b) const;

  // Stage value W_m(a, b); level -1 (default) means the fixed point.
  Rational value_at_level(Index a, Index b, int level) const;

  Rational norm() const;

  Index max_index() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Rational tsirelson_norm(const FinVec& f);

// Independent oracle: enumerates every admissible family of arbitrary
// successive sets by memoized recursion over subset masks.
// Requires max support index <= kBruteForceMaxIndex.
inline constexpr Index kBruteForceMaxIndex = 8;
Rational tsirelson_norm_bruteforce(const FinVec& f);

// Both sides of the block-basis comparison: lhs = ||sum_k f_k||, rhs =
// ||sum_k ||f_k|| t_{phi(k)}||. Block k must be supported in
// (phi(k-1), phi(k)].
struct BlockCompare {
  Rational lhs;
  Rational rhs;
  double ratio;  // lhs/rhs, 1 when both vanish
};
BlockCompare block_norm_compare(const GrowthFunction& phi, const std::vector<FinVec>& blocks);

// Sampled ratios ||sum a_n t_{n+phi(j)}|| / sum |a_n| over the window
// (phi(j), phi(j+1)]. Window length must be <= 12.
struct RatioBounds {
  double lo = 1.0;
  double hi = 1.0;
};
RatioBounds subsequence_l1_equivalence(const GrowthFunction& phi, Index j, int samples, Rng rng);

}  // namespace tsg
