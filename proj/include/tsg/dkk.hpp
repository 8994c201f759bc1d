#pragma once

#include "tsg/partition.hpp"
#include "tsg/spaces.hpp"

#include <optional>
#include <utility>

namespace tsg {

// Lambda_m = || sum_{j<=m} e_j ||_S = m^{1/p}; S must be an l_p descriptor.
double lambda_fn(const Space& symmetric, Index m);

// Block averaging: P f is constant on each sigma_n with the block mean,
// Q = Id - P. Exact rational arithmetic (Lambda cancels inside P).
struct SplitVec {
  FinVec p_part;
  FinVec q_part;
};
SplitVec averaging_projection(const OrderedPartition& sigma, const FinVec& f);

// v_n^*(f) = (Lambda_{|sigma_n|} / |sigma_n|) sum_{j in sigma_n} f_j for the
// touched blocks 1..r.
std::vector<double> block_functionals(const OrderedPartition& sigma, const Space& symmetric,
                                      const FinVec& f);

struct DkkSpec {
  Space base;       // computable finite-span norms on basis coordinates
  Space symmetric;  // subsymmetric part; l_p only
  OrderedPartition sigma;
};

// || f || = || Q f ||_S + || sum_n v_n^*(f) x_n ||_X.
double dkk_norm(const DkkSpec& spec, const FinVec& f);

// Both sides of the projected-coordinate estimate
//   ||Q(S_A f)||_S <= 5 ||Q f||_S
//     + 2 C_s ( sum_n (Lambda^s_{|A cap sigma_n|} / Lambda^s_{|sigma_n|})
//               |v_n^*(f)|^s )^{1/s}
// with s = p and C_s = 1 for S = l_p.
struct ImpEstimate {
  bool holds = false;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
};
ImpEstimate imp_estimate_check(const DkkSpec& spec, const FinVec& f,
                               const std::vector<Index>& A, double s);

// Finite truncation of the composite system
//   ( (+)_{j<=jmax} Y^{(psi(j))} (+) l_p^j )_{T^(p)}
// with Y the DKK space over the rotated trig system with parameter a and the
// symmetric space l_p. psi defaults to the cumulative block length M_j.
// Requires max(1/p, 1-1/p) <= a < 1.
struct AgBasis {
  Space space;                  // the composite direct sum
  Index dim = 0;                // total truncated dimension
  std::vector<Index> block_dims;
  DkkSpec dkk;                  // the repeated DKK block
};
AgBasis build_ag_basis(double p, double a, const OrderedPartition& sigma, Index jmax,
                       std::optional<std::vector<Index>> psi = std::nullopt);

}  // namespace tsg
