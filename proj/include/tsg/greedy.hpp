#pragma once

#include "tsg/rng.hpp"
#include "tsg/spaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsg {

// A basis is a space together with coordinate functionals; every engine here
// works in basis coordinates, so coefficient extraction is the entry itself
// and biorthogonality is structural. The handle mostly carries the norm.
struct BasisHandle {
  Space space;
  Index dim = -1;  // -1 when infinite
  std::string name;

  double norm(const FinVec& f) const { return space.norm(f); }
};

// Decreasing |coefficient|, ties by smaller index. Returns the support
// permutation rho(1), rho(2), ...
std::vector<Index> greedy_ordering(const FinVec& f);

// First m greedy terms; m >= |support| returns f.
FinVec greedy_sum(const FinVec& f, std::size_t m);

enum class SearchMode { kExhaustive, kSampled };

struct FundamentalEntry {
  int m = 0;
  double value = 0;  // sup (exhaustive) or certified lower bound (sampled)
  SearchMode mode = SearchMode::kExhaustive;
};

// phi(m) = sup_{|A| <= m} ||1_A|| over subsets of [1, window]. Exhaustive up
// to the cutoff; beyond it structured candidates (prefixes, shifted blocks,
// random sets) give a flagged lower bound. For lattice engines the sup over
// |A| <= m is attained at |A| = m, which the enumeration uses.
std::vector<FundamentalEntry> fundamental_function(const BasisHandle& basis, int mmax,
                                                   Index window, int exhaustive_cutoff = 12,
                                                   std::optional<Rng> rng = std::nullopt,
                                                   int random_candidates = 64);

struct DemocracyResult {
  double delta = 1;  // max ||1_A|| / ||1_B|| over |A| <= |B|
  SearchMode mode = SearchMode::kExhaustive;
};
DemocracyResult democracy_ratio(const BasisHandle& basis, int mmax, Index window,
                                int exhaustive_cutoff = 12,
                                std::optional<Rng> rng = std::nullopt);

// max_m ||G_m(f)|| / ||f|| over the sample; a lower bound for the
// quasi-greedy constant.
double quasi_greedy_ratio(const BasisHandle& basis, const std::vector<FinVec>& sample);

// ||f - G_m(f)|| / min_{|A| = m} ||f - P_A f||, projections enumerated
// exhaustively over the support.
double almost_greedy_gap(const BasisHandle& basis, const FinVec& f, std::size_t m);

// Like almost_greedy_gap but the denominator also minimizes over coefficients
// by per-coordinate golden-section descent from the projection (an upper
// bound for the infimum, so the ratio is a lower bound for the constant).
double greedy_gap(const BasisHandle& basis, const FinVec& f, std::size_t m, int sweeps = 64,
                  double rtol = 1e-10);

enum class CondMode { kExhaustive, kWitness };

struct CondParams {
  double k_m = 0;
  double k_tilde_m = 0;
  CondMode mode = CondMode::kExhaustive;
  std::string provenance;
};

// k_m and k~_m over A subset of [1, m]. Hilbert-like engines (those exposing
// a Gram matrix) get exact operator norms via reduced generalized
// eigenproblems; lattice engines are exactly 1 with witness verification;
// anything else gets certified witness lower bounds.
CondParams cond_params(const BasisHandle& basis, int m, CondMode mode,
                       const std::vector<FinVec>& extra_witnesses = {},
                       std::optional<Rng> rng = std::nullopt);

struct RegularityFit {
  double alpha = 0, c_lrp = 1;  // C phi(mn) >= m^alpha phi(n)
  double beta = 0, c_urp = 1;   // phi(n) <= C (n/m)^beta phi(m)
  bool lrp_in_range = false;    // fitted exponent inside (0, 1)
  bool urp_in_range = false;
};
// Least-squares log-log exponents plus the smallest constants making the
// inequalities hold on the data range. Needs >= 8 values.
RegularityFit regularity_fit(const std::vector<double>& phi);

struct GreedyReportRow {
  int m = 0;
  double fundamental = 0;
  double democracy = 0;
  double quasi_greedy = 0;
  double almost_greedy = 0;
  double greedy = 0;
  double k_m = 0;
  double k_tilde_m = 0;
  std::string mode;
};

struct GreedyReport {
  std::string basis_name;
  std::vector<GreedyReportRow> rows;
  std::string to_csv() const;
  std::string to_json() const;
};

}  // namespace tsg
