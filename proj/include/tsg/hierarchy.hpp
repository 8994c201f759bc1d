#pragma once

#include "tsg/rational.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace tsg {

// Values above the digit budget raise this instead of silently truncating.
// Growth functions here at least double per step once past small arguments,
// so a blown budget is detected after O(1) cheap steps.
class HierarchyOverflow : public std::runtime_error {
 public:
  HierarchyOverflow(int level, Int arg)
      : std::runtime_error("hierarchy value exceeds the digit budget"),
        level_(level),
        arg_(std::move(arg)) {}
  int level() const { return level_; }
  const Int& arg() const { return arg_; }

 private:
  int level_;
  Int arg_;
};

// Budget on evaluated values, in decimal digits.
inline constexpr int kDigitBudget = 10000;

bool within_budget(const Int& v);
void check_budget(const Int& v, int level, const Int& arg);

// N -> N function object: hierarchy members, identity/constants, pointwise
// arithmetic, composition, cumulative sums, the base-3 continuum members and
// the alpha/beta level-set generators. Evaluation is deterministic and pure.
class GrowthFunction {
 public:
  static GrowthFunction fgh(int level);
  static GrowthFunction identity();
  static GrowthFunction constant(Int c);
  static GrowthFunction from_table(std::vector<Int> table);  // 1-based
  static GrowthFunction alpha();  // k -> 5*2^{k-1} - 2k - 2
  static GrowthFunction beta();   // k -> k^2
  static GrowthFunction continuum(std::vector<int> eps);  // prefix over {1,2}
  static GrowthFunction compose(GrowthFunction outer, GrowthFunction inner);
  static GrowthFunction sum(GrowthFunction a, GrowthFunction b);
  static GrowthFunction product(GrowthFunction a, GrowthFunction b);
  static GrowthFunction power(GrowthFunction base, GrowthFunction exponent);
  static GrowthFunction cumulative(GrowthFunction inner);  // j -> sum_{i<=j}

  Int operator()(const Int& j) const;
  Int operator()(Index j) const { return (*this)(Int(j)); }

  std::string describe() const;

 private:
  struct Node;
  explicit GrowthFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// F_0(j) = j+1, F_n(j) = F_{n-1}^{(j)}(j). Closed forms F_1(j) = 2j and
// F_2(j) = j*2^j are used for speed; fgh_eval_reference follows the raw
// recursion and is kept as the oracle for the shortcut.
Int fgh_eval(int n, const Int& j);

// Naive recursion; O(value) time, only usable for tiny arguments.
Int fgh_eval_reference(int n, const Int& j);

// n-fold composition f^{(n)}(j).
Int iterate_fn(const GrowthFunction& f, const Int& count, const Int& j);

// Finite certificate that phi(j) <= F_n(j) on [j0, jmax]; not a proof beyond
// jmax. An overflow on one side only is decided soundly (the overflowed side
// is larger); overflow on both sides propagates the signal.
struct DominanceReport {
  bool dominated = true;
  std::optional<Int> first_violation;
};
DominanceReport dominance_check(const GrowthFunction& phi, int level, const Int& j0,
                                const Int& jmax);

// phi_eps(j) = nu(s_eps(j)) with s_eps(j) = sum_{n<=j} eps_n 3^{-n},
// j(x) = min{j : 3^j x integer}, nu(x) = 3^{j(x)} (1 + 2x).
// Exact integer arithmetic; requires eps.size() >= j.
Int continuum_phi(std::span<const int> eps, int j);

// A_{j,phi} = { alpha(phi(n)) : beta(j-1) < n <= beta(j) }, always 2j-1
// elements for strictly increasing phi.
std::vector<Int> levels_A(const GrowthFunction& phi, int j);

}  // namespace tsg
