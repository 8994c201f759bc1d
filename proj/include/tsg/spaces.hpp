#pragma once

#include "tsg/finvec.hpp"
#include "tsg/hierarchy.hpp"
#include "tsg/partition.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsg {

// Closed combinator algebra of quasi-normed sequence spaces. A Space is an
// immutable descriptor tree with one capability: evaluating its quasi-norm on
// a finitely supported vector given in unit-vector coordinates. Evaluation is
// pure and safe to run concurrently.
class Space {
 public:
  static Space tsirelson();
  static Space lp(double p);
  static Space lp_finite(double p, Index n);
  static Space convexify(Space inner, double p);
  // One inner space per block, block dimensions given by dims(j); touched
  // blocks only are ever materialized.
  static Space direct_sum(Space outer, Space inner, GrowthFunction dims);
  // Explicit finite list of inner spaces with their dimensions (dimension -1
  // means inherited from the inner space).
  static Space direct_sum(Space outer, std::vector<Space> inners, std::vector<Index> dims);
  // Positions k = 1, 2, ... mapped to inner indices map[k-1].
  static Space restrict_to(Space inner, std::vector<Index> map);
  static Space weighted_trig(double lambda, Index dim);
  static Space rotated_trig_sum(double a, Index dim);
  static Space dkk(Space base, Space symmetric, OrderedPartition sigma);

  double norm(const FinVec& f) const;
  std::optional<Rational> norm_exact(const FinVec& f) const;

  // Norm of an explicitly block-indexed vector; defined for direct sums.
  double norm_blocks(const BlockVec& f) const;

  // Modulus kappa in ||f+g|| <= kappa (||f|| + ||g||); 2^{1/c - 1} for the
  // convexity exponent c of the descriptor tree.
  double quasi_modulus() const;
  double convexity_exponent() const;

  // True when the unit vectors form a 1-unconditional basis under this
  // engine (everything except the trig and DKK descriptors).
  bool is_lattice() const;

  bool supports_exact() const;

  Index dimension() const;  // -1 for infinite

  // Gram matrix of the Hilbert-like engines (weighted trig / rotated sum).
  std::optional<Eigen::MatrixXd> gram() const;

  // The exponent when this is a plain lp descriptor.
  std::optional<double> lp_exponent() const;

  std::string describe() const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  template <class T>
  static Space make(T&& kind);
  std::shared_ptr<const Node> node_;
};

// pi(j, n) = 2n + j - 2 splits a vector into its odd (j=1) and even (j=2)
// parts with compressed inner indices.
BlockVec square_reindex(const FinVec& f);
FinVec square_unreindex(const BlockVec& g);

// pi(k) = (j, n) when k = n + sum_{i<j} dims(i).
BlockVec iso_reindex(const GrowthFunction& dims, const FinVec& f);
FinVec iso_unreindex(const GrowthFunction& dims, const BlockVec& g);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& message)
      : std::runtime_error("at position " + std::to_string(pos) + ": " + message), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar (keywords case-insensitive):
//   space   := "tsirelson" | "lp(p=R)" | "lpn(p=R,n=I)" | "convex(space,p=R)"
//            | "dsum(outer=space, inner=space, dims=dimspec)"
//            | "wtrig(lambda=R,dim=I)" | "rot(a=R,dim=I)"
//            | "dkk(base=space, s=space, sigma=sigmaspec)"
//   dimspec := "fgh(I)" | "id" | "const(I)" | I ("," I)*
//   sigmaspec := "geometric" | I ("," I)*
Space parse_space(const std::string& text);

// Vector literals: dense JSON array [v1, v2, ...] (index = position),
// JSON triples [[index, num, den], ...], or a bare CSV row "1,0.5,-2".
FinVec parse_vector(const std::string& text);

}  // namespace tsg
