#include "tsg/spaces.hpp"

#include "tsg/dkk.hpp"
#include "tsg/trig.hpp"
#include "tsg/tsirelson.hpp"

#include <cmath>
#include <variant>

namespace tsg {

struct Space::Node {
  struct Tsirelson {};
  struct Lp {
    double p;
  };
  struct FiniteLp {
    double p;
    Index n;
  };
  struct Convex {
    Space inner;
    double p;
  };
  struct DirectSumUniform {
    Space outer;
    Space inner;
    GrowthFunction dims;
  };
  struct DirectSumList {
    Space outer;
    std::vector<Space> inners;
    std::vector<Index> dims;
  };
  struct Restrict {
    Space inner;
    std::vector<Index> map;
  };
  struct WeightedTrig {
    double lambda;
    Index dim;
    std::shared_ptr<const Eigen::MatrixXd> gram;
  };
  struct RotatedTrig {
    double a;
    Index dim;
    Index component_dim;
    std::shared_ptr<const Eigen::MatrixXd> gram_plus;
    std::shared_ptr<const Eigen::MatrixXd> gram_minus;
  };
  struct Dkk {
    Space base;
    Space symmetric;
    OrderedPartition sigma;
  };
  using Kind = std::variant<Tsirelson, Lp, FiniteLp, Convex, DirectSumUniform, DirectSumList,
                            Restrict, WeightedTrig, RotatedTrig, Dkk>;
  Kind kind;
};

namespace {

void require_positive(double p) {
  if (!(p > 0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be > 0");
}

double lp_norm_double(const FinVec& f, double p) {
  double s = 0;
  for (const auto& [i, v] : f) s += std::pow(std::abs(to_double(v)), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

template <class T>
Space Space::make(T&& kind) {
  return Space(std::make_shared<const Node>(Node{std::forward<T>(kind)}));
}

Space Space::tsirelson() { return make(Node::Tsirelson{}); }

Space Space::lp(double p) {
  require_positive(p);
  return make(Node::Lp{p});
}

Space Space::lp_finite(double p, Index n) {
  require_positive(p);
  if (n < 1) throw std::invalid_argument("finite dimension must be >= 1");
  return make(Node::FiniteLp{p, n});
}

Space Space::convexify(Space inner, double p) {
  require_positive(p);
  return make(Node::Convex{std::move(inner), p});
}

Space Space::direct_sum(Space outer, Space inner, GrowthFunction dims) {
  return make(Node::DirectSumUniform{std::move(outer), std::move(inner), std::move(dims)});
}

Space Space::direct_sum(Space outer, std::vector<Space> inners, std::vector<Index> dims) {
  if (inners.size() != dims.size())
    throw std::invalid_argument("inner spaces and dimensions must align");
  for (std::size_t i = 0; i < inners.size(); ++i) {
    if (dims[i] == -1) dims[i] = inners[i].dimension();
    if (dims[i] < 1) throw std::invalid_argument("block dimensions must be positive and finite");
  }
  return make(Node::DirectSumList{std::move(outer), std::move(inners), std::move(dims)});
}

Space Space::restrict_to(Space inner, std::vector<Index> map) {
  if (map.empty()) throw std::invalid_argument("restriction map must not be empty");
  return make(Node::Restrict{std::move(inner), std::move(map)});
}

Space Space::weighted_trig(double lambda, Index dim) {
  if (!(lambda > -1 && lambda < 1)) throw std::invalid_argument("lambda must be in (-1, 1)");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  auto g = std::make_shared<Eigen::MatrixXd>(trig_gram(lambda, dim));
  return make(Node::WeightedTrig{lambda, dim, std::move(g)});
}

Space Space::rotated_trig_sum(double a, Index dim) {
  if (!(a > 0 && a < 1)) throw std::invalid_argument("a must be in (0, 1)");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  Index comp = (dim + 1) / 2;
  auto gp = std::make_shared<Eigen::MatrixXd>(trig_gram(a, comp));
  auto gm = std::make_shared<Eigen::MatrixXd>(trig_gram(-a, comp));
  return make(Node::RotatedTrig{a, dim, comp, std::move(gp), std::move(gm)});
}

Space Space::dkk(Space base, Space symmetric, OrderedPartition sigma) {
  lambda_fn(symmetric, 1);  // rejects non-subsymmetric descriptors up front
  return make(Node::Dkk{std::move(base), std::move(symmetric), std::move(sigma)});
}

namespace {

// Flat index -> (block, pos) for uniform sums; cumulative dims in big ints so
// fast-growing dimension rules cannot wrap.
BlockVec reindex_by_dims(const GrowthFunction& dims, const FinVec& f) {
  BlockVec out;
  if (f.empty()) return out;
  Int cum_prev = 0;
  Index block = 1;
  Int cum = dims(Int(1));
  for (const auto& [k, v] : f) {
    while (Int(k) > cum) {
      ++block;
      cum_prev = cum;
      cum += dims(Int(block));
    }
    out.set({block, k - cum_prev.convert_to<Index>()}, v);
  }
  return out;
}

}  // namespace

BlockVec square_reindex(const FinVec& f) {
  BlockVec out;
  for (const auto& [k, v] : f) {
    if (k % 2 == 1) {
      out.set({1, (k + 1) / 2}, v);
    } else {
      out.set({2, k / 2}, v);
    }
  }
  return out;
}

FinVec square_unreindex(const BlockVec& g) {
  FinVec out;
  for (const auto& [bi, v] : g) {
    if (bi.block != 1 && bi.block != 2) throw std::domain_error("square has two blocks");
    out.set(2 * bi.pos + bi.block - 2, v);
  }
  return out;
}

BlockVec iso_reindex(const GrowthFunction& dims, const FinVec& f) {
  return reindex_by_dims(dims, f);
}

FinVec iso_unreindex(const GrowthFunction& dims, const BlockVec& g) {
  FinVec out;
  Int cum = 0;
  Index block = 0;
  for (const auto& [bi, v] : g) {  // blocks ascend in map order
    while (block < bi.block) {
      ++block;
      if (block > 1) cum += dims(Int(block - 1));
    }
    Int dim_b = dims(Int(bi.block));
    if (Int(bi.pos) > dim_b) throw std::domain_error("position exceeds block dimension");
    out.set(cum.convert_to<Index>() + bi.pos, v);
  }
  return out;
}

namespace {

struct NormVisitor {
  const FinVec& f;

  double operator()(const Space::Node::Tsirelson&) const {
    return to_double(tsirelson_norm(f));
  }
  double operator()(const Space::Node::Lp& n) const { return lp_norm_double(f, n.p); }
  double operator()(const Space::Node::FiniteLp& n) const {
    if (f.max_index() > n.n) throw std::domain_error("index outside the finite space");
    return lp_norm_double(f, n.p);
  }
  double operator()(const Space::Node::Convex& n) const {
    FinVec powered;
    for (const auto& [i, v] : f)
      powered.set(i, rational_from_double(std::pow(std::abs(to_double(v)), n.p)));
    return std::pow(n.inner.norm(powered), 1.0 / n.p);
  }
  double operator()(const Space::Node::DirectSumUniform& n) const {
    BlockVec blocks = reindex_by_dims(n.dims, f);
    FinVec outer_vec;
    for (Index j : blocks.blocks())
      outer_vec.set(j, rational_from_double(n.inner.norm(blocks.block(j))));
    return n.outer.norm(outer_vec);
  }
  double operator()(const Space::Node::DirectSumList& n) const {
    FinVec outer_vec;
    Index base = 0;
    FinVec current;
    std::size_t block = 0;
    auto flush = [&](std::size_t b) {
      if (!current.empty())
        outer_vec.set(static_cast<Index>(b) + 1, rational_from_double(n.inners[b].norm(current)));
      current = FinVec();
    };
    for (const auto& [k, v] : f) {
      while (block < n.dims.size() && k > base + n.dims[block]) {
        flush(block);
        base += n.dims[block];
        ++block;
      }
      if (block >= n.dims.size()) throw std::domain_error("index beyond the last block");
      current.set(k - base, v);
    }
    if (block < n.dims.size()) flush(block);
    return n.outer.norm(outer_vec);
  }
  double operator()(const Space::Node::Restrict& n) const {
    FinVec g;
    for (const auto& [k, v] : f) {
      if (k > static_cast<Index>(n.map.size()))
        throw std::domain_error("index outside the restriction");
      g.set(n.map[static_cast<std::size_t>(k) - 1], v);
    }
    return n.inner.norm(g);
  }
  double operator()(const Space::Node::WeightedTrig& n) const {
    if (f.max_index() > n.dim) throw std::domain_error("index outside the trig system");
    return trig_norm(*n.gram, f);
  }
  double operator()(const Space::Node::RotatedTrig& n) const {
    if (f.max_index() > n.dim) throw std::domain_error("index outside the rotated system");
    return rotated_norm(*n.gram_plus, *n.gram_minus, f);
  }
  double operator()(const Space::Node::Dkk& n) const {
    return dkk_norm(DkkSpec{n.base, n.symmetric, n.sigma}, f);
  }
};

struct ExactVisitor {
  const FinVec& f;

  std::optional<Rational> operator()(const Space::Node::Tsirelson&) const {
    return tsirelson_norm(f);
  }
  std::optional<Rational> operator()(const Space::Node::Lp& n) const {
    if (n.p != 1.0) return std::nullopt;
    return f.l1();
  }
  std::optional<Rational> operator()(const Space::Node::FiniteLp& n) const {
    if (f.max_index() > n.n) throw std::domain_error("index outside the finite space");
    if (n.p != 1.0) return std::nullopt;
    return f.l1();
  }
  std::optional<Rational> operator()(const Space::Node::Convex& n) const {
    if (n.p != 1.0) return std::nullopt;
    return n.inner.norm_exact(f.abs());
  }
  std::optional<Rational> operator()(const Space::Node::DirectSumUniform& n) const {
    BlockVec blocks = reindex_by_dims(n.dims, f);
    FinVec outer_vec;
    for (Index j : blocks.blocks()) {
      auto inner = n.inner.norm_exact(blocks.block(j));
      if (!inner) return std::nullopt;
      outer_vec.set(j, *inner);
    }
    return n.outer.norm_exact(outer_vec);
  }
  std::optional<Rational> operator()(const Space::Node::DirectSumList&) const {
    return std::nullopt;
  }
  std::optional<Rational> operator()(const Space::Node::Restrict& n) const {
    FinVec g;
    for (const auto& [k, v] : f) {
      if (k > static_cast<Index>(n.map.size()))
        throw std::domain_error("index outside the restriction");
      g.set(n.map[static_cast<std::size_t>(k) - 1], v);
    }
    return n.inner.norm_exact(g);
  }
  std::optional<Rational> operator()(const Space::Node::WeightedTrig&) const {
    return std::nullopt;
  }
  std::optional<Rational> operator()(const Space::Node::RotatedTrig&) const {
    return std::nullopt;
  }
  std::optional<Rational> operator()(const Space::Node::Dkk&) const { return std::nullopt; }
};

}  // namespace

double Space::norm(const FinVec& f) const {
  if (f.empty()) return 0.0;
  return std::visit(NormVisitor{f}, node_->kind);
}

std::optional<Rational> Space::norm_exact(const FinVec& f) const {
  if (f.empty()) return Rational(0);
  return std::visit(ExactVisitor{f}, node_->kind);
}

double Space::norm_blocks(const BlockVec& f) const {
  if (auto* u = std::get_if<Node::DirectSumUniform>(&node_->kind)) {
    FinVec outer_vec;
    for (Index j : f.blocks()) {
      FinVec b = f.block(j);
      Int dim = u->dims(Int(j));
      if (Int(b.max_index()) > dim) throw std::domain_error("position exceeds block dimension");
      outer_vec.set(j, rational_from_double(u->inner.norm(b)));
    }
    return u->outer.norm(outer_vec);
  }
  if (auto* l = std::get_if<Node::DirectSumList>(&node_->kind)) {
    FinVec outer_vec;
    for (Index j : f.blocks()) {
      if (j > static_cast<Index>(l->inners.size())) throw std::domain_error("block out of range");
      FinVec b = f.block(j);
      if (b.max_index() > l->dims[static_cast<std::size_t>(j) - 1])
        throw std::domain_error("position exceeds block dimension");
      outer_vec.set(j, rational_from_double(l->inners[static_cast<std::size_t>(j) - 1].norm(b)));
    }
    return l->outer.norm(outer_vec);
  }
  throw std::domain_error("norm_blocks is defined for direct sums");
}

double Space::convexity_exponent() const {
  struct V {
    double operator()(const Node::Tsirelson&) const { return 1; }
    double operator()(const Node::Lp& n) const { return std::min(n.p, 1.0); }
    double operator()(const Node::FiniteLp& n) const { return std::min(n.p, 1.0); }
    double operator()(const Node::Convex& n) const {
      return std::min(1.0, n.p * n.inner.convexity_exponent());
    }
    double operator()(const Node::DirectSumUniform& n) const {
      return std::min(n.outer.convexity_exponent(), n.inner.convexity_exponent());
    }
    double operator()(const Node::DirectSumList& n) const {
      double c = n.outer.convexity_exponent();
      for (const auto& s : n.inners) c = std::min(c, s.convexity_exponent());
      return c;
    }
    double operator()(const Node::Restrict& n) const { return n.inner.convexity_exponent(); }
    double operator()(const Node::WeightedTrig&) const { return 1; }
    double operator()(const Node::RotatedTrig&) const { return 1; }
    double operator()(const Node::Dkk& n) const {
      return std::min(n.base.convexity_exponent(), n.symmetric.convexity_exponent());
    }
  };
  return std::visit(V{}, node_->kind);
}

double Space::quasi_modulus() const {
  return std::pow(2.0, 1.0 / convexity_exponent() - 1.0);
}

bool Space::is_lattice() const {
  struct V {
    bool operator()(const Node::Tsirelson&) const { return true; }
    bool operator()(const Node::Lp&) const { return true; }
    bool operator()(const Node::FiniteLp&) const { return true; }
    bool operator()(const Node::Convex& n) const { return n.inner.is_lattice(); }
    bool operator()(const Node::DirectSumUniform& n) const {
      return n.outer.is_lattice() && n.inner.is_lattice();
    }
    bool operator()(const Node::DirectSumList& n) const {
      if (!n.outer.is_lattice()) return false;
      for (const auto& s : n.inners)
        if (!s.is_lattice()) return false;
      return true;
    }
    bool operator()(const Node::Restrict& n) const { return n.inner.is_lattice(); }
    bool operator()(const Node::WeightedTrig&) const { return false; }
    bool operator()(const Node::RotatedTrig&) const { return false; }
    bool operator()(const Node::Dkk&) const { return false; }
  };
  return std::visit(V{}, node_->kind);
}

bool Space::supports_exact() const {
  struct V {
    bool operator()(const Node::Tsirelson&) const { return true; }
    bool operator()(const Node::Lp& n) const { return n.p == 1.0; }
    bool operator()(const Node::FiniteLp& n) const { return n.p == 1.0; }
    bool operator()(const Node::Convex& n) const {
      return n.p == 1.0 && n.inner.supports_exact();
    }
    bool operator()(const Node::DirectSumUniform& n) const {
      return n.outer.supports_exact() && n.inner.supports_exact();
    }
    bool operator()(const Node::DirectSumList&) const { return false; }
    bool operator()(const Node::Restrict& n) const { return n.inner.supports_exact(); }
    bool operator()(const Node::WeightedTrig&) const { return false; }
    bool operator()(const Node::RotatedTrig&) const { return false; }
    bool operator()(const Node::Dkk&) const { return false; }
  };
  return std::visit(V{}, node_->kind);
}

Index Space::dimension() const {
  struct V {
    Index operator()(const Node::Tsirelson&) const { return -1; }
    Index operator()(const Node::Lp&) const { return -1; }
    Index operator()(const Node::FiniteLp& n) const { return n.n; }
    Index operator()(const Node::Convex& n) const { return n.inner.dimension(); }
    Index operator()(const Node::DirectSumUniform&) const { return -1; }
    Index operator()(const Node::DirectSumList& n) const {
      Index total = 0;
      for (Index d : n.dims) total += d;
      return total;
    }
    Index operator()(const Node::Restrict& n) const {
      return static_cast<Index>(n.map.size());
    }
    Index operator()(const Node::WeightedTrig& n) const { return n.dim; }
    Index operator()(const Node::RotatedTrig& n) const { return n.dim; }
    Index operator()(const Node::Dkk&) const { return -1; }
  };
  return std::visit(V{}, node_->kind);
}

std::optional<Eigen::MatrixXd> Space::gram() const {
  if (auto* w = std::get_if<Node::WeightedTrig>(&node_->kind)) return *w->gram;
  if (auto* r = std::get_if<Node::RotatedTrig>(&node_->kind)) {
    Index d = r->dim;
    Eigen::MatrixXd g(d, d);
    const Eigen::MatrixXd& gp = *r->gram_plus;
    const Eigen::MatrixXd& gm = *r->gram_minus;
    for (Index row = 1; row <= d; ++row) {
      for (Index col = 1; col <= d; ++col) {
        Index m = (row + 1) / 2, n = (col + 1) / 2;
        double sp = gp(m - 1, n - 1), sm = gm(m - 1, n - 1);
        bool same_sign = (row % 2) == (col % 2);  // both carry +y or both -y
        g(row - 1, col - 1) = 0.5 * (sp + (same_sign ? sm : -sm));
      }
    }
    return g;
  }
  return std::nullopt;
}

std::optional<double> Space::lp_exponent() const {
  if (auto* n = std::get_if<Node::Lp>(&node_->kind)) return n->p;
  return std::nullopt;
}

std::string Space::describe() const {
  struct V {
    std::string operator()(const Node::Tsirelson&) const { return "tsirelson"; }
    std::string operator()(const Node::Lp& n) const {
      return "lp(p=" + std::to_string(n.p) + ")";
    }
    std::string operator()(const Node::FiniteLp& n) const {
      return "lpn(p=" + std::to_string(n.p) + ",n=" + std::to_string(n.n) + ")";
    }
    std::string operator()(const Node::Convex& n) const {
      return "convex(" + n.inner.describe() + ",p=" + std::to_string(n.p) + ")";
    }
    std::string operator()(const Node::DirectSumUniform& n) const {
      return "dsum(outer=" + n.outer.describe() + ", inner=" + n.inner.describe() +
             ", dims=" + n.dims.describe() + ")";
    }
    std::string operator()(const Node::DirectSumList& n) const {
      return "dsum(list of " + std::to_string(n.inners.size()) + " blocks)";
    }
    std::string operator()(const Node::Restrict& n) const {
      return "restrict(" + n.inner.describe() + ")";
    }
    std::string operator()(const Node::WeightedTrig& n) const {
      return "wtrig(lambda=" + std::to_string(n.lambda) + ",dim=" + std::to_string(n.dim) + ")";
    }
    std::string operator()(const Node::RotatedTrig& n) const {
      return "rot(a=" + std::to_string(n.a) + ",dim=" + std::to_string(n.dim) + ")";
    }
    std::string operator()(const Node::Dkk& n) const {
      return "dkk(base=" + n.base.describe() + ", s=" + n.symmetric.describe() + ")";
    }
  };
  return std::visit(V{}, node_->kind);
}

}  // namespace tsg
