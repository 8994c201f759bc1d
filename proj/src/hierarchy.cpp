#include "tsg/hierarchy.hpp"

#include <cmath>
#include <variant>

namespace tsg {

namespace {

// bits = digits * log2(10), rounded up
constexpr std::int64_t kBudgetBits = static_cast<std::int64_t>(kDigitBudget * 3.3220) + 1;

}  // namespace

bool within_budget(const Int& v) {
  if (v == 0) return true;
  Int a = v < 0 ? Int(-v) : v;
  return static_cast<std::int64_t>(msb(a)) < kBudgetBits;
}

void check_budget(const Int& v, int level, const Int& arg) {
  if (!within_budget(v)) throw HierarchyOverflow(level, arg);
}

Int fgh_eval(int n, const Int& j) {
  if (n < 0) throw std::invalid_argument("hierarchy level must be >= 0");
  if (j < 1) throw std::invalid_argument("hierarchy argument must be >= 1");
  switch (n) {
    case 0:
      return j + 1;
    case 1:
      return 2 * j;
    case 2: {
      // j * 2^j; reject without allocating when the shift alone blows the
      // budget
      if (j > kBudgetBits) throw HierarchyOverflow(2, j);
      Int r = j << j.convert_to<unsigned>();
      check_budget(r, 2, j);
      return r;
    }
    default: {
      Int v = j;
      for (Int i = 0; i < j; ++i) {
        v = fgh_eval(n - 1, v);  // throws once the budget is hit; each step
                                 // at least doubles v, so this is soon
      }
      return v;
    }
  }
}

Int fgh_eval_reference(int n, const Int& j) {
  if (n < 0 || j < 1) throw std::invalid_argument("bad hierarchy argument");
  if (n == 0) return j + 1;
  if (j > 1000000 || n > 6) throw std::length_error("reference recursion argument too large");
  Int v = j;
  for (Int i = 0; i < j; ++i) {
    v = fgh_eval_reference(n - 1, v);
    if (!within_budget(v)) throw HierarchyOverflow(n, j);
    if (n >= 2 && v > 1000000 && i + 1 < j) throw HierarchyOverflow(n, j);
  }
  return v;
}

struct GrowthFunction::Node {
  struct Fgh {
    int level;
  };
  struct Identity {};
  struct Constant {
    Int c;
  };
  struct Table {
    std::vector<Int> values;
  };
  struct Alpha {};
  struct Beta {};
  struct Continuum {
    std::vector<int> eps;
  };
  struct Compose {
    GrowthFunction outer, inner;
  };
  struct Sum {
    GrowthFunction a, b;
  };
  struct Product {
    GrowthFunction a, b;
  };
  struct Power {
    GrowthFunction base, exponent;
  };
  struct Cumulative {
    GrowthFunction inner;
  };
  using Kind = std::variant<Fgh, Identity, Constant, Table, Alpha, Beta, Continuum, Compose,
                            Sum, Product, Power, Cumulative>;
  Kind kind;
};

GrowthFunction GrowthFunction::fgh(int level) {
  if (level < 0) throw std::invalid_argument("hierarchy level must be >= 0");
  return GrowthFunction(std::make_shared<Node>(Node{Node::Fgh{level}}));
}
GrowthFunction GrowthFunction::identity() {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Identity{}}));
}
GrowthFunction GrowthFunction::constant(Int c) {
  if (c < 1) throw std::invalid_argument("constant must be >= 1");
  return GrowthFunction(std::make_shared<Node>(Node{Node::Constant{std::move(c)}}));
}
GrowthFunction GrowthFunction::from_table(std::vector<Int> table) {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Table{std::move(table)}}));
}
GrowthFunction GrowthFunction::alpha() {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Alpha{}}));
}
GrowthFunction GrowthFunction::beta() {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Beta{}}));
}
GrowthFunction GrowthFunction::continuum(std::vector<int> eps) {
  for (int e : eps)
    if (e != 1 && e != 2) throw std::invalid_argument("continuum prefix entries must be 1 or 2");
  return GrowthFunction(std::make_shared<Node>(Node{Node::Continuum{std::move(eps)}}));
}
GrowthFunction GrowthFunction::compose(GrowthFunction outer, GrowthFunction inner) {
  return GrowthFunction(
      std::make_shared<Node>(Node{Node::Compose{std::move(outer), std::move(inner)}}));
}
GrowthFunction GrowthFunction::sum(GrowthFunction a, GrowthFunction b) {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Sum{std::move(a), std::move(b)}}));
}
GrowthFunction GrowthFunction::product(GrowthFunction a, GrowthFunction b) {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Product{std::move(a), std::move(b)}}));
}
GrowthFunction GrowthFunction::power(GrowthFunction base, GrowthFunction exponent) {
  return GrowthFunction(
      std::make_shared<Node>(Node{Node::Power{std::move(base), std::move(exponent)}}));
}
GrowthFunction GrowthFunction::cumulative(GrowthFunction inner) {
  return GrowthFunction(std::make_shared<Node>(Node{Node::Cumulative{std::move(inner)}}));
}

Int GrowthFunction::operator()(const Int& j) const {
  if (j < 1) throw std::invalid_argument("growth functions are defined on j >= 1");
  const auto& k = node_->kind;
  if (auto* f = std::get_if<Node::Fgh>(&k)) return fgh_eval(f->level, j);
  if (std::get_if<Node::Identity>(&k)) return j;
  if (auto* c = std::get_if<Node::Constant>(&k)) return c->c;
  if (auto* t = std::get_if<Node::Table>(&k)) {
    if (j > static_cast<std::int64_t>(t->values.size()))
      throw std::out_of_range("explicit table has no entry at j");
    return t->values[j.convert_to<std::size_t>() - 1];
  }
  if (std::get_if<Node::Alpha>(&k)) {
    if (j > kBudgetBits) throw HierarchyOverflow(-1, j);
    unsigned uj = j.convert_to<unsigned>();
    Int r = 5 * (Int(1) << (uj - 1)) - 2 * j - 2;
    check_budget(r, -1, j);
    return r;
  }
  if (std::get_if<Node::Beta>(&k)) return j * j;
  if (auto* c = std::get_if<Node::Continuum>(&k))
    return continuum_phi(c->eps, j.convert_to<int>());
  if (auto* c = std::get_if<Node::Compose>(&k)) return c->outer(c->inner(j));
  if (auto* s = std::get_if<Node::Sum>(&k)) {
    Int r = s->a(j) + s->b(j);
    check_budget(r, -1, j);
    return r;
  }
  if (auto* p = std::get_if<Node::Product>(&k)) {
    Int r = p->a(j) * p->b(j);
    check_budget(r, -1, j);
    return r;
  }
  if (auto* p = std::get_if<Node::Power>(&k)) {
    Int base = p->base(j);
    Int e = p->exponent(j);
    if (e * static_cast<std::int64_t>(msb(base) + 1) > kDigitBudget * 4)
      throw HierarchyOverflow(-1, j);
    Int r = boost::multiprecision::pow(base, e.convert_to<unsigned>());
    check_budget(r, -1, j);
    return r;
  }
  if (auto* c = std::get_if<Node::Cumulative>(&k)) {
    Int r = 0;
    for (Int i = 1; i <= j; ++i) {
      r += c->inner(i);
      check_budget(r, -1, j);
    }
    return r;
  }
  throw std::logic_error("unhandled growth-function node");
}

std::string GrowthFunction::describe() const {
  const auto& k = node_->kind;
  if (auto* f = std::get_if<Node::Fgh>(&k)) return "fgh(" + std::to_string(f->level) + ")";
  if (std::get_if<Node::Identity>(&k)) return "id";
  if (auto* c = std::get_if<Node::Constant>(&k)) return "const(" + c->c.str() + ")";
  if (std::get_if<Node::Table>(&k)) return "table";
  if (std::get_if<Node::Alpha>(&k)) return "alpha";
  if (std::get_if<Node::Beta>(&k)) return "beta";
  if (std::get_if<Node::Continuum>(&k)) return "continuum";
  if (auto* c = std::get_if<Node::Compose>(&k))
    return c->outer.describe() + "∘" + c->inner.describe();
  if (auto* s = std::get_if<Node::Sum>(&k)) return s->a.describe() + "+" + s->b.describe();
  if (auto* p = std::get_if<Node::Product>(&k)) return p->a.describe() + "*" + p->b.describe();
  if (auto* p = std::get_if<Node::Power>(&k))
    return p->base.describe() + "^" + p->exponent.describe();
  if (auto* c = std::get_if<Node::Cumulative>(&k)) return "cumsum(" + c->inner.describe() + ")";
  return "?";
}

Int iterate_fn(const GrowthFunction& f, const Int& count, const Int& j) {
  if (count < 0) throw std::invalid_argument("iteration count must be >= 0");
  if (count > 10000000) throw std::length_error("iteration count too large");
  Int v = j;
  for (Int i = 0; i < count; ++i) v = f(v);
  return v;
}

DominanceReport dominance_check(const GrowthFunction& phi, int level, const Int& j0,
                                const Int& jmax) {
  DominanceReport report;
  for (Int j = j0; j <= jmax; ++j) {
    std::optional<Int> lhs, rhs;
    try {
      lhs = phi(j);
    } catch (const HierarchyOverflow&) {
    }
    try {
      rhs = fgh_eval(level, j);
    } catch (const HierarchyOverflow&) {
    }
    bool ok;
    if (lhs && rhs) {
      ok = *lhs <= *rhs;
    } else if (!lhs && rhs) {
      ok = false;  // phi above the budget, F_n below it
    } else if (lhs && !rhs) {
      ok = true;  // F_n blew the budget, phi did not
    } else {
      throw HierarchyOverflow(level, j);  // undecidable at this budget
    }
    if (!ok) {
      report.dominated = false;
      report.first_violation = j;
      return report;
    }
  }
  return report;
}

Int continuum_phi(std::span<const int> eps, int j) {
  if (j < 1) throw std::invalid_argument("j must be >= 1");
  if (static_cast<std::size_t>(j) > eps.size())
    throw std::invalid_argument("continuum prefix shorter than j");
  // s_eps(j) = S / 3^j with S = sum eps_n 3^{j-n}; the last digit is 1 or 2,
  // so 3 does not divide S and j(s) = j exactly. nu = 3^j (1 + 2 s) = 3^j + 2S.
  Int pow3 = 1;
  Int s = 0;
  for (int n = j; n >= 1; --n) {
    int e = eps[static_cast<std::size_t>(n) - 1];
    if (e != 1 && e != 2) throw std::invalid_argument("prefix entries must be 1 or 2");
    s += e * pow3;
    pow3 *= 3;
  }
  return pow3 + 2 * s;  // pow3 == 3^j here
}

std::vector<Int> levels_A(const GrowthFunction& phi, int j) {
  if (j < 1) throw std::invalid_argument("j must be >= 1");
  GrowthFunction a = GrowthFunction::alpha();
  Int lo = Int(j - 1) * Int(j - 1);
  Int hi = Int(j) * Int(j);
  std::vector<Int> out;
  Int prev_phi = 0;
  for (Int n = lo + 1; n <= hi; ++n) {
    Int pn = phi(n);
    if (n > lo + 1 && pn <= prev_phi)
      throw std::invalid_argument("phi must be strictly increasing on the window");
    prev_phi = pn;
    out.push_back(a(pn));
  }
  return out;
}

}  // namespace tsg
