#include "tsg/tsirelson.hpp"

#include <algorithm>
#include <bit>

namespace tsg {

namespace {

// num / 2^exp with cpp_int numerator. Stage values of the recursion live on
// a common integer grid, so no gcd work is ever needed.
struct Dyadic {
  Int num;
  unsigned exp = 0;

  static Dyadic zero() { return {}; }

  void normalize() {
    if (num == 0) {
      exp = 0;
      return;
    }
    while (exp > 0 && bit_test(num, 0) == false) {
      num >>= 1;
      --exp;
    }
  }

  Dyadic plus(const Dyadic& o) const {
    Dyadic r;
    if (exp >= o.exp) {
      r.exp = exp;
      r.num = num + (o.num << (exp - o.exp));
    } else {
      r.exp = o.exp;
      r.num = (num << (o.exp - exp)) + o.num;
    }
    return r;
  }

  Dyadic halved() const {
    Dyadic r{num, exp + 1};
    r.normalize();
    return r;
  }

  bool less(const Dyadic& o) const {
    if (exp >= o.exp) return num < (o.num << (exp - o.exp));
    return (num << (o.exp - exp)) < o.num;
  }

  bool equals(const Dyadic& o) const {
    if (exp >= o.exp) return num == (o.num << (exp - o.exp));
    return (num << (o.exp - exp)) == o.num;
  }

  Rational to_rational() const {
    Rational q(num);
    if (exp > 0) q /= Rational(Int(1) << exp);
    return q;
  }
};

Dyadic dmax(const Dyadic& a, const Dyadic& b) { return a.less(b) ? b : a; }

// Clears denominators: returns |entries| * scale as integers on [1, N].
std::vector<Int> scaled_magnitudes(const FinVec& f, Int& scale) {
  scale = 1;
  for (const auto& [i, v] : f)
    scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(v)));
  std::vector<Int> mags(static_cast<std::size_t>(f.max_index()) + 1, Int(0));
  for (const auto& [i, v] : f) {
    Rational q = rabs(v) * Rational(scale);
    mags[static_cast<std::size_t>(i)] = Int(boost::multiprecision::numerator(q));
  }
  return mags;
}

}  // namespace

struct NormTable::Impl {
  Index n = 0;
  Int scale = 1;
  // levels[m][idx(a,b)] with idx over 1 <= a <= b <= n
  std::vector<std::vector<Dyadic>> levels;

  std::size_t idx(Index a, Index b) const {
    // row-major over a, offset by b-a
    std::size_t ia = static_cast<std::size_t>(a - 1);
    return ia * static_cast<std::size_t>(n) - ia * (ia - 1) / 2 +
           static_cast<std::size_t>(b - a);
  }

  void compute(const std::vector<Int>& mags);
};

void NormTable::Impl::compute(const std::vector<Int>& mags) {
  const Index N = n;
  std::size_t total = static_cast<std::size_t>(N) * (N + 1) / 2;
  std::vector<Dyadic> w(total);
  for (Index a = 1; a <= N; ++a) {
    Int running = 0;
    for (Index b = a; b <= N; ++b) {
      running = std::max(running, mags[static_cast<std::size_t>(b)]);
      w[idx(a, b)] = Dyadic{running, 0};
    }
  }
  levels.push_back(w);

  // Per round and right endpoint b: d[j][s] = best value of splitting [s, b]
  // into exactly j consecutive intervals (previous-level values). A family
  // acting on [a, b] takes n parts starting at max(a, n); the exact-count
  // table is monotone in j, so for n < a only the largest feasible count
  // matters, and for n >= a a suffix max over d[n][n] covers the rest.
  std::vector<std::vector<Dyadic>> d;
  std::vector<char> dset;
  while (true) {
    const auto& prev = levels.back();
    std::vector<Dyadic> next = prev;
    bool changed = false;
    for (Index b = 1; b <= N; ++b) {
      const Index maxj = (b + 1) / 2;
      d.assign(static_cast<std::size_t>(maxj) + 1,
               std::vector<Dyadic>(static_cast<std::size_t>(b) + 2));
      dset.assign((static_cast<std::size_t>(maxj) + 1) * (static_cast<std::size_t>(b) + 2), 0);
      auto set_flag = [&](Index j, Index s) {
        dset[static_cast<std::size_t>(j) * (b + 2) + static_cast<std::size_t>(s)] = 1;
      };
      auto has = [&](Index j, Index s) {
        return dset[static_cast<std::size_t>(j) * (b + 2) + static_cast<std::size_t>(s)] != 0;
      };
      for (Index s = 1; s <= b; ++s) {
        d[1][static_cast<std::size_t>(s)] = prev[idx(s, b)];
        set_flag(1, s);
      }
      for (Index j = 2; j <= maxj; ++j) {
        for (Index s = j; s <= b - j + 1; ++s) {
          Dyadic best;
          bool found = false;
          for (Index t = s; t <= b - j + 1; ++t) {
            if (!has(j - 1, t + 1)) continue;
            Dyadic c = prev[idx(s, t)].plus(d[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(t + 1)]);
            if (!found || best.less(c)) {
              best = c;
              found = true;
            }
          }
          if (found) {
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] = best;
            set_flag(j, s);
          }
        }
      }
      // suffix max over d[j][j]
      std::vector<Dyadic> suffix(static_cast<std::size_t>(maxj) + 2);
      std::vector<char> suffix_set(static_cast<std::size_t>(maxj) + 2, 0);
      for (Index j = maxj; j >= 1; --j) {
        Dyadic cur;
        bool ok = false;
        if (has(j, j)) {
          cur = d[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
          ok = true;
        }
        if (suffix_set[static_cast<std::size_t>(j + 1)]) {
          cur = ok ? dmax(cur, suffix[static_cast<std::size_t>(j + 1)])
                   : suffix[static_cast<std::size_t>(j + 1)];
          ok = true;
        }
        suffix[static_cast<std::size_t>(j)] = cur;
        suffix_set[static_cast<std::size_t>(j)] = ok ? 1 : 0;
      }
      for (Index a = 1; a <= b; ++a) {
        Dyadic best;
        bool found = false;
        Index nlt = std::min<Index>(a - 1, b - a + 1);
        if (nlt >= 1 && has(nlt, a)) {
          best = d[static_cast<std::size_t>(nlt)][static_cast<std::size_t>(a)];
          found = true;
        }
        if (a <= maxj && suffix_set[static_cast<std::size_t>(a)]) {
          Dyadic c = suffix[static_cast<std::size_t>(a)];
          best = found ? dmax(best, c) : c;
          found = true;
        }
        if (!found) continue;
        Dyadic cand = best.halved();
        auto& cell = next[idx(a, b)];
        if (cell.less(cand)) {
          cell = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
    levels.push_back(std::move(next));
    if (static_cast<Index>(levels.size()) > N + 1)
      throw std::logic_error("norm recursion failed to stabilize within N rounds");
  }
}

NormTable::NormTable(const FinVec& f) : impl_(std::make_unique<Impl>()) {
  impl_->n = std::max<Index>(f.max_index(), 1);
  auto mags = scaled_magnitudes(f, impl_->scale);
  mags.resize(static_cast<std::size_t>(impl_->n) + 1, Int(0));
  impl_->compute(mags);
}

NormTable::~NormTable() = default;
NormTable::NormTable(NormTable&&) noexcept = default;

int NormTable::rounds() const { return static_cast<int>(impl_->levels.size()) - 1; }

Rational NormTable::value_at_level(Index a, Index b, int level) const {
  if (a < 1 || b > impl_->n || a > b) throw std::domain_error("interval out of range");
  std::size_t lvl = level < 0 ? impl_->levels.size() - 1
                              : std::min<std::size_t>(static_cast<std::size_t>(level),
                                                      impl_->levels.size() - 1);
  return impl_->levels[lvl][impl_->idx(a, b)].to_rational() / Rational(impl_->scale);
}

Rational NormTable::value(Index a, Index b) const { return value_at_level(a, b, -1); }

Rational NormTable::norm() const { return value(1, impl_->n); }

Index NormTable::max_index() const { return impl_->n; }

Rational tsirelson_norm(const FinVec& f) {
  if (f.empty()) return Rational(0);
  return NormTable(f).norm();
}

namespace {

struct BruteContext {
  int n = 0;
  std::vector<Dyadic> point;                // |x_i| on 1..n, scaled
  std::vector<std::optional<Dyadic>> memo;  // by mask

  Dyadic norm_of(unsigned mask);
  // Best sum of j successive sets inside mask with min index >= p (1-based),
  // or nullopt when j sets do not fit.
  std::optional<Dyadic> best_family(unsigned mask, int j, int p);
};

std::optional<Dyadic> BruteContext::best_family(unsigned mask, int j, int p) {
  if (j == 0) return Dyadic::zero();
  if (p > n) return std::nullopt;
  unsigned avail = mask & ~((1u << (p - 1)) - 1u);
  if (avail == 0) return std::nullopt;
  std::optional<Dyadic> best;
  for (unsigned sub = avail; sub != 0; sub = (sub - 1) & avail) {
    int hi = std::bit_width(sub);  // max 1-based index in the candidate set
    auto tail = best_family(mask, j - 1, hi + 1);
    if (!tail) continue;
    Dyadic cand = norm_of(sub).plus(*tail);
    if (!best || best->less(cand)) best = cand;
  }
  return best;
}

Dyadic BruteContext::norm_of(unsigned mask) {
  if (mask == 0) return Dyadic::zero();
  auto& slot = memo[mask];
  if (slot) return *slot;
  Dyadic best;
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1u) best = dmax(best, point[static_cast<std::size_t>(i) + 1]);
  // A single set equal to the whole support contributes half the value and
  // never attains the max, so the recursion over proper subsets below is
  // well founded. best_family skips nothing else.
  for (int fam = 1; 2 * fam - 1 <= n; ++fam) {
    std::optional<Dyadic> sum;
    // first set starts at position >= fam; enumerate with the whole-support
    // exclusion only relevant for fam == 1
    unsigned avail = mask & ~((1u << (fam - 1)) - 1u);
    for (unsigned sub = avail; sub != 0; sub = (sub - 1) & avail) {
      if (fam == 1 && sub == mask) continue;
      int hi = std::bit_width(sub);
      auto tail = best_family(mask, fam - 1, hi + 1);
      if (!tail) continue;
      Dyadic cand = norm_of(sub).plus(*tail);
      if (!sum || sum->less(cand)) sum = cand;
    }
    if (sum) best = dmax(best, sum->halved());
  }
  slot = best;
  return best;
}

}  // namespace

Rational tsirelson_norm_bruteforce(const FinVec& f) {
  if (f.empty()) return Rational(0);
  if (f.max_index() > kBruteForceMaxIndex)
    throw std::length_error("brute-force oracle limited to supports in [1, 8]");
  BruteContext ctx;
  ctx.n = static_cast<int>(f.max_index());
  Int scale;
  auto mags = scaled_magnitudes(f, scale);
  ctx.point.resize(static_cast<std::size_t>(ctx.n) + 1);
  for (int i = 1; i <= ctx.n; ++i)
    ctx.point[static_cast<std::size_t>(i)] = Dyadic{mags[static_cast<std::size_t>(i)], 0};
  ctx.memo.assign(1u << ctx.n, std::nullopt);
  Dyadic result = ctx.norm_of((1u << ctx.n) - 1u);
  return result.to_rational() / Rational(scale);
}

BlockCompare block_norm_compare(const GrowthFunction& phi, const std::vector<FinVec>& blocks) {
  FinVec combined;
  FinVec collapsed;
  Index prev_phi = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Int phik_big = phi(Int(k + 1));
    Index phik = phik_big.convert_to<Index>();
    for (const auto& [i, v] : blocks[k]) {
      if (i <= prev_phi || i > phik)
        throw std::domain_error("block " + std::to_string(k + 1) +
                                " support outside (phi(k-1), phi(k)]");
      combined.set(i, v);
    }
    if (!blocks[k].empty()) collapsed.set(phik, tsirelson_norm(blocks[k]));
    prev_phi = phik;
  }
  BlockCompare out;
  out.lhs = tsirelson_norm(combined);
  out.rhs = tsirelson_norm(collapsed);
  out.ratio = out.rhs == 0 ? 1.0 : to_double(out.lhs) / to_double(out.rhs);
  return out;
}

RatioBounds subsequence_l1_equivalence(const GrowthFunction& phi, Index j, int samples, Rng rng) {
  Index lo = phi(Int(j)).convert_to<Index>();
  Index hi = phi(Int(j + 1)).convert_to<Index>();
  Index window = hi - lo;
  if (window < 1) throw std::domain_error("phi must be increasing");
  if (window > 12) throw std::length_error("window larger than 12");
  RatioBounds bounds{1.0, 1.0};
  bool first = true;
  for (int s = 0; s < samples; ++s) {
    FinVec f;
    for (Index i = 1; i <= window; ++i) {
      if (rng.next_unit() < 0.15 && window > 1) continue;  // occasional holes
      f.set(lo + i, rng.next_rational(9, 7));
    }
    if (f.empty()) f.set(lo + 1, Rational(1));
    double ratio = to_double(tsirelson_norm(f)) / to_double(f.l1());
    if (first) {
      bounds.lo = bounds.hi = ratio;
      first = false;
    } else {
      bounds.lo = std::min(bounds.lo, ratio);
      bounds.hi = std::max(bounds.hi, ratio);
    }
  }
  return bounds;
}

}  // namespace tsg
