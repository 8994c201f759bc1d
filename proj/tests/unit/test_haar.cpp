#include "tsg/haar.hpp"

#include <doctest.h>

#include <cmath>

using namespace tsg;

namespace {
Rational q(long long num, long long den = 1) { return Rational(Int(num), Int(den)); }
}  // namespace

TEST_CASE("haar functions are normalized and mean zero") {
  SUBCASE("whole interval, p = 2") {
    PiecewiseConstant h = haar_function({1, 0}, 2.0);
    CHECK(h.cell(0) == doctest::Approx(1.0));
    CHECK(h.cell(1) == doctest::Approx(-1.0));
    CHECK(lp_norm(h, 2.0) == doctest::Approx(1.0));
  }
  SUBCASE("left half at level 2, p = 1 takes values +-2") {
    PiecewiseConstant h = haar_function({2, 0}, 1.0);
    CHECK(h.cell(0) == doctest::Approx(2.0));
    CHECK(h.cell(1) == doctest::Approx(-2.0));
    CHECK(h.cell(2) == doctest::Approx(0.0));
    CHECK(lp_norm(h, 1.0) == doctest::Approx(1.0));
  }
  SUBCASE("normalization and zero mean across levels and p") {
    for (int level : {1, 2, 4, 6}) {
      for (double p : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        DyadicInterval I{level, DyadicInterval::count_at_level(level) - 1};
        PiecewiseConstant h = haar_function(I, p);
        CHECK(lp_norm(h, p) == doctest::Approx(1.0));
        double mean = 0;
        for (double v : h.cells()) mean += v;
        CHECK(mean == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("step-function lp norms") {
  PiecewiseConstant f(1);
  f.cell(0) = 2.0;  // 2 * 1_{[0,1/2)}
  CHECK(lp_norm(f, 1.0) == doctest::Approx(1.0));
  PiecewiseConstant one(0);
  one.cell(0) = 1.0;
  for (double p : {0.5, 1.0, 2.0, 7.0}) CHECK(lp_norm(one, p) == doctest::Approx(1.0));
  CHECK(linf_norm(f) == doctest::Approx(2.0));

  PiecewiseConstantQ g(2);
  g.cell(1) = q(-3, 2);
  g.cell(2) = q(1, 3);
  CHECK(l1_norm(g) == q(3, 8) + q(1, 12));
  CHECK(linf_norm(g) == q(3, 2));
}

TEST_CASE("distinct haar functions have exactly zero inner product") {
  std::vector<DyadicInterval> intervals{{1, 0}, {2, 0}, {2, 1}, {3, 2}, {4, 7}, {4, 0}};
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (std::size_t j = 0; j < intervals.size(); ++j) {
      PiecewiseConstant a = haar_function(intervals[i], 2.0);
      PiecewiseConstant b = haar_function(intervals[j], 2.0);
      double ip = inner_product(a, b);
      if (i == j) {
        CHECK(ip == doctest::Approx(1.0));
      } else {
        CHECK(ip == 0.0);  // exact cancellation on the common grid
      }
    }
  }
}

TEST_CASE("equi-integrability and the perturbation sandwich") {
  SUBCASE("worked example: constant f = 2, small-support g") {
    // n = 1, eps = 1/4, sqrt eps = 1/2, |A| <= 2^{-1} eps = 1/8
    PiecewiseConstantQ f(0);
    f.cell(0) = q(2);
    PiecewiseConstantQ g(3);
    g.cell(5) = q(7, 2);  // one cell of measure 1/8
    auto r = equi_integrability_check(f, 1, g, q(1, 4), q(1, 2));
    CHECK(r.measure_ok);
    CHECK(r.integral_ok);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
  }
  SUBCASE("g = 0 reduces the sandwich to scaled identities") {
    PiecewiseConstantQ f(2);
    f.cell(0) = q(1);
    f.cell(3) = q(-2);
    auto r = equi_integrability_check(f, 3, PiecewiseConstantQ(2), q(1, 4), q(1, 2));
    CHECK(r.measure_ok);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
  }
  SUBCASE("random draws never violate the sandwich") {
    Rng rng(314);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      int n = static_cast<int>(rng.next_int(1, 6));
      PiecewiseConstantQ f(n - 1);
      for (std::size_t c = 0; c < f.cell_count(); ++c)
        if (rng.next_unit() < 0.8) f.cell(c) = rng.next_rational(9, 4);
      // eps in {1/25, 1/4, 16/25}
      int pick = static_cast<int>(rng.next_int(0, 2));
      Rational eps = pick == 0 ? q(1, 25) : pick == 1 ? q(1, 4) : q(16, 25);
      Rational sqrt_eps = pick == 0 ? q(1, 5) : pick == 1 ? q(1, 2) : q(4, 5);
      int fine = n + 5;
      PiecewiseConstantQ g(fine);
      // allowed support measure 2^{-n} eps -> allowed fine-cell count
      Rational budget = eps / Rational(Int(1) << n);
      Index cells = static_cast<Index>((budget * Rational(Int(1) << fine)).convert_to<double>());
      for (Index c = 0; c < cells; ++c)
        g.cell(static_cast<std::size_t>(rng.next_int(0, (Index(1) << fine) - 1))) =
            rng.next_rational(9, 3);
      auto r = equi_integrability_check(f, n, g, eps, sqrt_eps);
      CHECK(r.measure_ok);
      CHECK(r.integral_ok);
      CHECK(r.lower_ok);
      CHECK(r.upper_ok);
      ++checked;
    }
    CHECK(checked == 400);
  }
  SUBCASE("mismatched square root is rejected") {
    PiecewiseConstantQ f(1);
    f.cell(0) = q(1);
    CHECK_THROWS_AS(equi_integrability_check(f, 2, PiecewiseConstantQ(1), q(1, 4), q(1, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("truncated product enclosures") {
  SUBCASE("straddle one for finite u and approach it for large u") {
    for (int u : {0, 2, 4}) {
      for (double p : {1.0, 2.0, 3.0}) {
        DhkConstants c = dhk_constants(u, p);
        CHECK(c.c1.hi < 1.0);
        CHECK(c.c2.lo > 1.0);
        CHECK(c.c1.lo > 0.0);
        CHECK(c.c1.lo <= c.c1.hi);
        CHECK(c.c2.lo <= c.c2.hi);
      }
    }
    DhkConstants far = dhk_constants(40, 2.0);
    CHECK(far.c1.lo > 0.9999);
    CHECK(far.c2.hi < 1.0001);
  }
  SUBCASE("pinned value: C1(0) at p = 1 sits in (0, 0.3)") {
    DhkConstants c = dhk_constants(0, 1.0, 60);
    CHECK(c.c1.hi < 0.3);
    CHECK(c.c1.lo > 0.0);
  }
}

TEST_CASE("spread spec validation") {
  SpreadSpec ok{{1, 4, 11}, 0, 2.0};
  ok.validate();
  CHECK(ok.level_cap(0) == 1);
  CHECK(ok.level_cap(1) == 2);   // 2 |D_1|
  CHECK(ok.level_cap(2) == 16);  // 2 |D_4|
  SpreadSpec bad{{1, 3}, 0, 2.0};  // needs phi(2) >= 2+1+0+1 = 4
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("spread equivalence ratios") {
  SUBCASE("single interval is exactly normalized") {
    SpreadSpec spec{{1, 4, 11}, 0, 2.0};
    double r = spread_equivalence_ratio(spec, {{DyadicInterval{4, 3}, 2.5}});
    CHECK(r == doctest::Approx(1.0));
  }
  SUBCASE("sign flips leave the ratio alone") {
    SpreadSpec spec{{1, 4, 11}, 0, 1.5};
    std::vector<std::pair<DyadicInterval, double>> coeffs{
        {{1, 0}, 1.0}, {{4, 1}, -2.0}, {{4, 6}, 0.5}, {{11, 100}, 1.25}};
    double r1 = spread_equivalence_ratio(spec, coeffs);
    for (auto& [I, c] : coeffs) c = -c;
    double r2 = spread_equivalence_ratio(spec, coeffs);
    CHECK(r1 == doctest::Approx(r2));
  }
  SUBCASE("bracket against the certified enclosures on random draws") {
    for (int u : {0, 2}) {
      SpreadSpec spec{u == 0 ? std::vector<int>{1, 4, 11} : std::vector<int>{1, 6, 17}, u, 2.0};
      for (double p : {1.0, 2.0, 3.0}) {
        spec.p = p;
        DhkConstants c = dhk_constants(u, p);
        Rng rng(500 + u + static_cast<int>(10 * p));
        for (int trial = 0; trial < 60; ++trial) {
          std::vector<std::pair<DyadicInterval, double>> coeffs;
          for (std::size_t li = 0; li < spec.levels.size(); ++li) {
            Index cap = spec.level_cap(li);
            Index count = rng.next_int(0, std::min<Index>(cap, 6));
            for (Index k = 0; k < count; ++k) {
              DyadicInterval I{spec.levels[li],
                               rng.next_int(0, DyadicInterval::count_at_level(spec.levels[li]) - 1)};
              bool dup = false;
              for (auto& [J, cc] : coeffs) dup = dup || J == I;
              if (dup) continue;
              coeffs.emplace_back(I, rng.next_signed_unit() * 3);
            }
          }
          if (coeffs.empty()) continue;
          double r = spread_equivalence_ratio(spec, coeffs);
          CHECK(r >= c.c1.lo * (1 - 1e-9));
          CHECK(r <= c.c2.hi * (1 + 1e-9));
        }
      }
    }
  }
  SUBCASE("cap violations are rejected") {
    SpreadSpec spec{{1, 4, 11}, 0, 2.0};
    std::vector<std::pair<DyadicInterval, double>> coeffs;
    for (Index k = 0; k < 4; ++k) coeffs.emplace_back(DyadicInterval{4, k}, 1.0);
    CHECK_THROWS_AS(spread_equivalence_ratio(spec, coeffs), std::invalid_argument);
  }
}

TEST_CASE("rademacher blocks") {
  SUBCASE("single level is the top haar function") {
    auto blocks = rademacher_block({1}, 3.0);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].cell(0) == doctest::Approx(1.0));
    CHECK(blocks[0].cell(1) == doctest::Approx(-1.0));
    CHECK(lp_norm(blocks[0], 3.0) == doctest::Approx(1.0));
  }
  SUBCASE("levels 1,2 at p = 2 are orthonormal sign patterns") {
    auto blocks = rademacher_block({1, 2}, 2.0);
    REQUIRE(blocks.size() == 2);
    CHECK(inner_product(blocks[0], blocks[1]) == 0.0);
    CHECK(lp_norm(blocks[0], 2.0) == doctest::Approx(1.0));
    CHECK(lp_norm(blocks[1], 2.0) == doctest::Approx(1.0));
    for (double v : blocks[1].cells()) CHECK(std::abs(v) == doctest::Approx(1.0));
  }
  SUBCASE("l2 equivalence ratio stays in a recorded band") {
    for (double p : {1.5, 4.0}) {
      auto blocks = rademacher_block({1, 2, 3, 4, 5}, p);
      Rng rng(static_cast<std::uint64_t>(p * 100));
      double lo = 1e9, hi = 0;
      for (int trial = 0; trial < 500; ++trial) {
        PiecewiseConstant sum(5);
        double l2 = 0;
        for (auto& b : blocks) {
          double a = rng.next_signed_unit() * 2;
          l2 += a * a;
          sum = sum.plus(b.scaled(a));
        }
        if (l2 == 0) continue;
        double r = lp_norm(sum, p) / std::sqrt(l2);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      // Khintchine-type band, recorded: comfortably within [1/4, 4]
      CHECK(lo > 0.25);
      CHECK(hi < 4.0);
    }
  }
}
