#include "tsg/hierarchy.hpp"

#include "tsg/rng.hpp"

#include <doctest.h>

using namespace tsg;

TEST_CASE("hierarchy base cases") {
  CHECK(fgh_eval(0, 7) == 8);
  CHECK(fgh_eval(1, 5) == 10);
  CHECK(fgh_eval(2, 3) == 24);
}

TEST_CASE("closed forms match the raw recursion") {
  for (int j = 1; j <= 8; ++j) {
    CHECK(fgh_eval(0, j) == fgh_eval_reference(0, j));
    CHECK(fgh_eval(1, j) == fgh_eval_reference(1, j));
    CHECK(fgh_eval(2, j) == fgh_eval_reference(2, j));
  }
  CHECK(fgh_eval(3, 1) == fgh_eval_reference(3, 1));
  CHECK(fgh_eval(3, 2) == fgh_eval_reference(3, 2));
  CHECK(fgh_eval(3, 2) == 2048);
}

TEST_CASE("level identities on a range") {
  for (int j = 1; j <= 20; ++j) {
    CHECK(fgh_eval(1, j) == 2 * Int(j));
    CHECK(fgh_eval(2, j) == Int(j) * (Int(1) << j));
  }
}

TEST_CASE("F_n(1) = 2 and monotonicity in j") {
  for (int n = 1; n <= 4; ++n) CHECK(fgh_eval(n, 1) == 2);
  for (int n = 0; n <= 2; ++n) {
    Int prev = fgh_eval(n, 1);
    for (int j = 2; j <= 12; ++j) {
      Int cur = fgh_eval(n, j);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("monotonicity in the level with overflow treated as top") {
  for (int j = 1; j <= 12; ++j) {
    std::optional<Int> prev;
    bool overflowed = false;
    for (int n = 0; n <= 4; ++n) {
      std::optional<Int> cur;
      try {
        cur = fgh_eval(n, j);
      } catch (const HierarchyOverflow&) {
        cur = std::nullopt;  // beyond the budget, hence larger than anything below it
      }
      if (prev && cur) CHECK(*cur >= *prev);
      if (overflowed) CHECK(!cur);  // once above the budget it stays above
      overflowed = overflowed || !cur;
      prev = cur;
    }
  }
}

TEST_CASE("iterated composition") {
  GrowthFunction f0 = GrowthFunction::fgh(0);
  GrowthFunction f1 = GrowthFunction::fgh(1);
  for (int k : {0, 1, 5, 9}) {
    CHECK(iterate_fn(f0, k, 7) == 7 + k);
    CHECK(iterate_fn(f1, k, 3) == Int(3) * (Int(1) << k));
  }
  GrowthFunction beta = GrowthFunction::beta();
  CHECK(iterate_fn(beta, 0, 11) == 11);
}

TEST_CASE("increasing maps with f(1) >= k gain (k-1) per extra iterate") {
  auto check_lemma = [](const GrowthFunction& f, int k) {
    for (Int j : {Int(1), Int(3), Int(7), Int(10)}) {
      for (int n = 0; n <= 6; ++n) {
        for (int m = 0; m <= n; ++m) {
          Int lhs = iterate_fn(f, n, j);
          Int rhs = Int(k - 1) * (n - m) + iterate_fn(f, m, j);
          CHECK(lhs >= rhs);
        }
      }
    }
  };
  check_lemma(GrowthFunction::fgh(1), 2);
  check_lemma(GrowthFunction::sum(GrowthFunction::identity(), GrowthFunction::constant(4)), 5);
}

TEST_CASE("overflow carries the offending location") {
  try {
    fgh_eval(3, 5);
    FAIL("expected overflow");
  } catch (const HierarchyOverflow& e) {
    CHECK(e.level() >= 2);
  }
}

TEST_CASE("dominance certificates") {
  // j^2 <= j 2^j on [1, 20]
  GrowthFunction sq = GrowthFunction::beta();
  DominanceReport r = dominance_check(sq, 2, 1, 20);
  CHECK(r.dominated);
  CHECK(!r.first_violation);

  // 3^{j+1} fails against F_2 everywhere and clears F_3 past j0 = 2
  GrowthFunction pow3 = GrowthFunction::power(
      GrowthFunction::constant(3), GrowthFunction::sum(GrowthFunction::identity(),
                                                       GrowthFunction::constant(1)));
  DominanceReport r2 = dominance_check(pow3, 2, 6, 30);
  CHECK(!r2.dominated);
  CHECK(*r2.first_violation == 6);
  DominanceReport r3 = dominance_check(pow3, 3, 2, 12);
  CHECK(r3.dominated);

  // F_2 against F_1: first violation sits at j = 2 (8 > 4)
  DominanceReport r4 = dominance_check(GrowthFunction::fgh(2), 1, 1, 10);
  CHECK(!r4.dominated);
  CHECK(*r4.first_violation == 2);

  // identity below F_0
  DominanceReport r5 = dominance_check(GrowthFunction::identity(), 0, 1, 100);
  CHECK(r5.dominated);
}

TEST_CASE("continuum members evaluate exactly") {
  std::vector<int> ones{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  std::vector<int> twos{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
  CHECK(continuum_phi(ones, 1) == 5);
  CHECK(continuum_phi(twos, 1) == 7);
  CHECK(continuum_phi(ones, 2) == 17);
  for (int j = 1; j <= 12; ++j) {
    Int bound = boost::multiprecision::pow(Int(3), static_cast<unsigned>(j + 1));
    CHECK(continuum_phi(ones, j) <= bound);
    CHECK(continuum_phi(twos, j) <= bound);
  }
  CHECK_THROWS_AS(continuum_phi(std::vector<int>{1, 2}, 5), std::invalid_argument);
}

TEST_CASE("continuum members are strictly increasing") {
  Rng rng(100);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> eps;
    for (int i = 0; i < 12; ++i) eps.push_back(rng.next_bool() ? 1 : 2);
    Int prev = 0;
    for (int j = 1; j <= 12; ++j) {
      Int cur = continuum_phi(eps, j);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("distinct continuum members overlap only before the first disagreement") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> eps, delta;
    for (int i = 0; i < 12; ++i) {
      eps.push_back(rng.next_bool() ? 1 : 2);
      delta.push_back(rng.next_bool() ? 1 : 2);
    }
    if (eps == delta) delta[11] = 3 - delta[11];
    std::size_t disagree = 0;
    while (disagree < 12 && eps[disagree] == delta[disagree]) ++disagree;
    std::vector<Int> re, rd;
    for (int j = 1; j <= 12; ++j) {
      re.push_back(continuum_phi(eps, j));
      rd.push_back(continuum_phi(delta, j));
    }
    for (int a = 0; a < 12; ++a) {
      for (int b = 0; b < 12; ++b) {
        if (re[a] == rd[b]) {
          CHECK(a == b);
          CHECK(static_cast<std::size_t>(a) < disagree);
        }
      }
    }
    // shared prefix values agree
    for (std::size_t j = 0; j < disagree; ++j) CHECK(re[j] == rd[j]);
  }
}

TEST_CASE("alpha and beta generators") {
  GrowthFunction a = GrowthFunction::alpha();
  CHECK(a(1) == 1);
  CHECK(a(2) == 4);
  CHECK(a(3) == 12);
  CHECK(a(4) == 30);
  for (int k = 1; k <= 40; ++k) CHECK(a(k + 1) >= a(k) + k + 2);
}

TEST_CASE("level sets have 2j-1 elements") {
  GrowthFunction id = GrowthFunction::identity();
  CHECK(levels_A(id, 1) == std::vector<Int>{1});
  CHECK(levels_A(id, 2) == std::vector<Int>{4, 12, 30});
  for (int j = 1; j <= 5; ++j)
    CHECK(levels_A(id, j).size() == static_cast<std::size_t>(2 * j - 1));
  GrowthFunction f1 = GrowthFunction::fgh(1);
  CHECK(levels_A(f1, 3).size() == 5);
  CHECK_THROWS_AS(levels_A(GrowthFunction::constant(5), 2), std::invalid_argument);
}

TEST_CASE("cumulative sums and composites") {
  GrowthFunction rho = GrowthFunction::cumulative(GrowthFunction::identity());
  CHECK(rho(1) == 1);
  CHECK(rho(4) == 10);
  GrowthFunction comp =
      GrowthFunction::compose(GrowthFunction::alpha(), GrowthFunction::identity());
  CHECK(comp(2) == 4);
  GrowthFunction prod = GrowthFunction::product(GrowthFunction::identity(),
                                                GrowthFunction::identity());
  CHECK(prod(6) == 36);
}
