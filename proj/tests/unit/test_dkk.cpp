#include "tsg/dkk.hpp"

#include "tsg/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace tsg;

namespace {
Rational q(long long num, long long den = 1) { return Rational(Int(num), Int(den)); }
}  // namespace

TEST_CASE("ordered partitions") {
  OrderedPartition p = OrderedPartition::from_lengths({1, 2, 4});
  CHECK(p.block_count() == 3);
  CHECK(p.begin(1) == 1);
  CHECK(p.end(1) == 1);
  CHECK(p.begin(3) == 4);
  CHECK(p.end(3) == 7);
  CHECK(p.cumulative(2) == 3);
  CHECK(p.block_of(5) == 3);
  CHECK_THROWS_AS(p.block_of(8), std::domain_error);

  OrderedPartition g = OrderedPartition::geometric();
  CHECK(g.length(5) == 16);
  CHECK(g.cumulative(5) == 31);
  CHECK(g.block_of(31) == 5);
  CHECK(g.block_of(32) == 6);
  // M_r <= M_{r+1} - M_r and log2(M_r) <= r
  for (Index r = 1; r <= 12; ++r) {
    CHECK(g.cumulative(r) <= g.cumulative(r + 1) - g.cumulative(r));
    CHECK(std::log2(static_cast<double>(g.cumulative(r))) <= static_cast<double>(r));
  }
}

TEST_CASE("lambda function on lp") {
  CHECK(lambda_fn(Space::lp(1), 5) == doctest::Approx(5.0));
  CHECK(lambda_fn(Space::lp(2), 4) == doctest::Approx(2.0));
  CHECK(lambda_fn(Space::lp(3), 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lambda_fn(Space::tsirelson(), 3), std::invalid_argument);
  CHECK_THROWS_AS(lambda_fn(Space::lp_finite(2, 4), 3), std::invalid_argument);
}

TEST_CASE("averaging projection is an exact idempotent split") {
  OrderedPartition sigma = OrderedPartition::geometric();

  SUBCASE("block-constant vectors are fixed points") {
    FinVec v;  // constant on sigma_2 = {2, 3}
    v.set(2, q(5, 3));
    v.set(3, q(5, 3));
    SplitVec s = averaging_projection(sigma, v);
    CHECK(s.p_part == v);
    CHECK(s.q_part.empty());
  }
  SUBCASE("zero block sums go entirely to Q") {
    FinVec f;
    f.set(2, q(1));
    f.set(3, q(-1));
    SplitVec s = averaging_projection(sigma, f);
    CHECK(s.p_part.empty());
    CHECK(s.q_part == f);
  }
  SUBCASE("P + Q = Id and P^2 = P exactly on random rationals") {
    Rng rng(99);
    for (int trial = 0; trial < 80; ++trial) {
      FinVec f;
      for (int i = 0; i < 8; ++i) f.set(rng.next_int(1, 15), rng.next_rational(9, 7));
      SplitVec s = averaging_projection(sigma, f);
      CHECK(s.p_part.plus(s.q_part) == f);
      SplitVec again = averaging_projection(sigma, s.p_part);
      CHECK(again.p_part == s.p_part);
      CHECK(again.q_part.empty());
      SplitVec qq = averaging_projection(sigma, s.q_part);
      CHECK(qq.p_part.empty());  // Q o P = 0
    }
  }
  SUBCASE("finite partitions reject overflowing supports") {
    OrderedPartition fin = OrderedPartition::from_lengths({2, 2});
    FinVec f = FinVec::unit(5);
    CHECK_THROWS_AS(averaging_projection(fin, f), std::domain_error);
  }
}

TEST_CASE("normalized block vectors are biorthogonal") {
  OrderedPartition sigma = OrderedPartition::geometric();
  Space l2 = Space::lp(2);
  for (Index n = 1; n <= 4; ++n) {
    FinVec vn;
    double lam = lambda_fn(l2, sigma.length(n));
    for (Index i = sigma.begin(n); i <= sigma.end(n); ++i)
      vn.set(i, rational_from_double(1.0 / lam));
    auto coords = block_functionals(sigma, l2, vn);
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (static_cast<Index>(k) + 1 == n) {
        CHECK(coords[k] == doctest::Approx(1.0).epsilon(1e-12));
      } else {
        CHECK(coords[k] == doctest::Approx(0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("dkk norm") {
  OrderedPartition sigma = OrderedPartition::geometric();
  Space base = Space::rotated_trig_sum(0.5, 8);
  Space l2 = Space::lp(2);
  DkkSpec spec{base, l2, sigma};

  SUBCASE("v_1 reduces to the first base vector norm") {
    FinVec v1 = FinVec::unit(1);  // sigma_1 = {1}, Lambda_1 = 1
    CHECK(dkk_norm(spec, v1) == doctest::Approx(base.norm(FinVec::unit(1))).epsilon(1e-12));
  }
  SUBCASE("zero-sum block vectors keep only the symmetric term") {
    FinVec f;
    f.set(2, q(3, 2));
    f.set(3, q(-3, 2));
    CHECK(dkk_norm(spec, f) == doctest::Approx(l2.norm(f)).epsilon(1e-12));
  }
  SUBCASE("positive homogeneity") {
    Rng rng(1234);
    FinVec f;
    for (int i = 0; i < 6; ++i) f.set(rng.next_int(1, 15), rng.next_rational(8, 5));
    double n1 = dkk_norm(spec, f);
    CHECK(dkk_norm(spec, f.scaled(q(-7, 2))) == doctest::Approx(3.5 * n1).epsilon(1e-12));
  }
  SUBCASE("space handle dispatch agrees") {
    Space handle = Space::dkk(base, l2, sigma);
    FinVec f;
    f.set(1, q(1));
    f.set(4, q(-2, 3));
    f.set(9, q(5, 4));
    CHECK(handle.norm(f) == doctest::Approx(dkk_norm(spec, f)).epsilon(1e-12));
    CHECK(!handle.is_lattice());
  }
}

TEST_CASE("projected-coordinate estimate") {
  OrderedPartition sigma = OrderedPartition::geometric();
  Space base = Space::lp(2);
  Space l2 = Space::lp(2);
  DkkSpec spec{base, l2, sigma};

  SUBCASE("empty A gives zero left side") {
    FinVec f;
    f.set(3, q(2));
    ImpEstimate r = imp_estimate_check(spec, f, {}, 2.0);
    CHECK(r.lhs == doctest::Approx(0.0));
    CHECK(r.holds);
  }
  SUBCASE("A covering a P-invariant f zeroes both Q terms") {
    FinVec f;  // block-constant on sigma_2
    f.set(2, q(1, 2));
    f.set(3, q(1, 2));
    ImpEstimate r = imp_estimate_check(spec, f, {2, 3}, 2.0);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.holds);
  }
  SUBCASE("holds on random draws") {
    Rng rng(31415);
    for (int trial = 0; trial < 500; ++trial) {
      FinVec f;
      for (int i = 0; i < 10; ++i) f.set(rng.next_int(1, 15), rng.next_rational(9, 6));
      std::vector<Index> A;
      for (Index i = 1; i <= 15; ++i)
        if (rng.next_bool()) A.push_back(i);
      ImpEstimate r = imp_estimate_check(spec, f, A, 2.0);
      CHECK(r.holds);
    }
  }
  SUBCASE("s beyond p is rejected") {
    FinVec f = FinVec::unit(1);
    DkkSpec spec15{base, Space::lp(1.5), sigma};
    CHECK_THROWS_AS(imp_estimate_check(spec15, f, {1}, 2.0), std::invalid_argument);
  }
}

TEST_CASE("composite almost-greedy system at finite scale") {
  OrderedPartition sigma = OrderedPartition::geometric();
  SUBCASE("hypothesis guard") {
    CHECK_THROWS_AS(build_ag_basis(2.0, 0.3, sigma, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_ag_basis(0.9, 0.5, sigma, 2), std::invalid_argument);
  }
  SUBCASE("jmax = 1 truncation") {
    AgBasis ag = build_ag_basis(2.0, 0.5, sigma, 1);
    CHECK(ag.dim == 2);  // one DKK coordinate plus l_p^1
    CHECK(ag.block_dims == std::vector<Index>{1, 1});
    CHECK(ag.space.norm(FinVec::unit(1)) > 0);
    CHECK(ag.space.norm(FinVec::unit(2)) == doctest::Approx(1.0));
  }
  SUBCASE("norms are finite and homogeneous on the truncation") {
    AgBasis ag = build_ag_basis(2.0, 0.6, sigma, 3);
    CHECK(ag.dim == 1 + 1 + 3 + 2 + 7 + 3);
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
      FinVec f;
      for (int i = 0; i < 6; ++i) f.set(rng.next_int(1, ag.dim), rng.next_rational(7, 4));
      double n = ag.space.norm(f);
      CHECK(n > 0);
      CHECK(ag.space.norm(f.scaled(q(2))) == doctest::Approx(2 * n).epsilon(1e-9));
    }
  }
}
