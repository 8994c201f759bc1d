#include "tsg/trig.hpp"

#include "tsg/rng.hpp"
#include "tsg/spaces.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

using namespace tsg;

TEST_CASE("unweighted gram is the identity") {
  Eigen::MatrixXd g = trig_gram(0.0, 31);
  double dev = (g - Eigen::MatrixXd::Identity(31, 31)).cwiseAbs().maxCoeff();
  CHECK(dev < 1e-10);
}

TEST_CASE("closed-form entry at lambda = 1/2") {
  Eigen::MatrixXd g = trig_gram(0.5, 3);
  CHECK(std::abs(g(0, 0) - (2.0 / 3.0) * std::sqrt(std::numbers::pi)) < 1e-9);
}

TEST_CASE("cos-sin entries vanish by parity") {
  Eigen::MatrixXd g = trig_gram(0.4, 9);
  for (Eigen::Index j = 1; j <= 4; ++j) {
    CHECK(g(1, 2 * j) == 0.0);  // cos(1t) vs sin(jt)
    CHECK(g(0, 2 * j) == 0.0);  // const vs sin(jt)
  }
}

TEST_CASE("gram matrices are symmetric positive definite") {
  for (double lambda : {-0.5, -0.2, 0.3, 0.7}) {
    Eigen::MatrixXd g = trig_gram(lambda, 21);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > 0);
  }
}

TEST_CASE("weighted norm reduces to l2 at lambda = 0") {
  Eigen::MatrixXd g = trig_gram(0.0, 15);
  FinVec f;
  f.set(1, Rational(1));
  f.set(4, Rational(-2));
  f.set(15, Rational(1, 2));
  CHECK(trig_norm(g, f) == doctest::Approx(std::sqrt(5.25)).epsilon(1e-9));
}

TEST_CASE("dirichlet growth slopes") {
  DirichletGrowth d0 = dirichlet_growth(0.0, 60);
  CHECK(std::abs(d0.slope - 0.5) < 1e-6);
  DirichletGrowth dp = dirichlet_growth(0.5, 60);
  CHECK(std::abs(dp.slope - 0.25) < 0.1);
  DirichletGrowth dm = dirichlet_growth(-0.5, 60);
  CHECK(std::abs(dm.slope - 0.75) < 0.1);
  CHECK(dm.slope > dp.slope);
}

TEST_CASE("rotated expansion algebra") {
  // (z_{2n-1} + z_{2n})/sqrt2 -> (x_n, 0)
  FinVec f;
  f.set(1, rational_from_double(1.0 / std::sqrt(2.0)));
  f.set(2, rational_from_double(1.0 / std::sqrt(2.0)));
  RotatedComponents rc = rotated_expand(f, 3);
  CHECK(rc.plus(0) == doctest::Approx(1.0));
  CHECK(rc.minus(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rc.plus(1) == 0.0);
}

TEST_CASE("rotated norm invariances and pinned single-vector value") {
  Space rot = Space::rotated_trig_sum(0.5, 10);
  auto gram = rot.gram();
  REQUIRE(gram);
  // single z_1 coefficient: norm^2 = (G_a(0,0) + G_{-a}(0,0))/2
  Eigen::MatrixXd ga = trig_gram(0.5, 5), gm = trig_gram(-0.5, 5);
  FinVec z1 = FinVec::unit(1);
  double expected = std::sqrt(0.5 * (ga(0, 0) + gm(0, 0)));
  CHECK(rot.norm(z1) == doctest::Approx(expected).epsilon(1e-12));
  CHECK((*gram)(0, 0) == doctest::Approx(expected * expected).epsilon(1e-12));

  // simultaneous flip of all y components: swap z_{2n-1} <-> z_{2n}
  Rng rng(88);
  for (int trial = 0; trial < 25; ++trial) {
    FinVec a, swapped;
    for (int i = 0; i < 6; ++i) {
      Index k = rng.next_int(1, 10);
      Rational v = rng.next_rational(9, 5);
      a.set(k, a.get(k) + v);
      Index mate = (k % 2 == 1) ? k + 1 : k - 1;
      swapped.set(mate, swapped.get(mate) + v);
    }
    CHECK(rot.norm(a) == doctest::Approx(rot.norm(swapped)).epsilon(1e-9));
  }
}

TEST_CASE("rotated alternating-sign ratio grows like m^a") {
  // ||1_{eps,B_m}|| / ||1_{B_m}|| with B_m = [1, 4m+2], eps = ((-1)^n)
  double a = 0.5;
  Index mmax = 24;
  Space rot = Space::rotated_trig_sum(a, 4 * mmax + 2);
  std::vector<double> ratios;
  for (Index m : {4, 8, 16, 24}) {
    FinVec plain, alt;
    for (Index k = 1; k <= 4 * m + 2; ++k) {
      plain.set(k, Rational(1));
      alt.set(k, Rational(k % 2 == 0 ? 1 : -1));
    }
    ratios.push_back(rot.norm(alt) / rot.norm(plain));
  }
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) CHECK(ratios[i] < ratios[i + 1]);
  // doubling m should multiply the ratio by roughly 2^a
  double growth = ratios[2] / ratios[1];
  CHECK(growth == doctest::Approx(std::pow(2.0, a)).epsilon(0.2));
}

TEST_CASE("gram cache round trip") {
  TrigGramOptions opts;
  Eigen::MatrixXd g = trig_gram(0.25, 7, opts);
  std::string path = (std::filesystem::temp_directory_path() / "tsg_gram_test.bin").string();
  save_gram(path, 0.25, 7, opts, g);
  auto back = load_gram(path, 0.25, 7, opts);
  REQUIRE(back);
  CHECK((*back - g).cwiseAbs().maxCoeff() == 0.0);
  CHECK(!load_gram(path, 0.30, 7, opts));  // key mismatch
  TrigGramOptions other;
  other.nodes_per_panel = 16;
  CHECK(!load_gram(path, 0.25, 7, other));
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}
