#pragma once

#include "tsg/finvec.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace tsg {

// Gram matrix of x_1 = 1/sqrt(2 pi), x_{2j} = cos(jt)/sqrt(pi),
// x_{2j+1} = sin(jt)/sqrt(pi) in L_2([-pi, pi], |t|^lambda dt).
//
// All entries reduce to c(nu) = int_0^pi t^lambda cos(nu t) dt. Panels are
// sized to the oscillation (a few radians each) and refined dyadically toward
// the endpoint singularity down to width 2^-40; the remaining sliver is added
// in closed form from the cosine expansion, which keeps lambda < 0 within
// tolerance. Gauss-Legendre nodes per panel; cos-sin blocks vanish by parity
// and are set to zero exactly.
struct TrigGramOptions {
  double tol = 1e-10;
  int nodes_per_panel = 32;
  int min_dyadic_exp = 40;
};

Eigen::MatrixXd trig_gram(double lambda, Index dim, const TrigGramOptions& opts = {});

// Binary64 row-major dump with a JSON sidecar carrying (lambda, dim, tol,
// nodes); load returns nothing unless the sidecar matches exactly.
void save_gram(const std::string& path, double lambda, Index dim, const TrigGramOptions& opts,
               const Eigen::MatrixXd& gram);
std::optional<Eigen::MatrixXd> load_gram(const std::string& path, double lambda, Index dim,
                                         const TrigGramOptions& opts);

// Weighted-L2 norm of a coefficient vector: sqrt(v^T G v).
double trig_norm(const Eigen::MatrixXd& gram, const FinVec& coeffs);

// Rotated system z_{2n-1} = (x_n, x_n)/sqrt2, z_{2n} = (x_n, -x_n)/sqrt2 in
// L_2(|t|^a) (+) L_2(|t|^{-a}) with the Hilbertian sum norm. Coefficients on
// z expand into the two component coefficient vectors.
struct RotatedComponents {
  Eigen::VectorXd plus;   // coefficients in L_2(|t|^a)
  Eigen::VectorXd minus;  // coefficients in L_2(|t|^{-a})
};
RotatedComponents rotated_expand(const FinVec& coeffs, Index component_dim);
double rotated_norm(const Eigen::MatrixXd& gram_plus, const Eigen::MatrixXd& gram_minus,
                    const FinVec& coeffs);

// Least-squares slope of log ||1_{A_m}|| against log |A_m| = log(2m+1) for
// m in [mmin, mmax]; the unweighted case is exactly 1/2.
struct DirichletGrowth {
  double slope = 0;
  std::vector<double> norms;  // per m = 1..mmax
};
DirichletGrowth dirichlet_growth(double lambda, int mmax, int mmin = 4,
                                 const TrigGramOptions& opts = {});

}  // namespace tsg
