#include "tsg/trig.hpp"

#include "tsg/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>

namespace tsg {

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Golub-Welsch via Newton on Legendre polynomials; classic and plenty for 64
// nodes.
GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return r;
}

double panel_integral(const GaussRule& rule, double lo, double hi, double lambda, double nu) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double s = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double t = mid + half * rule.nodes[i];
    s += rule.weights[i] * std::pow(t, lambda) * std::cos(nu * t);
  }
  return s * half;
}

// c(nu) = int_0^pi t^lambda cos(nu t) dt. Oscillation-sized panels away from
// zero, dyadic panels toward zero, closed-form sliver below the cutoff.
std::vector<double> cosine_moments(double lambda, int numax, const TrigGramOptions& opts) {
  const GaussRule rule = gauss_legendre(opts.nodes_per_panel);
  const double pi = std::numbers::pi;
  std::vector<double> out(static_cast<std::size_t>(numax) + 1);
  for (int nu = 0; nu <= numax; ++nu) {
    double total = 0;
    // head [0, cutoff): two-term cosine expansion, remainder O(nu^4 d^{5+l})
    double cutoff = std::ldexp(pi, -opts.min_dyadic_exp);
    total += std::pow(cutoff, lambda + 1) / (lambda + 1) -
             nu * nu * std::pow(cutoff, lambda + 3) / (2 * (lambda + 3));
    // dyadic stack [cutoff, pi/2^k0]
    double per_panel = nu > 0 ? 2.5 / nu : pi;  // <= ~2.5 radians of phase
    int k0 = 0;
    while (std::ldexp(pi, -(k0 + 1)) > per_panel && k0 + 1 < opts.min_dyadic_exp) ++k0;
    for (int k = opts.min_dyadic_exp - 1; k > k0; --k)
      total += panel_integral(rule, std::ldexp(pi, -(k + 1)), std::ldexp(pi, -k), lambda, nu);
    // uniform panels [pi/2^{k0+...}, pi]
    double lo = std::ldexp(pi, -(k0 + 1));
    double span = pi - lo;
    int panels = std::max(1, static_cast<int>(std::ceil(span / per_panel)));
    for (int i = 0; i < panels; ++i)
      total += panel_integral(rule, lo + span * i / panels, lo + span * (i + 1) / panels,
                              lambda, nu);
    out[static_cast<std::size_t>(nu)] = total;
  }
  return out;
}

}  // namespace

Eigen::MatrixXd trig_gram(double lambda, Index dim, const TrigGramOptions& opts) {
  if (!(lambda > -1 && lambda < 1)) throw std::invalid_argument("lambda must be in (-1, 1)");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  const double pi = std::numbers::pi;
  Index jmax = dim / 2;  // highest frequency present among x_1..x_dim
  auto C = cosine_moments(lambda, static_cast<int>(2 * jmax), opts);

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
  auto freq = [](Index i) { return i / 2; };          // x_1 -> 0
  auto is_sin = [](Index i) { return i >= 3 && i % 2 == 1; };
  for (Index i = 1; i <= dim; ++i) {
    for (Index j = i; j <= dim; ++j) {
      double v = 0;
      Index fi = freq(i), fj = freq(j);
      bool si = is_sin(i), sj = is_sin(j);
      if (si != sj) {
        v = 0;  // odd integrand against the even weight
      } else if (i == 1 && j == 1) {
        v = (1.0 / (2 * pi)) * 2 * C[0];
      } else if (i == 1) {
        // constant against cos(jt)
        v = (1.0 / std::sqrt(2 * pi) / std::sqrt(pi)) * 2 * C[static_cast<std::size_t>(fj)];
      } else if (!si) {
        v = (1.0 / pi) * (C[static_cast<std::size_t>(std::abs(fi - fj))] +
                          C[static_cast<std::size_t>(fi + fj)]);
      } else {
        v = (1.0 / pi) * (C[static_cast<std::size_t>(std::abs(fi - fj))] -
                          C[static_cast<std::size_t>(fi + fj)]);
      }
      G(i - 1, j - 1) = v;
      G(j - 1, i - 1) = v;
    }
  }
  // positive definiteness gate
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("gram matrix failed the positive-definiteness check");
  return G;
}

void save_gram(const std::string& path, double lambda, Index dim, const TrigGramOptions& opts,
               const Eigen::MatrixXd& gram) {
  std::string raw(reinterpret_cast<const char*>(gram.data()),
                  sizeof(double) * static_cast<std::size_t>(gram.size()));
  // Eigen stores column-major; transpose to row-major bytes for the sidecar
  // contract.
  Eigen::MatrixXd rowmajor = gram.transpose();
  raw.assign(reinterpret_cast<const char*>(rowmajor.data()),
             sizeof(double) * static_cast<std::size_t>(rowmajor.size()));
  atomic_write(path, raw);
  nlohmann::ordered_json side;
  side["lambda"] = lambda;
  side["dim"] = dim;
  side["tol"] = opts.tol;
  side["nodes_per_panel"] = opts.nodes_per_panel;
  side["min_dyadic_exp"] = opts.min_dyadic_exp;
  atomic_write(path + ".json", side.dump(2) + "\n");
}

std::optional<Eigen::MatrixXd> load_gram(const std::string& path, double lambda, Index dim,
                                         const TrigGramOptions& opts) {
  std::ifstream side_in(path + ".json");
  if (!side_in) return std::nullopt;
  nlohmann::json side;
  try {
    side_in >> side;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (side.value("lambda", 2.0) != lambda || side.value("dim", Index(-1)) != dim ||
      side.value("tol", -1.0) != opts.tol ||
      side.value("nodes_per_panel", -1) != opts.nodes_per_panel ||
      side.value("min_dyadic_exp", -1) != opts.min_dyadic_exp)
    return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<double> buf(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!in) return std::nullopt;
  Eigen::MatrixXd g(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c)
      g(r, c) = buf[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim) +
                    static_cast<std::size_t>(c)];
  return g;
}

double trig_norm(const Eigen::MatrixXd& gram, const FinVec& coeffs) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(gram.rows());
  for (const auto& [i, c] : coeffs) {
    if (i > gram.rows()) throw std::domain_error("coefficient index outside the system");
    v(i - 1) = to_double(c);
  }
  double q = v.dot(gram * v);
  return std::sqrt(std::max(0.0, q));
}

RotatedComponents rotated_expand(const FinVec& coeffs, Index component_dim) {
  RotatedComponents rc;
  rc.plus = Eigen::VectorXd::Zero(component_dim);
  rc.minus = Eigen::VectorXd::Zero(component_dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const auto& [k, c] : coeffs) {
    Index n = (k + 1) / 2;
    if (n > component_dim) throw std::domain_error("coefficient index outside the system");
    double x = to_double(c) * inv_sqrt2;
    rc.plus(n - 1) += x;
    rc.minus(n - 1) += (k % 2 == 1) ? x : -x;
  }
  return rc;
}

double rotated_norm(const Eigen::MatrixXd& gram_plus, const Eigen::MatrixXd& gram_minus,
                    const FinVec& coeffs) {
  RotatedComponents rc = rotated_expand(coeffs, gram_plus.rows());
  double q = rc.plus.dot(gram_plus * rc.plus) + rc.minus.dot(gram_minus * rc.minus);
  return std::sqrt(std::max(0.0, q));
}

DirichletGrowth dirichlet_growth(double lambda, int mmax, int mmin, const TrigGramOptions& opts) {
  if (mmax < mmin + 3) throw std::invalid_argument("need a few points for the regression");
  Index dim = 2 * static_cast<Index>(mmax) + 1;
  Eigen::MatrixXd G = trig_gram(lambda, dim, opts);
  DirichletGrowth out;
  out.norms.resize(static_cast<std::size_t>(mmax) + 1, 0.0);
  // running sum of the leading principal block
  double acc = G(0, 0);
  Index upto = 1;
  for (int m = 1; m <= mmax; ++m) {
    Index d = 2 * static_cast<Index>(m) + 1;
    for (Index r = upto; r < d; ++r) {
      acc += G(r, r);
      for (Index c = 0; c < r; ++c) acc += 2 * G(r, c);
    }
    upto = d;
    out.norms[static_cast<std::size_t>(m)] = std::sqrt(std::max(0.0, acc));
  }
  // least squares on log(2m+1)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int m = mmin; m <= mmax; ++m) {
    double x = std::log(2.0 * m + 1.0);
    double y = std::log(out.norms[static_cast<std::size_t>(m)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace tsg
