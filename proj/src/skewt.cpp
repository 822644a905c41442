#include "gaarch/skewt.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaarch/specfun.hpp"

namespace gaarch {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Quadrature node in u-space with log-stable fields.
struct UNode {
  double u;
  double log_u;
  double log_1mu;
  double log_w;
};

// Beta(a, b) moment accumulation of 1, x(u), x(u)^2 where
// x(u) = sqrt(nu) (u - 1/2) / sqrt(u (1 - u)). Everything composed in
// log space so endpoint-singular integrands stay finite.
void accumulate_moments(const std::vector<UNode>& nodes, double a, double b,
                        double nu, double log_b_ab, double& m0, double& m1,
                        double& m2) {
  const double half_log_nu = 0.5 * std::log(nu);
  m0 = m1 = m2 = 0.0;
  for (const UNode& n : nodes) {
    const double base =
        n.log_w + (a - 1.0) * n.log_u + (b - 1.0) * n.log_1mu - log_b_ab;
    if (base < -745.0) continue;
    const double lx = half_log_nu + std::log(std::fabs(n.u - 0.5)) -
                      0.5 * (n.log_u + n.log_1mu);
    m0 += std::exp(base);
    const double e1 = std::exp(base + lx);
    m1 += (n.u < 0.5) ? -e1 : e1;
    m2 += std::exp(base + 2.0 * lx);
  }
}

const QuadratureRule& unit_gl_rule() {
  static const QuadratureRule rule = gauss_legendre(512);
  return rule;
}

// Node set on (0, 1): tanh-sinh when an endpoint singularity is possible
// (small tail dof), Gauss-Legendre otherwise (sharply peaked Beta weight
// that the fixed tanh-sinh spacing would under-resolve).
std::vector<UNode> unit_nodes(bool use_de) {
  std::vector<UNode> out;
  if (use_de) {
    const auto& ts = tanh_sinh_unit_nodes();
    out.reserve(ts.size());
    for (const auto& n : ts)
      out.push_back({n.u, n.log_u, n.log_1mu, n.log_w});
  } else {
    const auto& gl = unit_gl_rule();
    out.reserve(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = gl.nodes[i];
      const double u = 0.5 * (t + 1.0);
      const double omu = 0.5 * (1.0 - t);
      out.push_back({u, std::log(u), std::log(omu),
                     std::log(0.5 * gl.weights[i])});
    }
  }
  return out;
}

// Map base nodes onto (0, u0): u = u0 * v.
std::vector<UNode> lower_nodes(const std::vector<UNode>& base, double u0) {
  const double lj = std::log(u0);
  std::vector<UNode> out;
  out.reserve(base.size());
  for (const auto& n : base) {
    const double u = u0 * n.u;
    const double omu = (1.0 - u0) + u0 * std::exp(n.log_1mu);
    out.push_back({u, lj + n.log_u, std::log(omu), lj + n.log_w});
  }
  return out;
}

// Map base nodes onto (u0, 1): u = u0 + (1 - u0) * v.
std::vector<UNode> upper_nodes(const std::vector<UNode>& base, double u0) {
  const double lj = std::log(1.0 - u0);
  std::vector<UNode> out;
  out.reserve(base.size());
  for (const auto& n : base) {
    const double u = u0 + (1.0 - u0) * n.u;
    out.push_back({u, std::log(u), lj + n.log_1mu, lj + n.log_w});
  }
  return out;
}

}  // namespace

void SkewTParams::validate() const {
  if (!(nu_minus > 2.0) || !(nu_plus > 2.0))
    throw std::domain_error("SkewTParams: tail dof must exceed 2");
  if (!(nu_minus <= 200.0) || !(nu_plus <= 200.0))
    throw std::domain_error("SkewTParams: tail dof must not exceed 200");
}

double raw_logpdf(double x, const SkewTParams& p) {
  p.validate();
  const double nu = p.nu();
  const double s = std::sqrt(nu + x * x);
  // log(1 +- x/s) without cancellation in the tails
  double l1pw, l1mw;
  if (x >= 0.0) {
    l1pw = std::log1p(x / s);
    l1mw = std::log(nu) - std::log(s) - std::log(s + x);
  } else {
    l1mw = std::log1p(-x / s);
    l1pw = std::log(nu) - std::log(s) - std::log(s - x);
  }
  return 0.5 * (p.nu_minus + 1.0) * l1pw + 0.5 * (p.nu_plus + 1.0) * l1mw -
         (nu - 1.0) * kLn2 - 0.5 * std::log(nu) -
         log_beta(0.5 * p.nu_minus, 0.5 * p.nu_plus);
}

double raw_pdf(double x, const SkewTParams& p) {
  return std::exp(raw_logpdf(x, p));
}

double raw_cdf(double t, const SkewTParams& p) {
  p.validate();
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double nu = p.nu();
  const double s = std::sqrt(nu + t * t);
  double z = (t >= 0.0) ? 0.5 * (1.0 + t / s) : 0.5 * nu / (s * (s - t));
  if (z < 0.0) z = 0.0;
  if (z > 1.0) z = 1.0;
  return reg_inc_beta(z, 0.5 * p.nu_minus, 0.5 * p.nu_plus);
}

double raw_quantile(double u, const SkewTParams& p) {
  p.validate();
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("raw_quantile: u must be in (0, 1)");
  const double z = inv_reg_inc_beta(u, 0.5 * p.nu_minus, 0.5 * p.nu_plus);
  return std::sqrt(p.nu()) * (z - 0.5) / std::sqrt(z * (1.0 - z));
}

StandardizedSkewT standardize(const SkewTParams& p) {
  p.validate();
  const double a = 0.5 * p.nu_minus;
  const double b = 0.5 * p.nu_plus;
  const double nu = p.nu();
  const double lb = log_beta(a, b);
  const bool use_de = std::min(a, b) < 5.0;

  const std::vector<UNode> base = unit_nodes(use_de);

  double m0, m1, m2;
  accumulate_moments(base, a, b, nu, lb, m0, m1, m2);
  const double location = m1;
  const double var = m2 - m1 * m1;
  if (!(var > 0.0))
    throw std::runtime_error("standardize: variance not positive");
  const double scale = std::sqrt(var);

  // truncation point eps = 0 maps to u0 under the Beta substitution
  const double u0 =
      0.5 * (1.0 + location / std::sqrt(nu + location * location));

  double t0, t1, t2;
  accumulate_moments(lower_nodes(base, u0), a, b, nu, lb, t0, t1, t2);
  const double m2_minus =
      (t2 - 2.0 * location * t1 + location * location * t0) / var;
  accumulate_moments(upper_nodes(base, u0), a, b, nu, lb, t0, t1, t2);
  const double m2_plus =
      (t2 - 2.0 * location * t1 + location * location * t0) / var;

  return StandardizedSkewT{p, location, scale, m2_minus, m2_plus};
}

double std_logpdf(double eps, const StandardizedSkewT& s) {
  return std::log(s.scale) +
         raw_logpdf(s.location + s.scale * eps, s.params);
}

double canonical_uniform(std::mt19937_64& rng) {
  return ((rng() >> 11) + 0.5) * 0x1p-53;
}

double sample(const StandardizedSkewT& s, std::mt19937_64& rng) {
  const double u = canonical_uniform(rng);
  return (raw_quantile(u, s.params) - s.location) / s.scale;
}

}  // namespace gaarch
