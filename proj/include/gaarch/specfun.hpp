#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gaarch {

/// Nodes and weights on (-1, 1). Weights are positive and sum to 2.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-node Gauss-Legendre rule, exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre(std::size_t n);

enum class Transform {
  UnitInterval,  // x in (0, 1)
  HalfLine,      // x in (0, inf)
  FullLine,      // x in (-inf, inf)
};

/// Quadrature estimate of the integral of f over the mapped domain.
/// Throws std::runtime_error if f is non-finite at any node.
double integrate(const std::function<double(double)>& f,
                 const QuadratureRule& rule, Transform transform);

/// log Gamma(x), x > 0.
double log_gamma(double x);

/// log B(a, b) = log_gamma(a) + log_gamma(b) - log_gamma(a + b).
double log_beta(double a, double b);

/// Regularized incomplete beta I(z; a, b), continued-fraction evaluation
/// with the symmetry split at z = (a+1)/(a+b+2).
double reg_inc_beta(double z, double a, double b);

/// Inverse of reg_inc_beta in z: bracketed bisection/Newton hybrid.
double inv_reg_inc_beta(double p, double a, double b);

/// Survival function of the chi-squared distribution with df degrees
/// of freedom (regularized upper incomplete gamma Q(df/2, x/2)).
double chi_squared_sf(double x, double df);

/// Tanh-sinh (double-exponential) node on (0, 1). log_u / log_1mu / log_w
/// stay meaningful where u, 1-u or the weight underflow in direct
/// representation, which is what makes integrands with algebraic endpoint
/// singularities (heavy-tail moment integrals) converge to full precision.
struct TanhSinhNode {
  double u;
  double one_minus_u;
  double log_u;
  double log_1mu;
  double log_w;
};

/// Shared fixed tanh-sinh rule on the unit interval.
const std::vector<TanhSinhNode>& tanh_sinh_unit_nodes();

}  // namespace gaarch
