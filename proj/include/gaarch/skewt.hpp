#pragma once

#include <cstdint>
#include <random>

namespace gaarch {

/// Tail degrees of freedom of the skewed Student's-t residual law.
/// Both must exceed 2 (finite variance) and respect the estimation cap 200.
struct SkewTParams {
  double nu_minus;  // left tail
  double nu_plus;   // right tail

  double nu() const { return 0.5 * (nu_minus + nu_plus); }
  void validate() const;
};

/// The residual law shifted and scaled to zero mean / unit variance,
/// with the truncated second moments of the standardized variable.
/// Immutable after construction; safe to share across threads.
struct StandardizedSkewT {
  SkewTParams params;
  double location;  // mean of the raw law
  double scale;     // standard deviation of the raw law
  double m2_minus;  // E[eps^2 1(eps < 0)]
  double m2_plus;   // E[eps^2 1(eps >= 0)]
};

/// Raw density. Equals the classical Student-t(nu) density when
/// nu_minus == nu_plus == nu.
double raw_pdf(double x, const SkewTParams& p);
double raw_logpdf(double x, const SkewTParams& p);

/// Raw CDF: I(1/2 (1 + t/sqrt(nu + t^2)); nu_minus/2, nu_plus/2).
double raw_cdf(double t, const SkewTParams& p);

/// Raw quantile, u in (0, 1).
double raw_quantile(double u, const SkewTParams& p);

/// Location-scale standardization constants and truncated second moments,
/// by tanh-sinh quadrature after the Beta substitution
/// u = 1/2 (1 + x / sqrt(nu + x^2)).
StandardizedSkewT standardize(const SkewTParams& p);

/// Log density of the standardized variable eps = (X - location)/scale.
double std_logpdf(double eps, const StandardizedSkewT& s);

/// Uniform draw in (0, 1) from a seeded stream; shared by all samplers
/// so that seeded runs are reproducible bit-for-bit.
double canonical_uniform(std::mt19937_64& rng);

/// One inverse-CDF draw of the standardized variable.
double sample(const StandardizedSkewT& s, std::mt19937_64& rng);

}  // namespace gaarch
