#pragma once

#include <cstdint>
#include <vector>

#include "gaarch/data.hpp"
#include "gaarch/skewt.hpp"

namespace gaarch {

/// Full GAARCH(1,1) parameter vector, monthly decimal units.
struct GaarchParams {
  double alpha;      // true alpha per month
  double gamma;      // volatility-exposure coefficient (1/variance units)
  double sigma0;     // unconditional monthly volatility
  double eta_minus;  // downside ARCH coefficient
  double eta_plus;   // upside ARCH coefficient
  double beta;       // GARCH coefficient
  SkewTParams tails;

  /// beta + eta_minus m2_minus + eta_plus m2_plus; must stay below 1.
  double persistence(const StandardizedSkewT& std_tails) const;

  /// Throws std::domain_error on sign/stationarity violations.
  void validate(const StandardizedSkewT& std_tails) const;
};

/// Expected-return decomposition, annualized percentage points.
struct Attribution {
  double alpha_true;      // 100 * ppy * alpha
  double gamma_comp;      // 100 * ppy * gamma * sigma0^2
  double alpha_risk_adj;  // alpha_true + gamma_comp, exactly
  double gamma_raw;       // monthly gamma
};

/// Per-period conditional series from one pass of the recursion.
struct FilterOutput {
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> chi;
  std::vector<double> eps;
  double loglik;
};

/// mu_{t+1} = alpha + gamma sigma0^2 (1 + chi_{t+1}).
double cond_mean(const GaarchParams& params, double chi_next);

/// One step of the excess-variance recursion.
double step_chi(const GaarchParams& params, const StandardizedSkewT& std_tails,
                double chi_t, double eps_t);

struct SimulationResult {
  ReturnSeries series;
  FilterOutput state;
};

/// Forward simulation from chi_1 = 0 with dates synthesized from 2000-01.
/// The recorded state uses exactly the filter's arithmetic, so
/// filter(params, result.series) reproduces it bit-for-bit.
SimulationResult simulate(const GaarchParams& params, std::size_t n_periods,
                          std::uint64_t seed);
SimulationResult simulate(const GaarchParams& params,
                          const StandardizedSkewT& std_tails,
                          std::size_t n_periods, std::uint64_t seed);

/// Deterministic filtering pass with chi_1 = 0. loglik is
/// sum_t [std_logpdf(eps_t) - log sigma_t].
FilterOutput filter(const GaarchParams& params, const ReturnSeries& returns);
FilterOutput filter(const GaarchParams& params,
                    const StandardizedSkewT& std_tails,
                    const ReturnSeries& returns);

Attribution attribute(const GaarchParams& params, int periods_per_year = 12);

}  // namespace gaarch
