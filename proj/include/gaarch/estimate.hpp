#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "gaarch/model.hpp"

namespace gaarch {

enum class NestedModel { Full, SymmetricTails, Gaussian, NoVolExposure };

std::string nested_model_name(NestedModel m);
NestedModel nested_model_from_name(const std::string& name);

struct FitConfig {
  int max_iterations = 4000;    // Nelder-Mead iterations per start
  double tolerance = 1e-9;      // convergence threshold on loglik change
  int n_multistarts = 5;
  bool two_step_init = true;
  NestedModel nested_model = NestedModel::Full;
  std::uint64_t seed = 0;
  bool bootstrap_se = false;    // moving-block bootstrap standard errors
  int bootstrap_replicates = 200;
  int bootstrap_block = 6;
};

/// Order of the natural parameter vector everywhere below.
enum ParamIndex : int {
  kAlpha = 0,
  kGamma,
  kSigma0,
  kEtaMinus,
  kEtaPlus,
  kBeta,
  kNuMinus,
  kNuPlus,
  kNumParams
};

struct FitResult {
  GaarchParams params{};
  double loglik = 0.0;
  std::array<double, kNumParams> std_errors{};  // NaN where unavailable
  std::array<double, kNumParams> t_stats{};     // NaN where unavailable
  std::array<bool, kNumParams> boundary_flags{};
  bool se_available = false;
  bool converged = false;
  std::size_t n_obs = 0;
  FitConfig config{};
  std::string label;
};

struct LrtResult {
  double statistic;  // 2 (loglik_full - loglik_restricted)
  int df;
  double p_value;
};

/// Constraint transform between the unconstrained optimization space and
/// GaarchParams: sigma0 by exponential map, (eta-, eta+, beta) by logistic
/// allocation of a persistence budget capped at 0.999 (using the m2 moments
/// implied by the current tails), nu by logistic map onto (2.05, 200).
GaarchParams constrain(const std::array<double, kNumParams>& theta);
std::array<double, kNumParams> unconstrain(const GaarchParams& params);

/// Negative log-likelihood of the constrained parameters on the data.
/// Well defined for every finite theta: numerically degenerate regions
/// (overflowing filtered variance) evaluate to +infinity instead of throwing.
double neg_loglik(const std::array<double, kNumParams>& theta,
                  const ReturnSeries& data);

/// Variance-targeted initializer with tails profiled on a dof grid,
/// returned in the unconstrained space.
std::array<double, kNumParams> two_step_init(const ReturnSeries& data);

/// Joint MLE by multistart Nelder-Mead; observed-information standard
/// errors (delta-method mapped to the natural parameterization).
FitResult fit(const ReturnSeries& data, const FitConfig& config = {});

/// Likelihood-ratio test of a nested restriction against the full model.
LrtResult lrt(const ReturnSeries& data, NestedModel restricted,
              const FitConfig& config = {});

/// Memoized standardize(); estimation recomputes the truncated moments at
/// every likelihood evaluation, so repeated tails hit this cache.
const StandardizedSkewT& standardize_cached(const SkewTParams& tails);

}  // namespace gaarch
