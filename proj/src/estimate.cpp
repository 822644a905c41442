#include "gaarch/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gaarch/specfun.hpp"

namespace gaarch {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kPersistenceCap = 0.999;
constexpr double kNuFloor = 2.05;
constexpr double kNuCap = 200.0;

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double logit(double p) {
  const double c = std::clamp(p, 1e-15, 1.0 - 1e-15);
  return std::log(c / (1.0 - c));
}

double nu_from_raw(double t) { return kNuFloor + (kNuCap - kNuFloor) * sigmoid(t); }
double nu_to_raw(double nu) { return logit((nu - kNuFloor) / (kNuCap - kNuFloor)); }

GaarchParams constrain_core(double alpha, double gamma, double log_sigma,
                            double t_persist, double t_split1, double t_split2,
                            double nu_minus, double nu_plus) {
  GaarchParams p;
  p.alpha = alpha;
  p.gamma = gamma;
  p.sigma0 = std::exp(log_sigma);
  p.tails = SkewTParams{nu_minus, nu_plus};
  const StandardizedSkewT& std_tails = standardize_cached(p.tails);
  const double s = kPersistenceCap * sigmoid(t_persist);
  const double f1 = sigmoid(t_split1);
  const double f2 = sigmoid(t_split2);
  p.beta = s * f1;
  p.eta_minus = s * (1.0 - f1) * f2 / std_tails.m2_minus;
  p.eta_plus = s * (1.0 - f1) * (1.0 - f2) / std_tails.m2_plus;
  return p;
}

// Free-parameter layout per nested model; everything the optimizer sees
// lives in the unconstrained space.
struct ParamSpace {
  NestedModel model;

  int dim() const {
    switch (model) {
      case NestedModel::Full: return 8;
      case NestedModel::SymmetricTails: return 7;
      case NestedModel::Gaussian: return 6;
      case NestedModel::NoVolExposure: return 7;
    }
    return 8;
  }

  GaarchParams params_from(const std::vector<double>& th) const {
    switch (model) {
      case NestedModel::Full:
        return constrain_core(th[0], th[1], th[2], th[3], th[4], th[5],
                              nu_from_raw(th[6]), nu_from_raw(th[7]));
      case NestedModel::SymmetricTails: {
        const double nu = nu_from_raw(th[6]);
        return constrain_core(th[0], th[1], th[2], th[3], th[4], th[5], nu, nu);
      }
      case NestedModel::Gaussian:
        return constrain_core(th[0], th[1], th[2], th[3], th[4], th[5],
                              kNuCap, kNuCap);
      case NestedModel::NoVolExposure:
        return constrain_core(th[0], 0.0, th[1], th[2], th[3], th[4],
                              nu_from_raw(th[5]), nu_from_raw(th[6]));
    }
    throw std::logic_error("unreachable");
  }

  // optimizer coordinates pinned flat by a boundary-flagged parameter:
  // either eta at zero freezes the split coordinate, nu at the cap freezes
  // its raw-dof coordinate
  std::vector<int> boundary_coords(
      const std::array<bool, kNumParams>& flags) const {
    const bool eta_flag = flags[kEtaMinus] || flags[kEtaPlus];
    std::vector<int> coords;
    switch (model) {
      case NestedModel::Full:
        if (eta_flag) coords.push_back(5);
        if (flags[kNuMinus]) coords.push_back(6);
        if (flags[kNuPlus]) coords.push_back(7);
        break;
      case NestedModel::SymmetricTails:
        if (eta_flag) coords.push_back(5);
        if (flags[kNuMinus] || flags[kNuPlus]) coords.push_back(6);
        break;
      case NestedModel::Gaussian:
        if (eta_flag) coords.push_back(5);
        break;
      case NestedModel::NoVolExposure:
        if (eta_flag) coords.push_back(4);
        if (flags[kNuMinus]) coords.push_back(5);
        if (flags[kNuPlus]) coords.push_back(6);
        break;
    }
    return coords;
  }

  std::vector<double> from_params(const GaarchParams& p) const {
    const auto full = unconstrain(p);
    switch (model) {
      case NestedModel::Full:
        return {full.begin(), full.end()};
      case NestedModel::SymmetricTails:
        return {full[0], full[1], full[2], full[3], full[4], full[5],
                nu_to_raw(0.5 * (p.tails.nu_minus + p.tails.nu_plus))};
      case NestedModel::Gaussian:
        return {full[0], full[1], full[2], full[3], full[4], full[5]};
      case NestedModel::NoVolExposure:
        return {full[0], full[2], full[3], full[4], full[5], full[6], full[7]};
    }
    throw std::logic_error("unreachable");
  }
};

// One bisecting line-search sweep over the coordinates. Complements
// Nelder-Mead, whose simplex tends to collapse along near-flat directions
// of this likelihood and stall short of the optimum.
double coordinate_polish(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double>& x, double fx) {
  std::vector<double> trial = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double step = 0.25;
    while (step > 1e-7) {
      trial = x;
      trial[k] = x[k] + step;
      const double fp = f(trial);
      trial[k] = x[k] - step;
      const double fm = f(trial);
      if (fp < fx && fp <= fm) {
        x[k] += step;
        fx = fp;
      } else if (fm < fx) {
        x[k] -= step;
        fx = fm;
      } else {
        step *= 0.5;
      }
    }
  }
  return fx;
}

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  bool converged = false;
};

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, double step, int max_iter, double ftol) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  NelderMeadResult result;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t lo = order[0], hi = order[n], nh = order[n - 1];

    if (fv[hi] - fv[lo] < ftol) {
      result.converged = true;
      result.x = simplex[lo];
      result.fx = fv[lo];
      return result;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == hi) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j)
        x[j] = centroid[j] + coef * (simplex[hi][j] - centroid[j]);
      return x;
    };

    const auto xr = blend(-1.0);
    const double fr = f(xr);
    if (fr < fv[order[0]]) {
      const auto xe = blend(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[hi] = xe;
        fv[hi] = fe;
      } else {
        simplex[hi] = xr;
        fv[hi] = fr;
      }
    } else if (fr < fv[nh]) {
      simplex[hi] = xr;
      fv[hi] = fr;
    } else {
      const bool outside = fr < fv[hi];
      const auto xc = blend(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[hi])) {
        simplex[hi] = xc;
        fv[hi] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == lo) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] =
                simplex[lo][j] + 0.5 * (simplex[i][j] - simplex[lo][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
  }
  const auto best = std::min_element(fv.begin(), fv.end()) - fv.begin();
  result.x = simplex[best];
  result.fx = fv[best];
  result.converged = false;
  return result;
}

// Cholesky-based inverse of a symmetric positive definite matrix.
// Returns false if the factorization fails.
bool spd_inverse(std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = m[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) return false;
        l[i][i] = std::sqrt(sum);
      } else {
        l[i][j] = sum / l[j][j];
      }
    }
  }
  // invert by columns of the identity
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  std::vector<double> y(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) sum -= l[i][k] * y[k];
      y[i] = sum / l[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double sum = y[i];
      for (std::size_t k = i + 1; k < n; ++k) sum -= l[k][i] * inv[k][col];
      inv[i][col] = sum / l[i][i];
    }
  }
  m = std::move(inv);
  return true;
}

std::array<double, kNumParams> natural_vector(const GaarchParams& p) {
  return {p.alpha, p.gamma,     p.sigma0,        p.eta_minus,
          p.eta_plus, p.beta,   p.tails.nu_minus, p.tails.nu_plus};
}

// Likelihood with degenerate regions penalized: far from the optimum the
// filtered variance can overflow, which the filter reports by throwing;
// the optimizer just needs to see such points as arbitrarily bad.
double penalized_neg_loglik(const GaarchParams& params,
                            const ReturnSeries& data) {
  try {
    const double ll =
        filter(params, standardize_cached(params.tails), data).loglik;
    if (!std::isfinite(ll)) return std::numeric_limits<double>::infinity();
    return -ll;
  } catch (const std::logic_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::mt19937_64 start_rng(std::uint64_t seed, int start_index) {
  return std::mt19937_64(seed * 6364136223846793005ULL + 1442695040888963407ULL +
                         static_cast<std::uint64_t>(start_index));
}

}  // namespace

std::string nested_model_name(NestedModel m) {
  switch (m) {
    case NestedModel::Full: return "full";
    case NestedModel::SymmetricTails: return "symmetric_tails";
    case NestedModel::Gaussian: return "gaussian";
    case NestedModel::NoVolExposure: return "no_vol_exposure";
  }
  return "full";
}

NestedModel nested_model_from_name(const std::string& name) {
  if (name == "full") return NestedModel::Full;
  if (name == "symmetric_tails") return NestedModel::SymmetricTails;
  if (name == "gaussian") return NestedModel::Gaussian;
  if (name == "no_vol_exposure") return NestedModel::NoVolExposure;
  throw std::invalid_argument("unknown nested model '" + name + "'");
}

const StandardizedSkewT& standardize_cached(const SkewTParams& tails) {
  thread_local std::map<std::pair<double, double>, StandardizedSkewT> cache;
  const auto key = std::make_pair(tails.nu_minus, tails.nu_plus);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (cache.size() > 200000) cache.clear();
  return cache.emplace(key, standardize(tails)).first->second;
}

GaarchParams constrain(const std::array<double, kNumParams>& theta) {
  return constrain_core(theta[0], theta[1], theta[2], theta[3], theta[4],
                        theta[5], nu_from_raw(theta[6]), nu_from_raw(theta[7]));
}

std::array<double, kNumParams> unconstrain(const GaarchParams& p) {
  const StandardizedSkewT& std_tails = standardize_cached(p.tails);
  const double s = p.persistence(std_tails);
  const double f1 = (s > 0.0) ? p.beta / s : 0.5;
  const double rest = s * (1.0 - f1);
  const double f2 =
      (rest > 0.0) ? p.eta_minus * std_tails.m2_minus / rest : 0.5;
  return {p.alpha,
          p.gamma,
          std::log(p.sigma0),
          logit(s / kPersistenceCap),
          logit(f1),
          logit(f2),
          nu_to_raw(p.tails.nu_minus),
          nu_to_raw(p.tails.nu_plus)};
}

double neg_loglik(const std::array<double, kNumParams>& theta,
                  const ReturnSeries& data) {
  for (double t : theta)
    if (!std::isfinite(t))
      throw std::invalid_argument("neg_loglik: non-finite parameter");
  return penalized_neg_loglik(constrain(theta), data);
}

std::array<double, kNumParams> two_step_init(const ReturnSeries& data) {
  data.validate();
  const std::size_t n = data.size();
  const double mean =
      std::accumulate(data.returns.begin(), data.returns.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : data.returns) ss += (r - mean) * (r - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (!(sd > 0.0))
    throw std::invalid_argument("two_step_init: zero-variance data");

  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = (data.returns[i] - mean) / sd;

  // profile the tail dof on a coarse grid against the provisional
  // constant-mean residuals
  static const double grid[] = {3.0, 5.0, 8.0, 15.0, 50.0, 200.0};
  double best_ll = -std::numeric_limits<double>::infinity();
  SkewTParams best_tails{8.0, 8.0};
  for (double nm : grid) {
    for (double np : grid) {
      const StandardizedSkewT& s = standardize_cached(SkewTParams{nm, np});
      double ll = 0.0;
      for (double e : eps) ll += std_logpdf(e, s);
      if (ll > best_ll) {
        best_ll = ll;
        best_tails = SkewTParams{nm, np};
      }
    }
  }

  GaarchParams init;
  init.alpha = mean;
  init.gamma = 0.0;
  init.sigma0 = sd;
  init.eta_minus = 0.1;
  init.eta_plus = 0.1;
  init.beta = 0.7;
  init.tails = best_tails;
  return unconstrain(init);
}

namespace {

FitResult fit_point_estimate(const ReturnSeries& data, const FitConfig& config,
                             const std::vector<double>* extra_start,
                             std::vector<double>* best_free_out) {
  data.validate();
  if (data.size() < 60)
    throw std::invalid_argument("fit: need at least 60 observations");

  const ParamSpace space{config.nested_model};
  const auto theta0 = config.two_step_init
                          ? two_step_init(data)
                          : unconstrain([&] {
                              GaarchParams p;
                              const double mean = std::accumulate(
                                                      data.returns.begin(),
                                                      data.returns.end(), 0.0) /
                                                  data.size();
                              double ss = 0.0;
                              for (double r : data.returns)
                                ss += (r - mean) * (r - mean);
                              p.alpha = mean;
                              p.gamma = 0.0;
                              p.sigma0 = std::sqrt(ss / (data.size() - 1));
                              p.eta_minus = 0.1;
                              p.eta_plus = 0.1;
                              p.beta = 0.7;
                              p.tails = SkewTParams{8.0, 8.0};
                              return p;
                            }());
  const std::vector<double> x0 = space.from_params(constrain(theta0));

  const auto objective = [&](const std::vector<double>& th) {
    return penalized_neg_loglik(space.params_from(th), data);
  };

  std::vector<double> best_x;
  double best_f = std::numeric_limits<double>::infinity();
  bool converged = false;

  std::vector<std::vector<double>> starts;
  starts.push_back(x0);
  for (int k = 1; k < config.n_multistarts; ++k) {
    auto rng = start_rng(config.seed, k);
    std::vector<double> x = x0;
    for (double& xi : x) xi += canonical_uniform(rng) - 0.5;
    starts.push_back(std::move(x));
  }
  if (extra_start) starts.push_back(*extra_start);

  for (const auto& start : starts) {
    auto res = nelder_mead(objective, start, 0.3, config.max_iterations,
                           config.tolerance);
    // restart from the found point with a fresh, tighter simplex until the
    // restarts stop paying; plain Nelder-Mead alone tends to stall early.
    // pull saturated logistic coordinates back into the responsive range
    // first: beyond |10| the transform is flat and the simplex cannot move,
    // even when the boundary is not actually optimal
    for (int round = 0; round < 12; ++round) {
      const double round_start = res.fx;
      auto start2 = res.x;
      for (double& xi : start2) xi = std::clamp(xi, -10.0, 10.0);
      auto polished = nelder_mead(objective, start2, 0.05,
                                  config.max_iterations, config.tolerance);
      if (polished.fx < res.fx) res = std::move(polished);
      res.fx = coordinate_polish(objective, res.x, res.fx);
      if (round_start - res.fx < std::max(config.tolerance, 1e-8)) break;
    }
    if (res.fx < best_f) {
      best_f = res.fx;
      best_x = res.x;
      converged = res.converged;
    }
  }

  GaarchParams params = space.params_from(best_x);

  FitResult result;
  result.config = config;
  result.label = data.label;
  result.n_obs = data.size();
  result.converged = converged;

  // report dof estimates at the cap as exactly 200 ("normal-limit")
  result.boundary_flags.fill(false);
  if (params.tails.nu_minus >= kNuCap - 1e-3) {
    params.tails.nu_minus = kNuCap;
    result.boundary_flags[kNuMinus] = true;
  }
  if (params.tails.nu_plus >= kNuCap - 1e-3) {
    params.tails.nu_plus = kNuCap;
    result.boundary_flags[kNuPlus] = true;
  }
  if (params.eta_minus < 1e-5) result.boundary_flags[kEtaMinus] = true;
  if (params.eta_plus < 1e-5) result.boundary_flags[kEtaPlus] = true;
  if (config.nested_model == NestedModel::Gaussian) {
    result.boundary_flags[kNuMinus] = true;
    result.boundary_flags[kNuPlus] = true;
  }
  if (config.nested_model == NestedModel::NoVolExposure)
    result.boundary_flags[kGamma] = true;

  result.params = params;
  result.loglik = filter(params, standardize_cached(params.tails), data).loglik;
  if (best_free_out) *best_free_out = best_x;
  return result;
}

void observed_information_se(const ReturnSeries& data, const FitConfig& config,
                             const std::vector<double>& best_x,
                             FitResult& result) {
  const ParamSpace space{config.nested_model};
  const auto objective = [&](const std::vector<double>& th) {
    return penalized_neg_loglik(space.params_from(th), data);
  };

  const int d = space.dim();
  std::vector<double> h(d);
  for (int i = 0; i < d; ++i) h[i] = 1e-4 * std::max(1.0, std::fabs(best_x[i]));

  const double f0 = objective(best_x);
  std::vector<std::vector<double>> hess(d, std::vector<double>(d, 0.0));
  auto at = [&](std::initializer_list<std::pair<int, double>> shifts) {
    std::vector<double> x = best_x;
    for (const auto& [i, s] : shifts) x[i] += s;
    return objective(x);
  };
  for (int i = 0; i < d; ++i) {
    hess[i][i] =
        (at({{i, h[i]}}) + at({{i, -h[i]}}) - 2.0 * f0) / (h[i] * h[i]);
    for (int j = i + 1; j < d; ++j) {
      hess[i][j] = hess[j][i] =
          (at({{i, h[i]}, {j, h[j]}}) - at({{i, h[i]}, {j, -h[j]}}) -
           at({{i, -h[i]}, {j, h[j]}}) + at({{i, -h[i]}, {j, -h[j]}})) /
          (4.0 * h[i] * h[j]);
    }
  }

  result.std_errors.fill(kNan);
  result.t_stats.fill(kNan);

  // Invert on the identified subspace: try the full observed information
  // first; if it is not positive definite, drop the coordinates frozen by a
  // boundary, then shed the flattest remaining direction until it is.
  // Dropped directions contribute zero covariance (their natural parameters
  // are NaN'd below anyway).
  std::vector<char> kept(d, 1);
  auto subspace_inverse = [&](std::vector<std::vector<double>>& cov) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
      if (kept[i]) idx.push_back(i);
    if (idx.size() < 2) return false;
    const int m = static_cast<int>(idx.size());
    std::vector<std::vector<double>> sub(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) sub[a][b] = hess[idx[a]][idx[b]];
    if (!spd_inverse(sub)) return false;
    cov.assign(d, std::vector<double>(d, 0.0));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) cov[idx[a]][idx[b]] = sub[a][b];
    return true;
  };

  std::vector<std::vector<double>> cov;
  bool inverted = subspace_inverse(cov);
  if (!inverted) {
    for (int c : space.boundary_coords(result.boundary_flags)) kept[c] = 0;
    inverted = subspace_inverse(cov);
    while (!inverted) {
      int flattest = -1;
      for (int i = 0; i < d; ++i)
        if (kept[i] && (flattest < 0 || hess[i][i] < hess[flattest][flattest]))
          flattest = i;
      if (flattest < 0) break;
      kept[flattest] = 0;
      inverted = subspace_inverse(cov);
      if (std::count(kept.begin(), kept.end(), 1) < 2) break;
    }
  }
  if (!inverted) {
    result.se_available = false;
    return;
  }
  hess = std::move(cov);

  // delta method to the natural parameterization
  std::vector<std::array<double, kNumParams>> jac(d);
  for (int i = 0; i < d; ++i) {
    std::vector<double> xp = best_x, xm = best_x;
    xp[i] += h[i];
    xm[i] -= h[i];
    const auto pp = natural_vector(space.params_from(xp));
    const auto pm = natural_vector(space.params_from(xm));
    for (int k = 0; k < kNumParams; ++k)
      jac[i][k] = (pp[k] - pm[k]) / (2.0 * h[i]);
  }
  const auto value = natural_vector(result.params);
  for (int k = 0; k < kNumParams; ++k) {
    double var = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) var += jac[i][k] * hess[i][j] * jac[j][k];
    if (var > 0.0 && !result.boundary_flags[k]) {
      result.std_errors[k] = std::sqrt(var);
      result.t_stats[k] = value[k] / result.std_errors[k];
    }
  }
  result.se_available = true;
}

void bootstrap_se(const ReturnSeries& data, const FitConfig& config,
                  const std::vector<double>& best_x, FitResult& result) {
  const ParamSpace space{config.nested_model};
  const std::size_t n = data.size();
  const int block = config.bootstrap_block;
  auto rng = start_rng(config.seed ^ 0xb00f5ULL, 0);

  std::vector<std::array<double, kNumParams>> draws;
  for (int rep = 0; rep < config.bootstrap_replicates; ++rep) {
    ReturnSeries resampled;
    resampled.label = data.label;
    YearMonth ym{2000, 1};
    while (resampled.returns.size() < n) {
      const std::size_t start = static_cast<std::size_t>(
          canonical_uniform(rng) * (n - block + 1));
      for (int j = 0; j < block && resampled.returns.size() < n; ++j) {
        resampled.returns.push_back(data.returns[start + j]);
        resampled.dates.push_back(ym);
        ym = ym.next();
      }
    }
    const auto objective = [&](const std::vector<double>& th) {
      return penalized_neg_loglik(space.params_from(th), resampled);
    };
    const auto res = nelder_mead(objective, best_x, 0.1,
                                 config.max_iterations, config.tolerance);
    draws.push_back(natural_vector(space.params_from(res.x)));
  }

  result.std_errors.fill(kNan);
  result.t_stats.fill(kNan);
  const auto value = natural_vector(result.params);
  for (int k = 0; k < kNumParams; ++k) {
    double mean = 0.0;
    for (const auto& dvec : draws) mean += dvec[k];
    mean /= draws.size();
    double ss = 0.0;
    for (const auto& dvec : draws) ss += (dvec[k] - mean) * (dvec[k] - mean);
    const double se = std::sqrt(ss / (draws.size() - 1));
    if (se > 0.0 && !result.boundary_flags[k]) {
      result.std_errors[k] = se;
      result.t_stats[k] = value[k] / se;
    }
  }
  result.se_available = true;
}

}  // namespace

FitResult fit(const ReturnSeries& data, const FitConfig& config) {
  if (config.n_multistarts < 1 || !(config.tolerance > 0.0))
    throw std::invalid_argument("fit: invalid config");
  std::vector<double> best_x;
  FitResult result = fit_point_estimate(data, config, nullptr, &best_x);
  if (config.bootstrap_se)
    bootstrap_se(data, config, best_x, result);
  else
    observed_information_se(data, config, best_x, result);
  return result;
}

LrtResult lrt(const ReturnSeries& data, NestedModel restricted,
              const FitConfig& config) {
  if (restricted == NestedModel::Full)
    throw std::invalid_argument("lrt: restriction must be a nested model");

  FitConfig cfg_full = config;
  cfg_full.nested_model = NestedModel::Full;
  std::vector<double> full_x;
  FitResult full = fit_point_estimate(data, cfg_full, nullptr, &full_x);

  FitConfig cfg_res = config;
  cfg_res.nested_model = restricted;
  FitResult res = fit_point_estimate(data, cfg_res, nullptr, nullptr);

  // polish the full model from the embedded restricted optimum so the
  // nesting inequality holds structurally
  const ParamSpace full_space{NestedModel::Full};
  const auto embedded = full_space.from_params(res.params);
  const auto objective = [&](const std::vector<double>& th) {
    return penalized_neg_loglik(full_space.params_from(th), data);
  };
  const auto polished =
      nelder_mead(objective, embedded, 0.05, config.max_iterations,
                  config.tolerance);
  if (-polished.fx > full.loglik) {
    full.params = full_space.params_from(polished.x);
    full.loglik =
        filter(full.params, standardize_cached(full.params.tails), data)
            .loglik;
  }

  int df = 1;
  switch (restricted) {
    case NestedModel::SymmetricTails: df = 1; break;
    case NestedModel::Gaussian: df = 2; break;
    case NestedModel::NoVolExposure: df = 1; break;
    default: break;
  }
  LrtResult out;
  out.statistic = 2.0 * (full.loglik - res.loglik);
  out.df = df;
  out.p_value = chi_squared_sf(std::max(out.statistic, 0.0), df);
  return out;
}

}  // namespace gaarch
