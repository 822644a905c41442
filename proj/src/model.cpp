#include "gaarch/model.hpp"

#include <cmath>
#include <stdexcept>

namespace gaarch {

double GaarchParams::persistence(const StandardizedSkewT& std_tails) const {
  return beta + eta_minus * std_tails.m2_minus + eta_plus * std_tails.m2_plus;
}

void GaarchParams::validate(const StandardizedSkewT& std_tails) const {
  tails.validate();
  if (!(sigma0 > 0.0))
    throw std::domain_error("GaarchParams: sigma0 must be positive");
  if (eta_minus < 0.0 || eta_plus < 0.0 || beta < 0.0)
    throw std::domain_error("GaarchParams: eta/beta must be nonnegative");
  if (!(persistence(std_tails) < 1.0))
    throw std::domain_error("GaarchParams: persistence must be below 1");
  if (!std::isfinite(alpha) || !std::isfinite(gamma))
    throw std::domain_error("GaarchParams: alpha/gamma must be finite");
}

double cond_mean(const GaarchParams& params, double chi_next) {
  if (!(chi_next > -1.0))
    throw std::domain_error("cond_mean: chi must exceed -1");
  return params.alpha +
         params.gamma * params.sigma0 * params.sigma0 * (1.0 + chi_next);
}

double step_chi(const GaarchParams& params, const StandardizedSkewT& std_tails,
                double chi_t, double eps_t) {
  if (!(chi_t > -1.0)) throw std::domain_error("step_chi: chi must exceed -1");
  const double persist = params.persistence(std_tails);
  const double e2 = eps_t * eps_t;
  const double down = (eps_t < 0.0) ? e2 : 0.0;
  const double up = (eps_t >= 0.0) ? e2 : 0.0;
  const double chi_next =
      persist * chi_t +
      params.eta_minus * (1.0 + chi_t) * (down - std_tails.m2_minus) +
      params.eta_plus * (1.0 + chi_t) * (up - std_tails.m2_plus);
  // guaranteed by the parameter invariants; a violation is a bug
  if (!(chi_next > -1.0))
    throw std::logic_error("step_chi: conditional variance collapsed");
  return chi_next;
}

SimulationResult simulate(const GaarchParams& params, std::size_t n_periods,
                          std::uint64_t seed) {
  return simulate(params, standardize(params.tails), n_periods, seed);
}

SimulationResult simulate(const GaarchParams& params,
                          const StandardizedSkewT& std_tails,
                          std::size_t n_periods, std::uint64_t seed) {
  if (n_periods < 1)
    throw std::invalid_argument("simulate: n_periods must be >= 1");
  params.validate(std_tails);

  std::mt19937_64 rng(seed);
  SimulationResult out;
  out.series.label = "simulated";
  out.series.dates.reserve(n_periods);
  out.series.returns.reserve(n_periods);
  auto& st = out.state;
  st.mu.reserve(n_periods);
  st.sigma.reserve(n_periods);
  st.chi.reserve(n_periods);
  st.eps.reserve(n_periods);
  st.loglik = 0.0;

  YearMonth ym{2000, 1};
  double chi = 0.0;
  for (std::size_t t = 0; t < n_periods; ++t) {
    const double mu = cond_mean(params, chi);
    const double sigma = params.sigma0 * std::sqrt(1.0 + chi);
    const double draw = sample(std_tails, rng);
    const double r = mu + sigma * draw;
    // recompute eps exactly as the filter does, so the internal state
    // round-trips bit-for-bit through filter()
    const double eps = (r - mu) / sigma;
    out.series.dates.push_back(ym);
    out.series.returns.push_back(r);
    st.mu.push_back(mu);
    st.sigma.push_back(sigma);
    st.chi.push_back(chi);
    st.eps.push_back(eps);
    st.loglik += std_logpdf(eps, std_tails) - std::log(sigma);
    chi = step_chi(params, std_tails, chi, eps);
    ym = ym.next();
  }
  return out;
}

FilterOutput filter(const GaarchParams& params, const ReturnSeries& returns) {
  return filter(params, standardize(params.tails), returns);
}

FilterOutput filter(const GaarchParams& params,
                    const StandardizedSkewT& std_tails,
                    const ReturnSeries& returns) {
  if (returns.size() < 2)
    throw std::invalid_argument("filter: series length must be >= 2");
  for (double r : returns.returns)
    if (!std::isfinite(r))
      throw std::invalid_argument("filter: non-finite return");
  params.validate(std_tails);

  const std::size_t n = returns.size();
  FilterOutput out;
  out.mu.reserve(n);
  out.sigma.reserve(n);
  out.chi.reserve(n);
  out.eps.reserve(n);
  out.loglik = 0.0;

  const double sigma_floor = 1e-12 * params.sigma0;
  double chi = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double mu = cond_mean(params, chi);
    const double sigma = params.sigma0 * std::sqrt(1.0 + chi);
    if (!(sigma > sigma_floor))
      throw std::logic_error("filter: sigma collapsed");
    const double eps = (returns.returns[t] - mu) / sigma;
    out.mu.push_back(mu);
    out.sigma.push_back(sigma);
    out.chi.push_back(chi);
    out.eps.push_back(eps);
    out.loglik += std_logpdf(eps, std_tails) - std::log(sigma);
    chi = step_chi(params, std_tails, chi, eps);
  }
  return out;
}

Attribution attribute(const GaarchParams& params, int periods_per_year) {
  const double gamma_monthly = params.gamma * params.sigma0 * params.sigma0;
  Attribution a;
  a.alpha_true = 100.0 * periods_per_year * params.alpha;
  a.gamma_comp = 100.0 * periods_per_year * gamma_monthly;
  a.alpha_risk_adj = a.alpha_true + a.gamma_comp;
  a.gamma_raw = params.gamma;
  return a;
}

}  // namespace gaarch
