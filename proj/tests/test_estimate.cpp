#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "gaarch/estimate.hpp"
#include "gaarch/model.hpp"
#include "table_fixtures.hpp"

using namespace gaarch;

namespace {

ReturnSeries make_series(const std::vector<double>& returns) {
  ReturnSeries s;
  s.label = "synthetic";
  YearMonth ym{2000, 1};
  for (double r : returns) {
    s.dates.push_back(ym);
    s.returns.push_back(r);
    ym = ym.next();
  }
  return s;
}

GaarchParams all_funds_params() { return fixtures::all_funds().params(); }

}  // namespace

TEST_CASE("constrain maps any finite point to a valid parameter set") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    std::array<double, kNumParams> theta;
    for (auto& t : theta) t = u(rng);
    theta[kAlpha] *= 0.01;
    theta[kGamma] *= 0.1;
    theta[kSigma0] = -4.0 + 0.3 * u(rng);  // log sigma
    const GaarchParams p = constrain(theta);
    const auto& s = standardize_cached(p.tails);
    CHECK_NOTHROW(p.validate(s));
    CHECK(p.persistence(s) < 0.999 + 1e-12);
    CHECK(p.tails.nu_minus > 2.05 - 1e-9);
    CHECK(p.tails.nu_minus < 200.0 + 1e-9);
  }
}

TEST_CASE("constrain/unconstrain round trip") {
  // natural -> unconstrained -> natural
  std::vector<GaarchParams> cases = {
      all_funds_params(),
      {0.0, 0.0, 0.02, 0.05, 0.05, 0.3, {4.0, 4.0}},
      {-0.01, 5.0, 0.001, 0.4, 0.01, 0.5, {2.5, 199.0}},
  };
  for (const auto& p : cases) {
    const auto theta = unconstrain(p);
    const auto back = constrain(theta);
    CHECK(back.alpha == doctest::Approx(p.alpha).epsilon(1e-12));
    CHECK(back.gamma == doctest::Approx(p.gamma).epsilon(1e-12));
    CHECK(back.sigma0 == doctest::Approx(p.sigma0).epsilon(1e-12));
    CHECK(back.eta_minus == doctest::Approx(p.eta_minus).epsilon(1e-9));
    CHECK(back.eta_plus == doctest::Approx(p.eta_plus).epsilon(1e-9));
    CHECK(back.beta == doctest::Approx(p.beta).epsilon(1e-9));
    CHECK(back.tails.nu_minus == doctest::Approx(p.tails.nu_minus).epsilon(1e-9));
    CHECK(back.tails.nu_plus == doctest::Approx(p.tails.nu_plus).epsilon(1e-9));
  }

  // unconstrained -> natural -> unconstrained
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    std::array<double, kNumParams> theta;
    for (auto& t : theta) t = u(rng);
    const auto back = unconstrain(constrain(theta));
    for (int k = 0; k < kNumParams; ++k)
      CHECK(back[k] == doctest::Approx(theta[k]).epsilon(1e-8));
  }
}

TEST_CASE("neg_loglik agrees with a direct raw-density oracle") {
  const auto sim = simulate(all_funds_params(), 500, 11);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    auto theta = unconstrain(all_funds_params());
    for (auto& t : theta) t += 0.3 * u(rng);
    const GaarchParams p = constrain(theta);
    const auto& s = standardize_cached(p.tails);

    double ll = 0.0;
    double chi = 0.0;
    bool degenerate = false;
    try {
      for (double r : sim.series.returns) {
        const double mu = cond_mean(p, chi);
        const double sigma = p.sigma0 * std::sqrt(1.0 + chi);
        const double eps = (r - mu) / sigma;
        ll += std::log(s.scale / sigma) +
              raw_logpdf(s.location + s.scale * eps, p.tails);
        chi = step_chi(p, s, chi, eps);
      }
    } catch (const std::logic_error&) {
      degenerate = true;  // filtered variance overflowed
    }
    if (degenerate || !std::isfinite(ll))
      CHECK(std::isinf(neg_loglik(theta, sim.series)));
    else
      CHECK(neg_loglik(theta, sim.series) ==
            doctest::Approx(-ll).epsilon(1e-12));
  }

  auto theta = unconstrain(all_funds_params());
  theta[0] = std::nan("");
  CHECK_THROWS_AS(neg_loglik(theta, sim.series), std::invalid_argument);
}

TEST_CASE("neg_loglik is smooth at interior points") {
  // central differences at two step sizes agree, so the surface seen by the
  // optimizer has no kinks at the optimum scale
  const auto sim = simulate(all_funds_params(), 300, 2);
  const auto theta0 = unconstrain(all_funds_params());
  for (int k = 0; k < kNumParams; ++k) {
    auto grad_at = [&](double h) {
      auto tp = theta0, tm = theta0;
      tp[k] += h;
      tm[k] -= h;
      return (neg_loglik(tp, sim.series) - neg_loglik(tm, sim.series)) /
             (2.0 * h);
    };
    const double g1 = grad_at(1e-4);
    const double g2 = grad_at(1e-5);
    CHECK(std::fabs(g1 - g2) < 1e-3 * std::max(1.0, std::fabs(g1)));
  }
}

TEST_CASE("two_step_init selects sensible tails") {
  std::mt19937_64 rng(101);

  // gaussian data: the profiled grid lands on the normal-limit corner
  std::normal_distribution<double> gauss(0.002, 0.02);
  std::vector<double> g(3000);
  for (auto& r : g) r = gauss(rng);
  const auto theta_g = two_step_init(make_series(g));
  const auto pg = constrain(theta_g);
  CHECK(pg.tails.nu_minus > 190.0);
  CHECK(pg.tails.nu_plus > 190.0);
  // variance targeting: sigma0 near the sample standard deviation
  CHECK(pg.sigma0 == doctest::Approx(0.02).epsilon(0.05));
  CHECK(pg.alpha == doctest::Approx(0.002).epsilon(0.25));

  // t(4) data: heavy symmetric tails, the grid picks a small dof
  std::student_t_distribution<double> t4(4.0);
  std::vector<double> t(3000);
  for (auto& r : t) r = 0.02 * t4(rng);
  const auto pt = constrain(two_step_init(make_series(t)));
  CHECK(pt.tails.nu_minus >= 3.0);
  CHECK(pt.tails.nu_minus <= 5.0);
  CHECK(pt.tails.nu_plus >= 3.0);
  CHECK(pt.tails.nu_plus <= 5.0);

  // degenerate input
  CHECK_THROWS_AS(two_step_init(make_series({0.01, 0.01, 0.01, 0.01})),
                  std::invalid_argument);
}

TEST_CASE("fit input validation") {
  const auto sim = simulate(all_funds_params(), 50, 1);
  CHECK_THROWS_AS(fit(sim.series), std::invalid_argument);  // too short

  const auto ok = simulate(all_funds_params(), 200, 1);
  FitConfig bad;
  bad.n_multistarts = 0;
  CHECK_THROWS_AS(fit(ok.series, bad), std::invalid_argument);
  bad = FitConfig{};
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(fit(ok.series, bad), std::invalid_argument);
}

TEST_CASE("fit is deterministic for a fixed seed") {
  const auto sim = simulate(all_funds_params(), 300, 4);
  FitConfig cfg;
  cfg.n_multistarts = 2;
  cfg.seed = 9;
  const auto a = fit(sim.series, cfg);
  const auto b = fit(sim.series, cfg);
  CHECK(a.loglik == b.loglik);
  CHECK(a.params.alpha == b.params.alpha);
  CHECK(a.params.beta == b.params.beta);
  CHECK(a.params.tails.nu_minus == b.params.tails.nu_minus);
  for (int k = 0; k < kNumParams; ++k) {
    const bool both_nan =
        std::isnan(a.std_errors[k]) && std::isnan(b.std_errors[k]);
    CHECK((both_nan || a.std_errors[k] == b.std_errors[k]));
  }
}

TEST_CASE("fit recovers the generating process") {
  const auto truth = all_funds_params();
  const auto sim = simulate(truth, 5000, 77);
  FitConfig cfg;
  cfg.n_multistarts = 3;
  cfg.seed = 1;
  const auto res = fit(sim.series, cfg);

  CHECK(res.converged);
  CHECK(res.n_obs == 5000);
  // the refit can never beat itself: loglik at the estimate is at least the
  // loglik at the truth
  const auto at_truth = filter(truth, sim.series).loglik;
  CHECK(res.loglik >= at_truth - 1e-6);

  CHECK(res.params.eta_minus == doctest::Approx(truth.eta_minus).epsilon(0).scale(1).epsilon(0.5));
  CHECK(std::fabs(res.params.eta_minus - truth.eta_minus) < 0.10);
  CHECK(std::fabs(res.params.eta_plus - truth.eta_plus) < 0.10);
  CHECK(std::fabs(res.params.beta - truth.beta) < 0.15);
  CHECK(res.params.sigma0 == doctest::Approx(truth.sigma0).epsilon(0.10));

  // standard errors: available, positive, and alpha/gamma truths are inside
  // wide confidence bands
  CHECK(res.se_available);
  for (int k : {kAlpha, kGamma, kSigma0, kBeta}) {
    CHECK(res.std_errors[k] > 0.0);
    CHECK(std::isfinite(res.t_stats[k]));
  }
  CHECK(std::fabs(res.params.alpha - truth.alpha) <
        6.0 * res.std_errors[kAlpha]);
  CHECK(std::fabs(res.params.gamma - truth.gamma) <
        6.0 * res.std_errors[kGamma]);
}

TEST_CASE("nested fits respect their restrictions") {
  const auto sim = simulate(all_funds_params(), 600, 13);
  FitConfig cfg;
  cfg.n_multistarts = 2;
  cfg.seed = 3;

  cfg.nested_model = NestedModel::SymmetricTails;
  const auto sym = fit(sim.series, cfg);
  CHECK(sym.params.tails.nu_minus == sym.params.tails.nu_plus);

  cfg.nested_model = NestedModel::Gaussian;
  const auto gau = fit(sim.series, cfg);
  CHECK(gau.params.tails.nu_minus == 200.0);
  CHECK(gau.params.tails.nu_plus == 200.0);
  CHECK(gau.boundary_flags[kNuMinus]);
  CHECK(gau.boundary_flags[kNuPlus]);

  cfg.nested_model = NestedModel::NoVolExposure;
  const auto nov = fit(sim.series, cfg);
  CHECK(nov.params.gamma == 0.0);
  CHECK(nov.boundary_flags[kGamma]);

  // nesting consistency: the full fit dominates every restriction
  cfg.nested_model = NestedModel::Full;
  const auto full = fit(sim.series, cfg);
  CHECK(full.loglik >= sym.loglik - 1e-6);
  CHECK(full.loglik >= gau.loglik - 1e-6);
  CHECK(full.loglik >= nov.loglik - 1e-6);

  // the stored loglik is exactly the filter's at the stored parameters
  CHECK(full.loglik == filter(full.params, sim.series).loglik);
}

TEST_CASE("lrt basics") {
  const auto sim = simulate(all_funds_params(), 600, 21);
  FitConfig cfg;
  cfg.n_multistarts = 2;
  cfg.seed = 5;

  const auto g = lrt(sim.series, NestedModel::Gaussian, cfg);
  CHECK(g.df == 2);
  CHECK(g.statistic >= 0.0);
  CHECK(g.p_value >= 0.0);
  CHECK(g.p_value <= 1.0);

  const auto s = lrt(sim.series, NestedModel::SymmetricTails, cfg);
  CHECK(s.df == 1);
  CHECK(s.statistic >= 0.0);

  CHECK_THROWS_AS(lrt(sim.series, NestedModel::Full, cfg),
                  std::invalid_argument);
}

TEST_CASE("bootstrap standard errors") {
  const auto sim = simulate(all_funds_params(), 300, 8);
  FitConfig cfg;
  cfg.n_multistarts = 1;
  cfg.seed = 2;
  cfg.bootstrap_se = true;
  cfg.bootstrap_replicates = 30;  // smoke-test size
  const auto res = fit(sim.series, cfg);
  CHECK(res.se_available);
  CHECK(res.std_errors[kAlpha] > 0.0);
  CHECK(res.std_errors[kBeta] > 0.0);
  // deterministic under the same seed
  const auto res2 = fit(sim.series, cfg);
  CHECK(res.std_errors[kAlpha] == res2.std_errors[kAlpha]);
}
