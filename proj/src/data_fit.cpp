#include <fstream>
#include <stdexcept>

#include "gaarch/data.hpp"
#include "gaarch/estimate.hpp"
#include "json.hpp"

namespace gaarch {

namespace {

using nlohmann::json;

const char* const kParamKeys[kNumParams] = {
    "alpha",    "gamma",    "sigma0", "eta_minus",
    "eta_plus", "beta",     "nu_minus", "nu_plus"};

json params_to_json(const GaarchParams& p) {
  return json{{"alpha", p.alpha},
              {"gamma", p.gamma},
              {"sigma0", p.sigma0},
              {"eta_minus", p.eta_minus},
              {"eta_plus", p.eta_plus},
              {"beta", p.beta},
              {"nu_minus", p.tails.nu_minus},
              {"nu_plus", p.tails.nu_plus}};
}

GaarchParams params_from_json(const json& j) {
  GaarchParams p;
  p.alpha = j.at("alpha").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.sigma0 = j.at("sigma0").get<double>();
  p.eta_minus = j.at("eta_minus").get<double>();
  p.eta_plus = j.at("eta_plus").get<double>();
  p.beta = j.at("beta").get<double>();
  p.tails.nu_minus = j.at("nu_minus").get<double>();
  p.tails.nu_plus = j.at("nu_plus").get<double>();
  return p;
}

json nullable(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double from_nullable(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

void save_fit(const FitResult& result, const std::string& path) {
  json j = params_to_json(result.params);
  json est;
  est["loglik"] = result.loglik;
  est["n_obs"] = result.n_obs;
  est["converged"] = result.converged;
  est["se_available"] = result.se_available;
  for (int k = 0; k < kNumParams; ++k) {
    est["std_errors"][kParamKeys[k]] = nullable(result.std_errors[k]);
    est["t_stats"][kParamKeys[k]] = nullable(result.t_stats[k]);
    est["boundary_flags"][kParamKeys[k]] = result.boundary_flags[k];
  }
  est["config"] = {{"max_iterations", result.config.max_iterations},
                   {"tolerance", result.config.tolerance},
                   {"n_multistarts", result.config.n_multistarts},
                   {"two_step_init", result.config.two_step_init},
                   {"nested_model", nested_model_name(result.config.nested_model)},
                   {"seed", result.config.seed},
                   {"bootstrap_se", result.config.bootstrap_se}};
  j["estimation"] = est;
  j["label"] = result.label;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

FitResult load_fit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse '" + path + "': " + e.what());
  }

  FitResult result;
  result.params = params_from_json(j);
  result.label = j.value("label", std::string{});
  if (j.contains("estimation")) {
    const json& est = j.at("estimation");
    result.loglik = est.value("loglik", 0.0);
    result.n_obs = est.value("n_obs", std::size_t{0});
    result.converged = est.value("converged", false);
    result.se_available = est.value("se_available", false);
    for (int k = 0; k < kNumParams; ++k) {
      if (est.contains("std_errors"))
        result.std_errors[k] = from_nullable(est["std_errors"][kParamKeys[k]]);
      if (est.contains("t_stats"))
        result.t_stats[k] = from_nullable(est["t_stats"][kParamKeys[k]]);
      if (est.contains("boundary_flags"))
        result.boundary_flags[k] =
            est["boundary_flags"][kParamKeys[k]].get<bool>();
    }
    if (est.contains("config")) {
      const json& c = est.at("config");
      result.config.max_iterations = c.value("max_iterations", 4000);
      result.config.tolerance = c.value("tolerance", 1e-9);
      result.config.n_multistarts = c.value("n_multistarts", 5);
      result.config.two_step_init = c.value("two_step_init", true);
      result.config.nested_model =
          nested_model_from_name(c.value("nested_model", std::string("full")));
      result.config.seed = c.value("seed", std::uint64_t{0});
      result.config.bootstrap_se = c.value("bootstrap_se", false);
    }
  }
  return result;
}

}  // namespace gaarch
