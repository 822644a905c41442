#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaarch/data.hpp"
#include "gaarch/estimate.hpp"
#include "gaarch/model.hpp"
#include "gaarch/report.hpp"

namespace {

struct CsvFlags {
  std::string date_col = "date";
  std::string value_col;
  bool percent = false;
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
  cmd->add_flag("--percent", flags.percent,
                "values are in percent, divide by 100");
  cmd->add_option("--date-col", flags.date_col, "date column name");
  cmd->add_option("--value-col", flags.value_col,
                  "value column name (default: first non-date column)");
}

gaarch::ReturnSeries load_series(const std::string& path,
                                 const CsvFlags& flags) {
  gaarch::CsvOptions opt;
  opt.date_column = flags.date_col;
  opt.value_column = flags.value_col;
  opt.percent = flags.percent;
  auto series = gaarch::load_csv(path, opt);
  series.validate();
  return series;
}

int cmd_fit(const std::string& csv_path, const CsvFlags& csv_flags,
            const gaarch::FitConfig& config, const std::string& out_path) {
  const auto series = load_series(csv_path, csv_flags);
  if (series.size() < 100)
    std::cerr << "warning: only " << series.size()
              << " observations; estimates may be unstable below 100\n";

  const auto result = gaarch::fit(series, config);
  if (!out_path.empty()) gaarch::save_fit(result, out_path);
  std::cout << gaarch::render_text({gaarch::make_report_row(result)});
  if (!result.converged) {
    std::cerr << "warning: optimizer did not converge within the iteration "
                 "budget\n";
    return 2;
  }
  return 0;
}

int cmd_simulate(const std::string& params_path, std::size_t n,
                 std::uint64_t seed, const std::string& out_path) {
  const auto loaded = gaarch::load_fit(params_path);
  const gaarch::GaarchParams& params = loaded.params;
  const auto std_tails = gaarch::standardize(params.tails);
  const double persist = params.persistence(std_tails);
  if (!(persist < 1.0)) {
    std::cerr << "error: nonstationary parameters: beta + eta_minus*m2_minus "
                 "+ eta_plus*m2_plus = "
              << persist << " >= 1\n";
    return 1;
  }
  const auto sim = gaarch::simulate(params, std_tails, n, seed);
  gaarch::save_csv(sim.series, out_path);
  std::cout << "wrote " << n << " periods to " << out_path << "\n";
  return 0;
}

int cmd_lrt(const std::string& csv_path, const CsvFlags& csv_flags,
            const std::string& restriction, const gaarch::FitConfig& config) {
  const auto series = load_series(csv_path, csv_flags);
  const auto restricted = gaarch::nested_model_from_name(restriction);
  const auto result = gaarch::lrt(series, restricted, config);
  std::cout << "restriction: " << restriction << "\n"
            << "statistic:   " << result.statistic << "\n"
            << "df:          " << result.df << "\n"
            << "p_value:     " << result.p_value << "\n";
  return 0;
}

int cmd_report(const std::vector<std::string>& fit_paths,
               const std::string& csv_out) {
  std::vector<gaarch::ReportRow> rows;
  for (const auto& path : fit_paths) {
    try {
      rows.push_back(gaarch::make_report_row(gaarch::load_fit(path)));
    } catch (const std::exception& e) {
      std::cerr << "error reading '" << path << "': " << e.what() << "\n";
      return 1;
    }
  }
  std::cout << gaarch::render_text(rows);
  if (!csv_out.empty()) {
    std::ofstream out(csv_out);
    if (!out) {
      std::cerr << "error: cannot write '" << csv_out << "'\n";
      return 1;
    }
    out << gaarch::render_csv(rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GAARCH(1,1) strategy-return model: fit, simulate, test, report"};
  app.require_subcommand(1);

  // fit
  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit of a CSV series");
  std::string fit_csv, fit_out, fit_nested = "full";
  CsvFlags fit_flags;
  gaarch::FitConfig config;
  fit->add_option("csv", fit_csv, "input CSV")->required();
  add_csv_flags(fit, fit_flags);
  fit->add_option("--seed", config.seed, "multistart seed");
  fit->add_option("--multistarts", config.n_multistarts, "number of starts");
  fit->add_option("--nested", fit_nested,
                  "model: full|symmetric_tails|gaussian|no_vol_exposure");
  fit->add_option("--out", fit_out, "fit-file output path");
  fit->add_flag("--bootstrap-se", config.bootstrap_se,
                "moving-block bootstrap standard errors");

  // simulate
  auto* sim = app.add_subcommand("simulate", "forward simulation to CSV");
  std::string sim_params, sim_out = "simulated.csv";
  std::size_t sim_n = 120;
  std::uint64_t sim_seed = 0;
  sim->add_option("params", sim_params, "parameter file (JSON)")->required();
  sim->add_option("--n", sim_n, "number of months");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--out", sim_out, "output CSV path");

  // lrt
  auto* lrt = app.add_subcommand("lrt", "likelihood-ratio test of a restriction");
  std::string lrt_csv, lrt_restriction = "gaussian";
  CsvFlags lrt_flags;
  lrt->add_option("csv", lrt_csv, "input CSV")->required();
  add_csv_flags(lrt, lrt_flags);
  lrt->add_option("--restriction", lrt_restriction,
                  "symmetric_tails|gaussian|no_vol_exposure");
  lrt->add_option("--seed", config.seed, "multistart seed");

  // report
  auto* report = app.add_subcommand("report", "table of one or more fit files");
  std::vector<std::string> report_files;
  std::string report_csv;
  report->add_option("fits", report_files, "fit files")->required();
  report->add_option("--csv", report_csv, "also write CSV to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      config.nested_model = gaarch::nested_model_from_name(fit_nested);
      return cmd_fit(fit_csv, fit_flags, config, fit_out);
    }
    if (sim->parsed()) return cmd_simulate(sim_params, sim_n, sim_seed, sim_out);
    if (lrt->parsed()) return cmd_lrt(lrt_csv, lrt_flags, lrt_restriction, config);
    if (report->parsed()) return cmd_report(report_files, report_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
