#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gaarch/data.hpp"
#include "gaarch/estimate.hpp"
#include "gaarch/model.hpp"
#include "table_fixtures.hpp"

using namespace gaarch;

namespace {

const std::string kCli = GAARCH_CLI_PATH;

struct Run {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return "/tmp/gaarch_cli_" + std::to_string(::getpid()) + "_" + name;
}

Run run_cli(const std::string& args) {
  const std::string out = tmp_path("stdout"), err = tmp_path("stderr");
  const std::string cmd = kCli + " " + args + " > " + out + " 2> " + err;
  const int status = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

// a fit-file on disk with the given parameters and no estimation noise
std::string write_params(const std::string& name, const GaarchParams& p) {
  FitResult r;
  r.params = p;
  r.label = name;
  const std::string path = tmp_path(name + ".json");
  save_fit(r, path);
  return path;
}

std::string simulated_csv(const std::string& name, std::size_t n,
                          std::uint64_t seed) {
  const auto sim = simulate(fixtures::all_funds().params(), n, seed);
  const std::string path = tmp_path(name + ".csv");
  save_csv(sim.series, path);
  return path;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("frobnicate").exit_code != 0);
  CHECK(run_cli("fit").exit_code != 0);             // missing csv argument
  CHECK(run_cli("simulate").exit_code != 0);        // missing params argument
  const auto r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("fit") != std::string::npos);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("simulate") {
  const auto params = write_params("sim_params", fixtures::all_funds().params());
  const std::string out1 = tmp_path("sim1.csv"), out2 = tmp_path("sim2.csv");

  auto r = run_cli("simulate " + params + " --n 120 --seed 5 --out " + out1);
  CHECK(r.exit_code == 0);
  const auto series = load_csv(out1);
  CHECK(series.size() == 120);
  CHECK_NOTHROW(series.validate());

  // byte-identical under the same seed
  CHECK(run_cli("simulate " + params + " --n 120 --seed 5 --out " + out2)
            .exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));
  // different under another seed
  CHECK(run_cli("simulate " + params + " --n 120 --seed 6 --out " + out2)
            .exit_code == 0);
  CHECK(slurp(out1) != slurp(out2));

  // a single period is allowed
  r = run_cli("simulate " + params + " --n 1 --seed 5 --out " + out2);
  CHECK(r.exit_code == 0);
  std::istringstream rows(slurp(out2));
  std::string line;
  int n_lines = 0;
  while (std::getline(rows, line)) ++n_lines;
  CHECK(n_lines == 2);  // header + one row

  std::remove(out1.c_str());
  std::remove(out2.c_str());
  std::remove(params.c_str());
}

TEST_CASE("simulate rejects nonstationary parameters") {
  auto p = fixtures::all_funds().params();
  p.beta = 0.99;  // persistence above 1
  const auto params = write_params("bad_params", p);
  const auto r = run_cli("simulate " + params + " --n 10 --out " +
                         tmp_path("never.csv"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("beta") != std::string::npos);
  std::remove(params.c_str());
}

TEST_CASE("fit then report round trip") {
  const auto csv = simulated_csv("fit_input", 400, 11);
  const std::string fit_out = tmp_path("fit_out.json");

  const auto r = run_cli("fit " + csv + " --seed 3 --multistarts 2 --out " +
                         fit_out);
  CHECK(r.exit_code == 0);
  // one header plus one data row, with the identity visible in the numbers
  const auto loaded = load_fit(fit_out);
  CHECK(loaded.converged);
  CHECK(loaded.n_obs == 400);
  CHECK_NOTHROW(loaded.params.validate(standardize(loaded.params.tails)));

  // the printed table satisfies alpha_hat = alpha + Gamma at display precision
  std::istringstream lines(r.out);
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  std::istringstream cells(row);
  std::string label;
  double a_hat, alpha, gamma;
  cells >> label >> a_hat >> alpha >> gamma;
  CHECK(std::fabs(a_hat - (alpha + gamma)) < 0.011);

  // report renders the stored fit identically to the fit-time table
  const auto rep = run_cli("report " + fit_out);
  CHECK(rep.exit_code == 0);
  CHECK(rep.out == r.out);

  // deterministic: same seed, same bytes on disk
  const std::string fit_out2 = tmp_path("fit_out2.json");
  CHECK(run_cli("fit " + csv + " --seed 3 --multistarts 2 --out " + fit_out2)
            .exit_code == 0);
  CHECK(slurp(fit_out) == slurp(fit_out2));

  std::remove(csv.c_str());
  std::remove(fit_out.c_str());
  std::remove(fit_out2.c_str());
}

TEST_CASE("fit warns below 100 observations") {
  const auto csv = simulated_csv("short_input", 80, 2);
  const auto r = run_cli("fit " + csv + " --seed 1 --multistarts 1");
  CHECK(r.err.find("100") != std::string::npos);
  std::remove(csv.c_str());
}

TEST_CASE("fit input errors") {
  CHECK(run_cli("fit /nonexistent/nope.csv").exit_code == 1);

  const std::string bad = tmp_path("gap.csv");
  {
    std::ofstream out(bad);
    out << "date,return\n2000-01,0.01\n2000-03,0.02\n";
  }
  const auto r = run_cli("fit " + bad);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("2000-02") != std::string::npos);
  std::remove(bad.c_str());

  const auto csv = simulated_csv("nested_bad", 120, 3);
  CHECK(run_cli("fit " + csv + " --nested bogus").exit_code == 1);
  std::remove(csv.c_str());
}

TEST_CASE("gaussian nested fit renders capped tails") {
  const auto csv = simulated_csv("gauss_input", 200, 9);
  const std::string fit_out = tmp_path("gauss_fit.json");
  const auto r = run_cli("fit " + csv +
                         " --nested gaussian --seed 1 --multistarts 1 --out " +
                         fit_out);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("200.") != std::string::npos);
  const auto loaded = load_fit(fit_out);
  CHECK(loaded.params.tails.nu_minus == 200.0);
  std::remove(csv.c_str());
  std::remove(fit_out.c_str());
}

TEST_CASE("report boundary cells and csv output") {
  FitResult r;
  r.params = fixtures::all_funds().params();
  r.params.eta_plus = 0.0;
  r.boundary_flags[kEtaPlus] = true;
  r.label = "bounded";
  const std::string path = tmp_path("bounded.json");
  save_fit(r, path);

  const std::string csv_out = tmp_path("report.csv");
  const auto rep = run_cli("report " + path + " --csv " + csv_out);
  CHECK(rep.exit_code == 0);
  // eta+ shows as "." in both renderings
  CHECK(rep.out.find(" . ") != std::string::npos);
  const auto csv_text = slurp(csv_out);
  CHECK(csv_text.find(",.,") != std::string::npos);
  CHECK(csv_text.find("bounded") != std::string::npos);

  CHECK(run_cli("report /nonexistent/fit.json").exit_code == 1);

  std::remove(path.c_str());
  std::remove(csv_out.c_str());
}

TEST_CASE("lrt subcommand") {
  const auto csv = simulated_csv("lrt_input", 200, 17);
  const auto r = run_cli("lrt " + csv + " --restriction gaussian --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("statistic") != std::string::npos);
  CHECK(r.out.find("df:") != std::string::npos);
  CHECK(r.out.find("p_value") != std::string::npos);

  CHECK(run_cli("lrt " + csv + " --restriction bogus").exit_code == 1);
  std::remove(csv.c_str());
}
