#include "gaarch/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gaarch {

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string eta_cell(double v, bool boundary) {
  return boundary ? "." : fmt2(v);
}

std::string nu_cell(double v, bool capped) {
  return capped ? "200." : fmt2(v);
}

}  // namespace

ReportRow make_report_row(const FitResult& fit) {
  const Attribution attr = attribute(fit.params);
  ReportRow row;
  row.label = fit.label;
  row.alpha_risk_adj = attr.alpha_risk_adj;
  row.alpha_true = attr.alpha_true;
  row.gamma_comp = attr.gamma_comp;
  row.sigma0 = 100.0 * std::sqrt(12.0) * fit.params.sigma0;
  row.eta_minus = fit.params.eta_minus;
  row.eta_plus = fit.params.eta_plus;
  row.beta = fit.params.beta;
  row.nu_minus = fit.params.tails.nu_minus;
  row.nu_plus = fit.params.tails.nu_plus;
  row.eta_minus_boundary = fit.boundary_flags[kEtaMinus];
  row.eta_plus_boundary = fit.boundary_flags[kEtaPlus];
  row.nu_minus_capped =
      fit.boundary_flags[kNuMinus] && fit.params.tails.nu_minus == 200.0;
  row.nu_plus_capped =
      fit.boundary_flags[kNuPlus] && fit.params.tails.nu_plus == 200.0;
  return row;
}

std::string render_text(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line),
                "%-28s %8s %8s %8s %8s %6s %6s %6s %8s %8s\n", "Index",
                "a_hat", "alpha", "Gamma", "sigma0", "eta-", "eta+", "beta",
                "nu-", "nu+");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line),
                  "%-28s %8s %8s %8s %8s %6s %6s %6s %8s %8s\n",
                  r.label.c_str(), fmt2(r.alpha_risk_adj).c_str(),
                  fmt2(r.alpha_true).c_str(), fmt2(r.gamma_comp).c_str(),
                  fmt2(r.sigma0).c_str(),
                  eta_cell(r.eta_minus, r.eta_minus_boundary).c_str(),
                  eta_cell(r.eta_plus, r.eta_plus_boundary).c_str(),
                  fmt2(r.beta).c_str(),
                  nu_cell(r.nu_minus, r.nu_minus_capped).c_str(),
                  nu_cell(r.nu_plus, r.nu_plus_capped).c_str());
    out << line;
  }
  return out.str();
}

std::string render_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "label,alpha_risk_adj,alpha,gamma_comp,sigma0,eta_minus,eta_plus,"
         "beta,nu_minus,nu_plus\n";
  for (const auto& r : rows) {
    out << r.label << ',' << fmt2(r.alpha_risk_adj) << ','
        << fmt2(r.alpha_true) << ',' << fmt2(r.gamma_comp) << ','
        << fmt2(r.sigma0) << ',' << eta_cell(r.eta_minus, r.eta_minus_boundary)
        << ',' << eta_cell(r.eta_plus, r.eta_plus_boundary) << ','
        << fmt2(r.beta) << ',' << nu_cell(r.nu_minus, r.nu_minus_capped) << ','
        << nu_cell(r.nu_plus, r.nu_plus_capped) << '\n';
  }
  return out.str();
}

}  // namespace gaarch
