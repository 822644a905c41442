#pragma once

#include <string>
#include <vector>

#include "gaarch/estimate.hpp"

namespace gaarch {

/// One table row in the annualized reporting convention:
/// return columns in annualized percentage points, coefficients raw.
struct ReportRow {
  std::string label;
  double alpha_risk_adj;
  double alpha_true;
  double gamma_comp;
  double sigma0;  // annualized %
  double eta_minus;
  double eta_plus;
  double beta;
  double nu_minus;
  double nu_plus;
  bool eta_minus_boundary;
  bool eta_plus_boundary;
  bool nu_minus_capped;
  bool nu_plus_capped;
};

ReportRow make_report_row(const FitResult& fit);

/// Human-readable fixed-width table.
std::string render_text(const std::vector<ReportRow>& rows);

/// Machine-readable CSV with the same columns.
std::string render_csv(const std::vector<ReportRow>& rows);

}  // namespace gaarch
