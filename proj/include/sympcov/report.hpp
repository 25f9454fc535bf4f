#pragma once

#include <string>
#include <vector>

#include "sympcov/covariance.hpp"
#include "sympcov/quantum.hpp"

namespace sympcov {

/// One camel-bound line inside an analysis report.
struct CamelRow {
  std::vector<int> modes;  ///< 1-based mode indices of the coordinate subspace
  double volume;
  double bound;
  double ratio;
  bool satisfied;
};

/// Aggregated analysis of one covariance matrix. When the matrix is not
/// positive definite only the fields that remain computable are populated
/// (Hermitian-route validity, per-mode checks) and `positive_definite` is
/// false; spectrum-derived fields are left empty.
struct AnalysisReport {
  int n = 0;
  double hbar = 1.0;
  bool positive_definite = false;
  std::vector<double> spectrum;
  bool valid = false;
  bool valid_hermitian = false;
  bool valid_spectrum = false;
  double nu_min = 0.0;
  double margin = 0.0;
  bool marginal = false;
  std::vector<bool> rs_per_mode;
  double gromov_width = 0.0;
  std::vector<double> delta_charpoly;
  std::vector<double> delta_spectrum;
  std::vector<double> delta_minors;
  bool minors_skipped = false;
  std::vector<CamelRow> camel;
};

/// Modes above which the report omits the brute-force minors cross-check.
inline constexpr int kReportMinorsMaxModes = 6;

/// Full analysis: validity (both routes), spectrum, Gromov width, universal
/// invariants by every feasible route, camel checks on the n single-mode
/// coordinate planes. Indefinite input degrades gracefully as described on
/// AnalysisReport.
AnalysisReport analyze(const CovarianceMatrix& sigma);

/// Deterministic serialization: same report, same bytes. Numbers round-trip
/// exactly through parse_report.
std::string report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const std::string& text);

/// Human-readable rendering. `banner` prepends a tool/version line.
std::string report_to_text(const AnalysisReport& r, bool banner);

}  // namespace sympcov
