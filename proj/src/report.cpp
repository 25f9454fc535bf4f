#include "sympcov/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sympcov/invariants.hpp"
#include "sympcov/projection.hpp"
#include "sympcov/version.hpp"

namespace sympcov {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ordered_json bool_list(const std::vector<bool>& v) {
  ordered_json arr = ordered_json::array();
  for (const bool b : v) arr.push_back(b);
  return arr;
}

std::vector<bool> to_bool_vector(const ordered_json& arr) {
  std::vector<bool> out;
  for (const auto& item : arr) out.push_back(item.get<bool>());
  return out;
}

}  // namespace

AnalysisReport analyze(const CovarianceMatrix& sigma) {
  AnalysisReport r;
  r.n = sigma.modes();
  r.hbar = sigma.hbar();
  r.valid_hermitian = is_quantum_hermitian(sigma);
  r.rs_per_mode = robertson_schrodinger(sigma);

  SymplecticSpectrum spectrum;
  try {
    spectrum = symplectic_eigenvalues(sigma);
  } catch (const NotPositiveDefiniteError&) {
    r.positive_definite = false;
    r.valid = false;
    return r;
  }
  r.positive_definite = true;
  r.spectrum = spectrum.nu;

  const auto validity = quantum_validity_report(sigma);
  r.valid_spectrum = validity.valid_spectrum;
  r.nu_min = validity.nu_min;
  r.margin = validity.margin;
  r.marginal = validity.marginal;
  r.gromov_width = validity.gromov_width;
  r.valid = r.valid_hermitian && r.valid_spectrum;

  r.delta_charpoly = delta_via_charpoly(sigma).delta;
  r.delta_spectrum = delta_via_spectrum(spectrum).delta;
  if (r.n <= kReportMinorsMaxModes) {
    r.delta_minors = delta_via_minors_all(sigma).delta;
    r.minors_skipped = false;
  } else {
    r.minors_skipped = true;
  }

  for (int j = 1; j <= r.n; ++j) {
    const auto f = SymplecticSubspace::coordinate({j}, r.n);
    const auto check = check_camel(sigma, f);
    r.camel.push_back(CamelRow{{j}, check.volume, check.bound, check.ratio, check.satisfied});
  }
  return r;
}

std::string report_to_json(const AnalysisReport& r) {
  ordered_json doc;
  doc["n"] = r.n;
  doc["hbar"] = r.hbar;
  doc["positive_definite"] = r.positive_definite;
  doc["spectrum"] = r.spectrum;
  ordered_json validity;
  validity["valid"] = r.valid;
  validity["hermitian_route"] = r.valid_hermitian;
  validity["spectrum_route"] = r.valid_spectrum;
  if (r.positive_definite) {
    validity["nu_min"] = r.nu_min;
    validity["margin"] = r.margin;
    validity["marginal"] = r.marginal;
  }
  validity["robertson_schrodinger"] = bool_list(r.rs_per_mode);
  doc["validity"] = std::move(validity);
  if (r.positive_definite) {
    doc["gromov_width"] = r.gromov_width;
    ordered_json invariants;
    invariants["charpoly"] = r.delta_charpoly;
    invariants["spectrum"] = r.delta_spectrum;
    invariants["minors_skipped"] = r.minors_skipped;
    if (!r.minors_skipped) invariants["minors"] = r.delta_minors;
    doc["invariants"] = std::move(invariants);
    ordered_json camel = ordered_json::array();
    for (const auto& row : r.camel) {
      ordered_json entry;
      entry["modes"] = row.modes;
      entry["volume"] = row.volume;
      entry["bound"] = row.bound;
      entry["ratio"] = row.ratio;
      entry["satisfied"] = row.satisfied;
      camel.push_back(std::move(entry));
    }
    doc["camel"] = std::move(camel);
  }
  return doc.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  AnalysisReport r;
  r.n = doc.at("n").get<int>();
  r.hbar = doc.at("hbar").get<double>();
  r.positive_definite = doc.at("positive_definite").get<bool>();
  r.spectrum = doc.at("spectrum").get<std::vector<double>>();
  const auto& validity = doc.at("validity");
  r.valid = validity.at("valid").get<bool>();
  r.valid_hermitian = validity.at("hermitian_route").get<bool>();
  r.valid_spectrum = validity.at("spectrum_route").get<bool>();
  if (r.positive_definite) {
    r.nu_min = validity.at("nu_min").get<double>();
    r.margin = validity.at("margin").get<double>();
    r.marginal = validity.at("marginal").get<bool>();
  }
  r.rs_per_mode = to_bool_vector(validity.at("robertson_schrodinger"));
  if (r.positive_definite) {
    r.gromov_width = doc.at("gromov_width").get<double>();
    const auto& invariants = doc.at("invariants");
    r.delta_charpoly = invariants.at("charpoly").get<std::vector<double>>();
    r.delta_spectrum = invariants.at("spectrum").get<std::vector<double>>();
    r.minors_skipped = invariants.at("minors_skipped").get<bool>();
    if (!r.minors_skipped) {
      r.delta_minors = invariants.at("minors").get<std::vector<double>>();
    }
    for (const auto& entry : doc.at("camel")) {
      CamelRow row;
      row.modes = entry.at("modes").get<std::vector<int>>();
      row.volume = entry.at("volume").get<double>();
      row.bound = entry.at("bound").get<double>();
      row.ratio = entry.at("ratio").get<double>();
      row.satisfied = entry.at("satisfied").get<bool>();
      r.camel.push_back(std::move(row));
    }
  }
  return r;
}

std::string report_to_text(const AnalysisReport& r, bool banner) {
  std::ostringstream out;
  if (banner) {
    out << kToolName << " " << kVersion << "\n";
  }
  out << "modes:              " << r.n << "\n";
  out << "hbar:               " << format_double(r.hbar) << "\n";
  if (!r.positive_definite) {
    out << "positive definite:  no\n";
    out << "quantum valid:      no (not a state)\n";
    out << "hermitian route:    " << (r.valid_hermitian ? "valid" : "invalid") << "\n";
  } else {
    out << "symplectic spectrum:";
    for (const double nu : r.spectrum) out << " " << format_double(nu);
    out << "\n";
    out << "quantum valid:      " << (r.valid ? "yes" : "no");
    if (r.marginal) out << " (marginal)";
    out << "\n";
    out << "  hermitian route:  " << (r.valid_hermitian ? "valid" : "invalid") << "\n";
    out << "  spectrum route:   " << (r.valid_spectrum ? "valid" : "invalid") << "\n";
    out << "  nu_min:           " << format_double(r.nu_min)
        << "   margin: " << format_double(r.margin) << "\n";
    out << "gromov width:       " << format_double(r.gromov_width) << "\n";
  }
  out << "robertson-schrodinger per mode:";
  for (std::size_t j = 0; j < r.rs_per_mode.size(); ++j) {
    out << " " << (j + 1) << ":" << (r.rs_per_mode[j] ? "ok" : "violated");
  }
  out << "\n";
  if (r.positive_definite) {
    out << "universal invariants (j: charpoly / spectrum / minors):\n";
    for (std::size_t j = 0; j < r.delta_charpoly.size(); ++j) {
      out << "  " << j << ": " << format_double(r.delta_charpoly[j]) << " / "
          << format_double(r.delta_spectrum[j]) << " / ";
      if (r.minors_skipped) {
        out << "skipped";
      } else {
        out << format_double(r.delta_minors[j]);
      }
      out << "\n";
    }
    out << "camel checks (conjugate planes):\n";
    for (const auto& row : r.camel) {
      out << "  mode " << row.modes.front() << ": volume " << format_double(row.volume)
          << ", bound " << format_double(row.bound) << ", ratio " << format_double(row.ratio)
          << ", " << (row.satisfied ? "ok" : "below bound") << "\n";
    }
  }
  return out.str();
}

}  // namespace sympcov
