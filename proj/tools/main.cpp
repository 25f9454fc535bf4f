#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sympcov/invariants.hpp"
#include "sympcov/io.hpp"
#include "sympcov/projection.hpp"
#include "sympcov/report.hpp"
#include "sympcov/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sympcov;

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInconsistent = 3;

constexpr double kRouteDeviationLimit = 1e-6;
constexpr double kRatioSlack = 1e-9;

struct GlobalOptions {
  std::optional<double> hbar;
  std::optional<Ordering> ordering;
  double symmetry_tol = 1e-9;
  std::uint64_t seed = 1;
  bool structured = false;
  bool banner = true;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_banner(const GlobalOptions& g) {
  if (!g.structured && g.banner) {
    std::cout << kToolName << " " << kVersion << "\n";
  }
}

ordered_json envelope(const std::string& command) {
  ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["command"] = command;
  return doc;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

InputDocument load(const std::string& path, const GlobalOptions& g) {
  ParseOptions opts;
  opts.hbar_flag = g.hbar;
  opts.ordering_flag = g.ordering;
  opts.symmetry_tol = g.symmetry_tol;
  return parse_input_file(path, opts);
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw ValidationError("index list entry '" + token + "' is not an integer");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_check(const std::string& input, const GlobalOptions& g) {
  const auto doc = load(input, g);
  const CovarianceMatrix sigma = to_covariance(doc);
  const AnalysisReport report = analyze(sigma);
  if (g.structured) {
    ordered_json out = envelope("check");
    out["report"] = ordered_json::parse(report_to_json(report));
    emit(out);
  } else {
    std::cout << report_to_text(report, g.banner);
  }
  return report.valid ? kExitValid : kExitInvalid;
}

int cmd_spectrum(const std::string& input, const GlobalOptions& g) {
  const auto doc = load(input, g);
  const CovarianceMatrix sigma = to_covariance(doc);
  const auto spectrum = symplectic_eigenvalues(sigma);
  if (g.structured) {
    ordered_json out = envelope("spectrum");
    out["n"] = sigma.modes();
    out["hbar"] = sigma.hbar();
    out["spectrum"] = spectrum.nu;
    emit(out);
  } else {
    print_banner(g);
    std::cout << "symplectic spectrum:";
    for (const double nu : spectrum.nu) std::cout << " " << fmt(nu);
    std::cout << "\n";
  }
  return kExitValid;
}

int cmd_williamson(const std::string& input, const GlobalOptions& g) {
  const auto doc = load(input, g);
  const CovarianceMatrix sigma = to_covariance(doc);
  const auto decomposition = williamson(sigma);
  if (g.structured) {
    ordered_json out = envelope("williamson");
    out["n"] = sigma.modes();
    out["lambda"] = decomposition.lambda;
    out["residual"] = decomposition.residual;
    ordered_json s_rows = ordered_json::array();
    const Mat& s = decomposition.s.matrix();
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index j = 0; j < s.cols(); ++j) row.push_back(s(i, j));
      s_rows.push_back(std::move(row));
    }
    out["s"] = std::move(s_rows);
    emit(out);
  } else {
    print_banner(g);
    std::cout << "normal form lambda:";
    for (const double v : decomposition.lambda) std::cout << " " << fmt(v);
    std::cout << "\nresidual: " << fmt(decomposition.residual) << "\n";
    std::cout << "s (" << decomposition.s.dim() << "x" << decomposition.s.dim()
              << ", congruence matrix):\n";
    const Mat& s = decomposition.s.matrix();
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      std::cout << " ";
      for (Eigen::Index j = 0; j < s.cols(); ++j) std::cout << " " << fmt(s(i, j));
      std::cout << "\n";
    }
  }
  return kExitValid;
}

struct ProjectRow {
  std::string label;
  bool certified;
  double volume;
  double bound;
  double ratio;
  bool satisfied;
};

int cmd_project(const std::string& input, const GlobalOptions& g, const std::string& indices,
                const std::vector<std::uint64_t>& random_spec, const std::string& axes) {
  const auto doc = load(input, g);
  const CovarianceMatrix sigma = to_covariance(doc);
  const int n = sigma.modes();

  std::vector<std::pair<std::string, SymplecticSubspace>> subspaces;
  if (!indices.empty()) {
    const auto modes = parse_index_list(indices);
    std::string label = "modes {" + indices + "}";
    subspaces.emplace_back(label, SymplecticSubspace::coordinate(modes, n));
  } else if (!random_spec.empty()) {
    if (random_spec.size() != 3) {
      throw ValidationError("--random expects three values: k count seed");
    }
    const int k = static_cast<int>(random_spec[0]);
    const int count = static_cast<int>(random_spec[1]);
    const std::uint64_t seed = random_spec[2];
    if (count < 1) throw ValidationError("--random count must be >= 1");
    for (int i = 0; i < count; ++i) {
      subspaces.emplace_back("random k=" + std::to_string(k) + " #" + std::to_string(i + 1),
                             random_symplectic_subspace(n, k, mix_seed(seed, i)));
    }
  } else if (!axes.empty()) {
    const auto axis_list = parse_index_list(axes);
    if (axis_list.size() % 2 != 0) {
      throw ValidationError("--axes needs an even number of axes (shadow volumes live on "
                            "even-dimensional subspaces)");
    }
    Mat span = Mat::Zero(2 * n, static_cast<int>(axis_list.size()));
    for (std::size_t i = 0; i < axis_list.size(); ++i) {
      if (axis_list[i] < 1 || axis_list[i] > 2 * n) {
        throw ValidationError("axis index " + std::to_string(axis_list[i]) + " outside 1.." +
                              std::to_string(2 * n));
      }
      span(axis_list[i] - 1, static_cast<int>(i)) = 1.0;
    }
    subspaces.emplace_back("axes {" + axes + "}", SymplecticSubspace::any_subspace(span));
  } else {
    for (int j = 1; j <= n; ++j) {
      subspaces.emplace_back("mode " + std::to_string(j),
                             SymplecticSubspace::coordinate({j}, n));
    }
  }

  bool quantum_valid = false;
  try {
    quantum_valid = is_quantum_spectrum(sigma) && is_quantum_hermitian(sigma);
  } catch (const NotPositiveDefiniteError&) {
    quantum_valid = false;
  }

  std::vector<ProjectRow> rows;
  bool alarm = false;
  for (const auto& [label, f] : subspaces) {
    const auto check = check_camel(sigma, f);
    rows.push_back(
        ProjectRow{label, f.certified(), check.volume, check.bound, check.ratio, check.satisfied});
    if (quantum_valid && f.certified() && check.ratio < 1.0 - kRatioSlack) {
      alarm = true;
    }
  }

  if (g.structured) {
    ordered_json out = envelope("project");
    out["n"] = n;
    out["hbar"] = sigma.hbar();
    out["quantum_valid"] = quantum_valid;
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json entry;
      entry["subspace"] = row.label;
      entry["certified"] = row.certified;
      entry["volume"] = row.volume;
      entry["bound"] = row.bound;
      entry["ratio"] = row.ratio;
      entry["satisfied"] = row.satisfied;
      arr.push_back(std::move(entry));
    }
    out["shadows"] = std::move(arr);
    out["alarm"] = alarm;
    emit(out);
  } else {
    print_banner(g);
    std::cout << "input is " << (quantum_valid ? "" : "not ") << "a quantum state\n";
    for (const auto& row : rows) {
      std::cout << row.label << ": volume " << fmt(row.volume) << ", bound " << fmt(row.bound)
                << ", ratio " << fmt(row.ratio) << (row.certified ? "" : " (non-symplectic)")
                << ", " << (row.satisfied ? "ok" : "below bound") << "\n";
    }
    if (alarm) {
      std::cout << "alarm: a valid state fell below the bound on a symplectic subspace\n";
    }
  }
  return alarm ? kExitInconsistent : kExitValid;
}

int cmd_camel(int n, int k, int trials, double spread, const GlobalOptions& g) {
  const auto result = nonsqueezing_campaign(n, k, trials, g.seed, spread);
  if (g.structured) {
    ordered_json out = envelope("camel");
    out["n"] = n;
    out["k"] = k;
    out["trials"] = result.trials;
    out["seed"] = g.seed;
    out["spread"] = spread;
    out["min_ratio"] = result.min_ratio;
    out["max_ratio"] = result.max_ratio;
    out["violations"] = result.violations;
    emit(out);
  } else {
    print_banner(g);
    std::cout << "non-squeezing campaign: n=" << n << " k=" << k << " trials=" << result.trials
              << " seed=" << g.seed << " spread=" << fmt(spread) << "\n";
    std::cout << "min ratio: " << fmt(result.min_ratio) << "\n";
    std::cout << "max ratio: " << fmt(result.max_ratio) << "\n";
    std::cout << "violations: " << result.violations << "\n";
  }
  return result.violations == 0 ? kExitValid : kExitInconsistent;
}

int cmd_invariants(const std::string& input, const GlobalOptions& g) {
  const auto doc = load(input, g);
  const CovarianceMatrix sigma = to_covariance(doc);
  const int n = sigma.modes();

  const auto charpoly = delta_via_charpoly(sigma);
  const auto spectrum = delta_via_spectrum(symplectic_eigenvalues(sigma));
  const bool minors_feasible = n <= kReportMinorsMaxModes;
  UniversalInvariants minors{std::vector<double>(), DeltaRoute::kMinors};
  if (minors_feasible) minors = delta_via_minors_all(sigma);

  double worst = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double a = charpoly.delta[j];
    const double b = spectrum.delta[j];
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    worst = std::max(worst, std::abs(a - b) / scale);
    if (minors_feasible) {
      const double c = minors.delta[j];
      worst = std::max(worst, std::abs(a - c) / std::max({1.0, std::abs(a), std::abs(c)}));
    }
  }

  if (g.structured) {
    ordered_json out = envelope("invariants");
    out["n"] = n;
    out["charpoly"] = charpoly.delta;
    out["spectrum"] = spectrum.delta;
    out["minors_skipped"] = !minors_feasible;
    if (minors_feasible) out["minors"] = minors.delta;
    out["max_route_deviation"] = worst;
    emit(out);
  } else {
    print_banner(g);
    std::cout << "universal invariants (j: charpoly / spectrum / minors):\n";
    for (int j = 0; j <= n; ++j) {
      std::cout << "  " << j << ": " << fmt(charpoly.delta[j]) << " / " << fmt(spectrum.delta[j])
                << " / ";
      if (minors_feasible) {
        std::cout << fmt(minors.delta[j]);
      } else {
        std::cout << "skipped";
      }
      std::cout << "\n";
    }
    std::cout << "max route deviation: " << fmt(worst) << "\n";
  }
  return worst > kRouteDeviationLimit ? kExitInconsistent : kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kVersion +
               " - symplectic analysis of covariance matrices"};
  app.require_subcommand(1);

  GlobalOptions g;
  double hbar_flag = 1.0;
  std::string ordering_flag;
  std::string format_flag = "text";
  bool no_banner = false;

  app.add_option("--hbar", hbar_flag, "Value of hbar (document field wins over the default)");
  app.add_option("--ordering", ordering_flag, "Coordinate ordering of the input")
      ->check(CLI::IsMember({"block-xp", "interleaved"}));
  app.add_option("--tol", g.symmetry_tol, "Relative symmetry tolerance for input matrices");
  app.add_option("--seed", g.seed, "Seed for randomized subcommands");
  app.add_option("--format", format_flag, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--no-banner", no_banner, "Suppress the tool/version line in text output");

  std::string check_input, spectrum_input, williamson_input, project_input, invariants_input;
  auto* check = app.add_subcommand("check", "Quantum validity analysis");
  check->add_option("input", check_input, "Input file or '-'")->required();
  auto* spectrum = app.add_subcommand("spectrum", "Symplectic spectrum");
  spectrum->add_option("input", spectrum_input, "Input file or '-'")->required();
  auto* williamson_cmd = app.add_subcommand("williamson", "Normal form congruence");
  williamson_cmd->add_option("input", williamson_input, "Input file or '-'")->required();

  auto* project = app.add_subcommand("project", "Shadow volumes on subspaces");
  project->add_option("input", project_input, "Input file or '-'")->required();
  std::string project_indices, project_axes;
  std::vector<std::uint64_t> project_random;
  project->add_option("--indices", project_indices,
                      "Comma-separated 1-based mode indices of a coordinate subspace");
  project->add_option("--random", project_random, "k count seed: random symplectic subspaces")
      ->expected(3);
  project->add_option("--axes", project_axes,
                      "Comma-separated phase-space axes (1..2n) spanning any subspace; "
                      "no volume bound applies when it is not symplectic");

  auto* camel = app.add_subcommand("camel", "Randomized non-squeezing campaign");
  int camel_n = 1, camel_k = 1, camel_trials = 1000;
  double camel_spread = 1.0;
  camel->add_option("--n", camel_n, "Mode count")->required();
  camel->add_option("--k", camel_k, "Subspace mode count")->required();
  camel->add_option("--trials", camel_trials, "Number of random matrices");
  camel->add_option("--spread", camel_spread, "Entry spread of the random generator");

  auto* invariants = app.add_subcommand("invariants", "Universal invariants by all routes");
  invariants->add_option("input", invariants_input, "Input file or '-'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitValid : kExitInputError;
  }

  if (app.count("--hbar") > 0) g.hbar = hbar_flag;
  if (!ordering_flag.empty()) {
    g.ordering = ordering_flag == "interleaved" ? Ordering::kInterleaved : Ordering::kBlockXP;
  }
  g.structured = format_flag == "structured";
  g.banner = !no_banner;

  try {
    if (check->parsed()) return cmd_check(check_input, g);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_input, g);
    if (williamson_cmd->parsed()) return cmd_williamson(williamson_input, g);
    if (project->parsed()) {
      const int given = (!project_indices.empty() ? 1 : 0) + (!project_random.empty() ? 1 : 0) +
                        (!project_axes.empty() ? 1 : 0);
      if (given > 1) {
        throw ValidationError("--indices, --random and --axes are mutually exclusive");
      }
      return cmd_project(project_input, g, project_indices, project_random, project_axes);
    }
    if (camel->parsed()) return cmd_camel(camel_n, camel_k, camel_trials, camel_spread, g);
    if (invariants->parsed()) return cmd_invariants(invariants_input, g);
  } catch (const InternalInconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const ConvergenceFailureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
  return kExitInputError;
}
