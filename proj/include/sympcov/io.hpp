#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sympcov/covariance.hpp"

namespace sympcov {

/// Caller-supplied context for parsing: values that arrive via command-line
/// flags rather than in the document itself. `hbar_flag` is set only when the
/// flag was given explicitly; a document field that disagrees with an explicit
/// flag is a validation error, while a document field silently overrides the
/// built-in default of 1. The ordering flag follows the same rule.
struct ParseOptions {
  std::optional<double> hbar_flag;
  std::optional<Ordering> ordering_flag;
  double symmetry_tol = 1e-9;
};

/// A validated input: matrix already converted to block-xp ordering and
/// symmetrized, hbar resolved against the flags.
struct InputDocument {
  int n;
  double hbar;
  Mat sigma;
};

/// Parses either a structured JSON document {"n", "sigma", optional "hbar",
/// optional "ordering"} or CSV ('#'-prefixed comment/header lines, then 2n rows
/// of 2n comma-separated numbers; n inferred, hbar/ordering taken from flags).
/// The format is sniffed from the first non-whitespace byte. Malformed input
/// raises ParseError with line/field context; well-formed input that breaks a
/// constraint (asymmetry beyond tolerance, odd dimension, non-finite entries,
/// hbar conflict) raises ValidationError.
InputDocument parse_input(std::istream& in, const ParseOptions& opts = {});

/// Same, reading from a file path ("-" means standard input).
InputDocument parse_input_file(const std::string& path, const ParseOptions& opts = {});

CovarianceMatrix to_covariance(const InputDocument& doc);

}  // namespace sympcov
