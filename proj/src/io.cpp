#include "sympcov/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace sympcov {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, int line, int field) {
  const std::string_view t = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError("line " + std::to_string(line) + ", field " + std::to_string(field) +
                     ": '" + std::string(token) + "' is not a number");
  }
  return value;
}

Mat parse_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    int field = 0;
    const std::string body(stripped);
    while (true) {
      const std::size_t comma = body.find(',', start);
      ++field;
      const std::string_view token =
          std::string_view(body).substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
      row.push_back(parse_number(token, line_no, field));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(rows.front().size()) + " values, got " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError("input contains no data rows");
  }
  const std::size_t dim = rows.front().size();
  if (rows.size() != dim) {
    throw ParseError("matrix is not square: " + std::to_string(rows.size()) + " rows of " +
                     std::to_string(dim) + " values");
  }
  Mat sigma(static_cast<int>(dim), static_cast<int>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      sigma(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  return sigma;
}

Ordering parse_ordering_name(const std::string& name) {
  if (name == "block-xp") return Ordering::kBlockXP;
  if (name == "interleaved") return Ordering::kInterleaved;
  throw ParseError("ordering must be 'block-xp' or 'interleaved', got '" + name + "'");
}

struct RawDocument {
  Mat sigma;
  std::optional<int> n;
  std::optional<double> hbar;
  std::optional<Ordering> ordering;
};

RawDocument parse_json_document(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("structured input: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("structured input: top level must be an object");
  }
  RawDocument raw;
  if (!doc.contains("sigma")) {
    throw ParseError("structured input: required field 'sigma' is missing");
  }
  const json& rows = doc["sigma"];
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("structured input: 'sigma' must be a non-empty array of rows");
  }
  const std::size_t dim = rows.size();
  Mat sigma(static_cast<int>(dim), static_cast<int>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError("structured input: 'sigma' row " + std::to_string(i + 1) + " has " +
                       std::to_string(row.is_array() ? row.size() : 0) + " entries, expected " +
                       std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw ParseError("structured input: 'sigma' row " + std::to_string(i + 1) + ", column " +
                         std::to_string(j + 1) + " is not a number");
      }
      sigma(static_cast<int>(i), static_cast<int>(j)) = row[j].get<double>();
    }
  }
  raw.sigma = std::move(sigma);
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) {
      throw ParseError("structured input: 'n' must be an integer");
    }
    raw.n = doc["n"].get<int>();
  }
  if (doc.contains("hbar")) {
    if (!doc["hbar"].is_number()) {
      throw ParseError("structured input: 'hbar' must be a number");
    }
    raw.hbar = doc["hbar"].get<double>();
  }
  if (doc.contains("ordering")) {
    if (!doc["ordering"].is_string()) {
      throw ParseError("structured input: 'ordering' must be a string");
    }
    raw.ordering = parse_ordering_name(doc["ordering"].get<std::string>());
  }
  return raw;
}

InputDocument finalize(RawDocument raw, const ParseOptions& opts) {
  const auto dim = raw.sigma.rows();
  if (dim < 2 || dim % 2 != 0) {
    throw ValidationError("matrix dimension " + std::to_string(dim) +
                          " is not an even positive number");
  }
  const int n = static_cast<int>(dim) / 2;
  if (raw.n && *raw.n != n) {
    throw ValidationError("declared n = " + std::to_string(*raw.n) + " does not match a " +
                          std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  if (!raw.sigma.allFinite()) {
    throw ValidationError("matrix entries must be finite");
  }

  double hbar = 1.0;
  if (raw.hbar && opts.hbar_flag) {
    if (*raw.hbar != *opts.hbar_flag) {
      throw ValidationError("hbar given both in the document (" + std::to_string(*raw.hbar) +
                            ") and on the command line (" + std::to_string(*opts.hbar_flag) +
                            ") with different values");
    }
    hbar = *raw.hbar;
  } else if (raw.hbar) {
    hbar = *raw.hbar;
  } else if (opts.hbar_flag) {
    hbar = *opts.hbar_flag;
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("hbar must be finite and positive, got " + std::to_string(hbar));
  }

  Ordering ordering = Ordering::kBlockXP;
  if (raw.ordering && opts.ordering_flag && *raw.ordering != *opts.ordering_flag) {
    throw ValidationError("ordering given both in the document and on the command line "
                          "with different values");
  }
  if (raw.ordering) {
    ordering = *raw.ordering;
  } else if (opts.ordering_flag) {
    ordering = *opts.ordering_flag;
  }

  Mat sigma = ordering == Ordering::kInterleaved ? interleaved_to_block(raw.sigma)
                                                 : std::move(raw.sigma);
  const double asym = (sigma - sigma.transpose()).norm();
  const double scale = std::max(1.0, sigma.norm());
  if (asym > opts.symmetry_tol * scale) {
    throw ValidationError("matrix asymmetry " + std::to_string(asym / scale) +
                          " (relative) exceeds tolerance " + std::to_string(opts.symmetry_tol));
  }
  sigma = 0.5 * (sigma + sigma.transpose()).eval();
  return InputDocument{n, hbar, std::move(sigma)};
}

}  // namespace

InputDocument parse_input(std::istream& in, const ParseOptions& opts) {
  // Sniff the format: structured documents start with '{'.
  int c = in.peek();
  while (c != std::char_traits<char>::eof() &&
         (c == ' ' || c == '\t' || c == '\r' || c == '\n')) {
    in.get();
    c = in.peek();
  }
  if (c == std::char_traits<char>::eof()) {
    throw ParseError("input is empty");
  }
  RawDocument raw;
  if (c == '{') {
    raw = parse_json_document(in);
  } else {
    raw.sigma = parse_csv_matrix(in);
  }
  return finalize(std::move(raw), opts);
}

InputDocument parse_input_file(const std::string& path, const ParseOptions& opts) {
  if (path == "-") {
    return parse_input(std::cin, opts);
  }
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open input file '" + path + "'");
  }
  return parse_input(in, opts);
}

CovarianceMatrix to_covariance(const InputDocument& doc) {
  return CovarianceMatrix(doc.sigma, doc.hbar);
}

}  // namespace sympcov
