#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strainlab/matrix.hpp"

namespace strainlab {

struct NamedMatrix {
  std::string id;
  SquareMatrix matrix;
};

enum class TextFormat { Json, Csv };

/**
 * Parses a matrix file.
 *
 * JSON: one object {"n": N, "rows": [[...], ...]} (optionally with "id"), or
 * an array of such objects. CSV: N rows of N comma-separated numbers; blank
 * lines separate matrices and lines starting with '#' are skipped. Matrices
 * without an explicit id are named by their zero-based index.
 *
 * Throws ParseError on malformed input, including non-finite entries and
 * row counts that do not match the declared n.
 */
std::vector<NamedMatrix> parse_matrices(std::string_view text, TextFormat format);

/// JSON when the first non-blank character is '{' or '[', CSV otherwise.
TextFormat detect_format(std::string_view text);

std::vector<NamedMatrix> parse_matrices(std::string_view text);

/// %.17g: enough digits to round-trip any double.
std::string format_double(double v);

/// One output row of `strainlab compute`.
struct StrainRecord {
  std::string input_id;
  std::string kind;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<double> value;  // empty when status is an error
  std::vector<double> minimizer;  // row-major
  std::string status;             // "ok" or "error:<code>"
};

/// JSON array of record objects, one per line.
std::string records_to_json(const std::vector<StrainRecord>& records);

/// Header row, then one row per record; the minimizer is one ';'-separated field.
std::string records_to_csv(const std::vector<StrainRecord>& records);

}  // namespace strainlab
