#include "strainlab/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace strainlab {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

NamedMatrix matrix_from_json(const json& obj, std::size_t index) {
  if (!obj.is_object()) parse_fail("matrix entry " + std::to_string(index) + " is not an object");
  if (!obj.contains("n") || !obj["n"].is_number_integer()) parse_fail("missing integer field 'n'");
  if (!obj.contains("rows") || !obj["rows"].is_array()) parse_fail("missing array field 'rows'");
  const auto n = obj["n"].get<long long>();
  if (n < 1) parse_fail("'n' must be >= 1");
  const json& rows = obj["rows"];
  if (rows.size() != static_cast<std::size_t>(n)) {
    parse_fail("declared n = " + std::to_string(n) + " but found " + std::to_string(rows.size()) +
               " rows");
  }
  std::vector<double> entries;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      parse_fail("every row must hold n = " + std::to_string(n) + " numbers");
    }
    for (const json& v : row) {
      if (!v.is_number()) parse_fail("matrix entries must be numbers");
      const double d = v.get<double>();
      if (!std::isfinite(d)) parse_fail("matrix entries must be finite");
      entries.push_back(d);
    }
  }
  std::string id = std::to_string(index);
  if (obj.contains("id")) {
    if (!obj["id"].is_string()) parse_fail("'id' must be a string");
    id = obj["id"].get<std::string>();
  }
  return NamedMatrix{std::move(id), SquareMatrix(static_cast<std::size_t>(n), std::move(entries))};
}

std::vector<NamedMatrix> parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  std::vector<NamedMatrix> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(matrix_from_json(doc[i], i));
  } else {
    out.push_back(matrix_from_json(doc, 0));
  }
  if (out.empty()) parse_fail("no matrices in input");
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    parse_fail("not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) parse_fail("matrix entries must be finite");
  return v;
}

std::vector<NamedMatrix> parse_csv(std::string_view text) {
  std::vector<NamedMatrix> out;
  std::vector<std::vector<double>> block;
  auto flush = [&] {
    if (block.empty()) return;
    const std::size_t n = block.front().size();
    for (const auto& row : block) {
      if (row.size() != n) parse_fail("CSV rows have different lengths");
    }
    if (block.size() != n) {
      parse_fail("CSV block has " + std::to_string(block.size()) + " rows but " + std::to_string(n) +
                 " columns");
    }
    out.push_back(NamedMatrix{std::to_string(out.size()), SquareMatrix::from_rows(block)});
    block.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_number(line.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    block.push_back(std::move(row));
  }
  flush();
  if (out.empty()) parse_fail("no matrices in input");
  return out;
}

std::string json_string(const std::string& s) { return json(s).dump(); }

// RFC 4180 quoting for free-text fields.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string optional_number(const std::optional<double>& v, const char* empty) {
  return v ? format_double(*v) : std::string(empty);
}

}  // namespace

TextFormat detect_format(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && (t.front() == '{' || t.front() == '[')) return TextFormat::Json;
  return TextFormat::Csv;
}

std::vector<NamedMatrix> parse_matrices(std::string_view text, TextFormat format) {
  try {
    return format == TextFormat::Json ? parse_json(text) : parse_csv(text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::vector<NamedMatrix> parse_matrices(std::string_view text) {
  return parse_matrices(text, detect_format(text));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string records_to_json(const std::vector<StrainRecord>& records) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const StrainRecord& r = records[i];
    os << (i == 0 ? "\n  " : ",\n  ");
    os << "{\"input_id\": " << json_string(r.input_id) << ", \"kind\": " << json_string(r.kind)
       << ", \"alpha\": " << optional_number(r.alpha, "null")
       << ", \"beta\": " << optional_number(r.beta, "null")
       << ", \"gamma\": " << optional_number(r.gamma, "null")
       << ", \"value\": " << optional_number(r.value, "null") << ", \"minimizer\": [";
    for (std::size_t k = 0; k < r.minimizer.size(); ++k) {
      os << (k == 0 ? "" : ", ") << format_double(r.minimizer[k]);
    }
    os << "], \"status\": " << json_string(r.status) << "}";
  }
  os << (records.empty() ? "]\n" : "\n]\n");
  return os.str();
}

std::string records_to_csv(const std::vector<StrainRecord>& records) {
  std::ostringstream os;
  os << "input_id,kind,alpha,beta,gamma,value,status,minimizer\n";
  for (const StrainRecord& r : records) {
    os << csv_field(r.input_id) << ',' << r.kind << ',' << optional_number(r.alpha, "") << ','
       << optional_number(r.beta, "") << ',' << optional_number(r.gamma, "") << ','
       << optional_number(r.value, "") << ',' << r.status << ',';
    for (std::size_t k = 0; k < r.minimizer.size(); ++k) {
      os << (k == 0 ? "" : ";") << format_double(r.minimizer[k]);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace strainlab
