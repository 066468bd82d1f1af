#include "spectral/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include "spectral/error.hpp"
#include "spectral/io.hpp"

namespace spectral {

Dataset::Dataset(Matrix points, std::vector<std::string> column_names)
    : points_(std::move(points)), column_names_(std::move(column_names)) {
  if (points_.rows() < 2) throw ValidationError("dataset needs at least 2 points");
  if (points_.cols() < 1) throw ValidationError("dataset needs at least 1 feature");
  if (!column_names_.empty() && column_names_.size() != points_.cols())
    throw ValidationError("column name count does not match feature count");
  for (std::size_t i = 0; i < points_.rows(); ++i)
    for (std::size_t j = 0; j < points_.cols(); ++j)
      if (!std::isfinite(points_(i, j)))
        throw ValidationError("non-finite value at row " + std::to_string(i + 1) + ", column " +
                              std::to_string(j + 1));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// RFC-4180 style: fields may be double-quoted, "" escapes a quote.
std::vector<std::string> split_fields(std::string_view line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvOptions& opts) {
  std::string_view body = text;
  if (body.starts_with("\xEF\xBB\xBF")) body.remove_prefix(3);

  std::vector<std::string_view> lines;
  while (!body.empty()) {
    const auto nl = body.find('\n');
    auto line = body.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    body.remove_prefix(nl + 1);
  }

  std::vector<std::string> names;
  std::size_t first = 0;
  if (opts.has_header) {
    if (lines.empty()) throw ValidationError("CSV is empty; expected a header row");
    for (auto& f : split_fields(lines[0], opts.delimiter)) names.emplace_back(trim(f));
    first = 1;
  }

  const std::size_t n = lines.size() - first;
  if (n < 2) throw ValidationError("CSV has " + std::to_string(n) + " data rows; need at least 2");

  std::size_t m = 0;
  std::vector<double> values;
  for (std::size_t r = 0; r < n; ++r) {
    const auto fields = split_fields(lines[first + r], opts.delimiter);
    if (r == 0) {
      m = fields.size();
      values.reserve(n * m);
    } else if (fields.size() != m) {
      throw ParseError(r + 1, fields.size(),
                       "ragged CSV: row " + std::to_string(r + 1) + " has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(m));
    }
    for (std::size_t c = 0; c < m; ++c) {
      double v = 0.0;
      if (!parse_number(fields[c], v))
        throw ParseError(r + 1, c + 1,
                         "non-numeric cell '" + fields[c] + "' at row " + std::to_string(r + 1) +
                             ", column " + std::to_string(c + 1));
      values.push_back(v);
    }
  }
  if (opts.has_header && names.size() != m)
    throw ValidationError("header has " + std::to_string(names.size()) + " names for " +
                          std::to_string(m) + " columns");

  Matrix points(n, m);
  std::copy(values.begin(), values.end(), points.data().begin());
  return Dataset(std::move(points), std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts) {
  return parse_csv(read_text_file(path), opts);
}

std::string format_csv(const Dataset& d, char delimiter) {
  std::string out;
  if (!d.column_names().empty()) {
    for (std::size_t j = 0; j < d.m(); ++j) {
      if (j) out += delimiter;
      out += d.column_names()[j];
    }
    out += '\n';
  }
  return out + matrix_to_csv(d.points(), delimiter);
}

void write_csv(const std::filesystem::path& path, const Dataset& d, char delimiter) {
  write_text_file(path, format_csv(d, delimiter));
}

double max_abs_column_mean(const Matrix& points) {
  double worst = 0.0;
  for (std::size_t j = 0; j < points.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) s += points(i, j);
    worst = std::max(worst, std::abs(s / static_cast<double>(points.rows())));
  }
  return worst;
}

Dataset center_columns(const Dataset& d) {
  Matrix x = d.points();
  const double n = static_cast<double>(d.n());
  // Second pass removes the rounding residue left by the first.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) s += x(i, j);
      const double mean = s / n;
      for (std::size_t i = 0; i < x.rows(); ++i) x(i, j) -= mean;
    }
  }
  return Dataset(std::move(x), d.column_names());
}

Dataset scale_global(const Dataset& d, double target_max_row_norm) {
  if (!(target_max_row_norm > 0.0) || !std::isfinite(target_max_row_norm))
    throw ValidationError("scale_global: target row norm must be positive and finite");
  double max_norm = 0.0;
  for (std::size_t i = 0; i < d.n(); ++i) max_norm = std::max(max_norm, norm2(d.points().row(i)));
  if (max_norm == 0.0) throw ValidationError("scale_global: all rows are zero; scaling undefined");
  const double factor = target_max_row_norm / max_norm;
  Matrix x = d.points();
  for (double& v : x.data()) v *= factor;
  return Dataset(std::move(x), d.column_names());
}

Dataset standardize(const Dataset& d) { return scale_global(center_columns(d), 1.0); }

}  // namespace spectral
