#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

/// n points in m dimensions. Always holds n >= 2, m >= 1 and finite entries.
class Dataset {
public:
  explicit Dataset(Matrix points, std::vector<std::string> column_names = {});

  const Matrix& points() const noexcept { return points_; }
  std::size_t n() const noexcept { return points_.rows(); }
  std::size_t m() const noexcept { return points_.cols(); }
  /// Empty when the source had no header.
  const std::vector<std::string>& column_names() const noexcept { return column_names_; }

private:
  Matrix points_;
  std::vector<std::string> column_names_;
};

struct CsvOptions {
  bool has_header = false;
  char delimiter = ',';
};

/// Parse numeric CSV text. Errors carry 1-based data row and column.
Dataset parse_csv(const std::string& text, const CsvOptions& opts = {});
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// 17 significant digits, so parse_csv(format_csv(d)) reproduces d exactly.
std::string format_csv(const Dataset& d, char delimiter = ',');
void write_csv(const std::filesystem::path& path, const Dataset& d, char delimiter = ',');

/// Subtract each column's mean.
Dataset center_columns(const Dataset& d);

/// Multiply every entry by target_max_row_norm / max_i ||row_i||.
/// Centering followed by scale_global(d, 1) gives |x_i . x_j| <= 1 for all pairs.
Dataset scale_global(const Dataset& d, double target_max_row_norm);

/// center_columns then scale_global(., 1).
Dataset standardize(const Dataset& d);

/// Largest |column mean|.
double max_abs_column_mean(const Matrix& points);

}  // namespace spectral
