#pragma once

#include <filesystem>
#include <string>

#include "spectral/matrix.hpp"

namespace spectral {

/// Locale-independent, 17 significant digits, round-trips exactly.
std::string format_double(double v);

/// One matrix row per line, entries joined by `delimiter`.
std::string matrix_to_csv(const Matrix& a, char delimiter = ',');

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace spectral
