#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectral {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input or configuration; the caller can fix it. CLI exit code 1.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A numerical routine failed (non-convergence, broken invariant). CLI exit code 2.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// CSV cell that could not be parsed. Row and column are 1-based data coordinates.
class ParseError : public ValidationError {
public:
  ParseError(std::size_t row, std::size_t column, const std::string& what)
      : ValidationError(what), row_(row), column_(column) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

/// Normalized Laplacians need strictly positive degrees.
class IsolatedVertexError : public ValidationError {
public:
  explicit IsolatedVertexError(std::size_t vertex)
      : ValidationError("vertex " + std::to_string(vertex) +
                        " is isolated (degree 0); normalized Laplacians are undefined"),
        vertex_(vertex) {}
  std::size_t vertex() const noexcept { return vertex_; }

private:
  std::size_t vertex_;
};

}  // namespace spectral
