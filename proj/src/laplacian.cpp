#include "spectral/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include "spectral/error.hpp"
#include "spectral/kernels.hpp"

namespace spectral {

std::string_view to_string(LaplacianVariant v) {
  switch (v) {
    case LaplacianVariant::unnormalized: return "unnormalized";
    case LaplacianVariant::sym: return "sym";
    case LaplacianVariant::rw: return "rw";
    case LaplacianVariant::pca: return "pca";
  }
  return "unknown";
}

LaplacianMatrix laplacian_unnormalized(const WeightedGraph& g) {
  const std::size_t n = g.n();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = (i == j ? g.degrees()[i] : 0.0) - g.weights()(i, j);
  return {std::move(l), LaplacianVariant::unnormalized, g.degrees()};
}

namespace {

void require_positive_degrees(const Vector& degrees) {
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (!(degrees[i] > 0.0)) throw IsolatedVertexError(i);
}

}  // namespace

LaplacianMatrix laplacian_sym(const WeightedGraph& g) {
  require_positive_degrees(g.degrees());
  LaplacianMatrix lap = laplacian_unnormalized(g);
  const auto& deg = g.degrees();
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = 0; j < g.n(); ++j) lap.matrix(i, j) /= std::sqrt(deg[i] * deg[j]);
  lap.variant = LaplacianVariant::sym;
  return lap;
}

LaplacianMatrix laplacian_rw(const WeightedGraph& g) {
  require_positive_degrees(g.degrees());
  LaplacianMatrix lap = laplacian_unnormalized(g);
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = 0; j < g.n(); ++j) lap.matrix(i, j) /= g.degrees()[i];
  lap.variant = LaplacianVariant::rw;
  return lap;
}

LaplacianMatrix laplacian_pca(const Dataset& standardized) {
  const Matrix& x = standardized.points();
  const double scale = std::max(1.0, max_abs(x));
  if (max_abs_column_mean(x) > 1e-10 * scale)
    throw ValidationError("laplacian_pca: input columns are not centered");
  const Matrix g = kernels::gram(x);
  const std::size_t n = x.rows();
  if (max_abs(g) >= 2.0)
    throw ValidationError("laplacian_pca: |x_i . x_j| must stay below 2; scale the data first");
  const double two_n = 2.0 * static_cast<double>(n);
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l(i, j) = (i == j ? two_n : 0.0) - 2.0 - g(i, j);
  return {std::move(l), LaplacianVariant::pca, Vector(n, two_n)};
}

std::size_t zero_eigenvalue_multiplicity(std::span<const double> ascending, double tolerance) {
  if (ascending.empty()) return 0;
  for (std::size_t i = 1; i < ascending.size(); ++i)
    if (ascending[i] < ascending[i - 1])
      throw ValidationError("zero_eigenvalue_multiplicity: eigenvalues are not ascending");
  const double threshold = tolerance * std::max(ascending.back(), 1.0);
  return static_cast<std::size_t>(
      std::count_if(ascending.begin(), ascending.end(), [&](double v) { return v <= threshold; }));
}

}  // namespace spectral
