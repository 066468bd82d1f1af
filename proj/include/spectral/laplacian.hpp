#pragma once

#include <span>
#include <string_view>

#include "spectral/data.hpp"
#include "spectral/graph.hpp"
#include "spectral/matrix.hpp"

namespace spectral {

enum class LaplacianVariant { unnormalized, sym, rw, pca };

std::string_view to_string(LaplacianVariant v);

struct LaplacianMatrix {
  Matrix matrix;
  LaplacianVariant variant = LaplacianVariant::unnormalized;
  /// Degrees of the source graph (2n for every vertex in the pca variant).
  Vector degrees;
};

/// L = D - W.
LaplacianMatrix laplacian_unnormalized(const WeightedGraph& g);

/// L_ij / sqrt(D_ii D_jj). Throws IsolatedVertexError on a zero degree.
LaplacianMatrix laplacian_sym(const WeightedGraph& g);

/// D^-1 L. Not symmetric; row sums are zero. Throws IsolatedVertexError on a zero degree.
LaplacianMatrix laplacian_rw(const WeightedGraph& g);

/// 2n I - 2H - X X^T with H the all-ones matrix. Requires centered columns
/// and |x_i . x_j| < 2, which standardize() guarantees.
LaplacianMatrix laplacian_pca(const Dataset& standardized);

inline constexpr double kDefaultZeroTolerance = 1e-8;

/// Count of eigenvalues <= tolerance * max(lambda_max, 1). Input must be ascending.
std::size_t zero_eigenvalue_multiplicity(std::span<const double> ascending_eigenvalues,
                                         double tolerance = kDefaultZeroTolerance);

}  // namespace spectral
