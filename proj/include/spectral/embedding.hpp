#pragma once

#include <string_view>

#include "spectral/eigensolver.hpp"
#include "spectral/graph.hpp"
#include "spectral/laplacian.hpp"
#include "spectral/matrix.hpp"

namespace spectral {

enum class EmbeddingVariant {
  nonconstant,  ///< f_1..f_k of L
  classical,    ///< f_0..f_{k-1} of L
  sym,          ///< f_1..f_k of L^sym
  sym_scaled,   ///< rows of the sym embedding divided by sqrt(D_ii)
  sym_eigenvalue_scaled,  ///< columns of the sym embedding divided by sqrt(lambda_t)
  rw,                     ///< f_1..f_k of L^rw
  rw_scaled,              ///< rows of the rw embedding divided by sqrt(D_ii)
};

std::string_view to_string(EmbeddingVariant v);

struct Embedding {
  /// n x k; row i is the image of point i.
  Matrix coordinates;
  EmbeddingVariant variant = EmbeddingVariant::nonconstant;
  /// Eigenvalues of the columns that were taken, in column order.
  Vector source_eigenvalues;

  std::size_t n() const noexcept { return coordinates.rows(); }
  std::size_t k() const noexcept { return coordinates.cols(); }
};

/// Columns 1..k of an eigensystem whose zero eigenvalue is simple.
/// Rejects multi-component spectra (zero multiplicity > 1 at `zero_tol`).
Embedding embed_nonconstant(const EigenSystem& es, std::size_t k,
                            double zero_tol = kDefaultZeroTolerance);

/// Columns 0..k-1, 1 <= k <= n.
Embedding embed_classical(const EigenSystem& es, std::size_t k);

enum class NormalizedScaling { none, degree, eigenvalue };

/// Columns 1..k of an L^sym eigensystem, optionally rescaled: `degree` divides
/// row i by sqrt(degrees[i]), `eigenvalue` divides column t by sqrt(lambda_t).
Embedding embed_normalized(const EigenSystem& es_sym, std::span<const double> degrees,
                           std::size_t k, NormalizedScaling scaling,
                           double zero_tol = kDefaultZeroTolerance);

/// Columns 1..k of an eig_rw eigensystem; `scaled` divides row i by sqrt(degrees[i]).
Embedding embed_rw(const EigenSystem& es_rw, std::span<const double> degrees, std::size_t k,
                   bool scaled, double zero_tol = kDefaultZeroTolerance);

/// Row i divided by sqrt(degrees[i]).
Matrix scale_rows_by_degree(const Matrix& y, std::span<const double> degrees);

/// d_ij = ||y_i - y_j||^2.
Matrix pairwise_dissimilarity(const Matrix& y);
inline Matrix pairwise_dissimilarity(const Embedding& e) {
  return pairwise_dissimilarity(e.coordinates);
}

/// The covariance objective and its trace decomposition.
///
/// covariance     = -(1/2n) sum_ij (d_ij - mean d)(w_ij - mean w), literal n^2 sum
/// trace_term     = -(1/n) tr(Y^T L Y)
/// constant_term  = (mean w / n) (n sum_i ||z_i||^2 - ||sum_i z_i||^2)
/// identity_gap   = |covariance - trace_term - constant_term|
///
/// For the unnormalized Laplacian z_i = y_i. For L^sym, z_i = y_i / sqrt(D_ii)
/// and d is measured on z. The identity is exact for any Y.
struct ObjectiveReport {
  double covariance = 0.0;
  double trace_term = 0.0;
  double constant_term = 0.0;
  double identity_gap = 0.0;
};

ObjectiveReport covariance_objective(const Matrix& y, const WeightedGraph& g,
                                     const LaplacianMatrix& l);
inline ObjectiveReport covariance_objective(const Embedding& e, const WeightedGraph& g,
                                            const LaplacianMatrix& l) {
  return covariance_objective(e.coordinates, g, l);
}

/// tr(Y^T A Y).
double trace_quadratic(const Matrix& y, const Matrix& a);

struct IndicatorCheck {
  bool passed = false;
  /// Largest distance between two rows of the same component.
  double max_intra_spread = 0.0;
  /// Smallest distance between representative rows of two components.
  double min_inter_distance = 0.0;
};

/// Rows of each component agree within `tolerance` and rows of different
/// components are at least 10 * tolerance apart.
IndicatorCheck indicator_check(const Embedding& y, const ComponentLabeling& labeling,
                               double tolerance = 1e-7);

}  // namespace spectral
