#pragma once

#include <string>

#include "spectral/data.hpp"
#include "spectral/eigensolver.hpp"
#include "spectral/laplacian.hpp"
#include "spectral/matrix.hpp"

namespace spectral {

/// Sample-space PCA: the top-k eigenvectors of the Gram matrix G = X X^T.
struct PcaModel {
  /// n x k, columns ordered by descending eigenvalue.
  Matrix components;
  /// Descending, length k.
  Vector eigenvalues;
  Matrix gram;
};

/// Requires centered columns and 1 <= k <= min(n-1, m).
PcaModel pca_topk(const Dataset& centered, std::size_t k);

/// Residuals of G u_t = (2n - beta_t) u_t over the eigenpairs of L^PCA.
struct ShiftCheck {
  /// ||G u_t - (2n - beta_t) u_t||_2 for t = 1..n-1.
  Vector residuals;
  /// ||G u_0||_2 for the constant eigenvector.
  double constant_residual = 0.0;
  /// 1e-7 * max(2n, lambda_max(G)).
  double tolerance = 0.0;
  bool passed = false;
};

/// Both arguments must come from the same standardized dataset.
ShiftCheck verify_shift_relation(const LaplacianMatrix& l_pca, const Matrix& gram);
ShiftCheck verify_shift_relation(const LaplacianMatrix& l_pca, const EigenSystem& es,
                                 const Matrix& gram);

/// Principal angles between the column spans of two n x k orthonormal bases,
/// ascending. Small angles come from sines, large ones from cosines.
Vector subspace_principal_angles(const Matrix& a, const Matrix& b);

struct EquivalenceReport {
  std::size_t k = 0;
  std::size_t n = 0;
  Vector principal_angles;
  double max_angle = 0.0;
  /// Shift residuals for t = 1..n-1 (see ShiftCheck).
  Vector shift_residuals;
  double constant_residual = 0.0;
  double shift_tolerance = 0.0;
  bool shift_passed = false;
  /// beta_{k+1} - beta_k, with beta_n taken as 2n (the constant vector's Gram eigenvalue 0).
  double eigengap_at_k = 0.0;
  /// eigengap_at_k <= 1e-6 * max(beta_max, 1): individual vectors are not comparable.
  bool degenerate = false;
  /// Ascending L^PCA spectrum and descending Gram top-k spectrum, for the report.
  Vector laplacian_eigenvalues;
  Vector gram_eigenvalues;
  /// Max Laplacian degree deviation from 2n, relative.
  double degree_deviation = 0.0;
  /// Route A and B bases (n x k).
  Matrix laplacian_basis;
  Matrix pca_basis;

  /// Degenerate spectra only get the subspace comparison reported, never a failure.
  bool passed(double angle_tol = 1e-6) const { return degenerate || max_angle <= angle_tol; }
};

/// Standardize the raw dataset, then compare the smallest k non-constant
/// eigenvectors of L^PCA with the top-k Gram eigenvectors.
EquivalenceReport pca_equivalence_report(const Dataset& raw, std::size_t k);

/// JSON text for the report; stable key order.
std::string to_json(const EquivalenceReport& r);

}  // namespace spectral
