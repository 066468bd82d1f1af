#pragma once

#include <span>

#include "spectral/laplacian.hpp"
#include "spectral/matrix.hpp"

namespace spectral {

/// Ascending eigenvalues with matching eigenvector columns.
///
/// Column t of `eigenvectors` pairs with `eigenvalues[t]`. Each column is
/// sign-canonicalized: its largest-magnitude entry is positive, with
/// near-ties (within 1e-12 relative) resolved to the lowest index.
/// `max_residual` is max_t ||A v_t - lambda_t v_t||_2 against the input matrix.
struct EigenSystem {
  Vector eigenvalues;
  Matrix eigenvectors;
  double max_residual = 0.0;
  int sweeps = 0;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Stop once the off-diagonal Frobenius norm is <= tolerance * ||A||_F.
  double tolerance = 1e-12;
};

/// Cyclic Jacobi decomposition of a symmetric matrix.
///
/// Throws ValidationError for non-square, non-finite, or asymmetric (> 1e-10)
/// input, and NumericalError when the sweep budget runs out or the residual
/// bound 1e-8 * max(|lambda|_max, 1) is not met. Deterministic.
EigenSystem eig_symmetric(const Matrix& a, const JacobiOptions& opts = {});

/// Eigensystem of L^rw = D^-1 L solved through the similar symmetric matrix
/// D^1/2 L^rw D^-1/2. Eigenvectors are D^-1/2 v, rescaled to unit length;
/// they are D-orthogonal rather than orthonormal. Residuals are measured on L^rw.
EigenSystem eig_rw(const LaplacianMatrix& l_rw, std::span<const double> degrees,
                   const JacobiOptions& opts = {});

/// Flip v so its largest-magnitude entry is positive.
void canonicalize_sign(std::span<double> v);

/// max_t ||A v_t - lambda_t v_t||_2.
double max_eigen_residual(const Matrix& a, const EigenSystem& es);

}  // namespace spectral
