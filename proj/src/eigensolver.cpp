#include "spectral/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/error.hpp"

namespace spectral {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Zero a(p,q) with a plane rotation; accumulate into v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

EigenSystem sorted_system(const Matrix& diag, const Matrix& v) {
  const std::size_t n = diag.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag(x, x) < diag(y, y); });
  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = Matrix(n, n);
  Vector col(n);
  for (std::size_t t = 0; t < n; ++t) {
    es.eigenvalues[t] = diag(order[t], order[t]);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[t]);
    canonicalize_sign(col);
    es.eigenvectors.set_column(t, col);
  }
  return es;
}

double scale_of(const Vector& eigenvalues) {
  double m = 1.0;
  for (double l : eigenvalues) m = std::max(m, std::abs(l));
  return m;
}

}  // namespace

void canonicalize_sign(std::span<double> v) {
  double biggest = 0.0;
  for (double x : v) biggest = std::max(biggest, std::abs(x));
  if (biggest == 0.0) return;
  const double cutoff = biggest * (1.0 - 1e-12);
  for (double x : v) {
    if (std::abs(x) >= cutoff) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

double max_eigen_residual(const Matrix& a, const EigenSystem& es) {
  const std::size_t n = a.rows();
  double worst = 0.0;
  Vector v(n);
  for (std::size_t t = 0; t < es.eigenvectors.cols(); ++t) {
    for (std::size_t i = 0; i < n; ++i) v[i] = es.eigenvectors(i, t);
    const Vector av = multiply(a, v);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = av[i] - es.eigenvalues[t] * v[i];
      s += r * r;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

EigenSystem eig_symmetric(const Matrix& input, const JacobiOptions& opts) {
  if (input.rows() != input.cols()) throw ValidationError("eig_symmetric: matrix is not square");
  if (input.rows() == 0) throw ValidationError("eig_symmetric: empty matrix");
  for (double x : input.data())
    if (!std::isfinite(x)) throw ValidationError("eig_symmetric: non-finite entry");
  if (asymmetry(input) > 1e-10) throw ValidationError("eig_symmetric: matrix is not symmetric");

  const std::size_t n = input.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));

  Matrix v = Matrix::identity(n);
  const double target = opts.tolerance * frobenius_norm(a);
  int sweep = 0;
  bool converged = off_diagonal_norm(a) <= target;
  while (!converged && sweep < opts.max_sweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweep;
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged)
    throw NumericalError("eig_symmetric: no convergence after " + std::to_string(sweep) +
                         " Jacobi sweeps");

  EigenSystem es = sorted_system(a, v);
  es.sweeps = sweep;
  es.max_residual = max_eigen_residual(input, es);
  if (es.max_residual > 1e-8 * scale_of(es.eigenvalues))
    throw NumericalError("eig_symmetric: residual bound violated");
  return es;
}

EigenSystem eig_rw(const LaplacianMatrix& l_rw, std::span<const double> degrees,
                   const JacobiOptions& opts) {
  if (l_rw.variant != LaplacianVariant::rw) throw ValidationError("eig_rw: expected an rw Laplacian");
  const std::size_t n = l_rw.matrix.rows();
  if (degrees.size() != n) throw ValidationError("eig_rw: degree vector has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (!(degrees[i] > 0.0)) throw IsolatedVertexError(i);

  Vector root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(degrees[i]);
  Matrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = root[i] * l_rw.matrix(i, j) / root[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (sym(i, j) + sym(j, i));
      sym(i, j) = avg;
      sym(j, i) = avg;
    }

  EigenSystem es = eig_symmetric(sym, opts);
  Vector col(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < n; ++i) col[i] = es.eigenvectors(i, t) / root[i];
    const double len = norm2(col);
    for (double& x : col) x /= len;
    canonicalize_sign(col);
    es.eigenvectors.set_column(t, col);
  }
  es.max_residual = max_eigen_residual(l_rw.matrix, es);
  if (es.max_residual > 1e-8 * scale_of(es.eigenvalues))
    throw NumericalError("eig_rw: residual bound violated");
  return es;
}

}  // namespace spectral
