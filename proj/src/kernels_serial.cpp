#include <cmath>
#include <limits>

#include "spectral/error.hpp"
#include "spectral/kernels.hpp"

namespace spectral::kernels {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double diff = a[l] - b[l];
    s += diff * diff;
  }
  return s;
}

namespace serial {

Matrix pairwise_squared_distances(const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = i == j ? 0.0 : squared_distance(points.row(i), points.row(j));
  return d;
}

Matrix gram(const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = dot(points.row(i), points.row(j));
  return g;
}

Matrix rbf_from_squared_distances(const Matrix& sq_dist, double delta) {
  const double denom = 2.0 * delta * delta;
  Matrix w(sq_dist.rows(), sq_dist.cols());
  for (std::size_t i = 0; i < sq_dist.rows(); ++i)
    for (std::size_t j = 0; j < sq_dist.cols(); ++j) w(i, j) = std::exp(-sq_dist(i, j) / denom);
  return w;
}

Vector row_sums(const Matrix& a) {
  Vector s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (double v : a.row(i)) acc += v;
    s[i] = acc;
  }
  return s;
}

double centered_cross_sum(const Matrix& a, double mean_a, const Matrix& b, double mean_b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("centered_cross_sum: shape mismatch");
  Vector partial(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += (a(i, j) - mean_a) * (b(i, j) - mean_b);
    partial[i] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double entry_sum(const Matrix& a) {
  double total = 0.0;
  for (double p : row_sums(a)) total += p;
  return total;
}

void assign_nearest(const Matrix& rows, const Matrix& centroids, std::span<std::size_t> labels,
                    std::span<double> sq_dist) {
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < centroids.rows(); ++c) {
      const double d = squared_distance(rows.row(i), centroids.row(c));
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    labels[i] = best_c;
    sq_dist[i] = best;
  }
}

}  // namespace serial
}  // namespace spectral::kernels
