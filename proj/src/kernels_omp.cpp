#include <cmath>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spectral/error.hpp"
#include "spectral/kernels.hpp"

namespace spectral::kernels {

namespace {
// OpenMP loop counters must be signed.
using Index = std::int64_t;
}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

Matrix pairwise_squared_distances(const Matrix& points) {
  const Index n = static_cast<Index>(points.rows());
  Matrix d(points.rows(), points.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      d(i, j) = i == j ? 0.0 : squared_distance(points.row(i), points.row(j));
  return d;
}

Matrix gram(const Matrix& points) {
  const Index n = static_cast<Index>(points.rows());
  Matrix g(points.rows(), points.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = dot(points.row(i), points.row(j));
  return g;
}

Matrix rbf_from_squared_distances(const Matrix& sq_dist, double delta) {
  const double denom = 2.0 * delta * delta;
  const Index rows = static_cast<Index>(sq_dist.rows());
  const Index cols = static_cast<Index>(sq_dist.cols());
  Matrix w(sq_dist.rows(), sq_dist.cols());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) w(i, j) = std::exp(-sq_dist(i, j) / denom);
  return w;
}

Vector row_sums(const Matrix& a) {
  const Index rows = static_cast<Index>(a.rows());
  Vector s(a.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (double v : a.row(i)) acc += v;
    s[i] = acc;
  }
  return s;
}

double centered_cross_sum(const Matrix& a, double mean_a, const Matrix& b, double mean_b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("centered_cross_sum: shape mismatch");
  const Index rows = static_cast<Index>(a.rows());
  const std::size_t cols = a.cols();
  Vector partial(a.rows());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += (a(i, j) - mean_a) * (b(i, j) - mean_b);
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
  const Index n = static_cast<Index>(rows.rows());
  const std::size_t k = centroids.rows();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
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

}  // namespace spectral::kernels
