#pragma once

// Data-parallel inner loops shared by the graph, embedding, pca and cluster
// modules. `spectral::kernels` holds the OpenMP versions used in production;
// `spectral::kernels::serial` holds single-threaded reference versions used by
// tests and the benchmark. Both produce bit-identical results: every output
// entry is a pure function of its inputs, and every reduction is accumulated
// per row in index order and then summed across rows in index order.

#include <cstddef>
#include <span>
#include <vector>

#include "spectral/matrix.hpp"

namespace spectral::kernels {

/// Squared Euclidean distance between two rows, summed in feature order.
double squared_distance(std::span<const double> a, std::span<const double> b);

/// n x n matrix of squared distances between the rows of `points`.
Matrix pairwise_squared_distances(const Matrix& points);

/// Gram matrix points * points^T.
Matrix gram(const Matrix& points);

/// exp(-d / (2 delta^2)) applied entrywise to a squared-distance matrix.
Matrix rbf_from_squared_distances(const Matrix& sq_dist, double delta);

/// Row sums of a square matrix.
Vector row_sums(const Matrix& a);

/// sum_ij (a_ij - mean_a) * (b_ij - mean_b) with the given means.
double centered_cross_sum(const Matrix& a, double mean_a, const Matrix& b, double mean_b);

/// sum of all entries.
double entry_sum(const Matrix& a);

/// Nearest centroid per row, ties to the lowest centroid index. Writes labels
/// and the squared distance to the chosen centroid.
void assign_nearest(const Matrix& rows, const Matrix& centroids, std::span<std::size_t> labels,
                    std::span<double> sq_dist);

namespace serial {

Matrix pairwise_squared_distances(const Matrix& points);
Matrix gram(const Matrix& points);
Matrix rbf_from_squared_distances(const Matrix& sq_dist, double delta);
Vector row_sums(const Matrix& a);
double centered_cross_sum(const Matrix& a, double mean_a, const Matrix& b, double mean_b);
double entry_sum(const Matrix& a);
void assign_nearest(const Matrix& rows, const Matrix& centroids, std::span<std::size_t> labels,
                    std::span<double> sq_dist);

}  // namespace serial

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();
/// Override the thread count for subsequent parallel regions. No-op without OpenMP.
void set_threads(int n);

}  // namespace spectral::kernels
