#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "spectral/kernels.hpp"

using namespace spectral;

// The parallel kernels must reproduce the serial ones bit for bit at every
// thread count, otherwise artifacts would depend on the machine.
TEST_CASE("parallel kernels are bit-identical to the serial ones") {
  oracle::Rng rng(1);
  const int original = kernels::max_threads();
  for (const auto& [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 1}, {2, 3}, {17, 4}, {64, 7}, {150, 2}}) {
    const Matrix x = oracle::random_matrix(rng, n, m);
    const Matrix sq_ref = kernels::serial::pairwise_squared_distances(x);
    const Matrix gram_ref = kernels::serial::gram(x);
    const Matrix rbf_ref = kernels::serial::rbf_from_squared_distances(sq_ref, 0.9);
    const Vector rows_ref = kernels::serial::row_sums(rbf_ref);
    const double sum_ref = kernels::serial::entry_sum(gram_ref);
    const double cross_ref = kernels::serial::centered_cross_sum(sq_ref, 0.3, rbf_ref, 0.1);
    const std::size_t k = std::min<std::size_t>(n, 4);
    // The first k rows serve as centroids.
    const Matrix cent = transpose(column_block(transpose(x), 0, k));
    std::vector<std::size_t> labels_ref(n);
    Vector dist_ref(n);
    kernels::serial::assign_nearest(x, cent, labels_ref, dist_ref);

    for (int threads : {1, 2, 3, 8}) {
      kernels::set_threads(threads);
      CHECK(kernels::pairwise_squared_distances(x) == sq_ref);
      CHECK(kernels::gram(x) == gram_ref);
      CHECK(kernels::rbf_from_squared_distances(sq_ref, 0.9) == rbf_ref);
      CHECK(kernels::row_sums(rbf_ref) == rows_ref);
      CHECK(kernels::entry_sum(gram_ref) == sum_ref);
      CHECK(kernels::centered_cross_sum(sq_ref, 0.3, rbf_ref, 0.1) == cross_ref);
      std::vector<std::size_t> labels(n);
      Vector dist(n);
      kernels::assign_nearest(x, cent, labels, dist);
      CHECK(labels == labels_ref);
      CHECK(dist == dist_ref);
    }
  }
  kernels::set_threads(original);
}

TEST_CASE("serial kernels against direct formulas") {
  const Matrix x{{0, 0}, {3, 4}, {1, 1}};
  const Matrix sq = kernels::serial::pairwise_squared_distances(x);
  CHECK(sq == Matrix{{0, 25, 2}, {25, 0, 13}, {2, 13, 0}});
  CHECK(kernels::serial::gram(x) == Matrix{{0, 0, 0}, {0, 25, 7}, {0, 7, 2}});
  CHECK(kernels::serial::rbf_from_squared_distances(sq, 5.0)(0, 1) == std::exp(-0.5));
  CHECK(kernels::serial::row_sums(sq) == Vector{27, 38, 15});
  CHECK(kernels::serial::entry_sum(sq) == 80.0);
  CHECK(kernels::squared_distance(x.row(1), x.row(2)) == 13.0);

  // sum (a - 1)(b - 2) over a = b = [[1, 2], [3, 4]]: 0*-1 + 1*0 + 2*1 + 3*2 = 8.
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(kernels::serial::centered_cross_sum(a, 1.0, a, 2.0) == 8.0);

  // Ties go to the lowest centroid index.
  std::vector<std::size_t> labels(1);
  Vector dist(1);
  kernels::serial::assign_nearest(Matrix{{0.5}}, Matrix{{0}, {1}}, labels, dist);
  CHECK(labels[0] == 0);
  CHECK(dist[0] == 0.25);
}

TEST_CASE("set_threads changes max_threads") {
  const int original = kernels::max_threads();
  kernels::set_threads(3);
  CHECK(kernels::max_threads() == 3);
  kernels::set_threads(original);
  CHECK(kernels::max_threads() == original);
}
