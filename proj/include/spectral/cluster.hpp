#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spectral/matrix.hpp"

namespace spectral {

/// 64-bit linear congruential generator used for k-means++ seeding.
///
///   state_0     = seed
///   state_{t+1} = state_t * 6364136223846793005 + 1442695040888963407  (mod 2^64)
///   uniform()   = (state_{t+1} >> 11) * 2^-53, in [0, 1)
///
/// This is part of the reproducibility contract: the same seed yields the same
/// clustering in any reimplementation that follows it.
class Lcg64 {
public:
  explicit Lcg64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

struct KMeansOptions {
  std::uint64_t seed = 0;
  int max_iter = 300;
  /// Stop when |inertia_prev - inertia| <= rel_tol * inertia_prev.
  double rel_tol = 1e-9;
};

struct ClusterResult {
  std::vector<std::size_t> labels;
  Matrix centroids;
  double inertia = 0.0;
  int iterations = 0;
  /// Inertia after each assignment step, in order.
  std::vector<double> inertia_trace;
};

/// k-means++ seeding followed by Lloyd iterations.
///
/// Seeding: the first centre is row floor(u * n); every further centre is the
/// first row whose cumulative D^2 weight exceeds u * total (all-zero weights
/// fall back to the first row not yet chosen). Ties in assignment go to the
/// lowest centroid index. An empty cluster takes the point farthest from its
/// centroid (lowest index on ties) out of a cluster with at least two members.
ClusterResult kmeans(const Matrix& rows, std::size_t k, const KMeansOptions& opts = {});

/// Chance-corrected pair-counting agreement. 1 iff the partitions are identical.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

/// Relabel `pred` with the label permutation that maximizes agreement with
/// `truth`. Exhaustive; both label sets must have at most 10 distinct values.
std::vector<std::size_t> align_labels(std::span<const std::size_t> pred,
                                      std::span<const std::size_t> truth);

/// Fraction of positions where a and b agree.
double agreement(std::span<const std::size_t> a, std::span<const std::size_t> b);

}  // namespace spectral
