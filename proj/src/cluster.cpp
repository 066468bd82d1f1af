#include "spectral/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "spectral/error.hpp"
#include "spectral/kernels.hpp"

namespace spectral {

namespace {

Matrix seed_centroids(const Matrix& rows, std::size_t k, Lcg64& rng) {
  const std::size_t n = rows.rows();
  std::vector<std::size_t> chosen;
  std::vector<char> taken(n, 0);
  auto take = [&](std::size_t i) {
    chosen.push_back(i);
    taken[i] = 1;
  };
  take(std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n))));

  Vector nearest(n);
  for (std::size_t i = 0; i < n; ++i)
    nearest[i] = kernels::squared_distance(rows.row(i), rows.row(chosen[0]));

  while (chosen.size() < k) {
    double total = 0.0;
    for (double v : nearest) total += v;
    const double u = rng.uniform();
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = u * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += nearest[i];
        if (nearest[i] > 0.0 && cum > target) {
          pick = i;
          break;
        }
      }
      if (pick == n)
        for (std::size_t i = n; i-- > 0;)
          if (nearest[i] > 0.0) {
            pick = i;
            break;
          }
    } else {
      for (std::size_t i = 0; i < n && pick == n; ++i)
        if (!taken[i]) pick = i;
    }
    take(pick);
    for (std::size_t i = 0; i < n; ++i)
      nearest[i] = std::min(nearest[i], kernels::squared_distance(rows.row(i), rows.row(pick)));
  }

  Matrix centroids(k, rows.cols());
  for (std::size_t c = 0; c < k; ++c)
    std::copy(rows.row(chosen[c]).begin(), rows.row(chosen[c]).end(), centroids.row(c).begin());
  return centroids;
}

void repair_empty_clusters(const Matrix& rows, Matrix& centroids, std::vector<std::size_t>& labels,
                           Vector& sq_dist) {
  const std::size_t k = centroids.rows();
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t l : labels) ++counts[l];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t donor = labels.size();
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (counts[labels[i]] >= 2 && (donor == labels.size() || sq_dist[i] > sq_dist[donor]))
        donor = i;
    if (donor == labels.size()) throw NumericalError("kmeans: empty-cluster repair failed");
    --counts[labels[donor]];
    labels[donor] = c;
    counts[c] = 1;
    sq_dist[donor] = 0.0;
    std::copy(rows.row(donor).begin(), rows.row(donor).end(), centroids.row(c).begin());
  }
}

Matrix cluster_means(const Matrix& rows, const std::vector<std::size_t>& labels, std::size_t k) {
  Matrix sums(k, rows.cols());
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    ++counts[labels[i]];
    auto dst = sums.row(labels[i]);
    auto src = rows.row(i);
    for (std::size_t j = 0; j < rows.cols(); ++j) dst[j] += src[j];
  }
  for (std::size_t c = 0; c < k; ++c)
    for (double& v : sums.row(c)) v /= static_cast<double>(counts[c]);
  return sums;
}

}  // namespace

ClusterResult kmeans(const Matrix& rows, std::size_t k, const KMeansOptions& opts) {
  const std::size_t n = rows.rows();
  if (n == 0 || rows.cols() == 0) throw ValidationError("kmeans: empty input");
  if (k < 1 || k > n)
    throw ValidationError("kmeans: k must be in [1, n]; got " + std::to_string(k) + " with n = " +
                          std::to_string(n));
  if (opts.max_iter < 1) throw ValidationError("kmeans: max_iter must be positive");
  for (double v : rows.data())
    if (!std::isfinite(v)) throw ValidationError("kmeans: non-finite input");

  Lcg64 rng(opts.seed);
  ClusterResult res;
  res.centroids = seed_centroids(rows, k, rng);
  res.labels.assign(n, 0);
  Vector sq_dist(n);
  std::vector<std::size_t> previous;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    kernels::assign_nearest(rows, res.centroids, res.labels, sq_dist);
    repair_empty_clusters(rows, res.centroids, res.labels, sq_dist);
    double inertia = 0.0;
    for (double v : sq_dist) inertia += v;
    res.inertia = inertia;
    res.inertia_trace.push_back(inertia);
    res.iterations = iter;

    if (iter > 1) {
      const double prev = res.inertia_trace[res.inertia_trace.size() - 2];
      if (res.labels == previous || std::abs(prev - inertia) <= opts.rel_tol * prev) break;
    }
    if (iter == opts.max_iter) break;
    previous = res.labels;
    res.centroids = cluster_means(rows, res.labels, k);
  }
  return res;
}

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw ValidationError("adjusted_rand_index: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> joint;
  std::map<std::size_t, std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    ++joint[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, count] : joint) index += comb2(static_cast<double>(count));
  for (const auto& [key, count] : rows) sum_a += comb2(static_cast<double>(count));
  for (const auto& [key, count] : cols) sum_b += comb2(static_cast<double>(count));

  const double expected = sum_a * sum_b / comb2(static_cast<double>(n));
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

std::vector<std::size_t> align_labels(std::span<const std::size_t> pred,
                                      std::span<const std::size_t> truth) {
  if (pred.size() != truth.size()) throw ValidationError("align_labels: length mismatch");
  std::vector<std::size_t> p_set(pred.begin(), pred.end());
  std::vector<std::size_t> t_set(truth.begin(), truth.end());
  for (auto* s : {&p_set, &t_set}) {
    std::sort(s->begin(), s->end());
    s->erase(std::unique(s->begin(), s->end()), s->end());
  }
  if (p_set.size() > 10 || t_set.size() > 10)
    throw ValidationError("align_labels: more than 10 distinct labels; exhaustive search refused");

  const std::size_t width = std::max(p_set.size(), t_set.size());
  std::vector<std::size_t> targets = t_set;
  std::size_t fresh = 0;
  if (!p_set.empty()) fresh = std::max(p_set.back(), t_set.empty() ? 0 : t_set.back()) + 1;
  while (targets.size() < width) targets.push_back(fresh++);

  auto index_of = [](const std::vector<std::size_t>& set, std::size_t v) {
    return static_cast<std::size_t>(std::lower_bound(set.begin(), set.end(), v) - set.begin());
  };
  std::vector<std::size_t> overlap(width * width, 0);
  for (std::size_t i = 0; i < pred.size(); ++i)
    ++overlap[index_of(p_set, pred[i]) * width + index_of(t_set, truth[i])];

  std::vector<std::size_t> perm(width), best;
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best_score = 0;
  do {
    std::size_t score = 0;
    for (std::size_t i = 0; i < p_set.size(); ++i) score += overlap[i * width + perm[i]];
    if (best.empty() || score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::size_t> out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) out[i] = targets[best[index_of(p_set, pred[i])]];
  return out;
}

double agreement(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw ValidationError("agreement: length mismatch");
  if (a.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

}  // namespace spectral
