#include "spectral/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/error.hpp"
#include "spectral/io.hpp"
#include "spectral/kernels.hpp"

namespace spectral {

WeightedGraph::WeightedGraph(Matrix weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) throw ValidationError("weight matrix must be square");
  const std::size_t n = weights_.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw ValidationError("weight (" + std::to_string(i) + "," + std::to_string(j) +
                              ") must be finite and nonnegative");
      if (w != weights_(j, i))
        throw ValidationError("weight matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  degrees_ = kernels::row_sums(weights_);
}

double rbf_weight(std::span<const double> a, std::span<const double> b, double delta) {
  if (!(delta > 0.0)) throw ValidationError("rbf bandwidth delta must be positive");
  return std::exp(-kernels::squared_distance(a, b) / (2.0 * delta * delta));
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ValidationError("rbf bandwidth delta must be positive and finite");
}

Matrix rbf_weights(const Matrix& sq_dist, double delta) {
  Matrix w = kernels::rbf_from_squared_distances(sq_dist, delta);
  for (std::size_t i = 0; i < w.rows(); ++i) w(i, i) = 0.0;
  return w;
}

}  // namespace

WeightedGraph build_full_graph(const Dataset& d, const FullKernel& kernel) {
  if (const auto* rbf = std::get_if<RbfKernel>(&kernel)) {
    check_delta(rbf->delta);
    return WeightedGraph(rbf_weights(kernels::pairwise_squared_distances(d.points()), rbf->delta));
  }
  Matrix w = kernels::gram(d.points());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) {
      w(i, j) += 2.0;
      if (!(w(i, j) > 0.0))
        throw ValidationError(
            "shifted_dot weight is not positive; center and scale the data so |x_i . x_j| < 2");
    }
  return WeightedGraph(std::move(w));
}

WeightedGraph build_knn_graph(const Dataset& d, std::size_t k_neighbors, const RbfKernel& kernel) {
  const std::size_t n = d.n();
  if (k_neighbors < 1 || k_neighbors >= n)
    throw ValidationError("k_neighbors must be in [1, n-1]; got " + std::to_string(k_neighbors) +
                          " with n = " + std::to_string(n));
  check_delta(kernel.delta);
  const Matrix sq = kernels::pairwise_squared_distances(d.points());
  const Matrix full = rbf_weights(sq, kernel.delta);

  std::vector<char> selected(n * n, 0);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_neighbors),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        return sq(i, a) != sq(i, b) ? sq(i, a) < sq(i, b) : a < b;
                      });
    for (std::size_t t = 0; t < k_neighbors; ++t) selected[i * n + order[t]] = 1;
  }

  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (selected[i * n + j] || selected[j * n + i])) w(i, j) = full(i, j);
  return WeightedGraph(std::move(w));
}

WeightedGraph build_epsilon_graph(const Dataset& d, double epsilon, const EpsilonKernel& kernel) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  const Matrix sq = kernels::pairwise_squared_distances(d.points());
  const auto* rbf = std::get_if<RbfKernel>(&kernel);
  if (rbf) check_delta(rbf->delta);
  const std::size_t n = d.n();
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || std::sqrt(sq(i, j)) > epsilon) continue;
      w(i, j) = rbf ? std::exp(-sq(i, j) / (2.0 * rbf->delta * rbf->delta)) : 1.0;
    }
  return WeightedGraph(std::move(w));
}

namespace {

class DisjointSet {
public:
  explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ComponentLabeling connected_components(const WeightedGraph& g) {
  const std::size_t n = g.n();
  DisjointSet ds(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.weights()(i, j) > 0.0) ds.unite(i, j);

  ComponentLabeling out;
  out.labels.assign(n, 0);
  std::vector<std::size_t> id_of_root(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = ds.find(i);
    if (id_of_root[r] == n) id_of_root[r] = out.component_count++;
    out.labels[i] = id_of_root[r];
  }
  return out;
}

std::string edge_list_csv(const WeightedGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = i + 1; j < g.n(); ++j)
      if (g.weights()(i, j) > 0.0)
        out += std::to_string(i) + "," + std::to_string(j) + "," +
               format_double(g.weights()(i, j)) + "\n";
  return out;
}

}  // namespace spectral
