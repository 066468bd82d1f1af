#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "spectral/data.hpp"
#include "spectral/matrix.hpp"

namespace spectral {

/// Symmetric nonnegative affinity matrix W with its degree vector.
class WeightedGraph {
public:
  /// Validates symmetry (exact), nonnegativity and finiteness, then computes degrees.
  explicit WeightedGraph(Matrix weights);

  const Matrix& weights() const noexcept { return weights_; }
  const Vector& degrees() const noexcept { return degrees_; }
  std::size_t n() const noexcept { return weights_.rows(); }

private:
  Matrix weights_;
  Vector degrees_;
};

struct RbfKernel {
  double delta = 1.0;
};
/// w_ij = 2 + x_i . x_j on standardized data.
struct ShiftedDotKernel {};
struct UnitKernel {};

using FullKernel = std::variant<RbfKernel, ShiftedDotKernel>;
using EpsilonKernel = std::variant<RbfKernel, UnitKernel>;

/// exp(-||a - b||^2 / (2 delta^2)).
double rbf_weight(std::span<const double> a, std::span<const double> b, double delta);

/// All pairs connected. rbf leaves the diagonal at 0; shifted_dot keeps
/// w_ii = 2 + ||x_i||^2 so that degrees are the full row sums.
WeightedGraph build_full_graph(const Dataset& d, const FullKernel& kernel);

/// Union-symmetrized kNN graph with rbf weights; neighbor ties go to the lower index.
WeightedGraph build_knn_graph(const Dataset& d, std::size_t k_neighbors, const RbfKernel& kernel);

/// Edge iff 0 < ||x_i - x_j|| <= epsilon (i != j).
WeightedGraph build_epsilon_graph(const Dataset& d, double epsilon, const EpsilonKernel& kernel);

struct ComponentLabeling {
  std::vector<std::size_t> labels;
  std::size_t component_count = 0;
};

/// Union-find over strictly positive weights. Ids follow first vertex occurrence.
ComponentLabeling connected_components(const WeightedGraph& g);

/// "i,j,w" for every positive off-diagonal weight with i < j, lexicographic order.
std::string edge_list_csv(const WeightedGraph& g);

}  // namespace spectral
