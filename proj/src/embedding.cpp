#include "spectral/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectral/error.hpp"
#include "spectral/kernels.hpp"

namespace spectral {

std::string_view to_string(EmbeddingVariant v) {
  switch (v) {
    case EmbeddingVariant::nonconstant: return "nonconstant";
    case EmbeddingVariant::classical: return "classical";
    case EmbeddingVariant::sym: return "sym";
    case EmbeddingVariant::sym_scaled: return "sym_scaled";
    case EmbeddingVariant::sym_eigenvalue_scaled: return "sym_eigenvalue_scaled";
    case EmbeddingVariant::rw: return "rw";
    case EmbeddingVariant::rw_scaled: return "rw_scaled";
  }
  return "unknown";
}

namespace {

Embedding take_columns(const EigenSystem& es, std::size_t first, std::size_t k,
                       EmbeddingVariant variant) {
  Embedding e;
  e.coordinates = column_block(es.eigenvectors, first, k);
  e.variant = variant;
  e.source_eigenvalues.assign(es.eigenvalues.begin() + static_cast<std::ptrdiff_t>(first),
                              es.eigenvalues.begin() + static_cast<std::ptrdiff_t>(first + k));
  return e;
}

void require_nonconstant_range(const EigenSystem& es, std::size_t k, double zero_tol) {
  const std::size_t n = es.size();
  if (k < 1 || k + 1 > n)
    throw ValidationError("embedding dimension k must be in [1, n-1]; got " + std::to_string(k) +
                          " with n = " + std::to_string(n));
  const std::size_t zeros = zero_eigenvalue_multiplicity(es.eigenvalues, zero_tol);
  if (zeros > 1)
    throw ValidationError("the graph has " + std::to_string(zeros) +
                          " connected components; use the classical embedding with k = " +
                          std::to_string(zeros) + " to recover the component indicators");
}

void require_degrees(std::span<const double> degrees, std::size_t n) {
  if (degrees.size() != n) throw ValidationError("degree vector has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (!(degrees[i] > 0.0)) throw IsolatedVertexError(i);
}

}  // namespace

Embedding embed_nonconstant(const EigenSystem& es, std::size_t k, double zero_tol) {
  require_nonconstant_range(es, k, zero_tol);
  return take_columns(es, 1, k, EmbeddingVariant::nonconstant);
}

Embedding embed_classical(const EigenSystem& es, std::size_t k) {
  if (k < 1 || k > es.size())
    throw ValidationError("embedding dimension k must be in [1, n]; got " + std::to_string(k));
  return take_columns(es, 0, k, EmbeddingVariant::classical);
}

Matrix scale_rows_by_degree(const Matrix& y, std::span<const double> degrees) {
  require_degrees(degrees, y.rows());
  Matrix z = y;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    const double root = std::sqrt(degrees[i]);
    for (double& v : z.row(i)) v /= root;
  }
  return z;
}

Embedding embed_normalized(const EigenSystem& es_sym, std::span<const double> degrees,
                           std::size_t k, NormalizedScaling scaling, double zero_tol) {
  require_degrees(degrees, es_sym.size());
  require_nonconstant_range(es_sym, k, zero_tol);
  Embedding e = take_columns(es_sym, 1, k, EmbeddingVariant::sym);
  switch (scaling) {
    case NormalizedScaling::none: break;
    case NormalizedScaling::degree:
      e.coordinates = scale_rows_by_degree(e.coordinates, degrees);
      e.variant = EmbeddingVariant::sym_scaled;
      break;
    case NormalizedScaling::eigenvalue:
      for (std::size_t t = 0; t < k; ++t) {
        const double lambda = e.source_eigenvalues[t];
        if (!(lambda > 0.0))
          throw ValidationError("eigenvalue scaling needs positive eigenvalues");
        const double root = std::sqrt(lambda);
        for (std::size_t i = 0; i < e.n(); ++i) e.coordinates(i, t) /= root;
      }
      e.variant = EmbeddingVariant::sym_eigenvalue_scaled;
      break;
  }
  return e;
}

Embedding embed_rw(const EigenSystem& es_rw, std::span<const double> degrees, std::size_t k,
                   bool scaled, double zero_tol) {
  require_degrees(degrees, es_rw.size());
  require_nonconstant_range(es_rw, k, zero_tol);
  Embedding e = take_columns(es_rw, 1, k, EmbeddingVariant::rw);
  if (scaled) {
    e.coordinates = scale_rows_by_degree(e.coordinates, degrees);
    e.variant = EmbeddingVariant::rw_scaled;
  }
  return e;
}

Matrix pairwise_dissimilarity(const Matrix& y) { return kernels::pairwise_squared_distances(y); }

double trace_quadratic(const Matrix& y, const Matrix& a) {
  if (a.rows() != y.rows() || a.cols() != y.rows())
    throw ValidationError("trace_quadratic: shape mismatch");
  const Matrix ay = multiply(a, y);
  double s = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t t = 0; t < y.cols(); ++t) s += y(i, t) * ay(i, t);
  return s;
}

ObjectiveReport covariance_objective(const Matrix& y, const WeightedGraph& g,
                                     const LaplacianMatrix& l) {
  const std::size_t n = g.n();
  if (y.rows() != n || l.matrix.rows() != n || l.matrix.cols() != n)
    throw ValidationError("covariance_objective: shape mismatch between Y, graph and Laplacian");

  Matrix z;
  switch (l.variant) {
    case LaplacianVariant::unnormalized:
    case LaplacianVariant::pca: z = y; break;
    case LaplacianVariant::sym: z = scale_rows_by_degree(y, g.degrees()); break;
    case LaplacianVariant::rw:
      throw ValidationError("covariance_objective: use the sym Laplacian for normalized objectives");
  }

  const double nn = static_cast<double>(n);
  const Matrix d = pairwise_dissimilarity(z);
  const Matrix& w = g.weights();
  const double d_mean = kernels::entry_sum(d) / (nn * nn);
  const double w_mean = kernels::entry_sum(w) / (nn * nn);

  ObjectiveReport r;
  r.covariance = -kernels::centered_cross_sum(d, d_mean, w, w_mean) / (2.0 * nn);
  r.trace_term = -trace_quadratic(y, l.matrix) / nn;

  double sq_norms = 0.0;
  Vector col_sum(z.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < z.cols(); ++t) {
      sq_norms += z(i, t) * z(i, t);
      col_sum[t] += z(i, t);
    }
  r.constant_term = (w_mean / nn) * (nn * sq_norms - dot(col_sum, col_sum));
  r.identity_gap = std::abs(r.covariance - r.trace_term - r.constant_term);
  return r;
}

IndicatorCheck indicator_check(const Embedding& y, const ComponentLabeling& labeling,
                               double tolerance) {
  if (y.k() != labeling.component_count)
    throw ValidationError("indicator_check: embedding has " + std::to_string(y.k()) +
                          " columns but the graph has " +
                          std::to_string(labeling.component_count) + " components");
  if (labeling.labels.size() != y.n())
    throw ValidationError("indicator_check: labeling size mismatch");

  const std::size_t c = labeling.component_count;
  std::vector<std::size_t> representative(c, y.n());
  for (std::size_t i = 0; i < y.n(); ++i)
    if (representative[labeling.labels[i]] == y.n()) representative[labeling.labels[i]] = i;

  IndicatorCheck out;
  const Matrix& yc = y.coordinates;
  for (std::size_t i = 0; i < y.n(); ++i)
    for (std::size_t j = i + 1; j < y.n(); ++j)
      if (labeling.labels[i] == labeling.labels[j])
        out.max_intra_spread = std::max(
            out.max_intra_spread, std::sqrt(kernels::squared_distance(yc.row(i), yc.row(j))));

  out.min_inter_distance = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b)
      out.min_inter_distance =
          std::min(out.min_inter_distance,
                   std::sqrt(kernels::squared_distance(yc.row(representative[a]),
                                                       yc.row(representative[b]))));

  out.passed = out.max_intra_spread <= tolerance && out.min_inter_distance >= 10.0 * tolerance;
  return out;
}

}  // namespace spectral
