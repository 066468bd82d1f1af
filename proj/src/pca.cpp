#include "spectral/pca.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "spectral/error.hpp"
#include "spectral/graph.hpp"
#include "spectral/kernels.hpp"

namespace spectral {

namespace {

void require_centered(const Matrix& x) {
  if (max_abs_column_mean(x) > 1e-10 * std::max(1.0, max_abs(x)))
    throw ValidationError("input columns are not centered");
}

void require_rank_bound(std::size_t k, std::size_t n, std::size_t m) {
  const std::size_t bound = std::min(n - 1, m);
  if (k < 1 || k > bound)
    throw ValidationError("k must be in [1, min(n-1, m)] = [1, " + std::to_string(bound) +
                          "]; got " + std::to_string(k));
}

double orthonormality_error(const Matrix& a) {
  const Matrix ata = multiply_transposed_left(a, a);
  double worst = 0.0;
  for (std::size_t i = 0; i < ata.rows(); ++i)
    for (std::size_t j = 0; j < ata.cols(); ++j)
      worst = std::max(worst, std::abs(ata(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

// Singular values of m, ascending, via the eigenvalues of m^T m.
Vector singular_values_ascending(const Matrix& m) {
  const EigenSystem es = eig_symmetric(multiply_transposed_left(m, m));
  Vector s(es.eigenvalues.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, es.eigenvalues[i]));
  return s;
}

}  // namespace

PcaModel pca_topk(const Dataset& centered, std::size_t k) {
  const Matrix& x = centered.points();
  require_centered(x);
  require_rank_bound(k, centered.n(), centered.m());

  PcaModel model;
  model.gram = kernels::gram(x);
  const EigenSystem es = eig_symmetric(model.gram);
  const std::size_t n = centered.n();
  model.components = Matrix(n, k);
  model.eigenvalues.resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t src = n - 1 - t;
    model.eigenvalues[t] = es.eigenvalues[src];
    for (std::size_t i = 0; i < n; ++i) model.components(i, t) = es.eigenvectors(i, src);
  }
  return model;
}

ShiftCheck verify_shift_relation(const LaplacianMatrix& l_pca, const Matrix& gram) {
  if (l_pca.variant != LaplacianVariant::pca)
    throw ValidationError("verify_shift_relation: expected a pca Laplacian");
  return verify_shift_relation(l_pca, eig_symmetric(l_pca.matrix), gram);
}

ShiftCheck verify_shift_relation(const LaplacianMatrix& l_pca, const EigenSystem& es,
                                 const Matrix& gram) {
  const std::size_t n = l_pca.matrix.rows();
  if (gram.rows() != n || gram.cols() != n || es.size() != n)
    throw ValidationError("verify_shift_relation: shape mismatch");
  const double two_n = 2.0 * static_cast<double>(n);

  ShiftCheck out;
  Vector u(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t i = 0; i < n; ++i) u[i] = es.eigenvectors(i, t);
    const Vector gu = multiply(gram, u);
    if (t == 0) {
      out.constant_residual = norm2(gu);
      continue;
    }
    const double shift = two_n - es.eigenvalues[t];
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (gu[i] - shift * u[i]) * (gu[i] - shift * u[i]);
    out.residuals.push_back(std::sqrt(s));
  }

  double gram_max = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    gram_max = std::max(gram_max, std::abs(two_n - es.eigenvalues[i]));
  out.tolerance = 1e-7 * std::max(two_n, gram_max);
  out.passed = out.constant_residual <= out.tolerance;
  for (double r : out.residuals) out.passed = out.passed && r <= out.tolerance;
  return out;
}

Vector subspace_principal_angles(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.cols() == 0)
    throw ValidationError("subspace_principal_angles: bases must have the same n x k shape");
  if (orthonormality_error(a) > 1e-8 || orthonormality_error(b) > 1e-8)
    throw ValidationError("subspace_principal_angles: bases must be orthonormal");

  const std::size_t k = a.cols();
  const Matrix overlap = multiply_transposed_left(a, b);
  Matrix residual = b;
  const Matrix projected = multiply(a, overlap);
  for (std::size_t i = 0; i < residual.rows(); ++i)
    for (std::size_t j = 0; j < k; ++j) residual(i, j) -= projected(i, j);

  const Vector cosines = singular_values_ascending(overlap);  // ascending
  const Vector sines = singular_values_ascending(residual);   // ascending

  Vector angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double c = std::min(1.0, cosines[k - 1 - i]);
    const double s = std::min(1.0, sines[i]);
    angles[i] = c * c < 0.5 ? std::acos(c) : std::asin(s);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

EquivalenceReport pca_equivalence_report(const Dataset& raw, std::size_t k) {
  require_rank_bound(k, raw.n(), raw.m());
  const Dataset x = standardize(raw);
  const std::size_t n = x.n();
  const double two_n = 2.0 * static_cast<double>(n);

  EquivalenceReport r;
  r.k = k;
  r.n = n;

  // Route A: smallest k non-constant eigenvectors of L^PCA.
  const LaplacianMatrix l_pca = laplacian_pca(x);
  const EigenSystem es_l = eig_symmetric(l_pca.matrix);
  r.laplacian_eigenvalues = es_l.eigenvalues;
  r.laplacian_basis = column_block(es_l.eigenvectors, 1, k);

  // Route B: top-k eigenvectors of the Gram matrix.
  const PcaModel pca = pca_topk(x, k);
  r.pca_basis = pca.components;
  r.gram_eigenvalues = pca.eigenvalues;

  const ShiftCheck shift = verify_shift_relation(l_pca, es_l, pca.gram);
  r.shift_residuals = shift.residuals;
  r.constant_residual = shift.constant_residual;
  r.shift_tolerance = shift.tolerance;
  r.shift_passed = shift.passed;

  const WeightedGraph g = build_full_graph(x, ShiftedDotKernel{});
  for (double deg : g.degrees())
    r.degree_deviation = std::max(r.degree_deviation, std::abs(deg - two_n) / two_n);

  const double next = k + 1 < n ? es_l.eigenvalues[k + 1] : two_n;
  r.eigengap_at_k = next - es_l.eigenvalues[k];
  r.degenerate = r.eigengap_at_k <= 1e-6 * std::max(es_l.eigenvalues.back(), 1.0);

  r.principal_angles = subspace_principal_angles(r.laplacian_basis, r.pca_basis);
  r.max_angle = r.principal_angles.back();
  return r;
}

std::string to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["principal_angles"] = r.principal_angles;
  j["max_angle"] = r.max_angle;
  j["eigengap_at_k"] = r.eigengap_at_k;
  j["degenerate"] = r.degenerate;
  j["vector_claims"] = r.degenerate ? "suppressed" : "subspace_equal";
  j["shift_residuals"] = r.shift_residuals;
  j["constant_residual"] = r.constant_residual;
  j["shift_tolerance"] = r.shift_tolerance;
  j["shift_passed"] = r.shift_passed;
  j["degree_deviation"] = r.degree_deviation;
  j["laplacian_eigenvalues"] = r.laplacian_eigenvalues;
  j["gram_top_eigenvalues"] = r.gram_eigenvalues;
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

}  // namespace spectral
