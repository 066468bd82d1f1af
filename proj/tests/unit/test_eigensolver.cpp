#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "spectral/eigensolver.hpp"
#include "spectral/error.hpp"
#include "spectral/laplacian.hpp"

using namespace spectral;

namespace {

double reconstruction_error(const Matrix& a, const EigenSystem& es) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double r = 0.0;
      for (std::size_t t = 0; t < n; ++t)
        r += es.eigenvectors(i, t) * es.eigenvalues[t] * es.eigenvectors(j, t);
      s += (r - a(i, j)) * (r - a(i, j));
    }
  return std::sqrt(s);
}

double orthonormality_error(const Matrix& v) {
  double worst = 0.0;
  for (std::size_t s = 0; s < v.cols(); ++s)
    for (std::size_t t = 0; t < v.cols(); ++t) {
      double d = 0.0;
      for (std::size_t i = 0; i < v.rows(); ++i) d += v(i, s) * v(i, t);
      worst = std::max(worst, std::abs(d - (s == t ? 1.0 : 0.0)));
    }
  return worst;
}

void check_sign_rule(const Matrix& v) {
  for (std::size_t t = 0; t < v.cols(); ++t) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.rows(); ++i)
      if (std::abs(v(i, t)) > std::abs(v(arg, t)) * (1.0 + 1e-12)) arg = i;
    CHECK(v(arg, t) > 0.0);
  }
}

void check_type_invariants(const Matrix& a, const EigenSystem& es) {
  for (std::size_t t = 1; t < es.size(); ++t) CHECK(es.eigenvalues[t - 1] <= es.eigenvalues[t]);
  CHECK(orthonormality_error(es.eigenvectors) <= 1e-9);
  double scale = 1.0;
  for (double l : es.eigenvalues) scale = std::max(scale, std::abs(l));
  CHECK(es.max_residual <= 1e-8 * scale);
  CHECK(es.max_residual == max_eigen_residual(a, es));
  check_sign_rule(es.eigenvectors);
}

}  // namespace

TEST_CASE("eig_symmetric examples") {
  SUBCASE("identity") {
    const auto es = eig_symmetric(Matrix::identity(4));
    CHECK(es.eigenvalues == Vector{1, 1, 1, 1});
    CHECK(es.eigenvectors == Matrix::identity(4));
  }
  SUBCASE("2x2 Laplacian") {
    const auto es = eig_symmetric(Matrix{{1, -1}, {-1, 1}});
    CHECK(std::abs(es.eigenvalues[0]) <= 1e-15);
    CHECK(es.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-15));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(es.eigenvectors(0, 0) - r) <= 1e-15);
    CHECK(std::abs(es.eigenvectors(1, 0) - r) <= 1e-15);
    // (1,-1)/sqrt(2) has a tie in magnitude; the lower index is made positive.
    CHECK(std::abs(es.eigenvectors(0, 1) - r) <= 1e-15);
    CHECK(std::abs(es.eigenvectors(1, 1) + r) <= 1e-15);
  }
  SUBCASE("path P3") {
    const Matrix l{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
    const auto es = eig_symmetric(l);
    CHECK(std::abs(es.eigenvalues[0]) <= 1e-14);
    CHECK(es.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(es.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
    check_type_invariants(l, es);
  }
  SUBCASE("complete graphs K4, K5, K6") {
    oracle::Rng rng(1);
    for (std::size_t n : {4u, 5u, 6u}) {
      const Matrix l = oracle::laplacian_of(oracle::complete_weights(n));
      const auto es = eig_symmetric(l);
      CHECK(std::abs(es.eigenvalues[0]) <= 1e-12);
      for (std::size_t t = 1; t < n; ++t)
        CHECK(es.eigenvalues[t] == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
      check_type_invariants(l, es);
      // The n-eigenspace matches an independent inverse-iteration basis.
      const Matrix ref = oracle::inverse_iteration_subspace(l, static_cast<double>(n), n - 1, rng);
      CHECK(oracle::max_angle_bound(column_block(es.eigenvectors, 1, n - 1), ref) <= 1e-6);
    }
  }
}

TEST_CASE("eig_symmetric rejects invalid input") {
  CHECK_THROWS_AS(eig_symmetric(Matrix(2, 3)), ValidationError);
  CHECK_THROWS_AS(eig_symmetric(Matrix{{1, 2}, {2.1, 1}}), ValidationError);
  CHECK_THROWS_AS(eig_symmetric(Matrix{{1, std::nan("")}, {std::nan(""), 1}}), ValidationError);
  // One sweep is not enough for a dense 6x6.
  oracle::Rng rng(2);
  CHECK_THROWS_AS(eig_symmetric(oracle::random_symmetric(rng, 6), {.max_sweeps = 1}),
                  NumericalError);
}

TEST_CASE("eig_symmetric agrees with the bisection and inverse-iteration oracles") {
  oracle::Rng rng(99);
  const auto corpus = oracle::small_corpus(rng);
  for (const Matrix& a : corpus) {
    const auto es = eig_symmetric(a);
    check_type_invariants(a, es);
    const double fa = frobenius_norm(a);
    CHECK(reconstruction_error(a, es) <= 1e-8 * std::max(fa, 1e-300));
    CHECK(std::abs(trace(a) - std::accumulate(es.eigenvalues.begin(), es.eigenvalues.end(), 0.0)) <=
          1e-9 * std::max(1.0, std::abs(trace(a))));

    const Vector ref = oracle::bisection_eigenvalues(a);
    for (std::size_t t = 0; t < a.rows(); ++t)
      CHECK(std::abs(es.eigenvalues[t] - ref[t]) <= 1e-7);

    // Invariant subspaces, one per isolated eigenvalue cluster.
    const double scale = std::max(1.0, max_abs(a));
    const auto clusters = oracle::eigenvalue_clusters(ref, 1e-6 * scale);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const auto [first, count] = clusters[c];
      const double mu = ref[first];
      const Matrix sub = oracle::inverse_iteration_subspace(a, mu, count, rng);
      CHECK(oracle::max_angle_bound(column_block(es.eigenvectors, first, count), sub) <= 1e-6);
    }
  }
}

TEST_CASE("eig_symmetric is deterministic") {
  oracle::Rng rng(4);
  const Matrix a = oracle::random_symmetric(rng, 9);
  const auto x = eig_symmetric(a);
  const auto y = eig_symmetric(a);
  CHECK(x.eigenvalues == y.eigenvalues);
  CHECK(x.eigenvectors == y.eigenvectors);
}

TEST_CASE("larger random symmetric matrices satisfy the type invariants") {
  oracle::Rng rng(12);
  for (std::size_t n : {10u, 20u, 40u}) {
    const Matrix a = oracle::random_symmetric(rng, n);
    const auto es = eig_symmetric(a);
    check_type_invariants(a, es);
    CHECK(reconstruction_error(a, es) <= 1e-8 * frobenius_norm(a));
    CHECK(es.sweeps <= 100);
  }
}

TEST_CASE("canonicalize_sign") {
  Vector v{0.1, -0.9, 0.3};
  canonicalize_sign(v);
  CHECK(v == Vector{-0.1, 0.9, -0.3});
  Vector tie{-0.5, 0.5};
  canonicalize_sign(tie);
  CHECK(tie == Vector{0.5, -0.5});
  Vector zero{0.0, 0.0};
  canonicalize_sign(zero);
  CHECK(zero == Vector{0.0, 0.0});
}

TEST_CASE("eig_rw examples") {
  SUBCASE("unit degrees match eig_symmetric") {
    // A 4-cycle with weights 1/2 has all degrees equal to 1.
    Matrix w(4, 4);
    for (std::size_t i = 0; i < 4; ++i) w(i, (i + 1) % 4) = w((i + 1) % 4, i) = 0.5;
    const WeightedGraph g(w);
    const auto lr = laplacian_rw(g);
    const auto a = eig_rw(lr, g.degrees());
    const auto b = eig_symmetric(lr.matrix);
    for (std::size_t t = 0; t < 4; ++t) CHECK(std::abs(a.eigenvalues[t] - b.eigenvalues[t]) <= 1e-14);
    // Eigenvalue 1 is double; compare that subspace, and the simple ones vector-wise.
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(a.eigenvectors(i, 0) - b.eigenvectors(i, 0)) <= 1e-12);
      CHECK(std::abs(a.eigenvectors(i, 3) - b.eigenvectors(i, 3)) <= 1e-12);
    }
    CHECK(oracle::projector_distance(column_block(a.eigenvectors, 1, 2),
                                     column_block(b.eigenvectors, 1, 2)) <= 1e-10);
  }
  SUBCASE("constant first eigenvector and direct residuals on random graphs") {
    oracle::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = trial < 50 ? 5 : oracle::uniform_index(rng, 2, 12);
      const WeightedGraph g(oracle::random_component_graph(rng, n, 1).weights);
      const auto lr = laplacian_rw(g);
      const auto es = eig_rw(lr, g.degrees());
      CHECK(std::abs(es.eigenvalues[0]) <= 1e-10);
      const double c = 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(es.eigenvectors(i, 0) - c) <= 1e-8);
      // Residuals recomputed by direct multiplication.
      for (std::size_t t = 0; t < n; ++t) {
        const Vector u = es.eigenvectors.column(t);
        CHECK(norm2(u) == doctest::Approx(1.0).epsilon(1e-12));
        const Vector lu = multiply(lr.matrix, u);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r += std::pow(lu[i] - es.eigenvalues[t] * u[i], 2);
        CHECK(std::sqrt(r) <= 1e-8);
      }
      // D-orthogonality of distinct eigenvectors.
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t) {
          if (es.eigenvalues[t] - es.eigenvalues[s] < 1e-6) continue;
          double d = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            d += es.eigenvectors(i, s) * g.degrees()[i] * es.eigenvectors(i, t);
          CHECK(std::abs(d) <= 1e-8 * std::accumulate(g.degrees().begin(), g.degrees().end(), 0.0));
        }
    }
  }
  SUBCASE("errors") {
    const WeightedGraph g(Matrix{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(eig_rw(laplacian_sym(g), g.degrees()), ValidationError);
    CHECK_THROWS_AS(eig_rw(laplacian_rw(g), Vector{1, 0}), IsolatedVertexError);
    CHECK_THROWS_AS(eig_rw(laplacian_rw(g), Vector{1}), ValidationError);
  }
}
