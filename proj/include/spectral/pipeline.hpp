#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "spectral/cluster.hpp"
#include "spectral/data.hpp"
#include "spectral/embedding.hpp"
#include "spectral/graph.hpp"
#include "spectral/laplacian.hpp"
#include "spectral/pca.hpp"

namespace spectral {

enum class GraphKind { full, knn, epsilon };
enum class KernelKind { rbf, shifted_dot, unit };
enum class EmbeddingKind { nonconstant, classical };

struct PipelineConfig {
  std::filesystem::path input_path;
  bool has_header = false;
  char delimiter = ',';
  GraphKind graph = GraphKind::full;
  std::size_t k_neighbors = 10;
  double eps = 1.0;
  KernelKind kernel = KernelKind::rbf;
  double delta = 1.0;
  LaplacianVariant laplacian = LaplacianVariant::unnormalized;
  EmbeddingKind embedding = EmbeddingKind::nonconstant;
  /// Number of clusters. The nonconstant embedding uses k-1 eigenvectors for k clusters.
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  double zero_tol = kDefaultZeroTolerance;
};

/// Set one field from its flag name (without leading dashes) and a textual value.
/// Accepts the names used on the command line and in config files:
/// input, header, delimiter, graph, kernel, delta, eps, knn, laplacian,
/// embedding, k, seed, zero-tol, out.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// Parse "key = value" lines ('#' starts a comment) into cfg.
void apply_config_text(PipelineConfig& cfg, const std::string& text);

/// Throws ValidationError describing the first violated constraint.
void validate(const PipelineConfig& cfg);

std::string_view to_string(GraphKind g);
std::string_view to_string(KernelKind k);
std::string_view to_string(EmbeddingKind e);

/// Graph described by cfg. Applies standardize() first for shifted_dot.
WeightedGraph build_graph(const Dataset& d, const PipelineConfig& cfg);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct ClusterRun {
  /// "indicator" or "connected".
  std::string branch;
  std::size_t component_count = 0;
  std::size_t zero_multiplicity = 0;
  Vector eigenvalues;
  Embedding embedding;
  ClusterResult clusters;
  ObjectiveReport objective;
  /// Set on the indicator branch when the union-find count matches.
  bool indicator_checked = false;
  IndicatorCheck indicator;
  std::vector<StageTiming> timings;
};

/// Run the two-step pipeline on an in-memory dataset. No files are touched.
ClusterRun cluster_dataset(const Dataset& d, const PipelineConfig& cfg);

/// Load cfg.input_path, run cluster_dataset and write labels.csv, embedding.csv,
/// eigenvalues.txt, report.txt, report.json (all deterministic) and timings.json.
ClusterRun run_cluster(const PipelineConfig& cfg);

struct EigenReport {
  Vector eigenvalues;
  std::size_t zero_multiplicity = 0;
  std::size_t component_count = 0;
  double threshold = 0.0;
  double min_positive_weight = 0.0;
  bool agree() const { return zero_multiplicity == component_count; }
  /// "zero multiplicity M, components C, AGREE|DISAGREE".
  std::string summary() const;
};

EigenReport eigen_report(const Dataset& d, const PipelineConfig& cfg);

/// Writes eigenvalues.txt, eigen_report.txt and eigen_report.json.
EigenReport run_eigen_report(const PipelineConfig& cfg);

/// Writes pca_equiv.json and pca_equiv.txt into output_dir.
EquivalenceReport run_pca_equiv(const std::filesystem::path& input, std::size_t k,
                                const std::filesystem::path& output_dir,
                                const CsvOptions& csv = {});

/// 0 success, 1 validation, 2 numerical failure, 3 equivalence-check failure.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitEquivalence = 3,
};

}  // namespace spectral
