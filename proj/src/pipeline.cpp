#include "spectral/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "spectral/eigensolver.hpp"
#include "spectral/error.hpp"
#include "spectral/io.hpp"

namespace spectral {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T out{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ValidationError("invalid value '" + text + "' for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError("invalid boolean '" + v + "' for " + key);
}

class Stopwatch {
public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}
  void lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string labels_csv(const std::vector<std::size_t>& labels) {
  std::string out = "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out += std::to_string(i) + "," + std::to_string(labels[i]) + "\n";
  return out;
}

std::string lines_of(const Vector& values) {
  std::string out;
  for (double v : values) out += format_double(v) + "\n";
  return out;
}

nlohmann::ordered_json config_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["input"] = cfg.input_path.string();
  j["header"] = cfg.has_header;
  j["delimiter"] = std::string(1, cfg.delimiter);
  j["graph"] = to_string(cfg.graph);
  if (cfg.graph == GraphKind::knn) j["knn"] = cfg.k_neighbors;
  if (cfg.graph == GraphKind::epsilon) j["eps"] = cfg.eps;
  j["kernel"] = to_string(cfg.kernel);
  if (cfg.kernel == KernelKind::rbf) j["delta"] = cfg.delta;
  j["laplacian"] = to_string(cfg.laplacian);
  j["embedding"] = to_string(cfg.embedding);
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["zero_tol"] = cfg.zero_tol;
  return j;
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory " + dir.string());
}

LaplacianMatrix build_laplacian(const WeightedGraph& g, LaplacianVariant v) {
  try {
    switch (v) {
      case LaplacianVariant::sym: return laplacian_sym(g);
      case LaplacianVariant::rw: return laplacian_rw(g);
      default: return laplacian_unnormalized(g);
    }
  } catch (const IsolatedVertexError& e) {
    throw ValidationError(std::string(e.what()) +
                          "; increase --eps or --knn, or use --laplacian unnormalized");
  }
}

EigenSystem decompose(const LaplacianMatrix& l) {
  if (l.variant == LaplacianVariant::rw) return eig_rw(l, l.degrees);
  return eig_symmetric(l.matrix);
}

}  // namespace

std::string_view to_string(GraphKind g) {
  switch (g) {
    case GraphKind::full: return "full";
    case GraphKind::knn: return "knn";
    case GraphKind::epsilon: return "epsilon";
  }
  return "unknown";
}

std::string_view to_string(KernelKind k) {
  switch (k) {
    case KernelKind::rbf: return "rbf";
    case KernelKind::shifted_dot: return "shifted_dot";
    case KernelKind::unit: return "unit";
  }
  return "unknown";
}

std::string_view to_string(EmbeddingKind e) {
  return e == EmbeddingKind::classical ? "classical" : "nonconstant";
}

void apply_setting(PipelineConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string value = trim(raw_value);

  if (key == "input") {
    cfg.input_path = value;
  } else if (key == "header") {
    cfg.has_header = value.empty() ? true : parse_bool(key, value);
  } else if (key == "delimiter") {
    if (value == "tab" || value == "\\t")
      cfg.delimiter = '\t';
    else if (value.size() == 1)
      cfg.delimiter = value[0];
    else
      throw ValidationError("delimiter must be a single character or 'tab'");
  } else if (key == "graph") {
    if (value == "full") cfg.graph = GraphKind::full;
    else if (value == "knn") cfg.graph = GraphKind::knn;
    else if (value == "epsilon") cfg.graph = GraphKind::epsilon;
    else throw ValidationError("graph must be full, knn or epsilon; got '" + value + "'");
  } else if (key == "kernel") {
    if (value == "rbf") cfg.kernel = KernelKind::rbf;
    else if (value == "shifted_dot" || value == "shifted-dot") cfg.kernel = KernelKind::shifted_dot;
    else if (value == "unit") cfg.kernel = KernelKind::unit;
    else throw ValidationError("kernel must be rbf, shifted_dot or unit; got '" + value + "'");
  } else if (key == "delta") {
    cfg.delta = parse_value<double>(key, value);
  } else if (key == "eps") {
    cfg.eps = parse_value<double>(key, value);
  } else if (key == "knn") {
    cfg.k_neighbors = parse_value<std::size_t>(key, value);
  } else if (key == "laplacian") {
    if (value == "unnormalized") cfg.laplacian = LaplacianVariant::unnormalized;
    else if (value == "sym") cfg.laplacian = LaplacianVariant::sym;
    else if (value == "rw") cfg.laplacian = LaplacianVariant::rw;
    else throw ValidationError("laplacian must be unnormalized, sym or rw; got '" + value + "'");
  } else if (key == "embedding") {
    if (value == "nonconstant") cfg.embedding = EmbeddingKind::nonconstant;
    else if (value == "classical") cfg.embedding = EmbeddingKind::classical;
    else throw ValidationError("embedding must be nonconstant or classical; got '" + value + "'");
  } else if (key == "k") {
    cfg.k = parse_value<std::size_t>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_value<std::uint64_t>(key, value);
  } else if (key == "zero-tol") {
    cfg.zero_tol = parse_value<double>(key, value);
  } else if (key == "out") {
    cfg.output_dir = value;
  } else {
    throw ValidationError("unknown setting '" + raw_key + "'");
  }
}

void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(number) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const PipelineConfig& cfg) {
  if (cfg.k < 1) throw ValidationError("k must be at least 1");
  if (cfg.kernel == KernelKind::rbf && !(cfg.delta > 0.0 && std::isfinite(cfg.delta)))
    throw ValidationError("delta must be positive for the rbf kernel");
  if (cfg.graph == GraphKind::epsilon && !(cfg.eps > 0.0 && std::isfinite(cfg.eps)))
    throw ValidationError("eps must be positive for the epsilon graph");
  if (cfg.graph == GraphKind::knn && cfg.k_neighbors < 1)
    throw ValidationError("knn must be at least 1");
  if (!(cfg.zero_tol > 0.0 && std::isfinite(cfg.zero_tol)))
    throw ValidationError("zero-tol must be positive");
  if (cfg.kernel == KernelKind::shifted_dot && cfg.graph != GraphKind::full)
    throw ValidationError("the shifted_dot kernel requires --graph full");
  if (cfg.kernel == KernelKind::unit && cfg.graph != GraphKind::epsilon)
    throw ValidationError("the unit kernel requires --graph epsilon");
  if (cfg.embedding == EmbeddingKind::nonconstant && cfg.k < 2)
    throw ValidationError("the nonconstant embedding needs k >= 2 clusters (k-1 eigenvectors)");
}

WeightedGraph build_graph(const Dataset& d, const PipelineConfig& cfg) {
  switch (cfg.graph) {
    case GraphKind::full:
      if (cfg.kernel == KernelKind::shifted_dot)
        return build_full_graph(standardize(d), ShiftedDotKernel{});
      return build_full_graph(d, RbfKernel{cfg.delta});
    case GraphKind::knn: return build_knn_graph(d, cfg.k_neighbors, RbfKernel{cfg.delta});
    case GraphKind::epsilon:
      if (cfg.kernel == KernelKind::unit) return build_epsilon_graph(d, cfg.eps, UnitKernel{});
      return build_epsilon_graph(d, cfg.eps, RbfKernel{cfg.delta});
  }
  throw ValidationError("unknown graph kind");
}

ClusterRun cluster_dataset(const Dataset& d, const PipelineConfig& cfg) {
  validate(cfg);
  if (cfg.k > d.n())
    throw ValidationError("k = " + std::to_string(cfg.k) + " exceeds the point count " +
                          std::to_string(d.n()));
  ClusterRun run;
  Stopwatch clock(run.timings);

  const WeightedGraph g = build_graph(d, cfg);
  run.component_count = connected_components(g).component_count;
  clock.lap("graph");

  const LaplacianMatrix lap = build_laplacian(g, cfg.laplacian);
  clock.lap("laplacian");

  const EigenSystem es = decompose(lap);
  run.eigenvalues = es.eigenvalues;
  run.zero_multiplicity = zero_eigenvalue_multiplicity(es.eigenvalues, cfg.zero_tol);
  clock.lap("eigensystem");

  const bool sym = cfg.laplacian == LaplacianVariant::sym;
  const bool indicator = run.zero_multiplicity > 1 && cfg.embedding == EmbeddingKind::classical &&
                         cfg.k == run.zero_multiplicity;
  run.branch = indicator ? "indicator" : "connected";

  if (cfg.embedding == EmbeddingKind::classical) {
    run.embedding = embed_classical(es, cfg.k);
    // L^sym eigenvectors carry a sqrt(D) factor; undo it so component rows coincide.
    if (sym) {
      run.embedding.coordinates = scale_rows_by_degree(run.embedding.coordinates, g.degrees());
      run.embedding.variant = EmbeddingVariant::sym_scaled;
    }
  } else {
    const std::size_t dims = cfg.k - 1;
    switch (cfg.laplacian) {
      case LaplacianVariant::sym:
        run.embedding =
            embed_normalized(es, g.degrees(), dims, NormalizedScaling::degree, cfg.zero_tol);
        break;
      case LaplacianVariant::rw:
        run.embedding = embed_rw(es, g.degrees(), dims, false, cfg.zero_tol);
        break;
      default: run.embedding = embed_nonconstant(es, dims, cfg.zero_tol); break;
    }
  }
  if (indicator) {
    const ComponentLabeling labeling = connected_components(g);
    if (labeling.component_count == cfg.k) {
      run.indicator = indicator_check(run.embedding, labeling);
      run.indicator_checked = true;
    }
  }
  clock.lap("embedding");

  run.clusters = kmeans(run.embedding.coordinates, cfg.k, KMeansOptions{cfg.seed});
  clock.lap("kmeans");

  run.objective = covariance_objective(run.embedding.coordinates, g, laplacian_unnormalized(g));
  clock.lap("objective");
  return run;
}

ClusterRun run_cluster(const PipelineConfig& cfg) {
  validate(cfg);
  const Dataset d = load_csv(cfg.input_path, {cfg.has_header, cfg.delimiter});
  ClusterRun run = cluster_dataset(d, cfg);

  prepare_output_dir(cfg.output_dir);
  const auto& dir = cfg.output_dir;
  write_text_file(dir / "labels.csv", labels_csv(run.clusters.labels));
  write_text_file(dir / "embedding.csv", matrix_to_csv(run.embedding.coordinates));
  write_text_file(dir / "eigenvalues.txt", lines_of(run.eigenvalues));

  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["n"] = d.n();
  j["branch"] = run.branch;
  j["component_count"] = run.component_count;
  j["zero_multiplicity"] = run.zero_multiplicity;
  j["embedding_variant"] = to_string(run.embedding.variant);
  j["embedding_dims"] = run.embedding.k();
  j["source_eigenvalues"] = run.embedding.source_eigenvalues;
  if (run.indicator_checked) {
    j["indicator_check"] = {{"passed", run.indicator.passed},
                            {"max_intra_spread", run.indicator.max_intra_spread},
                            {"min_inter_distance", run.indicator.min_inter_distance}};
  }
  j["objective"] = {{"covariance", run.objective.covariance},
                    {"trace_term", run.objective.trace_term},
                    {"constant_term", run.objective.constant_term},
                    {"identity_gap", run.objective.identity_gap}};
  j["kmeans"] = {{"inertia", run.clusters.inertia}, {"iterations", run.clusters.iterations}};
  write_text_file(dir / "report.json", j.dump(2) + "\n");

  std::ostringstream txt;
  txt << "points: " << d.n() << "\n"
      << "graph: " << to_string(cfg.graph) << ", kernel: " << to_string(cfg.kernel)
      << ", laplacian: " << to_string(cfg.laplacian) << "\n"
      << "branch: " << run.branch << "\n"
      << "zero multiplicity " << run.zero_multiplicity << ", components " << run.component_count
      << ", " << (run.zero_multiplicity == run.component_count ? "AGREE" : "DISAGREE") << "\n"
      << "embedding: " << to_string(run.embedding.variant) << ", dims " << run.embedding.k()
      << "\n";
  if (run.indicator_checked)
    txt << "indicator check: " << (run.indicator.passed ? "pass" : "fail")
        << " (max intra-component spread " << format_double(run.indicator.max_intra_spread)
        << ")\n";
  txt << "covariance objective: " << format_double(run.objective.covariance) << "\n"
      << "trace term: " << format_double(run.objective.trace_term) << "\n"
      << "constant term: " << format_double(run.objective.constant_term) << "\n"
      << "kmeans inertia: " << format_double(run.clusters.inertia) << " after "
      << run.clusters.iterations << " iterations\n";
  write_text_file(dir / "report.txt", txt.str());

  nlohmann::ordered_json t;
  for (const auto& s : run.timings) t[s.stage] = s.seconds;
  write_text_file(dir / "timings.json", t.dump(2) + "\n");
  return run;
}

std::string EigenReport::summary() const {
  return "zero multiplicity " + std::to_string(zero_multiplicity) + ", components " +
         std::to_string(component_count) + ", " + (agree() ? "AGREE" : "DISAGREE");
}

EigenReport eigen_report(const Dataset& d, const PipelineConfig& cfg) {
  validate(cfg);
  const WeightedGraph g = build_graph(d, cfg);
  const EigenSystem es = decompose(build_laplacian(g, cfg.laplacian));
  EigenReport r;
  r.eigenvalues = es.eigenvalues;
  r.zero_multiplicity = zero_eigenvalue_multiplicity(es.eigenvalues, cfg.zero_tol);
  r.component_count = connected_components(g).component_count;
  r.threshold = cfg.zero_tol * std::max(es.eigenvalues.back(), 1.0);
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      const double w = g.weights()(i, j);
      if (w > 0.0 && (r.min_positive_weight == 0.0 || w < r.min_positive_weight))
        r.min_positive_weight = w;
    }
  return r;
}

EigenReport run_eigen_report(const PipelineConfig& cfg) {
  validate(cfg);
  const Dataset d = load_csv(cfg.input_path, {cfg.has_header, cfg.delimiter});
  const EigenReport r = eigen_report(d, cfg);

  prepare_output_dir(cfg.output_dir);
  write_text_file(cfg.output_dir / "eigenvalues.txt", lines_of(r.eigenvalues));

  std::ostringstream txt;
  txt << r.summary() << "\n"
      << "zero threshold: " << format_double(r.threshold) << " (zero-tol "
      << format_double(cfg.zero_tol) << " x max(lambda_max, 1))\n"
      << "smallest positive edge weight: " << format_double(r.min_positive_weight) << "\n";
  if (r.zero_multiplicity < r.eigenvalues.size())
    txt << "smallest eigenvalue above threshold: "
        << format_double(r.eigenvalues[r.zero_multiplicity]) << "\n";
  if (r.zero_multiplicity > 0)
    txt << "largest eigenvalue counted as zero: "
        << format_double(r.eigenvalues[r.zero_multiplicity - 1]) << "\n";
  if (!r.agree())
    txt << "note: union-find joins vertices through any positive weight, while the spectral count\n"
           "treats eigenvalues at or below the threshold as zero; weakly bridged components\n"
           "(bridge weights far below zero-tol) are counted as separate by the spectrum only.\n";
  write_text_file(cfg.output_dir / "eigen_report.txt", txt.str());

  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  j["zero_multiplicity"] = r.zero_multiplicity;
  j["component_count"] = r.component_count;
  j["agree"] = r.agree();
  j["threshold"] = r.threshold;
  j["min_positive_weight"] = r.min_positive_weight;
  j["eigenvalues"] = r.eigenvalues;
  write_text_file(cfg.output_dir / "eigen_report.json", j.dump(2) + "\n");
  return r;
}

EquivalenceReport run_pca_equiv(const std::filesystem::path& input, std::size_t k,
                                const std::filesystem::path& output_dir, const CsvOptions& csv) {
  const Dataset d = load_csv(input, csv);
  const EquivalenceReport r = pca_equivalence_report(d, k);
  prepare_output_dir(output_dir);
  write_text_file(output_dir / "pca_equiv.json", to_json(r));

  std::ostringstream txt;
  txt << "k: " << r.k << ", n: " << r.n << "\n"
      << "max principal angle: " << format_double(r.max_angle) << "\n"
      << "eigengap at k: " << format_double(r.eigengap_at_k) << "\n"
      << "spectrum: " << (r.degenerate ? "DEGENERATE (vector-wise claims suppressed; subspace "
                                         "check reported only)"
                                       : "non-degenerate")
      << "\n"
      << "shift relation: " << (r.shift_passed ? "pass" : "fail") << " (max residual "
      << format_double(r.shift_residuals.empty()
                           ? 0.0
                           : *std::max_element(r.shift_residuals.begin(), r.shift_residuals.end()))
      << ", tolerance " << format_double(r.shift_tolerance) << ")\n"
      << "degree deviation from 2n: " << format_double(r.degree_deviation) << "\n"
      << "equivalence: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  write_text_file(output_dir / "pca_equiv.txt", txt.str());
  return r;
}

}  // namespace spectral
