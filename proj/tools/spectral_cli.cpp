// spectral: command-line front end for the clustering pipeline, the Laplacian
// spectrum report and the Laplacian/PCA equivalence check.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>

#include "spectral/error.hpp"
#include "spectral/io.hpp"
#include "spectral/pipeline.hpp"

namespace {

using spectral::PipelineConfig;

// Flags shared by `cluster` and `eigen`. Values are kept as text and applied
// after the optional config file so that flags override it.
struct PipelineFlags {
  std::string config_path;
  bool header = false;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key=value config file; flags override it");
    app->add_flag("--header", header, "first CSV row holds column names");
    const std::pair<const char*, const char*> options[] = {
        {"input", "input CSV path"},
        {"delimiter", "CSV delimiter (single character or 'tab')"},
        {"graph", "full | knn | epsilon"},
        {"kernel", "rbf | shifted_dot | unit"},
        {"delta", "rbf bandwidth"},
        {"eps", "epsilon-neighborhood radius"},
        {"knn", "neighbors per vertex for the knn graph"},
        {"laplacian", "unnormalized | sym | rw"},
        {"embedding", "nonconstant | classical"},
        {"k", "number of clusters"},
        {"seed", "k-means++ seed"},
        {"zero-tol", "relative zero-eigenvalue tolerance"},
        {"out", "output directory"},
    };
    for (const auto& [name, help] : options)
      app->add_option(std::string("--") + name, values[name], help);
  }

  PipelineConfig resolve(const CLI::App* app) const {
    PipelineConfig cfg;
    if (!config_path.empty())
      spectral::apply_config_text(cfg, spectral::read_text_file(config_path));
    if (header) cfg.has_header = true;
    for (const auto& [name, value] : values)
      if (app->count("--" + name) > 0) spectral::apply_setting(cfg, name, value);
    if (cfg.input_path.empty()) throw spectral::ValidationError("--input is required");
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Spectral clustering, Laplacian spectra and the Laplacian/PCA equivalence check"};
  app.require_subcommand(1);

  PipelineFlags cluster_flags;
  auto* cluster = app.add_subcommand("cluster", "embed with Laplacian eigenvectors, then k-means");
  cluster_flags.attach(cluster);

  PipelineFlags eigen_flags;
  auto* eigen = app.add_subcommand("eigen", "Laplacian spectrum and component-count agreement");
  eigen_flags.attach(eigen);

  std::string pca_input, pca_out = "out", pca_delim = ",";
  std::size_t pca_k = 1;
  bool pca_header = false;
  auto* pca = app.add_subcommand("pca-equiv", "compare L^PCA eigenvectors with Gram-matrix PCA");
  pca->add_option("--input", pca_input, "input CSV path")->required();
  pca->add_option("--k", pca_k, "subspace dimension")->required();
  pca->add_option("--out", pca_out, "output directory");
  pca->add_flag("--header", pca_header, "first CSV row holds column names");
  pca->add_option("--delimiter", pca_delim, "CSV delimiter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? spectral::kExitOk : spectral::kExitValidation;
  }

  try {
    if (*cluster) {
      const PipelineConfig cfg = cluster_flags.resolve(cluster);
      const auto result = spectral::run_cluster(cfg);
      std::cout << "branch: " << result.branch << "\n"
                << "zero multiplicity " << result.zero_multiplicity << ", components "
                << result.component_count << "\n"
                << "wrote " << cfg.output_dir.string() << "/{labels.csv,embedding.csv,"
                << "eigenvalues.txt,report.txt,report.json,timings.json}\n";
      return spectral::kExitOk;
    }
    if (*eigen) {
      const PipelineConfig cfg = eigen_flags.resolve(eigen);
      const auto report = spectral::run_eigen_report(cfg);
      std::cout << report.summary() << "\n";
      return spectral::kExitOk;
    }
    if (*pca) {
      PipelineConfig delim_only;
      spectral::apply_setting(delim_only, "delimiter", pca_delim);
      const auto report =
          spectral::run_pca_equiv(pca_input, pca_k, pca_out, {pca_header, delim_only.delimiter});
      std::cout << "max principal angle: " << spectral::format_double(report.max_angle)
                << (report.degenerate ? " (degenerate spectrum; vector-wise claims suppressed)"
                                      : "")
                << "\n"
                << "equivalence: " << (report.passed() ? "PASS" : "FAIL") << "\n";
      return report.passed() ? spectral::kExitOk : spectral::kExitEquivalence;
    }
  } catch (const spectral::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spectral::kExitValidation;
  } catch (const spectral::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return spectral::kExitNumerical;
  }
  return spectral::kExitValidation;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
