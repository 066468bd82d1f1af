#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "oracles.hpp"
#include "spectral/error.hpp"
#include "spectral/io.hpp"
#include "spectral/pipeline.hpp"

using namespace spectral;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spectral_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_points(const fs::path& dir, const Matrix& x) {
  const fs::path p = dir / "points.csv";
  write_text_file(p, matrix_to_csv(x));
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPECTRAL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

oracle::Blobs two_blobs(std::uint64_t seed) {
  oracle::Rng rng(seed);
  return oracle::make_blobs(rng, 2, 15, 1.0, 10.0);
}

}  // namespace

TEST_CASE("apply_setting and apply_config_text") {
  PipelineConfig cfg;
  apply_setting(cfg, "graph", "knn");
  apply_setting(cfg, "knn", "4");
  apply_setting(cfg, "zero_tol", "1e-6");
  apply_setting(cfg, "delimiter", "tab");
  apply_setting(cfg, "header", "true");
  CHECK(cfg.graph == GraphKind::knn);
  CHECK(cfg.k_neighbors == 4);
  CHECK(cfg.zero_tol == 1e-6);
  CHECK(cfg.delimiter == '\t');
  CHECK(cfg.has_header);
  CHECK_THROWS_AS(apply_setting(cfg, "graph", "star"), ValidationError);
  CHECK_THROWS_AS(apply_setting(cfg, "k", "two"), ValidationError);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ValidationError);

  apply_config_text(cfg, "# comment\nlaplacian = sym\n\nk=3  # trailing\nseed = 9\n");
  CHECK(cfg.laplacian == LaplacianVariant::sym);
  CHECK(cfg.k == 3);
  CHECK(cfg.seed == 9);
  CHECK_THROWS_AS(apply_config_text(cfg, "just words"), ValidationError);
}

TEST_CASE("validate") {
  PipelineConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  auto rejects = [](auto mutate) {
    PipelineConfig c;
    mutate(c);
    CHECK_THROWS_AS(validate(c), ValidationError);
  };
  rejects([](PipelineConfig& c) { c.delta = -1.0; });
  rejects([](PipelineConfig& c) { c.k = 0; });
  rejects([](PipelineConfig& c) { c.k = 1; });  // nonconstant needs k >= 2
  rejects([](PipelineConfig& c) { c.zero_tol = 0.0; });
  rejects([](PipelineConfig& c) {
    c.graph = GraphKind::knn;
    c.kernel = KernelKind::shifted_dot;
  });
  rejects([](PipelineConfig& c) { c.kernel = KernelKind::unit; });
  rejects([](PipelineConfig& c) {
    c.graph = GraphKind::epsilon;
    c.eps = 0.0;
  });
}

TEST_CASE("cluster_dataset on two blobs") {
  const auto blobs = two_blobs(1);
  const Dataset d(blobs.points);

  SUBCASE("knn graph, classical embedding takes the indicator branch") {
    PipelineConfig cfg;
    cfg.graph = GraphKind::knn;
    cfg.k_neighbors = 5;
    cfg.embedding = EmbeddingKind::classical;
    cfg.k = 2;
    const auto run = cluster_dataset(d, cfg);
    CHECK(run.branch == "indicator");
    CHECK(run.component_count == 2);
    CHECK(run.zero_multiplicity == 2);
    CHECK(run.indicator_checked);
    CHECK(run.indicator.passed);
    CHECK(adjusted_rand_index(run.clusters.labels, blobs.labels) == 1.0);
  }
  SUBCASE("full rbf graph, nonconstant embedding takes the connected branch") {
    PipelineConfig cfg;
    cfg.delta = 3.0;
    const auto run = cluster_dataset(d, cfg);
    CHECK(run.branch == "connected");
    CHECK(run.component_count == 1);
    CHECK(run.zero_multiplicity == 1);
    CHECK(run.embedding.k() == 1);
    CHECK(adjusted_rand_index(run.clusters.labels, blobs.labels) == 1.0);
    CHECK(run.objective.identity_gap <= 1e-8 * std::max(1.0, std::abs(run.objective.covariance)));
  }
  SUBCASE("normalized variants also separate the blobs") {
    for (auto lap : {LaplacianVariant::sym, LaplacianVariant::rw}) {
      PipelineConfig cfg;
      cfg.delta = 3.0;
      cfg.laplacian = lap;
      CHECK(adjusted_rand_index(cluster_dataset(d, cfg).clusters.labels, blobs.labels) == 1.0);
    }
    PipelineConfig cfg;
    cfg.graph = GraphKind::knn;
    cfg.k_neighbors = 5;
    cfg.laplacian = LaplacianVariant::sym;
    cfg.embedding = EmbeddingKind::classical;
    const auto run = cluster_dataset(d, cfg);
    CHECK(run.branch == "indicator");
    CHECK(run.indicator.passed);
    CHECK(adjusted_rand_index(run.clusters.labels, blobs.labels) == 1.0);
  }
  SUBCASE("nonconstant embedding on a disconnected graph is rejected with a hint") {
    PipelineConfig cfg;
    cfg.graph = GraphKind::knn;
    cfg.k_neighbors = 5;
    try {
      cluster_dataset(d, cfg);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("classical") != std::string::npos);
    }
  }
  SUBCASE("isolated vertices under a normalized Laplacian name a remedy") {
    PipelineConfig cfg;
    cfg.graph = GraphKind::epsilon;
    cfg.kernel = KernelKind::unit;
    cfg.eps = 1e-6;
    cfg.laplacian = LaplacianVariant::sym;
    try {
      cluster_dataset(d, cfg);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("--eps") != std::string::npos);
    }
  }
}

TEST_CASE("run_cluster writes deterministic artifacts") {
  const fs::path dir = scratch("cluster");
  const auto blobs = two_blobs(2);
  PipelineConfig cfg;
  cfg.input_path = write_points(dir, blobs.points);
  cfg.delta = 3.0;
  cfg.seed = 5;

  cfg.output_dir = dir / "a";
  run_cluster(cfg);
  cfg.output_dir = dir / "b";
  run_cluster(cfg);
  for (const char* f :
       {"labels.csv", "embedding.csv", "eigenvalues.txt", "report.txt", "report.json"}) {
    CAPTURE(f);
    REQUIRE(fs::exists(dir / "a" / f));
    const std::string a = read_text_file(dir / "a" / f);
    CHECK(a == read_text_file(dir / "b" / f));
  }
  CHECK(fs::exists(dir / "a" / "timings.json"));

  const auto report = nlohmann::json::parse(read_text_file(dir / "a" / "report.json"));
  CHECK(report["branch"] == "connected");
  CHECK(report["component_count"] == 1);
  const std::string labels = read_text_file(dir / "a" / "labels.csv");
  CHECK(labels.rfind("index,label\n", 0) == 0);
  const auto timings = nlohmann::json::parse(read_text_file(dir / "a" / "timings.json"));
  for (const char* stage : {"graph", "laplacian", "eigensystem", "embedding", "kmeans"})
    CHECK(timings.contains(stage));
}

TEST_CASE("run_cluster with an invalid config writes nothing") {
  const fs::path dir = scratch("invalid");
  PipelineConfig cfg;
  cfg.input_path = write_points(dir, Matrix{{0, 0}, {1, 1}, {5, 5}});
  cfg.delta = -1.0;
  cfg.output_dir = dir / "out";
  CHECK_THROWS_AS(run_cluster(cfg), ValidationError);
  CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("eigen_report") {
  SUBCASE("connected graph") {
    PipelineConfig cfg;
    oracle::Rng rng(3);
    const auto r = eigen_report(Dataset(oracle::random_matrix(rng, 8, 2)), cfg);
    CHECK(r.summary() == "zero multiplicity 1, components 1, AGREE");
  }
  SUBCASE("three components") {
    oracle::Rng rng(4);
    const auto blobs = oracle::make_blobs(rng, 3, 6, 0.5, 20.0);
    PipelineConfig cfg;
    cfg.graph = GraphKind::epsilon;
    cfg.kernel = KernelKind::unit;
    cfg.eps = 2.0;
    const auto r = eigen_report(Dataset(blobs.points), cfg);
    CHECK(r.summary() == "zero multiplicity 3, components 3, AGREE");
  }
  SUBCASE("a 1e-14 bridge is reported, not hidden") {
    // Two tight pairs whose cross weights are about exp(-32.2) ~ 1e-14.
    const double gap = std::sqrt(2.0 * -std::log(1e-14));
    const Dataset d(Matrix{{0, 0}, {0.1, 0}, {gap, 0}, {gap + 0.1, 0}});
    PipelineConfig cfg;
    const auto r = eigen_report(d, cfg);
    CHECK(r.component_count == 1);
    CHECK(r.zero_multiplicity == 2);
    CHECK_FALSE(r.agree());
    CHECK(r.min_positive_weight < 1e-13);
    CHECK(r.summary() == "zero multiplicity 2, components 1, DISAGREE");

    // Both counts and the threshold that decided them are exposed side by side.
    CHECK(r.threshold == cfg.zero_tol * std::max(r.eigenvalues.back(), 1.0));
    CHECK(r.eigenvalues[1] <= r.threshold);
    CHECK(r.eigenvalues[2] > r.threshold);

    const fs::path dir = scratch("bridge");
    write_points(dir, d.points());
    PipelineConfig file_cfg;
    file_cfg.input_path = dir / "points.csv";
    file_cfg.output_dir = dir / "out";
    run_eigen_report(file_cfg);
    const std::string text = read_text_file(dir / "out" / "eigen_report.txt");
    CHECK(text.find("DISAGREE") != std::string::npos);
    CHECK(text.find("note:") != std::string::npos);
    const auto j = nlohmann::json::parse(read_text_file(dir / "out" / "eigen_report.json"));
    CHECK(j["agree"] == false);
  }
}

TEST_CASE("command-line interface exit codes") {
  const fs::path dir = scratch("cli");
  oracle::Rng rng(6);
  const fs::path random10 = dir / "random10.csv";
  write_text_file(random10, matrix_to_csv(oracle::random_matrix(rng, 10, 3)));
  const std::string out = (dir / "out").string();

  SUBCASE("pca-equiv succeeds on random data") {
    CHECK(run_cli("pca-equiv --input " + random10.string() + " --k 2 --out " + out) == 0);
    const auto j = nlohmann::json::parse(read_text_file(dir / "out" / "pca_equiv.json"));
    CHECK(j["max_angle"].get<double>() <= 1e-6);
  }
  SUBCASE("pca-equiv with k = n is a validation error") {
    CHECK(run_cli("pca-equiv --input " + random10.string() + " --k 10 --out " + out) == 1);
  }
  SUBCASE("pca-equiv on rank-1 data flags degeneracy") {
    const fs::path rank1 = dir / "rank1.csv";
    write_text_file(rank1, "1,2\n-2,-4\n0.5,1\n0.5,1\n");
    CHECK(run_cli("pca-equiv --input " + rank1.string() + " --k 2 --out " + out) == 0);
    const auto j = nlohmann::json::parse(read_text_file(dir / "out" / "pca_equiv.json"));
    CHECK(j["degenerate"] == true);
    CHECK(j["vector_claims"] == "suppressed");
  }
  SUBCASE("cluster with a config file, overridden by flags") {
    const auto blobs = two_blobs(7);
    const fs::path pts = write_points(dir, blobs.points);
    const fs::path conf = dir / "run.conf";
    write_text_file(conf, "graph = knn\nknn = 5\nembedding = classical\nk = 2\ndelta = -1\n");
    // delta = -1 from the file alone is rejected.
    CHECK(run_cli("cluster --config " + conf.string() + " --input " + pts.string() + " --out " +
                  out) == 1);
    CHECK_FALSE(fs::exists(dir / "out" / "labels.csv"));
    CHECK(run_cli("cluster --config " + conf.string() + " --delta 1 --input " + pts.string() +
                  " --out " + out) == 0);
    const auto j = nlohmann::json::parse(read_text_file(dir / "out" / "report.json"));
    CHECK(j["branch"] == "indicator");
  }
  SUBCASE("eigen subcommand") {
    CHECK(run_cli("eigen --input " + random10.string() + " --out " + out) == 0);
    CHECK(fs::exists(dir / "out" / "eigenvalues.txt"));
  }
  SUBCASE("usage errors") {
    CHECK(run_cli("") == 1);
    CHECK(run_cli("cluster") == 1);
    CHECK(run_cli("cluster --input " + (dir / "missing.csv").string()) == 1);
    CHECK(run_cli("cluster --input " + random10.string() + " --graph star") == 1);
  }
}
