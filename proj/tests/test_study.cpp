#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "qaplon/ioutil.hpp"
#include "qaplon/study.hpp"

using namespace qaplon;
namespace fs = std::filesystem;

namespace {

StudyConfig tiny_config(const std::string& out_dir) {
  StudyConfig cfg;
  cfg.classes = {InstanceClass::Uniform};
  cfg.sizes = {5};
  cfg.instances_per_class = 2;
  cfg.runs_per_algorithm = 10;
  cfg.master_seed = 77;
  cfg.workers = 1;
  cfg.out_dir = out_dir;
  cfg.sa.budget = 300;
  cfg.ga.population_size = 10;
  cfg.ga.budget = 300;
  cfg.autocorr.walk_length = 4000;
  cfg.autocorr.n_walks = 2;
  return cfg;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("qaplon_test_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing round-trips and rejects junk") {
  StudyConfig def;
  const std::string text = resolved_config_text(def);
  const StudyConfig parsed = parse_config(text);
  CHECK(resolved_config_text(parsed) == text);

  CHECK_THROWS_WITH_AS(parse_config("[study]\nbananas = 3\n"), doctest::Contains("unknown key"),
                       std::runtime_error);
  CHECK_THROWS_AS(parse_config("[study]\ninstances_per_class = many\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_config("[study]\nsizes = 25\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[ga]\npopulation_size = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("no-equals-sign\n"), std::runtime_error);

  const StudyConfig custom = parse_config(
      "[study]\nclasses = real-like\nsizes = 4 5\ninstances_per_class = 3\n"
      "[sa]\ncooling_factor = 0.99\n[mcl]\ninflation = 1.8\n");
  CHECK(custom.classes == std::vector<InstanceClass>{InstanceClass::RealLike});
  CHECK(custom.sizes == std::vector<int>{4, 5});
  CHECK(custom.sa.cooling_factor == 0.99);
  CHECK(custom.mcl_inflation == 1.8);
  CHECK(custom.ga.budget == 10'000);  // untouched default
}

TEST_CASE("metrics csv round trip") {
  MetricsRecord r;
  r.cls = "uniform";
  r.n = 5;
  r.index = 3;
  r.n_v = 17;
  r.cc = 0.25;
  r.l_opt = std::nullopt;
  r.y2 = 0.5;
  r.f_nn = -0.125;
  r.q = std::nullopt;
  r.unreachable_count = 2;
  r.mcl_converged = false;
  r.ell = 3.5;
  r.s_cut = 7;
  r.walk_length = 1000;
  r.sa_hit = 0.25;
  r.ga_hit = std::nullopt;
  const StudyTable t{r};
  const StudyTable back = parse_metrics_csv(metrics_csv(t));
  CHECK(metrics_csv(back) == metrics_csv(t));
  REQUIRE(back.size() == 1);
  CHECK(back[0].cls == "uniform");
  CHECK_FALSE(back[0].l_opt.has_value());
  CHECK(back[0].mcl_converged == false);
  CHECK(*back[0].ell == 3.5);

  CHECK_THROWS(parse_metrics_csv("not,a,header\n"));
}

TEST_CASE("mini study: pipeline, idempotence, cache guard") {
  TempDir tmp("study");
  const std::string out = (tmp.path / "run").string();
  StudyConfig cfg = tiny_config(out);

  StudyProgress p1;
  const StudyTable t1 = run_study(cfg, &p1);
  REQUIRE(t1.size() == 2);
  CHECK(p1.rows_computed == 2);
  CHECK(p1.rows_reused == 0);
  CHECK(p1.instances_generated == 2);
  CHECK(p1.lons_built == 2);
  for (const auto& row : t1) {
    CHECK(row.n_v >= 1);
    CHECK(row.sa_hit.has_value());
    CHECK(row.ga_hit.has_value());
    CHECK(row.ell.has_value());
  }

  for (const char* rel :
       {"config.lock", "instances/uniform/5/0.dat", "instances/uniform/5/1.dat",
        "lons/uniform/5/0.nodes.tsv", "lons/uniform/5/0.edges.tsv", "rows/uniform/5/1.row",
        "metrics.csv", "hits.csv", "stats/table1.csv", "stats/corr_uniform_5.csv",
        "stats/regress_uniform_5.csv", "stats/boxplot_sa.csv", "stats/boxplot_ga.csv"})
    CHECK_MESSAGE(fs::exists(fs::path(out) / rel), rel);

  const std::string bytes1 = read_file(fs::path(out) / "metrics.csv");

  // rerun: everything is reused, bytes identical
  StudyProgress p2;
  const StudyTable t2 = run_study(cfg, &p2);
  CHECK(p2.rows_computed == 0);
  CHECK(p2.rows_reused == 2);
  CHECK(p2.lons_reused == 2);
  CHECK(read_file(fs::path(out) / "metrics.csv") == bytes1);
  CHECK(metrics_csv(t2) == metrics_csv(t1));

  // a different config in the same directory is refused
  StudyConfig other = cfg;
  other.master_seed = 78;
  CHECK_THROWS_WITH_AS(run_study(other), doctest::Contains("config.lock"), std::runtime_error);

  // deleting one artifact only rebuilds that artifact
  fs::remove(fs::path(out) / "lons/uniform/5/0.nodes.tsv");
  StudyProgress p3;
  run_study(cfg, &p3);
  CHECK(p3.lons_built == 1);
  CHECK(p3.rows_reused == 2);
  CHECK(read_file(fs::path(out) / "metrics.csv") == bytes1);
}

TEST_CASE("study output is independent of the worker count") {
  TempDir tmp("workers");
  StudyConfig cfg1 = tiny_config((tmp.path / "w1").string());
  StudyConfig cfg4 = tiny_config((tmp.path / "w4").string());
  cfg1.workers = 1;
  cfg4.workers = 4;
  run_study(cfg1);
  run_study(cfg4);
  CHECK(read_file(tmp.path / "w1" / "metrics.csv") == read_file(tmp.path / "w4" / "metrics.csv"));
  CHECK(read_file(tmp.path / "w1" / "hits.csv") == read_file(tmp.path / "w4" / "hits.csv"));
  CHECK(read_file(tmp.path / "w1" / "stats" / "table1.csv") ==
        read_file(tmp.path / "w4" / "stats" / "table1.csv"));
  CHECK(read_file(tmp.path / "w1" / "stats" / "corr_uniform_5.csv") ==
        read_file(tmp.path / "w4" / "stats" / "corr_uniform_5.csv"));
}

TEST_CASE("report regenerates stats from a metrics table") {
  TempDir tmp("report");
  StudyConfig cfg = tiny_config((tmp.path / "run").string());
  run_study(cfg);
  const fs::path out(cfg.out_dir);
  const StudyTable table = parse_metrics_csv(read_file(out / "metrics.csv"));
  const std::string redone = (tmp.path / "stats2").string();
  write_reports(table, redone);
  for (const char* name : {"table1.csv", "corr_uniform_5.csv", "regress_uniform_5.csv",
                           "boxplot_sa.csv", "boxplot_ga.csv"})
    CHECK(read_file(fs::path(redone) / name) == read_file(out / "stats" / name));
}

TEST_CASE("study handles a flat real-like-free landscape gracefully") {
  // a degenerate generator (lo = hi) yields a flat landscape: the
  // autocorrelation is undefined and must surface as a missing cell
  TempDir tmp("flat");
  StudyConfig cfg = tiny_config((tmp.path / "run").string());
  cfg.gen.uniform_lo = cfg.gen.uniform_hi = 5;
  cfg.instances_per_class = 1;
  const StudyTable t = run_study(cfg);
  REQUIRE(t.size() == 1);
  CHECK_FALSE(t[0].ell.has_value());
  CHECK(t[0].n_v == 120);          // every permutation is a local optimum
  CHECK(*t[0].sa_hit == 1.0);      // every run trivially attains the optimum
}
