// qaplon: QAP landscape study driver.
//
// Subcommands: gen, lon, metrics, autocorr, heur, study, report.
// All of them exit 0 on success and print "error: <reason>" on stderr
// otherwise.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qaplon/autocorr.hpp"
#include "qaplon/config.hpp"
#include "qaplon/extract.hpp"
#include "qaplon/ioutil.hpp"
#include "qaplon/kernels.hpp"
#include "qaplon/metrics.hpp"
#include "qaplon/study.hpp"

namespace fs = std::filesystem;
using namespace qaplon;

namespace {

StudyConfig config_or_default(const std::string& path) {
  if (path.empty()) return StudyConfig{};
  return load_config_file(path);
}

std::string metrics_record_csv_line(const MetricsRecord& r) {
  StudyTable t{r};
  return metrics_csv(t);
}

int cmd_gen(const std::string& config_path, const std::string& cls_name, int n, int count,
            std::uint64_t seed, const std::string& out_dir) {
  StudyConfig cfg = config_or_default(config_path);
  const auto cls = parse_class(cls_name);
  if (!cls) throw std::runtime_error("unknown class '" + cls_name + "'");
  for (int i = 0; i < count; ++i) {
    const QapInstance inst =
        generate(*cls, n, instance_seed(seed, *cls, n, i), cfg.gen);
    const fs::path path = fs::path(out_dir) / std::string(class_name(*cls)) /
                          std::to_string(n) / (std::to_string(i) + ".dat");
    write_file_atomic(path, write_instance(inst));
    std::cout << path.string() << "\n";
  }
  return 0;
}

int cmd_lon(const std::string& config_path, const std::vector<std::string>& inputs,
            const std::string& out_dir, int workers, int cap) {
  StudyConfig cfg = config_or_default(config_path);
  (void)cfg;
  for (const auto& in : inputs) {
    const QapInstance inst = read_instance_file(in);
    ExtractOptions opts;
    opts.size_cap = cap;
    opts.workers = workers;
    Lon lon = extract_lon(inst, opts);
    lon.validate();
    const fs::path stem = fs::path(out_dir) / fs::path(in).stem();
    fs::create_directories(stem.parent_path());
    save_lon(lon, stem.string());
    std::cout << stem.string() << ".nodes.tsv (" << lon.node_count() << " optima)\n";
  }
  return 0;
}

int cmd_metrics(const std::string& config_path, const std::string& stem,
                const std::string& out_path) {
  StudyConfig cfg = config_or_default(config_path);
  const Lon lon = load_lon(stem);
  const LonMetrics m = compute_all(lon, cfg.mcl_inflation);
  MetricsRecord r;
  r.cls = lon.label;
  r.n = lon.n;
  r.n_v = m.n_v;
  r.cc = m.cc;
  r.l_opt = m.l_opt;
  r.y2 = m.y2;
  r.f_nn = m.f_nn;
  r.q = m.q;
  r.unreachable_count = m.unreachable_count;
  r.mcl_converged = m.mcl_converged;
  const std::string text = metrics_record_csv_line(r);
  if (out_path.empty())
    std::cout << text;
  else
    write_file_atomic(out_path, text);
  return 0;
}

int cmd_autocorr(const std::string& config_path, const std::string& input, bool exact,
                 int walk_length, int walks, int s_max, std::uint64_t seed,
                 const std::string& dump_path) {
  StudyConfig cfg = config_or_default(config_path);
  const QapInstance inst = read_instance_file(input);
  AutocorrParams params = cfg.autocorr;
  if (walk_length > 0) params.walk_length = walk_length;
  if (walks > 0) params.n_walks = walks;
  if (s_max > 0) params.s_max = s_max;
  AutocorrEstimate est;
  try {
    est = exact ? exact_autocorr(inst, params.s_max > 0 ? params.s_max : inst.n() * inst.n())
                : estimate_autocorr(inst, params, seed);
  } catch (const ZeroVarianceError&) {
    std::cout << "instance,ell,s_cut,walk_length,exact\n"
              << inst.label() << ",,,," << (exact ? 1 : 0) << "\n";
    std::cerr << "note: flat fitness series, autocorrelation undefined\n";
    return 0;
  }
  std::cout << "instance,ell,s_cut,walk_length,exact\n"
            << inst.label() << ',' << format_double(est.ell) << ',' << est.s_cut << ','
            << est.walk_length << ',' << (est.exact ? 1 : 0) << "\n";
  if (!dump_path.empty()) {
    std::ostringstream tsv;
    tsv << "s\tr\n";
    for (std::size_t s = 0; s < est.r.size(); ++s) tsv << s << '\t' << format_double17(est.r[s]) << '\n';
    write_file_atomic(dump_path, tsv.str());
  }
  return 0;
}

int cmd_heur(const std::string& config_path, const std::string& input, const std::string& algo,
             int runs, std::uint64_t seed, int budget, int workers,
             const std::string& dump_path) {
  StudyConfig cfg = config_or_default(config_path);
  const QapInstance inst = read_instance_file(input);
  ExtractOptions opts;
  opts.size_cap = cfg.size_cap;
  opts.workers = workers;
  const double target = global_optimum(inst, opts).cost;

  Runner runner;
  if (algo == "sa") {
    SaConfig sa = cfg.sa;
    if (budget > 0) sa.budget = budget;
    runner = make_sa_runner(sa, target);
  } else if (algo == "ga") {
    GaConfig ga = cfg.ga;
    if (budget > 0) ga.budget = budget;
    runner = make_ga_runner(ga, target);
  } else {
    throw std::runtime_error("unknown algorithm '" + algo + "' (expected sa or ga)");
  }
  std::vector<double> bests;
  const double rate = hit_rate(inst, runner, runs, seed, workers, &bests);
  std::cout << "instance,algorithm,runs,global_cost,hit_rate\n"
            << inst.label() << ',' << algo << ',' << runs << ',' << format_double(target)
            << ',' << format_double(rate) << "\n";
  if (!dump_path.empty()) {
    std::ostringstream tsv;
    tsv << "run\tbest_cost\n";
    for (std::size_t k = 0; k < bests.size(); ++k) tsv << k << '\t' << format_double(bests[k]) << '\n';
    write_file_atomic(dump_path, tsv.str());
  }
  return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_dir, int workers,
              std::optional<std::uint64_t> master_seed, int instances,
              const std::string& classes, const std::string& sizes) {
  StudyConfig cfg = config_or_default(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (workers >= 0) cfg.workers = workers;
  if (master_seed) cfg.master_seed = *master_seed;
  if (instances > 0) cfg.instances_per_class = instances;
  if (!classes.empty()) {
    cfg.classes.clear();
    std::istringstream in(classes);
    std::string w;
    while (in >> w) {
      auto c = parse_class(w);
      if (!c) throw std::runtime_error("unknown class '" + w + "'");
      cfg.classes.push_back(*c);
    }
  }
  if (!sizes.empty()) {
    cfg.sizes.clear();
    std::istringstream in(sizes);
    int n;
    while (in >> n) cfg.sizes.push_back(n);
  }
  StudyProgress progress;
  const StudyTable table = run_study(cfg, &progress);
  std::cout << "rows: " << table.size() << " (computed " << progress.rows_computed
            << ", reused " << progress.rows_reused << ")\n"
            << "outputs under: " << cfg.out_dir << "\n";
  return 0;
}

int cmd_report(const std::string& metrics_path, const std::string& out_dir) {
  const StudyTable table = parse_metrics_csv(read_file(metrics_path));
  write_reports(table, out_dir);
  std::cout << "stats written under: " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAP local-optima-network landscape study"};
  app.require_subcommand(1);

  std::string kernels_backend = "auto";
  app.add_option("--kernels", kernels_backend, "Force kernel backend: auto|scalar|avx2|neon");

  std::string config_path;
  app.add_option("--config", config_path, "Study config file (INI)")->check(CLI::ExistingFile);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  std::string gen_class = "uniform";
  int gen_n = 9, gen_count = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instances";
  gen->add_option("--class", gen_class, "uniform | real-like");
  gen->add_option("--n", gen_n, "instance size")->required();
  gen->add_option("--count", gen_count, "number of instances");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out", gen_out, "output directory");

  // lon
  auto* lon = app.add_subcommand("lon", "Extract local optima networks");
  std::vector<std::string> lon_in;
  std::string lon_out = "lons";
  int lon_workers = 1, lon_cap = 11;
  lon->add_option("--in", lon_in, "instance file(s)")->required()->check(CLI::ExistingFile);
  lon->add_option("--out", lon_out, "output directory");
  lon->add_option("--workers", lon_workers, "worker threads");
  lon->add_option("--cap", lon_cap, "exhaustive size cap");

  // metrics
  auto* met = app.add_subcommand("metrics", "Network metrics of a stored LON");
  std::string met_stem, met_out;
  met->add_option("--in", met_stem, "LON path stem (expects <stem>.nodes.tsv/.edges.tsv)")->required();
  met->add_option("--out", met_out, "write CSV here instead of stdout");

  // autocorr
  auto* ac = app.add_subcommand("autocorr", "Random-walk autocorrelation length");
  std::string ac_in, ac_dump;
  bool ac_exact = false;
  int ac_T = 0, ac_walks = 0, ac_smax = 0;
  std::uint64_t ac_seed = 1;
  ac->add_option("--in", ac_in, "instance file")->required()->check(CLI::ExistingFile);
  ac->add_flag("--exact", ac_exact, "use the exact transition-operator oracle (n <= 6)");
  ac->add_option("--walk-length", ac_T, "steps per walk");
  ac->add_option("--walks", ac_walks, "number of walks");
  ac->add_option("--smax", ac_smax, "maximum lag");
  ac->add_option("--seed", ac_seed, "seed");
  ac->add_option("--dump", ac_dump, "write the full r(s) series to this TSV");

  // heur
  auto* heur = app.add_subcommand("heur", "SA/GA hit rate on one instance");
  std::string heur_in, heur_algo = "sa", heur_dump;
  int heur_runs = 100, heur_budget = 0, heur_workers = 1;
  std::uint64_t heur_seed = 1;
  heur->add_option("--in", heur_in, "instance file")->required()->check(CLI::ExistingFile);
  heur->add_option("--algo", heur_algo, "sa | ga");
  heur->add_option("--runs", heur_runs, "independent runs");
  heur->add_option("--seed", heur_seed, "master seed");
  heur->add_option("--budget", heur_budget, "evaluation budget override");
  heur->add_option("--workers", heur_workers, "worker threads");
  heur->add_option("--dump-best", heur_dump, "write per-run best costs to this TSV");

  // study
  auto* study = app.add_subcommand("study", "End-to-end study");
  std::string study_out, study_classes, study_sizes;
  int study_workers = -1, study_instances = 0;
  std::optional<std::uint64_t> study_seed;
  study->add_option("--out", study_out, "output directory override");
  study->add_option("--workers", study_workers, "worker threads override");
  std::uint64_t study_seed_raw = 0;
  auto* seed_opt = study->add_option("--master-seed", study_seed_raw, "master seed override");
  study->add_option("--instances", study_instances, "instances per (class, n) cell");
  study->add_option("--classes", study_classes, "space-separated class list override");
  study->add_option("--sizes", study_sizes, "space-separated size list override");

  // report
  auto* report = app.add_subcommand("report", "Stats CSVs from an existing metrics table");
  std::string report_metrics, report_out = "stats";
  report->add_option("--metrics", report_metrics, "metrics.csv path")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "stats output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!kernels::select(kernels_backend))
      throw std::runtime_error("kernel backend '" + kernels_backend + "' is not available here");
    if (gen->parsed()) return cmd_gen(config_path, gen_class, gen_n, gen_count, gen_seed, gen_out);
    if (lon->parsed()) return cmd_lon(config_path, lon_in, lon_out, lon_workers, lon_cap);
    if (met->parsed()) return cmd_metrics(config_path, met_stem, met_out);
    if (ac->parsed())
      return cmd_autocorr(config_path, ac_in, ac_exact, ac_T, ac_walks, ac_smax, ac_seed, ac_dump);
    if (heur->parsed())
      return cmd_heur(config_path, heur_in, heur_algo, heur_runs, heur_seed, heur_budget,
                      heur_workers, heur_dump);
    if (study->parsed()) {
      if (seed_opt->count() > 0) study_seed = study_seed_raw;
      return cmd_study(config_path, study_out, study_workers, study_seed, study_instances,
                       study_classes, study_sizes);
    }
    if (report->parsed()) return cmd_report(report_metrics, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
