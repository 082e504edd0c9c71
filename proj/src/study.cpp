#include "qaplon/study.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>

#include "qaplon/autocorr.hpp"
#include "qaplon/extract.hpp"
#include "qaplon/ioutil.hpp"
#include "qaplon/metrics.hpp"
#include "qaplon/parallel.hpp"
#include "qaplon/rng.hpp"

namespace fs = std::filesystem;

namespace qaplon {

namespace {

std::string cell_str(const Cell& c) { return c ? format_double(*c) : std::string(); }

Cell parse_cell(std::string_view tok) {
  if (tok.empty()) return std::nullopt;
  double v;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    throw std::runtime_error("metrics csv: bad numeric cell '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= line.size(); ++k) {
    if (k == line.size() || line[k] == ',') {
      out.push_back(line.substr(start, k - start));
      start = k + 1;
    }
  }
  return out;
}

constexpr std::string_view kMetricsHeader =
    "class,n,index,n_v,cc,l_opt,y2,f_nn,q,unreachable,mcl_converged,ell,s_cut,walk_length,"
    "sa_hit_rate,ga_hit_rate";

std::string metrics_row(const MetricsRecord& r) {
  std::ostringstream out;
  out << r.cls << ',' << r.n << ',' << r.index << ',' << r.n_v << ',' << cell_str(r.cc)
      << ',' << cell_str(r.l_opt) << ',' << cell_str(r.y2) << ',' << cell_str(r.f_nn) << ','
      << cell_str(r.q) << ',' << r.unreachable_count << ',' << (r.mcl_converged ? 1 : 0)
      << ',' << cell_str(r.ell) << ',' << r.s_cut << ',' << r.walk_length << ','
      << cell_str(r.sa_hit) << ',' << cell_str(r.ga_hit);
  return out.str();
}

MetricsRecord parse_metrics_row(std::string_view line) {
  const auto f = split_csv_line(line);
  if (f.size() != 16)
    throw std::runtime_error("metrics csv: expected 16 fields, got " + std::to_string(f.size()));
  MetricsRecord r;
  r.cls = std::string(f[0]);
  r.n = static_cast<int>(*parse_cell(f[1]));
  r.index = static_cast<int>(*parse_cell(f[2]));
  r.n_v = static_cast<std::uint64_t>(*parse_cell(f[3]));
  r.cc = parse_cell(f[4]);
  r.l_opt = parse_cell(f[5]);
  r.y2 = parse_cell(f[6]);
  r.f_nn = parse_cell(f[7]);
  r.q = parse_cell(f[8]);
  r.unreachable_count = static_cast<std::uint64_t>(*parse_cell(f[9]));
  r.mcl_converged = *parse_cell(f[10]) != 0.0;
  r.ell = parse_cell(f[11]);
  r.s_cut = static_cast<int>(*parse_cell(f[12]));
  r.walk_length = static_cast<int>(*parse_cell(f[13]));
  r.sa_hit = parse_cell(f[14]);
  r.ga_hit = parse_cell(f[15]);
  return r;
}

std::uint64_t stage_seed(const StudyConfig& cfg, std::string_view stage, InstanceClass cls,
                         int n, int index) {
  const std::string tag = std::string(stage) + ":" + std::string(class_name(cls));
  return derive_seed(cfg.master_seed, tag, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(index));
}

struct TaskId {
  InstanceClass cls;
  int n;
  int index;
};

std::string rel_dir(const TaskId& t) {
  return std::string(class_name(t.cls)) + "/" + std::to_string(t.n);
}

/// One (instance, all stages) unit of work. Files already present with
/// matching input hashes are reused.
MetricsRecord run_task(const StudyConfig& cfg, const TaskId& task, const fs::path& out,
                       StudyProgress& progress, std::mutex& progress_mu) {
  const std::string rel = rel_dir(task) + "/" + std::to_string(task.index);
  const fs::path inst_path = out / "instances" / (rel + ".dat");
  const fs::path lon_stem = out / "lons" / rel;
  const fs::path row_path = out / "rows" / (rel + ".row");

  // Instance.
  std::string inst_text;
  bool inst_reused = false;
  if (fs::exists(inst_path)) {
    inst_text = read_file(inst_path);
    inst_reused = true;
  } else {
    const QapInstance fresh = generate(task.cls, task.n,
                                       instance_seed(cfg.master_seed, task.cls, task.n, task.index),
                                       cfg.gen);
    inst_text = write_instance(fresh);
    write_file_atomic(inst_path, inst_text);
  }
  QapInstance inst = read_instance(inst_text, rel);
  const std::uint64_t inst_hash = fnv1a64(inst_text);
  const std::string inst_hash_str = std::to_string(inst_hash);

  // Row cache: valid when its recorded input hash matches the instance.
  const fs::path nodes_path = fs::path(lon_stem.string() + ".nodes.tsv");
  const fs::path edges_path = fs::path(lon_stem.string() + ".edges.tsv");
  const fs::path lon_hash_path = fs::path(lon_stem.string() + ".hash");
  const bool lon_present = fs::exists(nodes_path) && fs::exists(edges_path) &&
                           fs::exists(lon_hash_path) &&
                           read_file(lon_hash_path) == inst_hash_str;
  bool row_present = false;
  MetricsRecord record;
  if (fs::exists(row_path)) {
    const std::string row_text = read_file(row_path);
    const auto nl = row_text.find('\n');
    if (nl != std::string::npos && row_text.substr(0, nl) == "# input " + inst_hash_str) {
      std::string_view line(row_text);
      line.remove_prefix(nl + 1);
      while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
      record = parse_metrics_row(line);
      row_present = true;
    }
  }

  if (row_present && lon_present) {
    std::lock_guard<std::mutex> lock(progress_mu);
    progress.instances_reused += inst_reused ? 1 : 0;
    progress.instances_generated += inst_reused ? 0 : 1;
    ++progress.lons_reused;
    ++progress.rows_reused;
    return record;
  }

  // LON.
  Lon lon;
  if (lon_present) {
    lon = load_lon(lon_stem.string());
  } else {
    ExtractOptions opts;
    opts.size_cap = cfg.size_cap;
    opts.workers = 1;  // parallelism lives across tasks
    lon = extract_lon(inst, opts);
    lon.validate();
    std::ostringstream nodes, edges;
    write_lon(lon, nodes, edges);
    write_file_atomic(nodes_path, nodes.str());
    write_file_atomic(edges_path, edges.str());
    write_file_atomic(lon_hash_path, inst_hash_str);
  }

  if (!row_present) {
    record = MetricsRecord{};
    record.cls = std::string(class_name(task.cls));
    record.n = task.n;
    record.index = task.index;

    const LonMetrics m = compute_all(lon, cfg.mcl_inflation);
    record.n_v = m.n_v;
    record.cc = m.cc;
    record.l_opt = m.l_opt;
    record.y2 = m.y2;
    record.f_nn = m.f_nn;
    record.q = m.q;
    record.unreachable_count = m.unreachable_count;
    record.mcl_converged = m.mcl_converged;

    record.walk_length = cfg.autocorr.walk_length;
    try {
      const AutocorrEstimate est =
          estimate_autocorr(inst, cfg.autocorr, stage_seed(cfg, "autocorr", task.cls, task.n, task.index));
      record.ell = est.ell;
      record.s_cut = est.s_cut;
    } catch (const ZeroVarianceError&) {
      // Flat landscape: ell stays missing, the row is otherwise complete.
    }

    const double target = lon.global_cost();
    record.sa_hit = hit_rate(inst, make_sa_runner(cfg.sa, target), cfg.runs_per_algorithm,
                             stage_seed(cfg, "sa", task.cls, task.n, task.index));
    record.ga_hit = hit_rate(inst, make_ga_runner(cfg.ga, target), cfg.runs_per_algorithm,
                             stage_seed(cfg, "ga", task.cls, task.n, task.index));

    write_file_atomic(row_path, "# input " + inst_hash_str + "\n" + metrics_row(record) + "\n");
  }

  std::lock_guard<std::mutex> lock(progress_mu);
  progress.instances_reused += inst_reused ? 1 : 0;
  progress.instances_generated += inst_reused ? 0 : 1;
  progress.lons_built += lon_present ? 0 : 1;
  progress.lons_reused += lon_present ? 1 : 0;
  progress.rows_computed += row_present ? 0 : 1;
  progress.rows_reused += row_present ? 1 : 0;
  return record;
}

}  // namespace

std::string metrics_csv(const StudyTable& table) {
  std::string out{kMetricsHeader};
  out += '\n';
  for (const auto& r : table) {
    out += metrics_row(r);
    out += '\n';
  }
  return out;
}

StudyTable parse_metrics_csv(std::string_view text) {
  StudyTable table;
  std::size_t start = 0;
  bool header = true;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kMetricsHeader)
        throw std::runtime_error("metrics csv: unexpected header");
      header = false;
      continue;
    }
    table.push_back(parse_metrics_row(line));
  }
  return table;
}

std::string hits_csv(const StudyTable& table) {
  std::string out = "class,n,index,sa_hit_rate,ga_hit_rate\n";
  for (const auto& r : table) {
    out += r.cls + ',' + std::to_string(r.n) + ',' + std::to_string(r.index) + ',' +
           cell_str(r.sa_hit) + ',' + cell_str(r.ga_hit) + '\n';
  }
  return out;
}

namespace {

std::string aggregate_csv(const std::vector<ClassAggregate>& groups) {
  // Paper-table order first (N_v, L_opt, GA, SA), remaining variables after.
  const std::array<std::size_t, 9> order = {0, 2, 8, 7, 1, 3, 4, 5, 6};
  std::string out = "class,n,count";
  for (std::size_t v : order) {
    out += ",avg_" + std::string(kStudyVars[v]);
    out += ",std_" + std::string(kStudyVars[v]);
  }
  out += '\n';
  for (const auto& g : groups) {
    out += g.cls + ',' + std::to_string(g.n) + ',' + std::to_string(g.count);
    for (std::size_t v : order) {
      out += ',' + cell_str(g.mean[v]);
      out += ',' + cell_str(g.stddev[v]);
    }
    out += '\n';
  }
  return out;
}

std::string corr_csv(const std::vector<std::vector<Cell>>& m) {
  std::string out = "var";
  for (auto v : kStudyVars) out += ',' + std::string(v);
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += std::string(kStudyVars[i]);
    for (const auto& cell : m[i]) out += ',' + cell_str(cell);
    out += '\n';
  }
  return out;
}

std::string regress_csv(const StudyTable& rows) {
  // Each non-hit variable regressed against each hit rate.
  std::string out = "metric,algorithm,slope,intercept,r_squared\n";
  for (std::size_t v = 0; v < 7; ++v) {
    for (std::size_t h : {std::size_t{7}, std::size_t{8}}) {
      std::vector<Cell> xs, ys;
      for (const auto& r : rows) {
        xs.push_back(study_var(r, v));
        ys.push_back(study_var(r, h));
      }
      const auto fit = ols_pairwise(xs, ys);
      out += std::string(kStudyVars[v]) + ',' + (h == 7 ? "sa" : "ga") + ',';
      if (fit)
        out += format_double(fit->slope) + ',' + format_double(fit->intercept) + ',' +
               format_double(fit->r_squared);
      else
        out += ",,";
      out += '\n';
    }
  }
  return out;
}

double quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

std::string boxplot_csv(const StudyTable& rows, bool sa) {
  std::string out = "class,n,count,min,q1,median,q3,max,mean\n";
  std::vector<std::pair<std::string, int>> seen;
  for (const auto& r : rows) {
    const std::pair<std::string, int> key{r.cls, r.n};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    std::vector<double> xs;
    for (const auto& r2 : rows) {
      if (r2.cls != key.first || r2.n != key.second) continue;
      const Cell c = sa ? r2.sa_hit : r2.ga_hit;
      if (c) xs.push_back(*c);
    }
    if (xs.empty()) continue;
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    out += key.first + ',' + std::to_string(key.second) + ',' + std::to_string(xs.size()) +
           ',' + format_double(quantile(xs, 0.0)) + ',' + format_double(quantile(xs, 0.25)) +
           ',' + format_double(quantile(xs, 0.5)) + ',' + format_double(quantile(xs, 0.75)) +
           ',' + format_double(quantile(xs, 1.0)) + ',' + format_double(mean) + '\n';
  }
  return out;
}

}  // namespace

void write_reports(const StudyTable& table, const std::string& stats_dir) {
  const fs::path dir(stats_dir);
  write_file_atomic(dir / "table1.csv", aggregate_csv(aggregate_classes(table)));

  std::vector<std::pair<std::string, int>> cells;
  for (const auto& r : table) {
    const std::pair<std::string, int> key{r.cls, r.n};
    if (std::find(cells.begin(), cells.end(), key) == cells.end()) cells.push_back(key);
  }
  for (const auto& [cls, n] : cells) {
    StudyTable slice;
    for (const auto& r : table)
      if (r.cls == cls && r.n == n) slice.push_back(r);
    const std::string suffix = cls + "_" + std::to_string(n) + ".csv";
    write_file_atomic(dir / ("corr_" + suffix), corr_csv(correlation_matrix(slice)));
    write_file_atomic(dir / ("regress_" + suffix), regress_csv(slice));
  }
  write_file_atomic(dir / "boxplot_sa.csv", boxplot_csv(table, true));
  write_file_atomic(dir / "boxplot_ga.csv", boxplot_csv(table, false));
}

StudyTable run_study(const StudyConfig& cfg, StudyProgress* progress) {
  cfg.validate();
  const fs::path out(cfg.out_dir);
  fs::create_directories(out);

  // A previous run under a different config would poison the cache.
  const std::string resolved = resolved_config_text(cfg);
  const fs::path lock_path = out / "config.lock";
  if (fs::exists(lock_path)) {
    if (read_file(lock_path) != resolved)
      throw std::runtime_error(
          "study: output directory holds results for a different config (config.lock mismatch); "
          "use a fresh --out or delete it");
  } else {
    write_file_atomic(lock_path, resolved);
  }

  std::vector<TaskId> tasks;
  for (InstanceClass cls : cfg.classes)
    for (int n : cfg.sizes)
      for (int i = 0; i < cfg.instances_per_class; ++i) tasks.push_back({cls, n, i});

  StudyProgress local_progress;
  std::mutex progress_mu;
  StudyTable table(tasks.size());
  parallel_for(static_cast<std::int64_t>(tasks.size()), cfg.workers, [&](std::int64_t t) {
    table[static_cast<std::size_t>(t)] =
        run_task(cfg, tasks[static_cast<std::size_t>(t)], out, local_progress, progress_mu);
  });

  write_file_atomic(out / "metrics.csv", metrics_csv(table));
  write_file_atomic(out / "hits.csv", hits_csv(table));
  write_reports(table, (out / "stats").string());
  if (progress) *progress = local_progress;
  return table;
}

}  // namespace qaplon
