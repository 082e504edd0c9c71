#pragma once

#include <string>

#include "qaplon/config.hpp"
#include "qaplon/stats.hpp"

namespace qaplon {

/// Work actually performed vs reused from a previous run with the same config.
struct StudyProgress {
  int instances_generated = 0;
  int instances_reused = 0;
  int lons_built = 0;
  int lons_reused = 0;
  int rows_computed = 0;
  int rows_reused = 0;
};

/// End-to-end pipeline: generate -> extract LON -> metrics -> autocorrelation
/// -> SA/GA hit rates -> metrics.csv + stats reports, under cfg.out_dir:
///
///   config.lock                          resolved config (guards reruns)
///   instances/<class>/<n>/<i>.dat
///   lons/<class>/<n>/<i>.{nodes,edges}.tsv
///   rows/<class>/<n>/<i>.row             per-instance cache
///   metrics.csv, hits.csv
///   stats/table1.csv, corr_*.csv, regress_*.csv, boxplot_*.csv
///
/// Reruns skip any artifact whose inputs hash-match; output bytes are a pure
/// function of the config, for any worker count.
StudyTable run_study(const StudyConfig& cfg, StudyProgress* progress = nullptr);

/// Recomputes the stats CSVs from an existing table.
void write_reports(const StudyTable& table, const std::string& stats_dir);

std::string metrics_csv(const StudyTable& table);
StudyTable parse_metrics_csv(std::string_view text);

std::string hits_csv(const StudyTable& table);

}  // namespace qaplon
