#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qaplon/autocorr.hpp"
#include "qaplon/generators.hpp"
#include "qaplon/heuristics.hpp"

namespace qaplon {

/// Every knob of the end-to-end study. Defaults are the desk-scale setup;
/// configs/paper.cfg ships the full-scale parameters.
struct StudyConfig {
  std::vector<InstanceClass> classes = {InstanceClass::Uniform, InstanceClass::RealLike};
  std::vector<int> sizes = {8, 9};
  int instances_per_class = 30;  ///< per (class, size) cell
  int runs_per_algorithm = 100;
  std::uint64_t master_seed = 1;
  int workers = 0;  ///< 0 = hardware concurrency
  int size_cap = 11;
  std::string out_dir = "out";

  GeneratorParams gen;
  SaConfig sa;
  GaConfig ga;
  AutocorrParams autocorr;
  double mcl_inflation = 2.0;

  void validate() const;
};

/// Flat INI-style text: [section] headers, key = value lines, '#' comments.
/// Unknown sections or keys are errors.
StudyConfig parse_config(std::string_view text);
StudyConfig load_config_file(const std::string& path);

/// Canonical serialization of every resolved knob; its hash keys config.lock.
std::string resolved_config_text(const StudyConfig& cfg);

}  // namespace qaplon
