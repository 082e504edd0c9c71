#include "qaplon/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "qaplon/enumeration.hpp"
#include "qaplon/ioutil.hpp"

namespace qaplon {

void StudyConfig::validate() const {
  if (classes.empty()) throw std::invalid_argument("config: classes must not be empty");
  if (sizes.empty()) throw std::invalid_argument("config: sizes must not be empty");
  for (int n : sizes) {
    if (n < 2 || n > size_cap)
      throw std::invalid_argument("config: size " + std::to_string(n) +
                                  " outside [2, size_cap=" + std::to_string(size_cap) + "]");
  }
  if (size_cap > 12) throw std::invalid_argument("config: size_cap above 12 is not supported");
  if (instances_per_class < 1) throw std::invalid_argument("config: instances_per_class must be >= 1");
  if (runs_per_algorithm < 1) throw std::invalid_argument("config: runs_per_algorithm must be >= 1");
  if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  for (int n : sizes) gen.validate(n);
  if (sa.initial_temperature <= 0 || sa.cooling_factor <= 0 || sa.cooling_factor >= 1 || sa.budget < 1)
    throw std::invalid_argument("config: bad sa section");
  if (ga.population_size < 2 || ga.mutation_probability < 0 || ga.mutation_probability > 1 ||
      ga.budget < ga.population_size)
    throw std::invalid_argument("config: bad ga section");
  if (autocorr.walk_length < 2 || autocorr.n_walks < 1 || autocorr.s_max < 0)
    throw std::invalid_argument("config: bad autocorr section");
  if (mcl_inflation <= 1.0) throw std::invalid_argument("config: mcl inflation must be > 1");
}

namespace {

struct KeyValue {
  std::string section, key, value;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<KeyValue> parse_ini(std::string_view text) {
  std::vector<KeyValue> out;
  std::string section;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) + ": unterminated section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    out.push_back({section, std::string(trim(line.substr(0, eq))),
                   std::string(trim(line.substr(eq + 1)))});
  }
  return out;
}

long long to_int(const KeyValue& kv) {
  long long v;
  auto r = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
  if (r.ec != std::errc() || r.ptr != kv.value.data() + kv.value.size())
    throw std::runtime_error("config: " + kv.section + "." + kv.key + ": not an integer");
  return v;
}

std::uint64_t to_u64(const KeyValue& kv) {
  std::uint64_t v;
  auto r = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
  if (r.ec != std::errc() || r.ptr != kv.value.data() + kv.value.size())
    throw std::runtime_error("config: " + kv.section + "." + kv.key + ": not an unsigned integer");
  return v;
}

double to_double(const KeyValue& kv) {
  double v;
  auto r = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
  if (r.ec != std::errc() || r.ptr != kv.value.data() + kv.value.size())
    throw std::runtime_error("config: " + kv.section + "." + kv.key + ": not a number");
  return v;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

StudyConfig parse_config(std::string_view text) {
  StudyConfig cfg;
  for (const KeyValue& kv : parse_ini(text)) {
    const std::string id = kv.section + "." + kv.key;
    if (id == "study.classes") {
      cfg.classes.clear();
      for (const auto& w : split_words(kv.value)) {
        auto c = parse_class(w);
        if (!c) throw std::runtime_error("config: unknown class '" + w + "'");
        cfg.classes.push_back(*c);
      }
    } else if (id == "study.sizes") {
      cfg.sizes.clear();
      for (const auto& w : split_words(kv.value))
        cfg.sizes.push_back(static_cast<int>(to_int({kv.section, kv.key, w})));
    } else if (id == "study.instances_per_class") {
      cfg.instances_per_class = static_cast<int>(to_int(kv));
    } else if (id == "study.runs_per_algorithm") {
      cfg.runs_per_algorithm = static_cast<int>(to_int(kv));
    } else if (id == "study.master_seed") {
      cfg.master_seed = to_u64(kv);
    } else if (id == "study.workers") {
      cfg.workers = static_cast<int>(to_int(kv));
    } else if (id == "study.size_cap") {
      cfg.size_cap = static_cast<int>(to_int(kv));
    } else if (id == "study.out_dir") {
      cfg.out_dir = kv.value;
    } else if (id == "generator.uniform_lo") {
      cfg.gen.uniform_lo = static_cast<int>(to_int(kv));
    } else if (id == "generator.uniform_hi") {
      cfg.gen.uniform_hi = static_cast<int>(to_int(kv));
    } else if (id == "generator.rl_zero_prob") {
      cfg.gen.rl_zero_prob = to_double(kv);
    } else if (id == "generator.rl_exponent_max") {
      cfg.gen.rl_exponent_max = to_double(kv);
    } else if (id == "generator.rl_grid") {
      cfg.gen.rl_grid = static_cast<int>(to_int(kv));
    } else if (id == "sa.initial_temperature") {
      cfg.sa.initial_temperature = to_double(kv);
    } else if (id == "sa.cooling_factor") {
      cfg.sa.cooling_factor = to_double(kv);
    } else if (id == "sa.budget") {
      cfg.sa.budget = static_cast<int>(to_int(kv));
    } else if (id == "ga.population_size") {
      cfg.ga.population_size = static_cast<int>(to_int(kv));
    } else if (id == "ga.mutation_probability") {
      cfg.ga.mutation_probability = to_double(kv);
    } else if (id == "ga.budget") {
      cfg.ga.budget = static_cast<int>(to_int(kv));
    } else if (id == "autocorr.walk_length") {
      cfg.autocorr.walk_length = static_cast<int>(to_int(kv));
    } else if (id == "autocorr.n_walks") {
      cfg.autocorr.n_walks = static_cast<int>(to_int(kv));
    } else if (id == "autocorr.s_max") {
      cfg.autocorr.s_max = static_cast<int>(to_int(kv));
    } else if (id == "autocorr.epsilon") {
      cfg.autocorr.epsilon = to_double(kv);
    } else if (id == "mcl.inflation") {
      cfg.mcl_inflation = to_double(kv);
    } else {
      throw std::runtime_error("config: unknown key '" + id + "'");
    }
  }
  cfg.validate();
  return cfg;
}

StudyConfig load_config_file(const std::string& path) {
  return parse_config(read_file(path));
}

std::string resolved_config_text(const StudyConfig& cfg) {
  std::ostringstream out;
  out << "[study]\n";
  out << "classes =";
  for (auto c : cfg.classes) out << ' ' << class_name(c);
  out << "\nsizes =";
  for (int n : cfg.sizes) out << ' ' << n;
  out << "\ninstances_per_class = " << cfg.instances_per_class;
  out << "\nruns_per_algorithm = " << cfg.runs_per_algorithm;
  out << "\nmaster_seed = " << cfg.master_seed;
  out << "\nsize_cap = " << cfg.size_cap;
  out << "\n[generator]\n";
  out << "uniform_lo = " << cfg.gen.uniform_lo;
  out << "\nuniform_hi = " << cfg.gen.uniform_hi;
  out << "\nrl_zero_prob = " << format_double(cfg.gen.rl_zero_prob);
  out << "\nrl_exponent_max = " << format_double(cfg.gen.rl_exponent_max);
  out << "\nrl_grid = " << cfg.gen.rl_grid;
  out << "\n[sa]\n";
  out << "initial_temperature = " << format_double(cfg.sa.initial_temperature);
  out << "\ncooling_factor = " << format_double(cfg.sa.cooling_factor);
  out << "\nbudget = " << cfg.sa.budget;
  out << "\n[ga]\n";
  out << "population_size = " << cfg.ga.population_size;
  out << "\nmutation_probability = " << format_double(cfg.ga.mutation_probability);
  out << "\nbudget = " << cfg.ga.budget;
  out << "\n[autocorr]\n";
  out << "walk_length = " << cfg.autocorr.walk_length;
  out << "\nn_walks = " << cfg.autocorr.n_walks;
  out << "\ns_max = " << cfg.autocorr.s_max;
  out << "\nepsilon = " << format_double(cfg.autocorr.epsilon);
  out << "\n[mcl]\n";
  out << "inflation = " << format_double(cfg.mcl_inflation);
  out << "\n";
  return out.str();
}

}  // namespace qaplon
