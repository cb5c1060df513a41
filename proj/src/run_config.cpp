#include "ddgf/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ddgf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("invalid value for " + key + ": '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + text + "'");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<double>("list", item));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<std::uint64_t>("seeds", item));
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "window") {
    const std::string v = trim(value);
    if (v != "sinc4" && v != "box") throw ConfigError("window must be sinc4 or box");
    window = v;
  } else if (key == "window_param") {
    window_param = parse_number<double>(key, value);
  } else if (key == "M") {
    M = parse_number<int>(key, value);
  } else if (key == "N") {
    N = parse_number<int>(key, value);
  } else if (key == "translation_step") {
    translation_step = parse_number<double>(key, value);
  } else if (key == "k_max") {
    k_max = parse_number<int>(key, value);
  } else if (key == "oversampling") {
    oversampling = parse_number<int>(key, value);
  } else if (key == "cg_tolerance") {
    cg_tolerance = parse_number<double>(key, value);
  } else if (key == "cg_max_iterations") {
    cg_max_iterations = parse_number<int>(key, value);
  } else if (key == "modulation_period") {
    modulation_period = parse_number<double>(key, value);
  } else if (key == "exact") {
    exact = parse_bool(key, value);
  } else if (key == "seeds") {
    seeds = parse_seed_list(value);
  } else if (key == "output_dir") {
    output_dir = trim(value);
  } else if (key == "threads") {
    threads = parse_number<int>(key, value);
  } else if (key == "variance") {
    variance = parse_number<double>(key, value);
  } else if (key == "trials") {
    trials = parse_number<int>(key, value);
  } else if (key == "levels") {
    levels = parse_double_list(value);
  } else if (key == "haar_levels") {
    haar_levels = parse_number<int>(key, value);
  } else {
    throw ConfigError("unknown configuration key: " + key);
  }
}

void RunConfig::validate() const {
  if (!(window_param > 0)) throw ConfigError("window_param must be positive");
  if (M < 0 || N < 0) throw ConfigError("M and N must be nonnegative");
  if (!(translation_step > 0)) throw ConfigError("translation_step must be positive");
  if (k_max < 0) throw ConfigError("k_max must be >= 0");
  if (oversampling < 1) throw ConfigError("oversampling must be >= 1");
  if (!(cg_tolerance > 0)) throw ConfigError("cg_tolerance must be positive");
  if (cg_max_iterations < 0) throw ConfigError("cg_max_iterations must be >= 0");
  if (modulation_period < 0) throw ConfigError("modulation_period must be >= 0");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (!(variance >= 0)) throw ConfigError("variance must be >= 0");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (haar_levels < 1) throw ConfigError("haar_levels must be >= 1");
  for (double l : levels)
    if (!(l >= 0 && l <= 1)) throw ConfigError("levels must lie in [0, 1]");
  if (!seeds.empty() && seeds.size() != static_cast<std::size_t>(trials)) {
    throw ConfigError("seed count must equal trials");
  }
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig rc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    rc.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_run_config(in);
}

TransformConfig to_transform_config(const RunConfig& rc) {
  TransformConfig cfg;
  cfg.window = rc.window == "box" ? Window::box(rc.window_param) : Window::sinc_pow4(rc.window_param);
  cfg.oversampling = rc.oversampling;
  cfg.fast_path = !rc.exact;
  cfg.cg_tolerance = rc.cg_tolerance;
  cfg.cg_max_iterations = rc.cg_max_iterations;
  cfg.modulation_period = rc.modulation_period;
  return cfg;
}

std::shared_ptr<const SamplingSet> build_sampling(const RunConfig& rc, int width, int height) {
  const int M = rc.M > 0 ? rc.M : width / 2;
  const int N = rc.N > 0 ? rc.N : height / 2;
  return std::make_shared<const SamplingSet>(build_sampling_set(M, N, rc.translation_step, rc.k_max));
}

}  // namespace ddgf
