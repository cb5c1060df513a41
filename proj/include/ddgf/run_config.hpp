#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddgf/sampling.hpp"
#include "ddgf/transform.hpp"

namespace ddgf {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment parameters shared by the command-line tools. Parsed from a flat
/// key=value file ('#' starts a comment); command-line flags are applied on top.
struct RunConfig {
  std::string window = "sinc4";  // "sinc4" or "box"
  double window_param = 16.0;    // scale for sinc4, halfwidth for box
  int M = 0;                     // 0 means image width / 2
  int N = 0;                     // 0 means image height / 2
  double translation_step = 4.0;
  int k_max = 5;
  int oversampling = 8;
  double cg_tolerance = 1e-6;
  int cg_max_iterations = 500;
  double modulation_period = 0.0;
  bool exact = false;  // direct analysis instead of the fast path
  std::vector<std::uint64_t> seeds;
  std::string output_dir = ".";
  int threads = 0;
  double variance = 0.1;
  int trials = 10;
  std::vector<double> levels{0.90, 0.96, 0.98, 0.99};
  int haar_levels = 3;

  /// Sets one key; throws ConfigError for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

TransformConfig to_transform_config(const RunConfig& rc);
std::shared_ptr<const SamplingSet> build_sampling(const RunConfig& rc, int width, int height);

/// Comma-separated list parsing used for levels and seeds.
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace ddgf
