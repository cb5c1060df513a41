#include <doctest.h>

#include <stdexcept>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ddgf/coefficient_file.hpp"
#include "ddgf/run_config.hpp"

using namespace ddgf;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ddgf_unit_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("coefficient file round trip is bit exact") {
  const auto s = std::make_shared<const SamplingSet>(build_sampling_set(3, 2, 4, 2));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CoefficientSet c{s, std::vector<complex>(s->entry_count())};
  for (auto& v : c.values) v = {g(rng), g(rng)};
  c.values[0] = {std::numeric_limits<double>::denorm_min(), -0.0};
  const auto p = temp_file("rt.ddgf");
  write_coefficient_file(p, c);
  const CoefficientFile back = read_coefficient_file(p);
  CHECK(back.M == 3);
  CHECK(back.N == 2);
  CHECK(back.translations == s->translations());
  REQUIRE(back.values.size() == c.values.size());
  CHECK(std::memcmp(back.values.data(), c.values.data(), c.values.size() * sizeof(complex)) == 0);
  const CoefficientSet rebuilt = to_coefficient_set(back);
  CHECK(rebuilt.sampling->entry_count() == s->entry_count());
  std::filesystem::remove(p);
}

TEST_CASE("coefficient file layout") {
  CoefficientFile f;
  f.M = 0;
  f.N = 0;
  f.translations = {0.0};
  f.values = {complex(1.0, -2.0)};
  const auto p = temp_file("layout.ddgf");
  write_coefficient_file(p, f);
  const std::string bytes = slurp(p);
  CHECK(bytes.size() == 4 + 4 + 4 + 4 + 4 + 8 + 8 + 16);
  CHECK(bytes.substr(0, 4) == "DDGF");
  CHECK(bytes[4] == 1);
  double re, im;
  std::memcpy(&re, bytes.data() + 36, 8);
  std::memcpy(&im, bytes.data() + 44, 8);
  CHECK(re == 1.0);
  CHECK(im == -2.0);

  std::string bad = bytes;
  bad[0] = 'X';
  std::ofstream(p, std::ios::binary) << bad;
  CHECK_THROWS_AS(read_coefficient_file(p), FormatError);
  std::ofstream(p, std::ios::binary) << bytes.substr(0, bytes.size() - 3);
  CHECK_THROWS_AS(read_coefficient_file(p), FormatError);
  std::ofstream(p, std::ios::binary) << bytes + "x";
  CHECK_THROWS_AS(read_coefficient_file(p), FormatError);
  std::filesystem::remove(p);
  CHECK_THROWS_AS(read_coefficient_file(p), std::ios_base::failure);
}

TEST_CASE("run configuration parsing") {
  std::istringstream in(
      "# experiment\n"
      "window = box\n"
      "window_param=3.5  # comment\n"
      "k_max = 0\n"
      "levels = 0.5,0.75\n"
      "\n"
      "seeds=4,5\n"
      "trials=2\n");
  RunConfig rc = parse_run_config(in);
  CHECK(rc.window == "box");
  CHECK(rc.window_param == 3.5);
  CHECK(rc.k_max == 0);
  CHECK(rc.levels == std::vector<double>{0.5, 0.75});
  CHECK(rc.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK_NOTHROW(rc.validate());
  rc.set("k_max", "2");
  CHECK(rc.k_max == 2);

  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_AS(parse_run_config(unknown), ConfigError);
  std::istringstream garbage("oversampling = eight\n");
  CHECK_THROWS_AS(parse_run_config(garbage), ConfigError);
  std::istringstream no_eq("oversampling\n");
  CHECK_THROWS_AS(parse_run_config(no_eq), ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/ddgf.cfg"), ConfigError);
}

TEST_CASE("run configuration to transform objects") {
  RunConfig rc;
  rc.exact = true;
  const TransformConfig cfg = to_transform_config(rc);
  CHECK_FALSE(cfg.fast_path);
  CHECK(cfg.window.kind == WindowKind::SincPow4);
  CHECK(cfg.window.param == 16.0);
  const auto s = build_sampling(rc, 32, 32);
  CHECK(s->entry_count() == 11u * 33 * 33);
  rc.k_max = 0;
  CHECK(build_sampling(rc, 32, 32)->entry_count() == 33u * 33);
}
