#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddgf/transform.hpp"

namespace ddgf {

/// Contents of a .ddgf file: "DDGF", u32 version, i32 M, i32 N, u32 translation
/// count, f64 translations, u64 entry count, then (re, im) f64 pairs in entry order.
/// All fields little-endian.
struct CoefficientFile {
  int M = 0;
  int N = 0;
  std::vector<double> translations;
  std::vector<complex> values;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kCoefficientFileVersion = 1;

void write_coefficient_file(const std::filesystem::path& path, const CoefficientFile& file);
void write_coefficient_file(const std::filesystem::path& path, const CoefficientSet& c);

/// Throws FormatError for bad magic, version, or sizes and std::ios_base::failure for I/O failures.
CoefficientFile read_coefficient_file(const std::filesystem::path& path);

/// Rebuilds the full-lattice sampling set and checks the entry count.
CoefficientSet to_coefficient_set(const CoefficientFile& file);

}  // namespace ddgf
