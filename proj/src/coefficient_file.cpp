#include "ddgf/coefficient_file.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace ddgf {

namespace {

template <typename T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("coefficient file: truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_coefficient_file(const std::filesystem::path& path, const CoefficientFile& file) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  os.write("DDGF", 4);
  put<std::uint32_t>(os, kCoefficientFileVersion);
  put<std::int32_t>(os, file.M);
  put<std::int32_t>(os, file.N);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(file.translations.size()));
  for (double t : file.translations) put<double>(os, t);
  put<std::uint64_t>(os, file.values.size());
  for (const auto& v : file.values) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw std::ios_base::failure("write failed for " + path.string());
}

void write_coefficient_file(const std::filesystem::path& path, const CoefficientSet& c) {
  if (!c.sampling) throw std::invalid_argument("coefficient set has no sampling set");
  write_coefficient_file(path, CoefficientFile{c.sampling->M(), c.sampling->N(), c.sampling->translations(), c.values});
}

CoefficientFile read_coefficient_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::ios_base::failure("cannot open " + path.string());
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("coefficient file: truncated");
  if (std::memcmp(magic, "DDGF", 4) != 0) throw FormatError("coefficient file: bad magic");
  if (get<std::uint32_t>(is) != kCoefficientFileVersion) throw FormatError("coefficient file: unsupported version");
  CoefficientFile f;
  f.M = get<std::int32_t>(is);
  f.N = get<std::int32_t>(is);
  if (f.M < 0 || f.N < 0) throw FormatError("coefficient file: negative lattice size");
  const auto nt = get<std::uint32_t>(is);
  f.translations.resize(nt);
  for (auto& t : f.translations) t = get<double>(is);
  const auto count = get<std::uint64_t>(is);
  const std::uint64_t expected = static_cast<std::uint64_t>(2 * f.M + 1) * (2 * f.N + 1) * nt;
  if (count != expected) throw FormatError("coefficient file: entry count does not match the header");
  f.values.resize(count);
  for (auto& v : f.values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v = {re, im};
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("coefficient file: trailing bytes");
  return f;
}

CoefficientSet to_coefficient_set(const CoefficientFile& file) {
  auto s = std::make_shared<const SamplingSet>(SamplingSet::from_translations(file.M, file.N, file.translations));
  if (s->entry_count() != file.values.size()) throw FormatError("coefficient file: entry count mismatch");
  return {s, file.values};
}

}  // namespace ddgf
