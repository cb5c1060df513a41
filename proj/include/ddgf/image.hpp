#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ddgf {

using complex = std::complex<double>;

/// Pixel (i, j) <-> centered continuum coordinate in pixel units.
///
/// Column i maps to x1 = i - width/2 + 1/2 and row j to x2 = j - height/2 + 1/2,
/// so coordinates span [-P/2, P/2) symmetrically around the image center.
struct GridMap {
  int width = 0;
  int height = 0;

  double x1(int i) const { return i - 0.5 * width + 0.5; }
  double x2(int j) const { return j - 0.5 * height + 0.5; }

  /// Inverse of x1/x2; returns false when the coordinate is not a pixel center.
  bool pixel_of(double x1, double x2, int& i, int& j) const;

  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  friend bool operator==(const GridMap&, const GridMap&) = default;
};

/// Dense row-major 2-D field on an even-sized grid. Index (i, j) is column i, row j.
template <typename T>
class Field {
 public:
  Field() = default;
  Field(int width, int height, T fill = T{});
  Field(int width, int height, std::vector<T> values);

  int width() const { return width_; }
  int height() const { return height_; }
  GridMap grid() const { return {width_, height_}; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * width_ + i]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(j) * width_ + i];
  }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using Image = Field<double>;
using ComplexField = Field<complex>;

/// Throws std::invalid_argument unless both sides are even and >= 2.
void check_grid_dimensions(int width, int height);

/// Throws std::invalid_argument if any pixel is NaN or infinite.
void check_finite(const Image& img);

Image real_part(const ComplexField& f);
ComplexField to_complex(const Image& f);

/// Discrete L2 inner product with unit pixel weight: sum_p f(p) * conj(h(p)).
complex inner(const Image& f, const ComplexField& h);
complex inner(const ComplexField& f, const ComplexField& h);
double inner(const Image& f, const Image& h);

double norm2(const Image& f);
double norm2(const ComplexField& f);

/// norm2(approx - reference) / norm2(reference); throws std::domain_error for a zero reference.
double relative_error(const Image& approx, const Image& reference);

// Binary PGM (P5) I/O.

enum class PgmErrorKind { Io, MalformedHeader, TruncatedPayload, UnsupportedMagic };

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  PgmErrorKind kind() const { return kind_; }

 private:
  PgmErrorKind kind_;
};

/// Reads an 8- or 16-bit P5 file; intensities are divided by maxval.
Image load_pgm(const std::filesystem::path& path);

/// Writes an 8-bit P5 file. Values are clamped to [0,1] and rounded half up to 0..255.
void save_pgm(const Image& img, const std::filesystem::path& path);

// ---------------------------------------------------------------------------

template <typename T>
Field<T>::Field(int width, int height, T fill) : width_(width), height_(height) {
  check_grid_dimensions(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

template <typename T>
Field<T>::Field(int width, int height, std::vector<T> values)
    : width_(width), height_(height), data_(std::move(values)) {
  check_grid_dimensions(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("Field: value count does not match dimensions");
  }
}

}  // namespace ddgf
