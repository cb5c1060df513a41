#pragma once

#include <array>
#include <vector>

#include "ddgf/image.hpp"

namespace ddgf {

/// Samples of F(xi) = sum_x f(x) exp(-2 pi i xi.x) (x in centered pixel
/// coordinates, xi in cycles per pixel) on the grid xi = k / (q P), obtained
/// from a q-fold zero-padded FFT, with off-grid values by tensor 4-point
/// Lagrange interpolation.
///
/// The object also implements the exact adjoint: spread() accumulates into an
/// adjoint spectrum buffer and adjoint_field() maps it back to the image grid.
/// Not safe for concurrent use of one instance.
class PaddedSpectrum {
 public:
  /// max_xi1/max_xi2 bound |xi| of the points that will be interpolated or spread.
  PaddedSpectrum(int width, int height, int oversampling, double max_xi1, double max_xi2);
  ~PaddedSpectrum();
  PaddedSpectrum(const PaddedSpectrum&) = delete;
  PaddedSpectrum& operator=(const PaddedSpectrum&) = delete;

  int width() const { return width_; }
  int height() const { return height_; }
  int padded_width() const { return q1_; }
  int padded_height() const { return q2_; }

  void compute(const Image& f);
  void compute(const ComplexField& f);

  /// Exact F at integer grid index (k1, k2), i.e. xi = (k1/Q1, k2/Q2).
  complex at_index(int k1, int k2) const;

  struct Stencil {
    int base1 = 0;  // first of four indices along axis 1, relative to the table origin
    int base2 = 0;
    std::array<complex, 4> w1{};
    std::array<complex, 4> w2{};
  };

  Stencil stencil(double xi1, double xi2) const;
  complex interpolate(const Stencil& s) const;
  complex interpolate(double xi1, double xi2) const { return interpolate(stencil(xi1, xi2)); }

  void clear_adjoint();
  void spread(const Stencil& s, complex value);
  ComplexField adjoint_field();

 private:
  void forward_from_buffer();
  int index_of(int table1, int table2) const;

  int width_;
  int height_;
  int q1_;
  int q2_;
  int kmin1_ = 0;
  int kmin2_ = 0;
  std::vector<complex> phase1_;  // exp(-2 pi i k c1 / Q1) over the extended index range
  std::vector<complex> phase2_;
  std::vector<int> mod1_;        // k mod Q1 over the extended range
  std::vector<int> mod2_;
  std::vector<complex> spectrum_;  // G[k2 * Q1 + k1]
  std::vector<complex> adjoint_;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Lagrange weights for nodes -1, 0, 1, 2 at fractional offset t in [0, 1).
std::array<double, 4> lagrange4(double t);

}  // namespace ddgf
