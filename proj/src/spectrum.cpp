#include "ddgf/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddgf {

std::array<double, 4> lagrange4(double t) {
  const double tm1 = t - 1.0;
  const double tm2 = t - 2.0;
  const double tp1 = t + 1.0;
  return {-t * tm1 * tm2 / 6.0, tp1 * tm1 * tm2 / 2.0, -tp1 * t * tm2 / 2.0, tp1 * t * tm1 / 6.0};
}

namespace {

fftw_complex* as_fftw(std::vector<complex>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

void fill_axis(int pixels, int padded, double max_xi, int& kmin, std::vector<complex>& phase,
               std::vector<int>& mod) {
  const double c = -0.5 * pixels + 0.5;  // coordinate of pixel 0
  kmin = static_cast<int>(std::floor(-max_xi * padded)) - 2;
  const int kmax = static_cast<int>(std::ceil(max_xi * padded)) + 3;
  const std::size_t n = static_cast<std::size_t>(kmax - kmin + 1);
  phase.resize(n);
  mod.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const int k = kmin + static_cast<int>(t);
    // Reduce k*c modulo Q before forming the angle to keep the argument small.
    const double arg = -2.0 * std::numbers::pi * std::fmod(k * c, static_cast<double>(padded)) / padded;
    phase[t] = std::polar(1.0, arg);
    mod[t] = ((k % padded) + padded) % padded;
  }
}

}  // namespace

PaddedSpectrum::PaddedSpectrum(int width, int height, int oversampling, double max_xi1, double max_xi2)
    : width_(width), height_(height), q1_(width * oversampling), q2_(height * oversampling) {
  if (oversampling < 1) throw std::invalid_argument("PaddedSpectrum: oversampling must be >= 1");
  check_grid_dimensions(width, height);
  fill_axis(width, q1_, max_xi1, kmin1_, phase1_, mod1_);
  fill_axis(height, q2_, max_xi2, kmin2_, phase2_, mod2_);
  const std::size_t n = static_cast<std::size_t>(q1_) * q2_;
  spectrum_.assign(n, 0.0);
  adjoint_.assign(n, 0.0);
  forward_plan_ = fftw_plan_dft_2d(q2_, q1_, as_fftw(spectrum_), as_fftw(spectrum_), FFTW_FORWARD,
                                   FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_2d(q2_, q1_, as_fftw(adjoint_), as_fftw(adjoint_), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  if (!forward_plan_ || !backward_plan_) throw std::runtime_error("PaddedSpectrum: FFTW planning failed");
}

PaddedSpectrum::~PaddedSpectrum() {
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (backward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void PaddedSpectrum::forward_from_buffer() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void PaddedSpectrum::compute(const Image& f) {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("PaddedSpectrum: size mismatch");
  std::fill(spectrum_.begin(), spectrum_.end(), complex(0.0));
  for (int j = 0; j < height_; ++j)
    for (int i = 0; i < width_; ++i) spectrum_[static_cast<std::size_t>(j) * q1_ + i] = f(i, j);
  forward_from_buffer();
}

void PaddedSpectrum::compute(const ComplexField& f) {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("PaddedSpectrum: size mismatch");
  std::fill(spectrum_.begin(), spectrum_.end(), complex(0.0));
  for (int j = 0; j < height_; ++j)
    for (int i = 0; i < width_; ++i) spectrum_[static_cast<std::size_t>(j) * q1_ + i] = f(i, j);
  forward_from_buffer();
}

int PaddedSpectrum::index_of(int t1, int t2) const {
  return mod2_[static_cast<std::size_t>(t2)] * q1_ + mod1_[static_cast<std::size_t>(t1)];
}

complex PaddedSpectrum::at_index(int k1, int k2) const {
  const int t1 = k1 - kmin1_;
  const int t2 = k2 - kmin2_;
  if (t1 < 0 || t2 < 0 || t1 >= static_cast<int>(mod1_.size()) || t2 >= static_cast<int>(mod2_.size())) {
    throw std::out_of_range("PaddedSpectrum: index outside the prepared range");
  }
  return phase1_[t1] * phase2_[t2] * spectrum_[index_of(t1, t2)];
}

PaddedSpectrum::Stencil PaddedSpectrum::stencil(double xi1, double xi2) const {
  Stencil s;
  const double k1 = xi1 * q1_;
  const double k2 = xi2 * q2_;
  const double f1 = std::floor(k1);
  const double f2 = std::floor(k2);
  s.base1 = static_cast<int>(f1) - 1 - kmin1_;
  s.base2 = static_cast<int>(f2) - 1 - kmin2_;
  if (s.base1 < 0 || s.base2 < 0 || s.base1 + 4 > static_cast<int>(mod1_.size()) ||
      s.base2 + 4 > static_cast<int>(mod2_.size())) {
    throw std::out_of_range("PaddedSpectrum: frequency outside the prepared range");
  }
  const auto l1 = lagrange4(k1 - f1);
  const auto l2 = lagrange4(k2 - f2);
  for (int p = 0; p < 4; ++p) {
    s.w1[p] = l1[p] * phase1_[static_cast<std::size_t>(s.base1 + p)];
    s.w2[p] = l2[p] * phase2_[static_cast<std::size_t>(s.base2 + p)];
  }
  return s;
}

complex PaddedSpectrum::interpolate(const Stencil& s) const {
  complex total = 0.0;
  for (int r = 0; r < 4; ++r) {
    const complex* row = spectrum_.data() + static_cast<std::size_t>(mod2_[s.base2 + r]) * q1_;
    complex acc = 0.0;
    for (int p = 0; p < 4; ++p) acc += s.w1[p] * row[mod1_[s.base1 + p]];
    total += s.w2[r] * acc;
  }
  return total;
}

void PaddedSpectrum::clear_adjoint() { std::fill(adjoint_.begin(), adjoint_.end(), complex(0.0)); }

void PaddedSpectrum::spread(const Stencil& s, complex value) {
  for (int r = 0; r < 4; ++r) {
    complex* row = adjoint_.data() + static_cast<std::size_t>(mod2_[s.base2 + r]) * q1_;
    const complex vr = std::conj(s.w2[r]) * value;
    for (int p = 0; p < 4; ++p) row[mod1_[s.base1 + p]] += std::conj(s.w1[p]) * vr;
  }
}

ComplexField PaddedSpectrum::adjoint_field() {
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  ComplexField out(width_, height_);
  for (int j = 0; j < height_; ++j)
    for (int i = 0; i < width_; ++i) out(i, j) = adjoint_[static_cast<std::size_t>(j) * q1_ + i];
  return out;
}

}  // namespace ddgf
