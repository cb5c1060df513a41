#include "ddgf/theory.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddgf/spectrum.hpp"
#include "ddgf/transform.hpp"

namespace ddgf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place 2-D DFT of a row-major width x height buffer.
void dft2(std::vector<complex>& buf, int width, int height, int sign) {
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = fftw_plan_dft_2d(height, width, data, data, sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

int signed_bin(int index, int n) { return index < n / 2 ? index : index - n; }

}  // namespace

double bump(double t, int power) {
  const double a = 1.0 - t * t;
  return a > 0.0 ? std::pow(a, power) : 0.0;
}

double RadonProjection::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * delta;
}

RadonProjection radon_project(const Image& f, double u1, double u2, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("radon_project: delta must be positive");
  const double len = std::hypot(u1, u2);
  if (std::abs(len - 1.0) > 1e-12) throw std::invalid_argument("radon_project: direction must have unit norm");
  const GridMap gm = f.grid();
  const double reach = std::abs(u1) * 0.5 * f.width() + std::abs(u2) * 0.5 * f.height();
  const long kmin = static_cast<long>(std::floor(-reach / delta - 0.5)) - 1;
  const long kmax = static_cast<long>(std::floor(reach / delta - 0.5)) + 2;
  RadonProjection p;
  p.u1 = u1;
  p.u2 = u2;
  p.delta = delta;
  p.first_offset = (static_cast<double>(kmin) + 0.5) * delta;
  p.values.assign(static_cast<std::size_t>(kmax - kmin + 1), 0.0);
  for (int j = 0; j < f.height(); ++j) {
    for (int i = 0; i < f.width(); ++i) {
      const double v = f(i, j);
      if (v == 0.0) continue;
      const double t = (u1 * gm.x1(i) + u2 * gm.x2(j)) / delta - 0.5;
      const double base = std::floor(t);
      const double frac = t - base;
      const auto k = static_cast<std::size_t>(static_cast<long>(base) - kmin);
      p.values[k] += (1.0 - frac) * v / delta;
      p.values[k + 1] += frac * v / delta;
    }
  }
  return p;
}

SliceReport verify_fourier_slice(const Image& f, double u1, double u2, double max_frequency, int oversampling) {
  const RadonProjection proj = radon_project(f, u1, u2, 1.0);
  PaddedSpectrum spec(f.width(), f.height(), oversampling, max_frequency, max_frequency);
  spec.compute(f);
  const double step = 1.0 / (static_cast<double>(oversampling) * f.width());
  const int count = static_cast<int>(std::floor(max_frequency / step + 1e-9));
  SliceReport rep;
  double max_diff = 0.0;
  double max_ref = 0.0;
  for (int j = -count; j <= count; ++j) {
    const double gamma = j * step;
    complex r = 0.0;
    for (std::size_t k = 0; k < proj.values.size(); ++k) {
      if (proj.values[k] == 0.0) continue;
      r += proj.values[k] * proj.delta * std::polar(1.0, -kTwoPi * gamma * proj.offset(k));
    }
    const complex ref = spec.interpolate(gamma * u1, gamma * u2);
    max_diff = std::max(max_diff, std::abs(r - ref));
    max_ref = std::max(max_ref, std::abs(ref));
    ++rep.samples;
  }
  rep.max_relative_deviation = max_ref > 0 ? max_diff / max_ref : 0.0;
  return rep;
}

double verify_toy_parseval(const Image& f) {
  if (f.width() != f.height()) throw std::invalid_argument("verify_toy_parseval: square image required");
  const int P = f.width();
  const GridMap gm = f.grid();
  const double radius = 0.25 * P;
  double energy = 0.0;
  for (int j = 0; j < P; ++j) {
    for (int i = 0; i < P; ++i) {
      const double v = f(i, j);
      if (v != 0.0 && std::hypot(gm.x1(i), gm.x2(j)) > radius) {
        throw std::domain_error("verify_toy_parseval: f is not supported in the disc |x| <= P/4");
      }
      energy += v * v;
    }
  }
  if (!(energy > 0)) throw std::domain_error("verify_toy_parseval: zero image");
  const int M = P / 2;
  auto s = std::make_shared<const SamplingSet>(SamplingSet::from_translations(M, M, {0.0}));
  TransformConfig cfg;
  cfg.window = Window::box(radius);
  cfg.fast_path = false;
  cfg.modulation_period = 2.0 * M + 1.0;
  FrameOperator op(s, cfg, P, P);
  const double T = cfg.modulation_period;
  return op.analyze_direct(to_complex(f)).energy() / (T * T * energy);
}

AnnihilationResult annihilated_function(const std::vector<std::pair<double, double>>& directions, int side,
                                        double bump_radius_fraction) {
  if (directions.empty()) throw std::invalid_argument("annihilated_function: no directions");
  if (!(bump_radius_fraction > 0)) throw std::invalid_argument("annihilated_function: bad bump radius");
  std::vector<std::pair<double, double>> units;
  for (auto [a, b] : directions) {
    const double len = std::hypot(a, b);
    if (!(len > 0)) throw std::invalid_argument("annihilated_function: zero direction");
    for (auto [c, d] : units)
      if (std::abs(c * b / len - d * a / len) < 1e-12) throw std::invalid_argument("annihilated_function: repeated direction");
    units.emplace_back(a / len, b / len);
  }
  // Each direction differentiates the base bump once; raising the power with |Q|
  // keeps f itself C^2.
  const int power = 3 + static_cast<int>(units.size());
  Image b(side, side);
  const GridMap gm = b.grid();
  const double R = bump_radius_fraction * side;
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) b(i, j) = bump(std::hypot(gm.x1(i), gm.x2(j)) / R, power);

  std::vector<complex> buf(b.size());
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = b[k];
  dft2(buf, side, side, FFTW_FORWARD);
  // Index-origin spectrum -> centered-coordinate spectrum is a phase exp(-2 pi i k c / P);
  // multiplying by the polynomial and undoing the phase commute, so only the polynomial is applied.
  const int q = static_cast<int>(units.size());
  complex iq = 1.0;
  for (int r = 0; r < q; ++r) iq *= complex(0.0, 1.0);
  for (int j = 0; j < side; ++j) {
    const int k2 = signed_bin(j, side);
    for (int i = 0; i < side; ++i) {
      const int k1 = signed_bin(i, side);
      complex& v = buf[static_cast<std::size_t>(j) * side + i];
      if (k1 == -side / 2 || k2 == -side / 2) {
        v = 0.0;  // Nyquist bins have no conjugate partner for an odd polynomial
        continue;
      }
      double poly = 1.0;
      for (auto [u1, u2] : units) poly *= (-u2 * k1 + u1 * k2);
      v *= iq * poly;
    }
  }
  dft2(buf, side, side, FFTW_BACKWARD);
  AnnihilationResult res;
  res.f = Image(side, side);
  for (std::size_t k = 0; k < buf.size(); ++k) res.f[k] = buf[k].real();
  const double n = norm2(res.f);
  if (!(n > 0)) throw std::domain_error("annihilated_function: construction vanished");
  for (auto& v : res.f.values()) v /= n;
  double total = 0.0;
  for (auto [u1, u2] : units) {
    const RadonProjection p = radon_project(res.f, u1, u2, 1.0);
    double e = 0.0;
    for (double v : p.values) e += v * v;
    res.projection_energy.push_back(e);
    total += e;
  }
  res.ratio = total;  // ||f|| = 1
  return res;
}

std::vector<BesselDemoPoint> unbounded_bessel_demo(int count, int modulation, double translation, const Window& w,
                                                   int side) {
  if (count < 2) throw std::invalid_argument("unbounded_bessel_demo: count must be >= 2");
  if (modulation < 0) throw std::invalid_argument("unbounded_bessel_demo: modulation must be >= 0");
  if (!w.has_compact_frequency_support()) throw std::domain_error("unbounded_bessel_demo: window needs compact g^");
  check_grid_dimensions(side, side);
  const double W = w.freq_support_halfwidth();
  const double center = static_cast<double>(modulation) / side;
  const double c = -0.5 * side + 0.5;

  // psi on the x1 axis from DFT-bin samples of its spectrum.
  std::vector<complex> psi(static_cast<std::size_t>(side));
  for (int i = 0; i < side; ++i) {
    const double x = i + c;
    complex acc = 0.0;
    for (int j = -side / 2; j < side / 2; ++j) {
      const double gamma = static_cast<double>(j) / side;
      const double amp = bump((gamma - center) / W);
      if (amp == 0.0) continue;
      acc += amp * std::polar(1.0, kTwoPi * gamma * (x - translation));
    }
    psi[static_cast<std::size_t>(i)] = acc / static_cast<double>(side);
  }
  complex pairing = 0.0;
  for (int i = 0; i < side; ++i) {
    const double x = i + c;
    const complex profile = std::polar(1.0, kTwoPi * modulation * x / side) * eval_spatial(w, x - translation);
    pairing += psi[static_cast<std::size_t>(i)] * std::conj(profile);
  }
  if (std::abs(pairing) < 1e-300) throw std::domain_error("unbounded_bessel_demo: psi does not pair with the atom");
  for (auto& v : psi) v /= pairing;

  const DirectionModulation mode = make_direction_modulation({modulation, 0});
  TransformConfig cfg;
  cfg.window = w;
  cfg.modulation_period = side;

  std::vector<BesselDemoPoint> out;
  for (int k = 1; k <= count; ++k) {
    const int n2 = side * k;
    std::vector<complex> eta(static_cast<std::size_t>(n2), 0.0);
    const double c2 = -0.5 * n2 + 0.5;
    for (int j = -n2 / 2; j < n2 / 2; ++j) {
      const double lambda = static_cast<double>(j) / n2;
      const double amp = bump(2.0 * k * lambda);
      if (amp == 0.0) continue;
      // Shift to the centered coordinate of row 0.
      eta[static_cast<std::size_t>((j + n2) % n2)] = amp * std::polar(1.0, kTwoPi * lambda * c2);
    }
    auto* data = reinterpret_cast<fftw_complex*>(eta.data());
    fftw_plan plan = fftw_plan_dft_1d(n2, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (auto& v : eta) v /= static_cast<double>(n2);

    ComplexField phi(side, n2);
    for (int j = 0; j < n2; ++j)
      for (int i = 0; i < side; ++i) phi(i, j) = psi[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(j)];
    const ComplexField g = atom(mode, translation, cfg, phi.grid());
    out.push_back({k, norm2(phi), std::abs(inner(phi, g))});
  }
  return out;
}

}  // namespace ddgf
