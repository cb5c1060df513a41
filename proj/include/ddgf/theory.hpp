#pragma once

#include <utility>
#include <vector>

#include "ddgf/image.hpp"
#include "ddgf/sampling.hpp"
#include "ddgf/window.hpp"

namespace ddgf {

/// Samples of the projection of f onto the line through the origin along u.
/// Bin k sits at offset first_offset + k * delta; values are mass per unit length.
struct RadonProjection {
  double u1 = 1.0;
  double u2 = 0.0;
  double delta = 1.0;
  double first_offset = 0.0;
  std::vector<double> values;

  double offset(std::size_t k) const { return first_offset + static_cast<double>(k) * delta; }
  double mass() const;  // sum values * delta
};

/// Splats each pixel's value onto the two nearest bins of u.x with linear
/// weights. Bins are centered at (k + 1/2) delta for integer k.
RadonProjection radon_project(const Image& f, double u1, double u2, double delta = 1.0);

struct SliceReport {
  double max_relative_deviation = 0.0;  // max |R^ - F| / max |F| over the frequency samples
  std::size_t samples = 0;
};

/// Compares the Fourier transform of the binned projection with F(gamma u),
/// read off a zero-padded spectrum, for |gamma| <= max_frequency cycles per pixel.
SliceReport verify_fourier_slice(const Image& f, double u1, double u2, double max_frequency = 0.125,
                                 int oversampling = 8);

/// Ratio sum |c|^2 / (T1 T2 ||f||^2) for the box window of halfwidth P/4, the
/// full lattice with M = P/2, a single translation n = 0 and modulation period
/// T = 2M + 1. Throws std::domain_error if f has mass outside the disc |x| <= P/4
/// or is zero.
double verify_toy_parseval(const Image& f);

struct AnnihilationResult {
  Image f;                            // unit norm
  std::vector<double> projection_energy;  // ||R_u f||^2 per direction
  double ratio = 0.0;                 // sum of projection energies / ||f||^2
};

/// f^ = i^q prod_i (v_i . xi) b^(xi) with v_i perpendicular to u_i, q = |Q| and b the
/// bump (1 - r^2 / R^2)^(3 + q) of radius R = bump_radius_fraction * side.
AnnihilationResult annihilated_function(const std::vector<std::pair<double, double>>& directions, int side,
                                        double bump_radius_fraction = 0.25);

struct BesselDemoPoint {
  int k = 0;
  double norm = 0.0;         // ||phi_k||
  double coefficient = 0.0;  // |<phi_k, atom>|
};

/// phi_k(x) = psi(x1) eta_k(x2) on a side x (side * k) grid, with psi^ a bump
/// around the atom's frequency scaled so <psi, atom profile> = 1 and
/// eta_k^(lambda) = bump(k lambda / (1/2)) (lambda in cycles per pixel, so k = 1
/// fills the Nyquist band), for the atom exp(2 pi i m x1 / side) g(x1 - t)
/// (direction u = (1, 0), modulation >= 0).
std::vector<BesselDemoPoint> unbounded_bessel_demo(int count, int modulation, double translation,
                                                   const Window& w = Window::sinc_pow4(), int side = 128);

/// (1 - t^2)^power on [-1, 1], zero outside.
double bump(double t, int power = 3);

}  // namespace ddgf
