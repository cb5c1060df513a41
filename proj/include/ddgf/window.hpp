#pragma once

#include <limits>

namespace ddgf {

enum class WindowKind { SincPow4, BoxIndicator };

/// One-dimensional generator g of the directional Gabor system.
///
/// SincPow4(s):     g(x) = sinc(x/s)^4 with the normalized sinc; its Fourier
///                  transform s * beta3(s*gamma) lives on |gamma| <= 2/s.
/// BoxIndicator(h): g(x) = 1 on [-h, h] (endpoints included), 0 elsewhere.
struct Window {
  WindowKind kind = WindowKind::SincPow4;
  double param = 16.0;  // scale s for SincPow4, halfwidth h for BoxIndicator

  static Window sinc_pow4(double scale = 16.0);
  static Window box(double halfwidth = 0.5);

  /// Half-width of supp g^; infinite for the box.
  double freq_support_halfwidth() const;
  bool has_compact_frequency_support() const { return kind == WindowKind::SincPow4; }
};

/// Normalized sinc, sin(pi t)/(pi t) with sinc(0) = 1.
double sinc(double t);

/// Centered cubic B-spline: four-fold convolution of the unit box, support [-2, 2].
double cubic_bspline(double t);

double eval_spatial(const Window& w, double x);

/// Closed-form g^(gamma), gamma in cycles per unit of x.
double eval_frequency(const Window& w, double gamma);

struct FrameHypotheses {
  bool supp_disjoint = false;      // g^(gamma) g^(gamma + k) = 0 for k in (Z/omega) \ {0}
  bool nonzero_on_quarter = false; // g^ not identically zero on [-1/4, 1/4]
};

/// Checks the window conditions of the main frame theorem for translation step omega.
/// Throws std::domain_error for windows without compact frequency support.
FrameHypotheses check_frame_hypotheses(const Window& w, double omega);

}  // namespace ddgf
