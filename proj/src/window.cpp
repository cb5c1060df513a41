#include "ddgf/window.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddgf {

Window Window::sinc_pow4(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("sinc_pow4: scale must be positive");
  return {WindowKind::SincPow4, scale};
}

Window Window::box(double halfwidth) {
  if (!(halfwidth > 0)) throw std::invalid_argument("box: halfwidth must be positive");
  return {WindowKind::BoxIndicator, halfwidth};
}

double Window::freq_support_halfwidth() const {
  if (kind == WindowKind::SincPow4) return 2.0 / param;
  return std::numeric_limits<double>::infinity();
}

double sinc(double t) {
  if (t == 0.0) return 1.0;
  const double x = std::numbers::pi * t;
  return std::sin(x) / x;
}

double cubic_bspline(double t) {
  const double a = std::abs(t);
  if (a < 1.0) return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
  if (a < 2.0) {
    const double b = 2.0 - a;
    return b * b * b / 6.0;
  }
  return 0.0;
}

double eval_spatial(const Window& w, double x) {
  switch (w.kind) {
    case WindowKind::SincPow4: {
      const double s = sinc(x / w.param);
      const double s2 = s * s;
      return s2 * s2;
    }
    case WindowKind::BoxIndicator:
      return std::abs(x) <= w.param ? 1.0 : 0.0;
  }
  return 0.0;
}

double eval_frequency(const Window& w, double gamma) {
  switch (w.kind) {
    case WindowKind::SincPow4:
      return w.param * cubic_bspline(w.param * gamma);
    case WindowKind::BoxIndicator:
      return 2.0 * w.param * sinc(2.0 * w.param * gamma);
  }
  return 0.0;
}

FrameHypotheses check_frame_hypotheses(const Window& w, double omega) {
  if (!(omega > 0)) throw std::invalid_argument("check_frame_hypotheses: omega must be positive");
  if (!w.has_compact_frequency_support()) {
    throw std::domain_error("check_frame_hypotheses: window has unbounded frequency support");
  }
  FrameHypotheses h;
  // Shifts by nonzero multiples of 1/omega overlap at most at a point.
  h.supp_disjoint = 2.0 * w.freq_support_halfwidth() <= 1.0 / omega;
  // beta3(0) = 2/3, so g^(0) = 2s/3 > 0 and g^ cannot vanish on [-1/4, 1/4].
  h.nonzero_on_quarter = eval_frequency(w, 0.0) > 0.0;
  return h;
}

}  // namespace ddgf
