#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "ddgf/window.hpp"

using namespace ddgf;

TEST_CASE("sinc^4 spatial values") {
  const Window w = Window::sinc_pow4(16);
  CHECK(eval_spatial(w, 0) == 1.0);
  CHECK(std::abs(eval_spatial(w, 16)) < 1e-30);
  const double s = std::sin(std::numbers::pi / 4) / (std::numbers::pi / 4);
  CHECK(eval_spatial(w, 4) == doctest::Approx(s * s * s * s).epsilon(1e-14));
  CHECK(eval_spatial(w, 4) == doctest::Approx(0.657023).epsilon(1e-6));
}

TEST_CASE("box window includes its endpoints") {
  const Window w = Window::box(2.0);
  CHECK(eval_spatial(w, 2.0) == 1.0);
  CHECK(eval_spatial(w, -2.0) == 1.0);
  CHECK(eval_spatial(w, 2.0000001) == 0.0);
  CHECK_FALSE(w.has_compact_frequency_support());
}

TEST_CASE("cubic B-spline agrees with a convolution of boxes") {
  // Fourfold box convolution evaluated on a fine grid.
  const int per_unit = 400;
  std::vector<double> box(per_unit, 1.0 / per_unit);
  std::vector<double> acc{1.0};
  for (int r = 0; r < 4; ++r) {
    std::vector<double> next(acc.size() + box.size() - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < box.size(); ++j) next[i + j] += acc[i] * box[j];
    acc = next;
  }
  // acc[k] approximates beta3 at t = (k - 2 per_unit + 2) / per_unit with spacing 1/per_unit.
  for (double t : {-1.5, -0.75, 0.0, 0.4, 1.0, 1.9}) {
    const auto k = static_cast<std::size_t>(std::lround(t * per_unit + 2.0 * per_unit - 2.0));
    CHECK(cubic_bspline(t) == doctest::Approx(acc[k] * per_unit).epsilon(5e-3));
  }
  CHECK(cubic_bspline(0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(cubic_bspline(2.0) == 0.0);
}

TEST_CASE("sinc^4 spectrum") {
  const Window w = Window::sinc_pow4(16);
  CHECK(eval_frequency(w, 0.0) == doctest::Approx(32.0 / 3.0));
  CHECK(eval_frequency(w, 0.125) == 0.0);
  CHECK(eval_frequency(w, 0.2) == 0.0);
  CHECK(w.freq_support_halfwidth() == 0.125);
  for (double g = -0.13; g <= 0.13; g += 0.01) {
    CHECK(eval_frequency(w, g) >= 0.0);
    CHECK(eval_frequency(w, g) == doctest::Approx(eval_frequency(w, -g)));
  }
  // Integral of g^ equals g(0) = 1.
  const int n = 20000;
  const double a = -0.125, h = 0.25 / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += (k == 0 || k == n ? 0.5 : 1.0) * eval_frequency(w, a + k * h);
  CHECK(sum * h == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sinc^4 spectrum matches a sampled Fourier sum") {
  const Window w = Window::sinc_pow4(16);
  for (double gamma : {0.0, 0.03, 0.07, 0.11}) {
    double s = 0.0;
    for (int x = -40000; x <= 40000; ++x) s += eval_spatial(w, x) * std::cos(2 * std::numbers::pi * gamma * x);
    CHECK(std::abs(s - eval_frequency(w, gamma)) < 1e-4);
  }
}

TEST_CASE("frame hypotheses") {
  const FrameHypotheses ok = check_frame_hypotheses(Window::sinc_pow4(16), 4.0);
  CHECK(ok.supp_disjoint);
  CHECK(ok.nonzero_on_quarter);
  CHECK_FALSE(check_frame_hypotheses(Window::sinc_pow4(16), 8.0).supp_disjoint);
  CHECK_THROWS_AS(check_frame_hypotheses(Window::box(0.5), 1.0), std::domain_error);
}
