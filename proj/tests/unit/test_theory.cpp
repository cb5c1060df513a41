#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "ddgf/theory.hpp"
#include "textures.hpp"

using namespace ddgf;

TEST_CASE("Radon projection of a single pixel") {
  Image f(8, 8);
  f(5, 2) = 1.0;
  const RadonProjection p = radon_project(f, 0.6, 0.8, 1.0);
  int nonzero = 0;
  double total = 0;
  for (double v : p.values) {
    if (v != 0.0) ++nonzero;
    total += v;
  }
  CHECK(nonzero <= 2);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  // The weighted bin center equals the projected coordinate.
  const double s = 0.6 * f.grid().x1(5) + 0.8 * f.grid().x2(2);
  double centroid = 0;
  for (std::size_t k = 0; k < p.values.size(); ++k) centroid += p.values[k] * p.offset(k);
  CHECK(centroid == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("Radon projection preserves mass") {
  const Image f = testing::disc_supported(32, 3);
  double mass = 0;
  for (double v : f.values()) mass += v;
  for (auto [a, b] : {std::pair{1.0, 0.0}, {0.6, -0.8}, {std::sqrt(0.5), std::sqrt(0.5)}}) {
    CHECK(radon_project(f, a, b, 1.0).mass() == doctest::Approx(mass).epsilon(1e-12));
    CHECK(radon_project(f, a, b, 0.5).mass() == doctest::Approx(mass).epsilon(1e-12));
  }
  CHECK_THROWS(radon_project(f, 1.0, 1.0));
}

TEST_CASE("Fourier slice verification") {
  // Smooth Gaussian bump, well inside the grid.
  Image f(32, 32);
  const GridMap gm = f.grid();
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i) f(i, j) = std::exp(-(gm.x1(i) * gm.x1(i) + gm.x2(j) * gm.x2(j)) / 18.0);
  CHECK(verify_fourier_slice(f, 1.0, 0.0).max_relative_deviation <= 1e-6);
  CHECK(verify_fourier_slice(f, 0.6, 0.8).max_relative_deviation <= 0.05);
  CHECK(verify_fourier_slice(Image(32, 32), 1.0, 0.0).max_relative_deviation == 0.0);
}

TEST_CASE("toy Parseval identity") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    CHECK(verify_toy_parseval(testing::disc_supported(32, seed)) == doctest::Approx(1.0).epsilon(1e-10));
  Image center(16, 16);
  center(8, 8) = 1.0;
  CHECK(verify_toy_parseval(center) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(verify_toy_parseval(Image(16, 16)), std::domain_error);
  Image corner(16, 16);
  corner(0, 0) = 1.0;
  CHECK_THROWS_AS(verify_toy_parseval(corner), std::domain_error);
}

TEST_CASE("annihilated functions") {
  const AnnihilationResult one = annihilated_function({{1, 0}}, 32);
  CHECK(one.projection_energy[0] <= 1e-20);
  CHECK(norm2(one.f) == doctest::Approx(1.0));

  const AnnihilationResult coarse = annihilated_function({{1, 2}, {3, -1}, {2, 5}}, 64);
  const AnnihilationResult fine = annihilated_function({{1, 2}, {3, -1}, {2, 5}}, 128);
  CHECK(coarse.ratio <= 1e-3);
  CHECK(fine.ratio < coarse.ratio);
  CHECK_THROWS(annihilated_function({{1, 1}, {2, 2}}, 32));
}

TEST_CASE("unbounded Bessel demonstration") {
  const auto pts = unbounded_bessel_demo(16, 2, 0.0, Window::sinc_pow4(16), 64);
  REQUIRE(pts.size() == 16);
  CHECK(pts.front().coefficient == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t k = 1; k < pts.size(); ++k) {
    CHECK(pts[k].norm < pts[k - 1].norm);
    CHECK(pts[k].coefficient >= 0.9);
  }
  // eta_k has spectrum width ~ 1/k, so its norm scales like k^{-1/2}.
  CHECK(pts.front().norm / pts.back().norm == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(1.0) == 0.0);
}
