#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "ddgf/transform.hpp"
#include "textures.hpp"

using namespace ddgf;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::shared_ptr<const SamplingSet> sampling(int M, int N, double step, int k_max) {
  return std::make_shared<const SamplingSet>(build_sampling_set(M, N, step, k_max));
}

Image random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image f(w, h);
  for (auto& v : f.values()) v = u(rng);
  return f;
}

std::vector<complex> random_coefficients(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<complex> c(n);
  for (auto& v : c) v = {g(rng), g(rng)};
  return c;
}

double relative_l2(const std::vector<complex>& a, const std::vector<complex>& b) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return std::sqrt(num / den);
}

// Independent per-entry oracle: sum_x f(x) conj(atom(x)) written out from the definition.
complex oracle_coefficient(const Image& f, const DirectionModulation& mode, double n, const Window& w) {
  const GridMap gm = f.grid();
  complex acc = 0;
  for (int j = 0; j < f.height(); ++j) {
    for (int i = 0; i < f.width(); ++i) {
      const double x1 = gm.x1(i), x2 = gm.x2(j);
      const double phase = kTwoPi * (mode.a.a1 * x1 / f.width() + mode.a.a2 * x2 / f.height());
      acc += f(i, j) * std::polar(eval_spatial(w, mode.u1 * x1 + mode.u2 * x2 - n), -phase);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("atoms") {
  TransformConfig cfg;
  const GridMap gm{8, 8};
  const ComplexField dc = atom(make_direction_modulation({0, 0}), 0.0, cfg, gm);
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) {
      CHECK(dc(i, j).imag() == 0.0);
      CHECK(dc(i, j).real() == doctest::Approx(eval_spatial(cfg.window, gm.x1(i))));
    }
  }
  cfg.window = Window::box(4.0);
  const ComplexField mode = atom(make_direction_modulation({1, 0}), 0.0, cfg, gm);
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 8; ++i)
      CHECK(std::abs(mode(i, j) - std::polar(1.0, kTwoPi * gm.x1(i) / 8)) < 1e-14);
}

TEST_CASE("direct analysis against the definition") {
  const auto s = sampling(3, 3, 4, 2);
  TransformConfig cfg;
  cfg.window = Window::sinc_pow4(5);
  cfg.fast_path = false;
  const Image f = random_image(8, 8, 3);
  const CoefficientSet c = analyze_direct(f, s, cfg);
  REQUIRE(c.values.size() == s->entry_count());
  for (std::size_t e = 0; e < s->entry_count(); e += 7) {
    const complex want = oracle_coefficient(f, s->mode_of(e), s->translation_of(e), cfg.window);
    CHECK(std::abs(c.values[e] - want) <= 1e-12 * (1 + std::abs(want)));
  }
}

TEST_CASE("impulse and constant inputs") {
  const auto s = std::make_shared<const SamplingSet>(SamplingSet::from_translations(2, 2, {0.0}));
  TransformConfig cfg;
  cfg.fast_path = false;
  Image impulse(8, 8);
  impulse(5, 2) = 1.0;
  const double x1 = impulse.grid().x1(5);
  const CoefficientSet c = analyze(impulse, s, cfg);
  const std::size_t dc_entry = s->mode_count() / 2;  // a = (0, 0) sits in the middle
  REQUIRE(s->mode_of(dc_entry).a == LatticePoint{0, 0});
  CHECK(c.values[dc_entry].real() == doctest::Approx(eval_spatial(cfg.window, x1)));

  cfg.window = Window::box(4.0);
  const CoefficientSet ones = analyze(Image(8, 8, 1.0), s, cfg);
  CHECK(ones.values[dc_entry].real() == doctest::Approx(64.0));
  CHECK(analyze(Image(8, 8), s, cfg).energy() == 0.0);
}

TEST_CASE("non-redundant box system is the DFT in centered coordinates") {
  const int P = 8;
  const auto s = std::make_shared<const SamplingSet>(SamplingSet::from_translations(P / 2, P / 2, {0.0}));
  TransformConfig cfg;
  cfg.window = Window::box(P);  // covers u.x for every direction
  cfg.fast_path = false;
  const Image f = random_image(P, P, 4);
  const CoefficientSet c = analyze(f, s, cfg);
  const GridMap gm = f.grid();
  for (std::size_t e = 0; e < s->entry_count(); ++e) {
    const LatticePoint a = s->mode_of(e).a;
    complex dft = 0;
    for (int j = 0; j < P; ++j)
      for (int i = 0; i < P; ++i) dft += f(i, j) * std::polar(1.0, -kTwoPi * (a.a1 * gm.x1(i) + a.a2 * gm.x2(j)) / P);
    CHECK(std::abs(c.values[e] - dft) < 1e-12);
  }
}

TEST_CASE("linearity") {
  const auto s = sampling(4, 4, 4, 2);
  TransformConfig cfg;
  FrameOperator op(s, cfg, 16, 16);
  const Image f = random_image(16, 16, 1), h = random_image(16, 16, 2);
  Image mix(16, 16);
  for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = 2.5 * f[k] - 0.75 * h[k];
  const auto cf = op.analyze(f).values, ch = op.analyze(h).values, cm = op.analyze(mix).values;
  std::vector<complex> expect(cf.size());
  for (std::size_t k = 0; k < cf.size(); ++k) expect[k] = 2.5 * cf[k] - 0.75 * ch[k];
  CHECK(relative_l2(cm, expect) <= 1e-12);
}

TEST_CASE("fast path approaches the direct sum as oversampling grows") {
  const auto s = sampling(8, 8, 4, 2);
  const Image f = random_image(16, 16, 7);
  TransformConfig direct;
  direct.fast_path = false;
  const auto ref = analyze(f, s, direct).values;
  double previous = 1e9;
  for (int q : {4, 8, 16}) {
    TransformConfig cfg;
    cfg.oversampling = q;
    const double dev = relative_l2(analyze_fast(f, s, cfg).values, ref);
    CHECK(dev < previous);
    previous = dev;
  }
  CHECK(previous <= 1e-3);
}

TEST_CASE("box window falls back to direct analysis") {
  const auto s = sampling(2, 2, 1, 1);
  TransformConfig cfg;
  cfg.window = Window::box(2.0);
  bool fell_back = false;
  const Image f = random_image(8, 8, 8);
  const auto fast = analyze_fast(f, s, cfg, &fell_back);
  CHECK(fell_back);
  cfg.fast_path = false;
  CHECK(relative_l2(fast.values, analyze(f, s, cfg).values) == 0.0);
}

TEST_CASE("synthesis is the adjoint of analysis") {
  const auto s = sampling(8, 8, 4, 3);
  for (bool fast : {false, true}) {
    TransformConfig cfg;
    cfg.fast_path = fast;
    FrameOperator op(s, cfg, 16, 16);
    for (int t = 0; t < 5; ++t) {
      std::mt19937_64 rng(100 + t);
      std::normal_distribution<double> g;
      ComplexField f(16, 16);
      for (auto& v : f.values()) v = {g(rng), g(rng)};
      const CoefficientSet c{s, random_coefficients(s->entry_count(), 200 + t)};
      const CoefficientSet tf = op.analyze(f);
      complex lhs = 0;
      for (std::size_t k = 0; k < c.values.size(); ++k) lhs += tf.values[k] * std::conj(c.values[k]);
      const complex rhs = inner(f, op.synthesize(c));
      CHECK(std::abs(lhs - rhs) / (std::sqrt(tf.energy()) * std::sqrt(c.energy())) <= 1e-10);
    }
  }
}

TEST_CASE("synthesis of a single entry is its atom") {
  const auto s = sampling(2, 2, 4, 1);
  TransformConfig cfg;
  cfg.fast_path = false;
  FrameOperator op(s, cfg, 8, 8);
  const std::size_t e = 17;
  CoefficientSet c{s, std::vector<complex>(s->entry_count(), 0.0)};
  c.values[e] = 1.0;
  const ComplexField got = op.synthesize(c);
  const ComplexField want = atom(s->mode_of(e), s->translation_of(e), cfg, {8, 8});
  for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) < 1e-14);
  c.values[e] = 0.0;
  CHECK(norm2(op.synthesize(c)) == 0.0);
}

TEST_CASE("frame operator paths agree and stay real") {
  const auto s = sampling(8, 8, 4, 3);
  const Image f = random_image(16, 16, 12);
  TransformConfig cfg;
  cfg.fast_path = false;
  FrameOperator direct(s, cfg, 16, 16);
  const ComplexField full = direct.synthesize(direct.analyze(f));
  double imag = 0;
  for (const auto& v : full.values()) imag += v.imag() * v.imag();
  CHECK(std::sqrt(imag) <= 1e-9 * norm2(full));

  const Image ref = direct.apply(f);
  FrameOperator fast(s, TransformConfig{}, 16, 16);
  CHECK(relative_error(fast.apply(f), ref) <= 1e-3);
  const Image before = fast.apply(f);
  fast.materialize();
  CHECK(fast.materialized());
  CHECK(relative_error(fast.apply(f), before) <= 1e-12);
  CHECK(norm2(fast.apply(Image(16, 16))) == 0.0);
}

TEST_CASE("diagonal matches impulse responses") {
  const auto s = sampling(4, 4, 4, 2);
  TransformConfig cfg;
  cfg.fast_path = false;
  FrameOperator op(s, cfg, 8, 8);
  const Image& d = op.diagonal();
  for (int k : {0, 9, 36, 63}) {
    Image e(8, 8);
    e[static_cast<std::size_t>(k)] = 1.0;
    CHECK(d[static_cast<std::size_t>(k)] == doctest::Approx(op.apply(e)[static_cast<std::size_t>(k)]).epsilon(1e-5));
  }
}

TEST_CASE("CG inversion") {
  const auto s = sampling(8, 8, 4, 5);
  FrameOperator op(s, TransformConfig{}, 16, 16);

  const InversionResult zero = invert_frame(Image(16, 16), op);
  CHECK(zero.report.iterations == 0);
  CHECK(zero.report.converged);
  CHECK(norm2(zero.x) == 0.0);

  const Image f = testing::band_limited(16, 4, 21);
  const Image y = op.apply(f);
  const InversionResult r = invert_frame(y, op);
  CHECK(r.report.converged);
  CHECK(relative_error(r.x, f) <= 1e-4);

  InversionOptions warm;
  warm.initial_guess = r.x;
  CHECK(invert_frame(y, op, warm).report.iterations <= r.report.iterations);

  TransformConfig capped;
  capped.cg_max_iterations = 0;
  FrameOperator op0(s, capped, 16, 16);
  const InversionResult none = invert_frame(y, op0);
  CHECK_FALSE(none.report.converged);
  CHECK(none.report.relative_residual == doctest::Approx(1.0));

  TransformConfig jacobi;
  jacobi.preconditioner = Preconditioner::Jacobi;
  FrameOperator opj(s, jacobi, 16, 16);
  const InversionResult rj = invert_frame(opj.apply(f), opj);
  CHECK(rj.report.converged);
  CHECK(relative_error(rj.x, f) <= 1e-4);
}

TEST_CASE("reconstruct round trip and the zero set") {
  const auto s = sampling(8, 8, 4, 5);
  FrameOperator op(s, TransformConfig{}, 16, 16);
  const Image f = testing::band_limited(16, 3, 22);
  const InversionResult r = reconstruct(op.analyze(f), op);
  CHECK(relative_error(r.x, f) <= 1e-4);
  const CoefficientSet zero{s, std::vector<complex>(s->entry_count(), 0.0)};
  CHECK(norm2(reconstruct(zero, op).x) == 0.0);
}

TEST_CASE("tight frame bound replaces CG") {
  const int P = 8;
  const auto s = std::make_shared<const SamplingSet>(SamplingSet::from_translations(P / 2, P / 2, {0.0}));
  TransformConfig cfg;
  cfg.window = Window::box(P / 4.0);
  cfg.fast_path = false;
  cfg.modulation_period = P + 1;
  cfg.tight_frame_bound = (P + 1.0) * (P + 1.0);
  FrameOperator op(s, cfg, P, P);
  Image f(P, P);
  f(3, 4) = 0.7;
  f(4, 3) = -0.2;
  InversionOptions disc;
  disc.subspace = Subspace::disc(P / 4.0);
  const InversionResult r = reconstruct(op.analyze(f), op, disc);
  CHECK(r.report.iterations == 0);
  CHECK(relative_error(r.x, f) <= 1e-10);
}

TEST_CASE("subspace projections") {
  const Image f = testing::band_limited(16, 6, 30);
  const Image low = Subspace::band(2, 2).project(f);
  CHECK(relative_error(Subspace::band(2, 2).project(low), low) <= 1e-12);
  CHECK(relative_error(Subspace::full().project(f), f) == 0.0);
  const Image lim = testing::band_limited(16, 2, 31);
  CHECK(relative_error(Subspace::band(2, 2).project(lim), lim) <= 1e-12);
  const Image disc = Subspace::disc(3.0).project(f);
  const GridMap gm = f.grid();
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      if (std::hypot(gm.x1(i), gm.x2(j)) > 3.0) CHECK(disc(i, j) == 0.0);
}

TEST_CASE("coverage diagnostic") {
  const auto s = sampling(8, 8, 4, 5);
  const CoverageReport rep = coverage_diagnostic(*s, TransformConfig{}, {16, 16});
  CHECK(rep.min <= rep.max);
  CHECK(rep.ratio() > 0.0);

  const auto all = std::make_shared<const SamplingSet>(
      SamplingSet::from_translations(2, 2, {-24, -20, -16, -12, -8, -4, 0, 4, 8, 12, 16, 20, 24}));
  TransformConfig box;
  box.window = Window::box(64.0);
  const CoverageReport flat = coverage_diagnostic(*all, box, {16, 16});
  CHECK(flat.ratio() == doctest::Approx(1.0));
}

TEST_CASE("configuration validation") {
  TransformConfig cfg;
  cfg.oversampling = 0;
  CHECK_THROWS(cfg.validate());
  cfg = TransformConfig{};
  cfg.cg_tolerance = -1;
  CHECK_THROWS(cfg.validate());
}
