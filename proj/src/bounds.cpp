#include "ddgf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace ddgf {

namespace {

constexpr double kPi = std::numbers::pi;

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(left + right);
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || std::abs(delta) <= floor) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

BoundPair kadec_bounds(double L, int d) {
  if (!(L >= 0.0 && L < 0.25)) throw std::domain_error("kadec_bounds: L must lie in [0, 1/4)");
  if (d < 1) throw std::domain_error("kadec_bounds: d must be positive");
  const double c = std::cos(kPi * L);
  const double s = std::sin(kPi * L);
  const double scale = std::pow(2.0 * kPi, d);
  return {scale * std::pow(c - s, 2 * d), scale * std::pow(2.0 - c + s, 2 * d)};
}

BesselPerturbation bessel_perturbation(double A, double B, double M, double rho, int d) {
  if (!(A > 0)) throw std::domain_error("bessel_perturbation: A must be positive");
  if (!(B >= A)) throw std::domain_error("bessel_perturbation: B must be >= A");
  if (!(M >= 0)) throw std::domain_error("bessel_perturbation: M must be nonnegative");
  if (!(rho > 0)) throw std::domain_error("bessel_perturbation: rho must be positive");
  if (d < 1) throw std::domain_error("bessel_perturbation: d must be positive");
  BesselPerturbation r;
  r.b_prime = (B / A) * std::expm1(M * M * rho * rho * d) * std::expm1(kPi * kPi * d / (rho * rho));
  const double root = 1.0 + std::sqrt(r.b_prime);
  r.upper = B * root * root;
  return r;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double lower_weight(double gamma, int d) {
  const double g = std::abs(gamma);
  return std::pow(2.0 * kPi, 2 * d) * std::pow(std::cos(kPi * g) - std::sin(kPi * g), 2 * d);
}

double perturbation_weight(double gamma, int d) {
  return std::expm1(gamma * gamma * d) * std::expm1(kPi * kPi * d);
}

double upper_weight(double gamma, int d) {
  const double r = 1.0 + std::sqrt(perturbation_weight(gamma, d));
  return r * r;
}

BoundPair main_theorem_bounds(const Window& w, double omega, int d, double tol) {
  if (!w.has_compact_frequency_support()) {
    throw std::domain_error("main_theorem_bounds: window has unbounded frequency support");
  }
  if (!(omega > 0)) throw std::domain_error("main_theorem_bounds: omega must be positive");
  if (d < 1) throw std::domain_error("main_theorem_bounds: d must be positive");
  const double W = w.freq_support_halfwidth();
  auto g2 = [&](double x) {
    const double v = eval_frequency(w, x);
    return v * v;
  };
  // Integrate piecewise between the spline knots of g^ so each panel is smooth.
  const double knot = 0.5 * W;
  std::vector<double> cuts{-W, -knot, 0.0, knot, W};
  auto integrate = [&](const std::function<double(double)>& f, double lo, double hi) {
    double total = 0.0;
    std::vector<double> pts{lo};
    for (double c : cuts)
      if (c > lo && c < hi) pts.push_back(c);
    pts.push_back(hi);
    const double panel_tol = tol / static_cast<double>(pts.size() - 1);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) total += adaptive_simpson(f, pts[k], pts[k + 1], panel_tol);
    return total;
  };
  const double a_hi = std::min(0.25, W);
  BoundPair r;
  r.lower = integrate([&](double x) { return lower_weight(x, d) * g2(x); }, -a_hi, a_hi) / omega;
  r.upper = integrate([&](double x) { return upper_weight(x, d) * g2(x); }, -W, W) / omega;
  if (!(r.lower > 0)) throw std::domain_error("main_theorem_bounds: lower bound is not positive");
  return r;
}

double rayleigh_quotient(FrameOperator& op, const Image& f, QuotientNormalization norm) {
  const double ff = inner(f, f);
  if (!(ff > 0)) throw std::domain_error("rayleigh_quotient: zero input");
  double q = op.analyze(f).energy() / ff;
  if (norm == QuotientNormalization::UnitDomain) {
    const auto [t1, t2] = modulation_periods(op.config(), op.grid());
    q /= t1 * t2;
  }
  return q;
}

namespace {

Image random_start(const GridMap& grid, const Subspace& sub, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Image f(grid.width, grid.height);
  for (auto& v : f.values()) v = normal(rng);
  f = sub.project(f);
  const double n = norm2(f);
  if (n > 0)
    for (auto& v : f.values()) v /= n;
  return f;
}

void normalize(Image& f) {
  const double n = norm2(f);
  if (n > 0)
    for (auto& v : f.values()) v /= n;
}

}  // namespace

EmpiricalBounds empirical_bounds(FrameOperator& op, const EmpiricalOptions& options) {
  if (options.n_samples < 1) throw std::invalid_argument("empirical_bounds: n_samples must be >= 1");
  const GridMap grid = op.grid();
  const Subspace& sub = options.subspace;
  double scale = 1.0;
  if (options.normalization == QuotientNormalization::UnitDomain) {
    const auto [t1, t2] = modulation_periods(op.config(), grid);
    scale = 1.0 / (t1 * t2);
  }
  auto apply = [&](const Image& v) { return sub.project(op.apply(v)); };

  std::mt19937_64 rng(options.seed);
  std::vector<Image> starts;
  for (int s = 0; s < options.n_samples; ++s) starts.push_back(random_start(grid, sub, rng));

  // Rayleigh quotients of unit vectors in the subspace are the reported extremes;
  // every iterate contributes, so the estimates are always attained values.
  double lmax = 0.0;
  for (const Image& start : starts) {
    Image v = start;
    double prev = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      Image sv = apply(v);
      const double rq = inner(v, sv);
      lmax = std::max(lmax, rq);
      if (it > 0 && std::abs(rq - prev) <= options.relative_change * std::abs(rq)) break;
      prev = rq;
      v = std::move(sv);
      normalize(v);
      if (norm2(v) == 0.0) break;
    }
  }

  double lmin = lmax;
  for (const Image& start : starts) {
    Image v = start;
    double prev = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      Image sv = apply(v);
      const double rq = inner(v, sv);
      lmin = std::min(lmin, rq);
      if (it > 0 && std::abs(rq - prev) <= options.relative_change * std::max(std::abs(rq), lmax * 1e-12)) break;
      prev = rq;
      // (lmax I - S) v
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = lmax * v[k] - sv[k];
      v = sub.project(v);
      normalize(v);
      if (norm2(v) == 0.0) break;
    }
  }
  return {lmin * scale, lmax * scale, options.n_samples, sub.describe()};
}

EmpiricalBounds empirical_bounds(std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg,
                                 const GridMap& grid, int n_samples, double band_fraction) {
  FrameOperator op(s, cfg, grid.width, grid.height);
  EmpiricalOptions opt;
  opt.n_samples = n_samples;
  opt.subspace = Subspace::band_fraction(*s, cfg, grid, band_fraction);
  return empirical_bounds(op, opt);
}

}  // namespace ddgf
