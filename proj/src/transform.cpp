#include "ddgf/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ddgf/parallel.hpp"
#include "ddgf/spectrum.hpp"

namespace ddgf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i k x / T) with the product reduced modulo T first.
complex unit_phase(double k, double x, double period) {
  return std::polar(1.0, kTwoPi * std::fmod(k * x, period) / period);
}

// table[(a + M) * count + i] = exp(2 pi i a coord(i) / T)
std::vector<complex> modulation_table(int M, int count, double period, double half) {
  std::vector<complex> t(static_cast<std::size_t>(2 * M + 1) * count);
  for (int a = -M; a <= M; ++a)
    for (int i = 0; i < count; ++i)
      t[static_cast<std::size_t>(a + M) * count + i] = unit_phase(a, i - half + 0.5, period);
  return t;
}

// Tabulated sum_n g(s - n)^2 with linear interpolation.
class RidgeEnergy {
 public:
  RidgeEnergy(const Window& w, const std::vector<double>& translations, double reach) {
    lo_ = -reach;
    const int n = static_cast<int>(std::ceil(2.0 * reach / kStep)) + 2;
    table_.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double s = lo_ + k * kStep;
      double acc = 0.0;
      for (double t : translations) {
        const double g = eval_spatial(w, s - t);
        acc += g * g;
      }
      table_[static_cast<std::size_t>(k)] = acc;
    }
  }
  double operator()(double s) const {
    const double pos = (s - lo_) / kStep;
    const auto k = static_cast<std::size_t>(pos);
    const double t = pos - static_cast<double>(k);
    return (1.0 - t) * table_[k] + t * table_[k + 1];
  }

 private:
  static constexpr double kStep = 1.0 / 32.0;
  double lo_ = 0.0;
  std::vector<double> table_;
};

}  // namespace

void TransformConfig::validate() const {
  if (oversampling < 1) throw std::invalid_argument("oversampling must be >= 1");
  if (!(cg_tolerance > 0)) throw std::invalid_argument("cg_tolerance must be positive");
  if (cg_max_iterations < 0) throw std::invalid_argument("cg_max_iterations must be >= 0");
  if (modulation_period < 0) throw std::invalid_argument("modulation_period must be >= 0");
  if (tight_frame_bound && !(*tight_frame_bound > 0)) throw std::invalid_argument("tight_frame_bound must be positive");
  if (!(window.param > 0)) throw std::invalid_argument("window parameter must be positive");
}

double CoefficientSet::energy() const {
  double e = 0.0;
  for (const auto& v : values) e += std::norm(v);
  return e;
}

std::pair<double, double> modulation_periods(const TransformConfig& cfg, const GridMap& grid) {
  if (cfg.modulation_period > 0) return {cfg.modulation_period, cfg.modulation_period};
  return {static_cast<double>(grid.width), static_cast<double>(grid.height)};
}

ComplexField atom(const DirectionModulation& mode, double translation, const TransformConfig& cfg,
                  const GridMap& grid) {
  const auto [t1, t2] = modulation_periods(cfg, grid);
  ComplexField out(grid.width, grid.height);
  for (int j = 0; j < grid.height; ++j) {
    const double x2 = grid.x2(j);
    for (int i = 0; i < grid.width; ++i) {
      const double x1 = grid.x1(i);
      const complex mod = unit_phase(mode.a.a1, x1, t1) * unit_phase(mode.a.a2, x2, t2);
      out(i, j) = mod * eval_spatial(cfg.window, mode.u1 * x1 + mode.u2 * x2 - translation);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct FrameOperator::FastPlan {
  FastPlan(int width, int height, int q, double max1, double max2) : spectrum(width, height, q, max1, max2) {}

  PaddedSpectrum spectrum;
  std::vector<double> gammas;
  std::vector<complex> weights;  // [t * nodes + l] = h g^(gamma_l) exp(2 pi i gamma_l n_t)
  std::vector<double> xi1;       // xi_a per mode
  std::vector<double> xi2;
};

FrameOperator::FrameOperator(std::shared_ptr<const SamplingSet> sampling, TransformConfig cfg, int width,
                             int height)
    : sampling_(std::move(sampling)), cfg_(std::move(cfg)), width_(width), height_(height) {
  if (!sampling_) throw std::invalid_argument("FrameOperator: null sampling set");
  check_grid_dimensions(width, height);
  cfg_.validate();
  std::tie(period1_, period2_) = modulation_periods(cfg_, grid());
  {
    const auto& modes = sampling_->modes();
    const auto& tr = sampling_->translations();
    symmetric_ = modes.size() % 2 == 1;
    for (std::size_t k = 0; symmetric_ && k < modes.size(); ++k) {
      const auto& a = modes[k].a;
      const auto& b = modes[modes.size() - 1 - k].a;
      symmetric_ = a.a1 == -b.a1 && a.a2 == -b.a2;
    }
    symmetric_ = symmetric_ && modes[modes.size() / 2].a == LatticePoint{0, 0};
    for (std::size_t t = 0; symmetric_ && t < tr.size(); ++t) symmetric_ = tr[t] == -tr[tr.size() - 1 - t];
  }
  if (!cfg_.fast_path) return;
  if (!cfg_.window.has_compact_frequency_support()) {
    fell_back_ = true;
    return;
  }
  const SamplingSet& s = *sampling_;
  const double W = cfg_.window.freq_support_halfwidth();
  const int q = cfg_.oversampling;
  const int pmax = std::max(width, height);
  int L = std::max(static_cast<int>(std::ceil(W * q * pmax)), 4 * q);
  if (L % 2) ++L;
  const double h = W / L;
  fast_ = std::make_unique<FastPlan>(width, height, q, s.M() / period1_ + W, s.N() / period2_ + W);
  // The end nodes +-W carry g^ = 0 and are dropped.
  for (int l = -L + 1; l < L; ++l) fast_->gammas.push_back(l * h);
  const std::size_t nodes = fast_->gammas.size();
  const auto& tr = s.translations();
  fast_->weights.resize(tr.size() * nodes);
  for (std::size_t t = 0; t < tr.size(); ++t) {
    for (std::size_t l = 0; l < nodes; ++l) {
      const double g = fast_->gammas[l];
      fast_->weights[t * nodes + l] = h * eval_frequency(cfg_.window, g) * std::polar(1.0, kTwoPi * g * tr[t]);
    }
  }
  for (const auto& m : s.modes()) {
    fast_->xi1.push_back(m.a.a1 / period1_);
    fast_->xi2.push_back(m.a.a2 / period2_);
  }
}

FrameOperator::~FrameOperator() = default;

void FrameOperator::check_coefficients(const CoefficientSet& c) const {
  if (c.values.size() != sampling_->entry_count()) {
    throw std::invalid_argument("coefficient count does not match the sampling set");
  }
}

CoefficientSet FrameOperator::analyze_fast_spectrum() {
  const SamplingSet& s = *sampling_;
  const auto& modes = s.modes();
  const std::size_t nt = s.translation_count();
  const std::size_t nodes = fast_->gammas.size();
  CoefficientSet out{sampling_, std::vector<complex>(s.entry_count())};
  const FastPlan& plan = *fast_;
  parallel_for(modes.size(), [&](std::size_t b, std::size_t e) {
    std::vector<complex> slice(nodes);
    for (std::size_t k = b; k < e; ++k) {
      const auto& m = modes[k];
      for (std::size_t l = 0; l < nodes; ++l) {
        slice[l] = plan.spectrum.interpolate(plan.xi1[k] + plan.gammas[l] * m.u1, plan.xi2[k] + plan.gammas[l] * m.u2);
      }
      for (std::size_t t = 0; t < nt; ++t) {
        const complex* w = plan.weights.data() + t * nodes;
        complex acc = 0.0;
        for (std::size_t l = 0; l < nodes; ++l) acc += w[l] * slice[l];
        out.values[k * nt + t] = acc;
      }
    }
  });
  return out;
}

CoefficientSet FrameOperator::analyze(const Image& f) {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("analyze: size mismatch");
  if (!fast_) return analyze_direct(to_complex(f));
  fast_->spectrum.compute(f);
  return analyze_fast_spectrum();
}

CoefficientSet FrameOperator::analyze(const ComplexField& f) {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("analyze: size mismatch");
  if (!fast_) return analyze_direct(f);
  fast_->spectrum.compute(f);
  return analyze_fast_spectrum();
}

ComplexField FrameOperator::synthesize(const CoefficientSet& c) {
  check_coefficients(c);
  if (!fast_) return synthesize_direct(c);
  const SamplingSet& s = *sampling_;
  const auto& modes = s.modes();
  const std::size_t nt = s.translation_count();
  const std::size_t nodes = fast_->gammas.size();
  FastPlan& plan = *fast_;
  plan.spectrum.clear_adjoint();
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto& m = modes[k];
    const complex* ck = c.values.data() + k * nt;
    for (std::size_t l = 0; l < nodes; ++l) {
      complex v = 0.0;
      for (std::size_t t = 0; t < nt; ++t) v += std::conj(plan.weights[t * nodes + l]) * ck[t];
      if (v == complex(0.0)) continue;
      plan.spectrum.spread(
          plan.spectrum.stencil(plan.xi1[k] + plan.gammas[l] * m.u1, plan.xi2[k] + plan.gammas[l] * m.u2), v);
    }
  }
  return plan.spectrum.adjoint_field();
}

CoefficientSet FrameOperator::analyze_direct(const ComplexField& f) const {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("analyze_direct: size mismatch");
  const SamplingSet& s = *sampling_;
  const auto& modes = s.modes();
  const auto& tr = s.translations();
  const std::size_t nt = tr.size();
  const auto e1 = modulation_table(s.M(), width_, period1_, 0.5 * width_);
  const auto e2 = modulation_table(s.N(), height_, period2_, 0.5 * height_);
  const GridMap gm = grid();
  CoefficientSet out{sampling_, std::vector<complex>(s.entry_count())};
  parallel_for(modes.size(), [&](std::size_t b, std::size_t e) {
    std::vector<complex> acc(nt);
    for (std::size_t k = b; k < e; ++k) {
      const auto& m = modes[k];
      const complex* r1 = e1.data() + static_cast<std::size_t>(m.a.a1 + s.M()) * width_;
      const complex* r2 = e2.data() + static_cast<std::size_t>(m.a.a2 + s.N()) * height_;
      std::fill(acc.begin(), acc.end(), complex(0.0));
      for (int j = 0; j < height_; ++j) {
        const double x2 = gm.x2(j);
        for (int i = 0; i < width_; ++i) {
          const complex v = f(i, j) * std::conj(r1[i] * r2[j]);
          if (v == complex(0.0)) continue;
          const double proj = m.u1 * gm.x1(i) + m.u2 * x2;
          for (std::size_t t = 0; t < nt; ++t) acc[t] += v * eval_spatial(cfg_.window, proj - tr[t]);
        }
      }
      std::copy(acc.begin(), acc.end(), out.values.begin() + static_cast<std::ptrdiff_t>(k * nt));
    }
  });
  return out;
}

ComplexField FrameOperator::synthesize_direct(const CoefficientSet& c) const {
  check_coefficients(c);
  const SamplingSet& s = *sampling_;
  const auto& modes = s.modes();
  const auto& tr = s.translations();
  const std::size_t nt = tr.size();
  const auto e1 = modulation_table(s.M(), width_, period1_, 0.5 * width_);
  const auto e2 = modulation_table(s.N(), height_, period2_, 0.5 * height_);
  const GridMap gm = grid();
  ComplexField out(width_, height_);
  parallel_for(static_cast<std::size_t>(height_), [&](std::size_t b, std::size_t e) {
    for (std::size_t jj = b; jj < e; ++jj) {
      const int j = static_cast<int>(jj);
      const double x2 = gm.x2(j);
      for (int i = 0; i < width_; ++i) {
        const double x1 = gm.x1(i);
        complex total = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
          const auto& m = modes[k];
          const double proj = m.u1 * x1 + m.u2 * x2;
          complex ridge = 0.0;
          for (std::size_t t = 0; t < nt; ++t) ridge += c.values[k * nt + t] * eval_spatial(cfg_.window, proj - tr[t]);
          if (ridge == complex(0.0)) continue;
          total += ridge * e1[static_cast<std::size_t>(m.a.a1 + s.M()) * width_ + i] *
                   e2[static_cast<std::size_t>(m.a.a2 + s.N()) * height_ + j];
        }
        out(i, j) = total;
      }
    }
  });
  return out;
}

Image FrameOperator::apply(const Image& f) {
  if (f.width() != width_ || f.height() != height_) throw std::invalid_argument("apply: size mismatch");
  if (!dense_.empty()) {
    const std::size_t n = f.size();
    Image out(width_, height_);
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t r = b; r < e; ++r) {
        const double* row = dense_.data() + r * n;
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * f[k];
        out[r] = acc;
      }
    });
    return out;
  }
  if (fast_ && symmetric_) return apply_symmetric(f);
  return real_part(synthesize(analyze(f)));
}

// For real f, c(-a, -n) = conj(c(a, n)) and the atom of (-a, -n) is the conjugate
// of the atom of (a, n), so Re(T* T f) = 2 Re(sum over a > 0 plus half the DC part).
Image FrameOperator::apply_symmetric(const Image& f) {
  const SamplingSet& s = *sampling_;
  const auto& modes = s.modes();
  const std::size_t nt = s.translation_count();
  const std::size_t nodes = fast_->gammas.size();
  const std::size_t dc = modes.size() / 2;
  const std::size_t half = modes.size() - dc;
  FastPlan& plan = *fast_;
  plan.spectrum.compute(f);
  // Per (mode, node): sum_t conj(w_tl) c_t, with c_t = sum_l' w_tl' F_l'.
  std::vector<complex> folded(half * nodes);
  parallel_for(half, [&](std::size_t b, std::size_t e) {
    std::vector<complex> slice(nodes);
    std::vector<complex> coef(nt);
    for (std::size_t h = b; h < e; ++h) {
      const std::size_t k = dc + h;
      const auto& m = modes[k];
      for (std::size_t l = 0; l < nodes; ++l) {
        slice[l] = plan.spectrum.interpolate(plan.xi1[k] + plan.gammas[l] * m.u1, plan.xi2[k] + plan.gammas[l] * m.u2);
      }
      for (std::size_t t = 0; t < nt; ++t) {
        const complex* w = plan.weights.data() + t * nodes;
        complex acc = 0.0;
        for (std::size_t l = 0; l < nodes; ++l) acc += w[l] * slice[l];
        coef[t] = h == 0 ? 0.5 * acc : acc;
      }
      for (std::size_t l = 0; l < nodes; ++l) {
        complex v = 0.0;
        for (std::size_t t = 0; t < nt; ++t) v += std::conj(plan.weights[t * nodes + l]) * coef[t];
        folded[h * nodes + l] = v;
      }
    }
  });
  plan.spectrum.clear_adjoint();
  for (std::size_t h = 0; h < half; ++h) {
    const std::size_t k = dc + h;
    const auto& m = modes[k];
    for (std::size_t l = 0; l < nodes; ++l) {
      const complex v = folded[h * nodes + l];
      if (v == complex(0.0)) continue;
      plan.spectrum.spread(
          plan.spectrum.stencil(plan.xi1[k] + plan.gammas[l] * m.u1, plan.xi2[k] + plan.gammas[l] * m.u2), v);
    }
  }
  const ComplexField g = plan.spectrum.adjoint_field();
  Image out(width_, height_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = 2.0 * g[k].real();
  return out;
}

void FrameOperator::materialize(std::size_t max_pixels) {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  if (n > max_pixels) throw std::invalid_argument("materialize: grid too large for a dense operator");
  if (!dense_.empty()) return;
  std::vector<double> m(n * n);
  Image e(width_, height_);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    const Image col = apply(e);
    e[c] = 0.0;
    for (std::size_t r = 0; r < n; ++r) m[r * n + c] = col[r];
  }
  // Symmetrize to remove rounding-level asymmetry so CG sees a symmetric matrix.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const double v = 0.5 * (m[r * n + c] + m[c * n + r]);
      m[r * n + c] = v;
      m[c * n + r] = v;
    }
  dense_ = std::move(m);
}

const Image& FrameOperator::diagonal() {
  if (diagonal_) return *diagonal_;
  const SamplingSet& s = *sampling_;
  const GridMap gm = grid();
  const double reach = std::hypot(0.5 * width_, 0.5 * height_) + 1.0;
  const RidgeEnergy ridge(cfg_.window, s.translations(), reach);
  // Modes sharing a direction share the ridge profile.
  std::map<std::pair<double, double>, int> directions;
  for (const auto& m : s.modes()) ++directions[{m.u1, m.u2}];
  Image d(width_, height_);
  for (const auto& [u, count] : directions) {
    for (int j = 0; j < height_; ++j)
      for (int i = 0; i < width_; ++i) d(i, j) += count * ridge(u.first * gm.x1(i) + u.second * gm.x2(j));
  }
  diagonal_ = std::move(d);
  return *diagonal_;
}

// ---------------------------------------------------------------------------

CoefficientSet analyze_direct(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg) {
  TransformConfig direct = cfg;
  direct.fast_path = false;
  FrameOperator op(std::move(s), direct, f.width(), f.height());
  return op.analyze_direct(to_complex(f));
}

CoefficientSet analyze_fast(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg,
                            bool* fell_back) {
  TransformConfig fast = cfg;
  fast.fast_path = true;
  FrameOperator op(std::move(s), fast, f.width(), f.height());
  if (fell_back) *fell_back = op.fell_back();
  return op.analyze(f);
}

CoefficientSet analyze(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg) {
  FrameOperator op(std::move(s), cfg, f.width(), f.height());
  return op.analyze(f);
}

ComplexField synthesize(const CoefficientSet& c, const TransformConfig& cfg, const GridMap& grid) {
  TransformConfig direct = cfg;
  direct.fast_path = false;
  FrameOperator op(c.sampling, direct, grid.width, grid.height);
  return op.synthesize_direct(c);
}

Image frame_apply(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg) {
  FrameOperator op(std::move(s), cfg, f.width(), f.height());
  return op.apply(f);
}

// ---------------------------------------------------------------------------

Subspace Subspace::band(int max_bin1, int max_bin2) {
  if (max_bin1 < 0 || max_bin2 < 0) throw std::invalid_argument("Subspace::band: negative bin limit");
  Subspace s;
  s.kind = Kind::Band;
  s.max_bin1 = max_bin1;
  s.max_bin2 = max_bin2;
  return s;
}

Subspace Subspace::band_fraction(const SamplingSet& s, const TransformConfig& cfg, const GridMap& grid,
                                 double fraction) {
  if (!(fraction > 0 && fraction <= 1)) throw std::invalid_argument("band fraction must be in (0, 1]");
  const auto [t1, t2] = modulation_periods(cfg, grid);
  const int b1 = static_cast<int>(std::floor(fraction * s.M() * grid.width / t1 + 1e-9));
  const int b2 = static_cast<int>(std::floor(fraction * s.N() * grid.height / t2 + 1e-9));
  return band(std::min(b1, grid.width / 2), std::min(b2, grid.height / 2));
}

Subspace Subspace::disc(double radius) {
  if (!(radius >= 0)) throw std::invalid_argument("Subspace::disc: negative radius");
  Subspace s;
  s.kind = Kind::Disc;
  s.disc_radius = radius;
  return s;
}

Image Subspace::project(const Image& f) const {
  switch (kind) {
    case Kind::Full:
      return f;
    case Kind::Disc: {
      Image out = f;
      const GridMap gm = f.grid();
      for (int j = 0; j < f.height(); ++j)
        for (int i = 0; i < f.width(); ++i)
          if (std::hypot(gm.x1(i), gm.x2(j)) > disc_radius) out(i, j) = 0.0;
      return out;
    }
    case Kind::Band: {
      const int w = f.width();
      const int h = f.height();
      std::vector<complex> buf(f.size());
      for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = f[k];
      auto* data = reinterpret_cast<fftw_complex*>(buf.data());
      fftw_plan fwd = fftw_plan_dft_2d(h, w, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_plan bwd = fftw_plan_dft_2d(h, w, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
      fftw_execute(fwd);
      for (int j = 0; j < h; ++j) {
        const int k2 = j <= h / 2 ? j : j - h;
        for (int i = 0; i < w; ++i) {
          const int k1 = i <= w / 2 ? i : i - w;
          // Bin P/2 is its own alias, so the mask is conjugate-symmetric and the result stays real.
          const bool keep1 = std::abs(k1) <= max_bin1;
          const bool keep2 = std::abs(k2) <= max_bin2;
          if (!keep1 || !keep2) buf[static_cast<std::size_t>(j) * w + i] = 0.0;
        }
      }
      fftw_execute(bwd);
      fftw_destroy_plan(fwd);
      fftw_destroy_plan(bwd);
      Image out(w, h);
      const double scale = 1.0 / (static_cast<double>(w) * h);
      for (std::size_t k = 0; k < buf.size(); ++k) out[k] = buf[k].real() * scale;
      return out;
    }
  }
  return f;
}

std::string Subspace::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Full:
      os << "full";
      break;
    case Kind::Band:
      os << "band |k1|<=" << max_bin1 << " |k2|<=" << max_bin2;
      break;
    case Kind::Disc:
      os << "disc r<=" << disc_radius;
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

double dot(const Image& a, const Image& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void axpy(double alpha, const Image& x, Image& y) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += alpha * x[k];
}

}  // namespace

InversionResult invert_frame(const Image& y, FrameOperator& op, const InversionOptions& options) {
  const TransformConfig& cfg = op.config();
  if (y.width() != op.grid().width || y.height() != op.grid().height) {
    throw std::invalid_argument("invert_frame: size mismatch");
  }
  const Subspace& sub = options.subspace;
  auto apply = [&](const Image& v) { return sub.project(op.apply(v)); };
  const Image rhs = sub.project(y);
  const double rhs_norm = norm2(rhs);
  InversionResult res{Image(y.width(), y.height()), {}};
  if (rhs_norm == 0.0) {
    res.report.converged = true;
    return res;
  }
  if (cfg.tight_frame_bound) {
    res.x = rhs;
    for (auto& v : res.x.values()) v /= *cfg.tight_frame_bound;
    Image r = rhs;
    axpy(-1.0, apply(res.x), r);
    res.report.relative_residual = norm2(r) / rhs_norm;
    res.report.converged = true;
    return res;
  }

  const Image* diag = nullptr;
  if (cfg.preconditioner == Preconditioner::Jacobi) diag = &op.diagonal();
  auto precondition = [&](const Image& r) {
    if (!diag) return r;
    Image z = r;
    for (std::size_t k = 0; k < z.size(); ++k) z[k] /= std::max((*diag)[k], 1e-300);
    return sub.project(z);
  };

  Image x(y.width(), y.height());
  Image r = rhs;
  if (options.initial_guess) {
    x = sub.project(*options.initial_guess);
    axpy(-1.0, apply(x), r);
  }
  Image z = precondition(r);
  Image p = z;
  double rz = dot(r, z);
  const double target = cfg.cg_tolerance * rhs_norm;
  int it = 0;
  bool converged = norm2(r) <= target;
  while (!converged && it < cfg.cg_max_iterations) {
    const Image ap = apply(p);
    const double pap = dot(p, ap);
    if (!(pap > 0)) break;  // breakdown: p is in the numerical null space
    const double alpha = rz / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    ++it;
    if (norm2(r) <= target) {
      converged = true;
      break;
    }
    z = precondition(r);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = z[k] + beta * p[k];
  }
  Image true_r = rhs;
  axpy(-1.0, apply(x), true_r);
  res.x = std::move(x);
  res.report.iterations = it;
  res.report.converged = converged;
  res.report.relative_residual = norm2(true_r) / rhs_norm;
  return res;
}

InversionResult invert_frame(const Image& y, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg) {
  FrameOperator op(std::move(s), cfg, y.width(), y.height());
  return invert_frame(y, op);
}

InversionResult reconstruct(const CoefficientSet& c, FrameOperator& op, const InversionOptions& options) {
  return invert_frame(real_part(op.synthesize(c)), op, options);
}

CoverageReport coverage_diagnostic(const SamplingSet& s, const TransformConfig& cfg, const GridMap& grid) {
  const double reach = std::hypot(0.5 * grid.width, 0.5 * grid.height) + 1.0;
  const RidgeEnergy ridge(cfg.window, s.translations(), reach);
  const auto& dirs = s.direction_basis();
  CoverageReport rep{Image(grid.width, grid.height), 0.0, 0.0};
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      double acc = 0.0;
      if (dirs.empty()) {
        acc = ridge(grid.x1(i));
      } else {
        for (const auto& d : dirs) {
          const double len = std::hypot(d.a1, d.a2);
          acc += ridge((d.a1 * grid.x1(i) + d.a2 * grid.x2(j)) / len);
        }
        acc /= static_cast<double>(dirs.size());
      }
      rep.map(i, j) = acc;
    }
  }
  const auto [mn, mx] = std::minmax_element(rep.map.values().begin(), rep.map.values().end());
  rep.min = *mn;
  rep.max = *mx;
  return rep;
}

}  // namespace ddgf
