#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddgf/image.hpp"
#include "ddgf/sampling.hpp"
#include "ddgf/window.hpp"

namespace ddgf {

enum class Preconditioner { None, Jacobi };

struct TransformConfig {
  Window window = Window::sinc_pow4();
  int oversampling = 8;
  bool fast_path = true;
  double cg_tolerance = 1e-6;
  int cg_max_iterations = 500;
  /// Period T of the modulation exp(2 pi i a.x / T) in pixels; 0 uses the image side.
  double modulation_period = 0.0;
  /// When set, the frame is treated as tight with this bound and inversion is a rescaling.
  std::optional<double> tight_frame_bound;
  Preconditioner preconditioner = Preconditioner::None;

  void validate() const;
};

/// Analysis coefficients in the sampling set's entry order.
struct CoefficientSet {
  std::shared_ptr<const SamplingSet> sampling;
  std::vector<complex> values;

  double energy() const;  // sum |c|^2
};

/// Modulation periods (T1, T2) used for a grid under cfg.
std::pair<double, double> modulation_periods(const TransformConfig& cfg, const GridMap& grid);

/// exp(2 pi i (a1 x1 / T1 + a2 x2 / T2)) g(u.x - n) sampled on the grid.
ComplexField atom(const DirectionModulation& mode, double translation, const TransformConfig& cfg,
                  const GridMap& grid);

/// Analysis and synthesis for one sampling set, configuration and grid size.
///
/// The direct path evaluates inner products against the atoms pixel by pixel.
/// The fast path integrates g^(gamma) e^{2 pi i gamma n} F(xi_a + gamma u) over
/// supp g^ with F read off a zero-padded spectrum; its synthesis is the exact
/// adjoint of its analysis. Instances are not safe for concurrent calls.
class FrameOperator {
 public:
  FrameOperator(std::shared_ptr<const SamplingSet> sampling, TransformConfig cfg, int width, int height);
  ~FrameOperator();
  FrameOperator(const FrameOperator&) = delete;
  FrameOperator& operator=(const FrameOperator&) = delete;

  const SamplingSet& sampling() const { return *sampling_; }
  std::shared_ptr<const SamplingSet> sampling_ptr() const { return sampling_; }
  const TransformConfig& config() const { return cfg_; }
  GridMap grid() const { return {width_, height_}; }

  /// False when the fast path was requested but the window has no compact
  /// frequency support, or when it was not requested.
  bool uses_fast_path() const { return fast_ != nullptr; }
  bool fell_back() const { return fell_back_; }

  CoefficientSet analyze(const Image& f);
  CoefficientSet analyze(const ComplexField& f);
  ComplexField synthesize(const CoefficientSet& c);

  CoefficientSet analyze_direct(const ComplexField& f) const;
  ComplexField synthesize_direct(const CoefficientSet& c) const;

  /// Re(T* T f).
  Image apply(const Image& f);

  /// sum_e |atom_e(x)|^2 per pixel (the diagonal of T* T), interpolated from a
  /// table of the ridge energy at 1/32 pixel spacing.
  const Image& diagonal();

  /// Tabulates Re(T* T) as a dense matrix so later apply() calls are a
  /// matrix-vector product. Limited to grids of at most max_pixels pixels.
  void materialize(std::size_t max_pixels = 4096);
  bool materialized() const { return !dense_.empty(); }

 private:
  struct FastPlan;
  void check_coefficients(const CoefficientSet& c) const;
  CoefficientSet analyze_fast_spectrum();
  Image apply_symmetric(const Image& f);

  std::shared_ptr<const SamplingSet> sampling_;
  TransformConfig cfg_;
  int width_;
  int height_;
  double period1_;
  double period2_;
  bool fell_back_ = false;
  bool symmetric_ = false;  // modes and translations are closed under negation
  std::unique_ptr<FastPlan> fast_;
  std::optional<Image> diagonal_;
  std::vector<double> dense_;
};

// Free-function forms. Each builds a temporary FrameOperator; use the class
// directly when applying the operator repeatedly.

CoefficientSet analyze_direct(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg);

/// Fast analysis; falls back to the direct path (and sets *fell_back) for
/// windows without compact frequency support.
CoefficientSet analyze_fast(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg,
                            bool* fell_back = nullptr);

/// Fast or direct according to cfg.fast_path.
CoefficientSet analyze(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg);

/// Exact adjoint of analyze_direct.
ComplexField synthesize(const CoefficientSet& c, const TransformConfig& cfg, const GridMap& grid);

Image frame_apply(const Image& f, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg);

/// Restriction used for inversion and spectral estimates: either DFT bins with
/// |k1| <= max_bin1 and |k2| <= max_bin2, or pixels within disc_radius of the
/// center, or no restriction.
struct Subspace {
  enum class Kind { Full, Band, Disc } kind = Kind::Full;
  int max_bin1 = 0;
  int max_bin2 = 0;
  double disc_radius = 0.0;

  static Subspace full() { return {}; }
  static Subspace band(int max_bin1, int max_bin2);
  /// Band covering band_fraction of the lattice extent [-M, M] x [-N, N], in DFT
  /// bins of the grid (a lattice frequency a / T maps to bin a * P / T).
  static Subspace band_fraction(const SamplingSet& s, const TransformConfig& cfg, const GridMap& grid,
                                double fraction);
  static Subspace disc(double radius);

  Image project(const Image& f) const;
  std::string describe() const;
};

struct CgReport {
  int iterations = 0;
  bool converged = false;
  double relative_residual = 0.0;  // ||y - S x|| / ||y|| recomputed at exit
};

struct InversionResult {
  Image x;
  CgReport report;
};

struct InversionOptions {
  Subspace subspace;
  std::optional<Image> initial_guess;
};

/// Solves S x = y by conjugate gradients (or a rescaling for tight frames).
InversionResult invert_frame(const Image& y, FrameOperator& op, const InversionOptions& options = {});
InversionResult invert_frame(const Image& y, std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg);

/// invert_frame(Re(T* c)).
InversionResult reconstruct(const CoefficientSet& c, FrameOperator& op, const InversionOptions& options = {});

struct CoverageReport {
  Image map;
  double min = 0.0;
  double max = 0.0;
  double ratio() const { return max > 0 ? min / max : 0.0; }
};

/// Mean over the coprime directions of sum_n g(u.x - n)^2.
CoverageReport coverage_diagnostic(const SamplingSet& s, const TransformConfig& cfg, const GridMap& grid);

}  // namespace ddgf
