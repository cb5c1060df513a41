#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ddgf/image.hpp"
#include "ddgf/transform.hpp"

namespace ddgf {

// ---------------------------------------------------------------------------
// Thresholding by keep-fraction.

/// Entry indices sorted by descending magnitude, ties by ascending index.
std::vector<std::size_t> magnitude_ranking(const std::vector<complex>& values);

/// Number of entries retained for a keep fraction in [0, 1].
std::size_t kept_count(double keep_fraction, std::size_t total);

std::vector<complex> hard_threshold(const std::vector<complex>& values, double keep_fraction);
std::vector<complex> soft_threshold(const std::vector<complex>& values, double keep_fraction);

/// Variants reusing a precomputed ranking of the same values.
std::vector<complex> hard_threshold(const std::vector<complex>& values, double keep_fraction,
                                    const std::vector<std::size_t>& ranking);
std::vector<complex> soft_threshold(const std::vector<complex>& values, double keep_fraction,
                                    const std::vector<std::size_t>& ranking);

CoefficientSet hard_threshold(const CoefficientSet& c, double keep_fraction);
CoefficientSet soft_threshold(const CoefficientSet& c, double keep_fraction);

enum class ThresholdRule { Hard, Soft };
const char* rule_name(ThresholdRule r);

// ---------------------------------------------------------------------------
// Metrics and noise.

/// -10 log10(RMSE) on the [0, 1] intensity scale; +infinity for identical images.
double psnr(const Image& approx, const Image& reference);

/// Adds i.i.d. N(0, variance) noise from a seeded generator. Values are not clamped.
Image add_noise(const Image& f, double variance, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Undecimated Haar baseline.

/// a-trous Haar decomposition with periodic boundary. Level j (0-based) uses shift
/// 2^j; bands are stored level by level as (LH, HL, HH) followed by the final
/// approximation. Analysis and synthesis form a Parseval frame.
struct HaarCoefficients {
  int width = 0;
  int height = 0;
  int levels = 0;
  std::vector<Image> bands;
};

HaarCoefficients haar_undecimated(const Image& f, int levels);
Image inverse_haar(const HaarCoefficients& c);

// ---------------------------------------------------------------------------
// Pipelines.

enum class CompressionMethod { DgfRedundant, DgfNonRedundant, Haar };
const char* method_name(CompressionMethod m);

struct CompressionLevelResult {
  double level = 0.0;  // fraction of coefficients discarded
  double relative_error = 0.0;
  CgReport cg;         // iterations are 0 for the Haar baseline
  Image reconstruction;
};

struct CompressionReport {
  std::string method;
  std::vector<CompressionLevelResult> levels;
};

struct CompressionOptions {
  std::vector<double> levels{0.90, 0.96, 0.98, 0.99};
  int haar_levels = 3;
  bool warm_start = true;  // start each CG solve from the previous level's result
  Subspace subspace;       // restriction applied during inversion
};

/// DGF compression through an existing operator (its sampling set decides
/// redundant or non-redundant).
CompressionReport compress(const Image& f, FrameOperator& op, const CompressionOptions& options = {},
                           const std::string& method = "dgf");
CompressionReport compress_haar(const Image& f, const CompressionOptions& options = {});

struct DenoiseOptions {
  double variance = 0.1;
  int trials = 10;
  std::vector<std::uint64_t> seeds;  // one per trial; empty means 1, 2, ..., trials
  std::vector<double> fractions;     // discarded fractions; empty means 0.75, 0.755, ..., 0.995
  std::vector<ThresholdRule> rules{ThresholdRule::Hard, ThresholdRule::Soft};
  bool warm_start = true;
};

struct DenoisePoint {
  double fraction = 0.0;
  ThresholdRule rule = ThresholdRule::Hard;
  double mean_psnr = 0.0;
  int unconverged = 0;  // CG solves that hit the iteration cap
};

struct DenoiseReport {
  double variance = 0.0;
  int trials = 0;
  double noisy_psnr = 0.0;  // mean over trials
  std::vector<DenoisePoint> points;
  DenoisePoint best;
  Image best_image;  // reconstruction of the best setting for the first trial

  /// Best mean PSNR restricted to one rule.
  DenoisePoint best_for(ThresholdRule rule) const;
};

/// The standard sweep 0.75 to 0.995 in steps of 0.005.
std::vector<double> default_denoise_fractions();

DenoiseReport denoise(const Image& f, FrameOperator& op, const DenoiseOptions& options = {});

}  // namespace ddgf
