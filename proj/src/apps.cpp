#include "ddgf/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

namespace ddgf {

std::vector<std::size_t> magnitude_ranking(const std::vector<complex>& values) {
  std::vector<double> mag(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) mag[k] = std::abs(values[k]);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  return order;
}

std::size_t kept_count(double keep_fraction, std::size_t total) {
  if (!(keep_fraction >= 0.0 && keep_fraction <= 1.0)) throw std::invalid_argument("keep fraction must be in [0, 1]");
  const double raw = std::ceil(keep_fraction * static_cast<double>(total) - 1e-9);
  return std::min(total, static_cast<std::size_t>(std::max(0.0, raw)));
}

std::vector<complex> hard_threshold(const std::vector<complex>& values, double keep_fraction,
                                    const std::vector<std::size_t>& ranking) {
  const std::size_t keep = kept_count(keep_fraction, values.size());
  std::vector<complex> out(values.size(), 0.0);
  for (std::size_t r = 0; r < keep; ++r) out[ranking[r]] = values[ranking[r]];
  return out;
}

std::vector<complex> soft_threshold(const std::vector<complex>& values, double keep_fraction,
                                    const std::vector<std::size_t>& ranking) {
  const std::size_t keep = kept_count(keep_fraction, values.size());
  const double tau = keep < values.size() ? std::abs(values[ranking[keep]]) : 0.0;
  std::vector<complex> out(values.size(), 0.0);
  for (std::size_t r = 0; r < keep; ++r) {
    const complex v = values[ranking[r]];
    const double m = std::abs(v);
    if (m > tau) out[ranking[r]] = v * ((m - tau) / m);
  }
  return out;
}

std::vector<complex> hard_threshold(const std::vector<complex>& values, double keep_fraction) {
  return hard_threshold(values, keep_fraction, magnitude_ranking(values));
}

std::vector<complex> soft_threshold(const std::vector<complex>& values, double keep_fraction) {
  return soft_threshold(values, keep_fraction, magnitude_ranking(values));
}

CoefficientSet hard_threshold(const CoefficientSet& c, double keep_fraction) {
  return {c.sampling, hard_threshold(c.values, keep_fraction)};
}

CoefficientSet soft_threshold(const CoefficientSet& c, double keep_fraction) {
  return {c.sampling, soft_threshold(c.values, keep_fraction)};
}

const char* rule_name(ThresholdRule r) { return r == ThresholdRule::Hard ? "hard" : "soft"; }

double psnr(const Image& approx, const Image& reference) {
  if (approx.width() != reference.width() || approx.height() != reference.height()) {
    throw std::invalid_argument("psnr: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    const double d = approx[k] - reference[k];
    sum += d * d;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double rmse = std::sqrt(sum / static_cast<double>(approx.size()));
  return -10.0 * std::log10(rmse);
}

Image add_noise(const Image& f, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0)) throw std::invalid_argument("add_noise: variance must be nonnegative");
  Image out = f;
  if (variance == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (auto& v : out.values()) v += normal(rng);
  return out;
}

const char* method_name(CompressionMethod m) {
  switch (m) {
    case CompressionMethod::DgfRedundant:
      return "dgf-redundant";
    case CompressionMethod::DgfNonRedundant:
      return "dgf-nonredundant";
    case CompressionMethod::Haar:
      return "haar";
  }
  return "unknown";
}

CompressionReport compress(const Image& f, FrameOperator& op, const CompressionOptions& options,
                           const std::string& method) {
  CompressionReport rep;
  rep.method = method;
  const CoefficientSet c = op.analyze(f);
  const auto ranking = magnitude_ranking(c.values);
  std::optional<Image> previous;
  for (double level : options.levels) {
    if (!(level >= 0.0 && level <= 1.0)) throw std::invalid_argument("compress: level must be in [0, 1]");
    const CoefficientSet kept{c.sampling, hard_threshold(c.values, 1.0 - level, ranking)};
    InversionOptions inv;
    inv.subspace = options.subspace;
    if (options.warm_start && previous) inv.initial_guess = previous;
    InversionResult r = reconstruct(kept, op, inv);
    CompressionLevelResult lr;
    lr.level = level;
    lr.relative_error = relative_error(r.x, f);
    lr.cg = r.report;
    previous = r.x;
    lr.reconstruction = std::move(r.x);
    rep.levels.push_back(std::move(lr));
  }
  return rep;
}

CompressionReport compress_haar(const Image& f, const CompressionOptions& options) {
  CompressionReport rep;
  rep.method = method_name(CompressionMethod::Haar);
  HaarCoefficients h = haar_undecimated(f, options.haar_levels);
  std::vector<complex> flat;
  for (const auto& b : h.bands)
    for (double v : b.values()) flat.emplace_back(v);
  const auto ranking = magnitude_ranking(flat);
  for (double level : options.levels) {
    if (!(level >= 0.0 && level <= 1.0)) throw std::invalid_argument("compress: level must be in [0, 1]");
    const auto kept = hard_threshold(flat, 1.0 - level, ranking);
    HaarCoefficients t = h;
    std::size_t k = 0;
    for (auto& b : t.bands)
      for (auto& v : b.values()) v = kept[k++].real();
    CompressionLevelResult lr;
    lr.level = level;
    lr.reconstruction = inverse_haar(t);
    lr.relative_error = relative_error(lr.reconstruction, f);
    lr.cg.converged = true;
    rep.levels.push_back(std::move(lr));
  }
  return rep;
}

std::vector<double> default_denoise_fractions() {
  std::vector<double> out;
  for (int k = 750; k <= 995; k += 5) out.push_back(k / 1000.0);
  return out;
}

DenoisePoint DenoiseReport::best_for(ThresholdRule rule) const {
  DenoisePoint best;
  best.mean_psnr = -std::numeric_limits<double>::infinity();
  for (const auto& p : points)
    if (p.rule == rule && p.mean_psnr > best.mean_psnr) best = p;
  return best;
}

DenoiseReport denoise(const Image& f, FrameOperator& op, const DenoiseOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("denoise: trials must be >= 1");
  std::vector<std::uint64_t> seeds = options.seeds;
  if (seeds.empty())
    for (int t = 0; t < options.trials; ++t) seeds.push_back(static_cast<std::uint64_t>(t + 1));
  if (seeds.size() != static_cast<std::size_t>(options.trials)) {
    throw std::invalid_argument("denoise: seed count must equal the trial count");
  }
  const std::vector<double> fractions = options.fractions.empty() ? default_denoise_fractions() : options.fractions;
  if (options.rules.empty()) throw std::invalid_argument("denoise: no threshold rules");

  DenoiseReport rep;
  rep.variance = options.variance;
  rep.trials = options.trials;
  for (ThresholdRule rule : options.rules)
    for (double fr : fractions) rep.points.push_back({fr, rule, 0.0, 0});

  auto threshold = [](ThresholdRule rule, const CoefficientSet& c, double keep, const std::vector<std::size_t>& rank) {
    return CoefficientSet{c.sampling, rule == ThresholdRule::Hard ? hard_threshold(c.values, keep, rank)
                                                                  : soft_threshold(c.values, keep, rank)};
  };

  double noisy_sum = 0.0;
  for (int t = 0; t < options.trials; ++t) {
    const Image noisy = add_noise(f, options.variance, seeds[static_cast<std::size_t>(t)]);
    noisy_sum += psnr(noisy, f);
    const CoefficientSet c = op.analyze(noisy);
    const auto ranking = magnitude_ranking(c.values);
    std::size_t p = 0;
    for (ThresholdRule rule : options.rules) {
      std::optional<Image> previous;
      for (double fr : fractions) {
        InversionOptions inv;
        if (options.warm_start && previous) inv.initial_guess = previous;
        InversionResult r = reconstruct(threshold(rule, c, 1.0 - fr, ranking), op, inv);
        rep.points[p].mean_psnr += psnr(r.x, f) / options.trials;
        if (!r.report.converged) ++rep.points[p].unconverged;
        previous = std::move(r.x);
        ++p;
      }
    }
  }
  rep.noisy_psnr = noisy_sum / options.trials;
  rep.best = rep.points.front();
  for (const auto& pt : rep.points)
    if (pt.mean_psnr > rep.best.mean_psnr) rep.best = pt;

  const Image noisy = add_noise(f, options.variance, seeds.front());
  const CoefficientSet c = op.analyze(noisy);
  rep.best_image = reconstruct(threshold(rep.best.rule, c, 1.0 - rep.best.fraction, magnitude_ranking(c.values)), op).x;
  return rep;
}

}  // namespace ddgf
