#include "ddgf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ddgf {

int lattice_gcd(int x, int y) { return std::gcd(std::abs(x), std::abs(y)); }

DirectionModulation make_direction_modulation(LatticePoint a) {
  DirectionModulation dm;
  dm.a = a;
  if (a.a1 == 0 && a.a2 == 0) return dm;
  // a = s*d with d coprime; u is the normalized d and m = s*|d|.
  const int s = lattice_gcd(a.a1, a.a2);
  const double d1 = a.a1 / s;
  const double d2 = a.a2 / s;
  const double len = std::hypot(d1, d2);
  dm.u1 = d1 / len;
  dm.u2 = d2 / len;
  dm.m = s * len;
  return dm;
}

std::vector<LatticePoint> coprime_directions(int M, int N) {
  std::vector<LatticePoint> out;
  for (int a1 = -M; a1 <= M; ++a1) {
    for (int a2 = -N; a2 <= N; ++a2) {
      if ((a1 != 0 || a2 != 0) && lattice_gcd(a1, a2) == 1) out.push_back({a1, a2});
    }
  }
  return out;
}

SamplingSet::SamplingSet(int M, int N, std::vector<DirectionModulation> modes,
                         std::vector<double> translations)
    : M_(M), N_(N), modes_(std::move(modes)), translations_(std::move(translations)) {
  if (M < 0 || N < 0) throw std::invalid_argument("SamplingSet: M and N must be nonnegative");
  if (translations_.empty()) throw std::invalid_argument("SamplingSet: no translations");
  if (!std::is_sorted(translations_.begin(), translations_.end())) {
    throw std::invalid_argument("SamplingSet: translations must be sorted");
  }
  directions_ = coprime_directions(M, N);
}

SamplingSet SamplingSet::from_translations(int M, int N, std::vector<double> translations) {
  std::vector<DirectionModulation> modes;
  modes.reserve(static_cast<std::size_t>(2 * M + 1) * (2 * N + 1));
  for (int a1 = -M; a1 <= M; ++a1) {
    for (int a2 = -N; a2 <= N; ++a2) modes.push_back(make_direction_modulation({a1, a2}));
  }
  std::sort(translations.begin(), translations.end());
  return SamplingSet(M, N, std::move(modes), std::move(translations));
}

double SamplingSet::redundancy() const {
  return static_cast<double>(entry_count()) / (4.0 * M_ * N_);
}

SamplingSet build_sampling_set(int M, int N, double translation_step, int k_max) {
  if (M < 1 || N < 1) throw std::invalid_argument("build_sampling_set: M, N must be >= 1");
  if (!(translation_step > 0)) throw std::invalid_argument("build_sampling_set: step must be positive");
  if (k_max < 0) throw std::invalid_argument("build_sampling_set: k_max must be >= 0");
  std::vector<double> t;
  for (int k = -k_max; k <= k_max; ++k) t.push_back(translation_step * k);
  return SamplingSet::from_translations(M, N, std::move(t));
}

bool verify_bijection(const SamplingSet& s) {
  const std::size_t expected = static_cast<std::size_t>(2 * s.M() + 1) * (2 * s.N() + 1);
  if (s.mode_count() != expected) return false;
  std::set<LatticePoint> seen;
  for (const auto& dm : s.modes()) {
    const double r1 = dm.m * dm.u1;
    const double r2 = dm.m * dm.u2;
    const LatticePoint p{static_cast<int>(std::lround(r1)), static_cast<int>(std::lround(r2))};
    if (std::abs(r1 - p.a1) >= 1e-9 || std::abs(r2 - p.a2) >= 1e-9) return false;
    if (!(p == dm.a)) return false;
    if (std::abs(p.a1) > s.M() || std::abs(p.a2) > s.N()) return false;
    if (p.a1 == 0 && p.a2 == 0 && (dm.u1 != 1.0 || dm.u2 != 0.0)) return false;
    if (!seen.insert(p).second) return false;
  }
  return seen.size() == expected;
}

}  // namespace ddgf
