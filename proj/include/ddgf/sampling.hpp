#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ddgf {

/// Integer frequency a = (a1, a2) of the lattice A = ([-M, M] x [-N, N]) ∩ Z^2.
struct LatticePoint {
  int a1 = 0;
  int a2 = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// The pair (u, m) with m*u = a; the DC point carries u0 = (1, 0) and m = 0.
struct DirectionModulation {
  LatticePoint a;
  double u1 = 1.0;
  double u2 = 0.0;
  double m = 0.0;
};

DirectionModulation make_direction_modulation(LatticePoint a);

/// gcd with the convention gcd(x, 0) = |x|.
int lattice_gcd(int x, int y);

/// The finite index set: every (a, n) with a in A and n in the translation list.
///
/// Entries are ordered lexicographically in (a1, a2), then by ascending n;
/// entry e corresponds to mode e / translation_count() and translation
/// e % translation_count().
class SamplingSet {
 public:
  SamplingSet(int M, int N, std::vector<DirectionModulation> modes, std::vector<double> translations);

  /// Full lattice A with the given translation list (sorted ascending).
  static SamplingSet from_translations(int M, int N, std::vector<double> translations);

  int M() const { return M_; }
  int N() const { return N_; }
  const std::vector<DirectionModulation>& modes() const { return modes_; }
  const std::vector<double>& translations() const { return translations_; }
  const std::vector<LatticePoint>& direction_basis() const { return directions_; }

  std::size_t mode_count() const { return modes_.size(); }
  std::size_t translation_count() const { return translations_.size(); }
  std::size_t entry_count() const { return modes_.size() * translations_.size(); }

  const DirectionModulation& mode_of(std::size_t entry) const { return modes_[entry / translations_.size()]; }
  double translation_of(std::size_t entry) const { return translations_[entry % translations_.size()]; }

  /// Coefficient count divided by the pixel count of a 2M x 2N image.
  double redundancy() const;

 private:
  int M_;
  int N_;
  std::vector<DirectionModulation> modes_;
  std::vector<double> translations_;
  std::vector<LatticePoint> directions_;
};

/// Coprime points of A \ {0} in lexicographic order.
std::vector<LatticePoint> coprime_directions(int M, int N);

/// Translations step*k for |k| <= k_max; k_max = 0 gives the non-redundant system.
SamplingSet build_sampling_set(int M, int N, double translation_step = 4.0, int k_max = 5);

/// True iff round(m*u) over the modes is exactly A (each point once, reconstruction
/// error < 1e-9) and the DC point carries u0 = (1, 0).
bool verify_bijection(const SamplingSet& s);

}  // namespace ddgf
