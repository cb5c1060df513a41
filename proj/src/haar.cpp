#include <stdexcept>

#include "ddgf/apps.hpp"

namespace ddgf {

namespace {

// One separable a-trous step along an axis: low = (c[n] + c[n+s]) / 2, high = (c[n] - c[n+s]) / 2.
void split(const Image& c, int shift, bool along_rows, Image& low, Image& high) {
  const int w = c.width();
  const int h = c.height();
  low = Image(w, h);
  high = Image(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const double a = c(i, j);
      const double b = along_rows ? c((i + shift) % w, j) : c(i, (j + shift) % h);
      low(i, j) = 0.5 * (a + b);
      high(i, j) = 0.5 * (a - b);
    }
  }
}

// Adjoint of split: out[n] = (low + high)[n] / 2 + (low - high)[n - s] / 2.
Image merge(const Image& low, const Image& high, int shift, bool along_rows) {
  const int w = low.width();
  const int h = low.height();
  Image out(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const int ip = along_rows ? (i - shift % w + w) % w : i;
      const int jp = along_rows ? j : (j - shift % h + h) % h;
      out(i, j) = 0.5 * (low(i, j) + high(i, j)) + 0.5 * (low(ip, jp) - high(ip, jp));
    }
  }
  return out;
}

}  // namespace

HaarCoefficients haar_undecimated(const Image& f, int levels) {
  if (levels < 1) throw std::domain_error("haar_undecimated: levels must be >= 1");
  if ((1 << levels) > f.width() || (1 << levels) > f.height()) {
    throw std::domain_error("haar_undecimated: too many levels for the image size");
  }
  HaarCoefficients out{f.width(), f.height(), levels, {}};
  Image approx = f;
  for (int j = 0; j < levels; ++j) {
    const int shift = 1 << j;
    Image lo, hi, ll, lh, hl, hh;
    split(approx, shift, true, lo, hi);
    split(lo, shift, false, ll, lh);
    split(hi, shift, false, hl, hh);
    out.bands.push_back(std::move(lh));
    out.bands.push_back(std::move(hl));
    out.bands.push_back(std::move(hh));
    approx = std::move(ll);
  }
  out.bands.push_back(std::move(approx));
  return out;
}

Image inverse_haar(const HaarCoefficients& c) {
  if (c.levels < 1 || c.bands.size() != static_cast<std::size_t>(3 * c.levels + 1)) {
    throw std::invalid_argument("inverse_haar: inconsistent band layout");
  }
  Image approx = c.bands.back();
  for (int j = c.levels - 1; j >= 0; --j) {
    const int shift = 1 << j;
    const Image& lh = c.bands[static_cast<std::size_t>(3 * j)];
    const Image& hl = c.bands[static_cast<std::size_t>(3 * j + 1)];
    const Image& hh = c.bands[static_cast<std::size_t>(3 * j + 2)];
    const Image lo = merge(approx, lh, shift, false);
    const Image hi = merge(hl, hh, shift, false);
    approx = merge(lo, hi, shift, true);
  }
  return approx;
}

}  // namespace ddgf
