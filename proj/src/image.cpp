#include "ddgf/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>

namespace ddgf {

bool GridMap::pixel_of(double c1, double c2, int& i, int& j) const {
  const double fi = c1 + 0.5 * width - 0.5;
  const double fj = c2 + 0.5 * height - 0.5;
  if (fi != std::floor(fi) || fj != std::floor(fj)) return false;
  if (fi < 0 || fj < 0 || fi >= width || fj >= height) return false;
  i = static_cast<int>(fi);
  j = static_cast<int>(fj);
  return true;
}

void check_grid_dimensions(int width, int height) {
  if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
    throw std::invalid_argument("image sides must be even and at least 2, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

void check_finite(const Image& img) {
  for (double v : img.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("image contains a non-finite pixel");
  }
}

Image real_part(const ComplexField& f) {
  Image out(f.width(), f.height());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

ComplexField to_complex(const Image& f) {
  ComplexField out(f.width(), f.height());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k];
  return out;
}

namespace {

template <typename A, typename B>
void require_same_grid(const A& f, const B& h) {
  if (f.width() != h.width() || f.height() != h.height()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
}

}  // namespace

complex inner(const Image& f, const ComplexField& h) {
  require_same_grid(f, h);
  complex s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * std::conj(h[k]);
  return s;
}

complex inner(const ComplexField& f, const ComplexField& h) {
  require_same_grid(f, h);
  complex s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * std::conj(h[k]);
  return s;
}

double inner(const Image& f, const Image& h) {
  require_same_grid(f, h);
  double s = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * h[k];
  return s;
}

double norm2(const Image& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s);
}

double norm2(const ComplexField& f) {
  double s = 0.0;
  for (const complex& v : f.values()) s += std::norm(v);
  return std::sqrt(s);
}

double relative_error(const Image& approx, const Image& reference) {
  require_same_grid(approx, reference);
  const double ref = norm2(reference);
  if (ref == 0.0) throw std::domain_error("relative_error: reference has zero norm");
  double s = 0.0;
  for (std::size_t k = 0; k < approx.size(); ++k) {
    const double d = approx[k] - reference[k];
    s += d * d;
  }
  return std::sqrt(s) / ref;
}

// --- PGM -------------------------------------------------------------------

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_positive(const std::string& tok, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
    throw PgmError(PgmErrorKind::MalformedHeader, std::string("PGM: bad ") + what);
  }
  long v = std::stol(tok);
  if (v <= 0 || v > 1 << 24) {
    throw PgmError(PgmErrorKind::MalformedHeader, std::string("PGM: bad ") + what);
  }
  return static_cast<int>(v);
}

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PgmError(PgmErrorKind::Io, "PGM: cannot open " + path.string());

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2) throw PgmError(PgmErrorKind::MalformedHeader, "PGM: missing magic");
  if (magic[0] != 'P' || magic[1] != '5') {
    throw PgmError(PgmErrorKind::UnsupportedMagic,
                   std::string("PGM: unsupported magic ") + magic[0] + magic[1]);
  }
  const int width = parse_positive(next_token(in), "width");
  const int height = parse_positive(next_token(in), "height");
  const int maxval = parse_positive(next_token(in), "maxval");
  if (maxval > 65535) throw PgmError(PgmErrorKind::MalformedHeader, "PGM: maxval > 65535");
  // next_token consumed exactly one whitespace byte after maxval.

  const int bytes_per_sample = maxval < 256 ? 1 : 2;
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<unsigned char> raw(count * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw PgmError(PgmErrorKind::TruncatedPayload, "PGM: truncated payload");
  }

  std::vector<double> px(count);
  for (std::size_t k = 0; k < count; ++k) {
    unsigned v = bytes_per_sample == 1 ? raw[k] : (unsigned(raw[2 * k]) << 8) | raw[2 * k + 1];
    px[k] = static_cast<double>(v) / maxval;
  }
  return Image(width, height, std::move(px));
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PgmError(PgmErrorKind::Io, "PGM: cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> bytes(img.size());
  for (std::size_t k = 0; k < img.size(); ++k) {
    const double v = std::clamp(img[k], 0.0, 1.0);
    bytes[k] = static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw PgmError(PgmErrorKind::Io, "PGM: write failed for " + path.string());
}

}  // namespace ddgf
