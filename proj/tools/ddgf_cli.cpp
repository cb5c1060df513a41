// Command-line front end: transform, reconstruct, compress, denoise, bounds, verify.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "ddgf/apps.hpp"
#include "ddgf/bounds.hpp"
#include "ddgf/coefficient_file.hpp"
#include "ddgf/image.hpp"
#include "ddgf/parallel.hpp"
#include "ddgf/run_config.hpp"
#include "ddgf/theory.hpp"
#include "ddgf/transform.hpp"

namespace fs = std::filesystem;
using namespace ddgf;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 3;

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand; each maps onto a RunConfig key.
struct SharedFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool exact = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file");
    const std::pair<const char*, const char*> keys[] = {
        {"--window", "window"},
        {"--scale", "window_param"},
        {"--M", "M"},
        {"--N", "N"},
        {"--step", "translation_step"},
        {"--k-max", "k_max"},
        {"--oversampling", "oversampling"},
        {"--cg-tol", "cg_tolerance"},
        {"--cg-max-iter", "cg_max_iterations"},
        {"--modulation-period", "modulation_period"},
        {"--seeds", "seeds"},
        {"--output-dir", "output_dir"},
        {"--threads", "threads"},
        {"--variance", "variance"},
        {"--trials", "trials"},
        {"--levels", "levels"},
        {"--haar-levels", "haar_levels"},
    };
    for (const auto& [flag, key] : keys) {
      cmd->add_option_function<std::string>(flag, [this, k = std::string(key)](const std::string& v) { values[k] = v; },
                                            std::string("overrides ") + key);
    }
    cmd->add_flag("--exact", exact, "direct analysis instead of the FFT path");
  }

  RunConfig resolve() const {
    RunConfig rc = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    for (const auto& [k, v] : values) rc.set(k, v);
    if (exact) rc.exact = true;
    rc.validate();
    if (rc.threads > 0) set_thread_count(rc.threads);
    return rc;
  }
};

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path) : out_(path) {
    if (!out_) throw std::ios_base::failure("cannot write " + path.string());
    out_ << "method,parameter,value\n";
  }
  void row(const std::string& method, const std::string& parameter, double value) {
    std::ostringstream v;
    v << std::setprecision(17) << value;
    out_ << method << ',' << parameter << ',' << v.str() << '\n';
  }
  void row(const std::string& method, double parameter, double value) {
    std::ostringstream p;
    p << std::setprecision(17) << parameter;
    row(method, p.str(), value);
  }

 private:
  std::ofstream out_;
};

fs::path output_path(const RunConfig& rc, const std::string& name) {
  fs::path dir(rc.output_dir);
  fs::create_directories(dir);
  return dir / name;
}

std::string format_level(double level) {
  std::ostringstream s;
  s << std::lround(level * 1000.0);
  return s.str();
}

int cmd_transform(const RunConfig& rc, const std::string& input, std::string output) {
  const Image f = load_pgm(input);
  auto s = build_sampling(rc, f.width(), f.height());
  FrameOperator op(s, to_transform_config(rc), f.width(), f.height());
  const CoefficientSet c = op.analyze(f);
  if (output.empty()) output = output_path(rc, fs::path(input).stem().string() + ".ddgf").string();
  write_coefficient_file(output, c);
  std::cout << "entries " << c.values.size() << " energy " << std::setprecision(17) << c.energy()
            << (op.fell_back() ? " (direct fallback)" : "") << '\n';
  return 0;
}

int cmd_reconstruct(const RunConfig& rc, const std::string& input, std::string output, int width, int height) {
  const CoefficientFile file = read_coefficient_file(input);
  const CoefficientSet c = to_coefficient_set(file);
  if (width <= 0) width = 2 * file.M;
  if (height <= 0) height = 2 * file.N;
  FrameOperator op(c.sampling, to_transform_config(rc), width, height);
  const InversionResult r = reconstruct(c, op);
  if (output.empty()) output = output_path(rc, fs::path(input).stem().string() + ".pgm").string();
  save_pgm(r.x, output);
  std::cout << "cg iterations " << r.report.iterations << " residual " << r.report.relative_residual
            << (r.report.converged ? "" : " (not converged)") << '\n';
  return r.report.converged ? 0 : kExitNumerical;
}

void save_levels(const CompressionReport& rep, const RunConfig& rc, const std::string& stem, CsvWriter& csv) {
  for (const auto& l : rep.levels) {
    csv.row(rep.method, l.level, l.relative_error);
    save_pgm(l.reconstruction, output_path(rc, stem + "_" + rep.method + "_" + format_level(l.level) + ".pgm"));
  }
}

int cmd_compress(const RunConfig& rc, const std::string& input, bool with_nonredundant, bool with_haar) {
  const Image f = load_pgm(input);
  const std::string stem = fs::path(input).stem().string();
  CompressionOptions opts;
  opts.levels = rc.levels;
  opts.haar_levels = rc.haar_levels;
  CsvWriter csv(output_path(rc, stem + "_compress.csv"));
  bool all_converged = true;
  auto run = [&](const RunConfig& cfg, const std::string& name) {
    FrameOperator op(build_sampling(cfg, f.width(), f.height()), to_transform_config(cfg), f.width(), f.height());
    const CompressionReport rep = compress(f, op, opts, name);
    for (const auto& l : rep.levels) all_converged = all_converged && l.cg.converged;
    save_levels(rep, rc, stem, csv);
  };
  run(rc, rc.k_max == 0 ? method_name(CompressionMethod::DgfNonRedundant) : method_name(CompressionMethod::DgfRedundant));
  if (with_nonredundant && rc.k_max != 0) {
    RunConfig nr = rc;
    nr.k_max = 0;
    run(nr, method_name(CompressionMethod::DgfNonRedundant));
  }
  if (with_haar) save_levels(compress_haar(f, opts), rc, stem, csv);
  if (!all_converged) std::cerr << "warning: some CG solves hit the iteration cap\n";
  return 0;
}

int cmd_denoise(const RunConfig& rc, const std::string& input, bool coarse) {
  const Image f = load_pgm(input);
  const std::string stem = fs::path(input).stem().string();
  FrameOperator op(build_sampling(rc, f.width(), f.height()), to_transform_config(rc), f.width(), f.height());
  DenoiseOptions opts;
  opts.variance = rc.variance;
  opts.trials = rc.trials;
  opts.seeds = rc.seeds;
  if (coarse)
    for (int k = 75; k <= 99; ++k) opts.fractions.push_back(k / 100.0);
  const DenoiseReport rep = denoise(f, op, opts);
  CsvWriter csv(output_path(rc, stem + "_denoise.csv"));
  csv.row("noisy", rc.variance, rep.noisy_psnr);
  for (const auto& p : rep.points) csv.row(std::string("dgf-") + rule_name(p.rule), p.fraction, p.mean_psnr);
  save_pgm(rep.best_image, output_path(rc, stem + "_denoised.pgm"));
  std::cout << "noisy psnr " << std::setprecision(6) << rep.noisy_psnr << " best psnr " << rep.best.mean_psnr << " ("
            << rule_name(rep.best.rule) << ", discard " << rep.best.fraction << ")\n";
  return 0;
}

struct BoundsArgs {
  std::string kind = "kadec";
  double L = 0.0;
  int d = 2;
  double A = 1.0;
  double B = 1.0;
  double M = 1.0;
  double rho = 1.0;
  double omega = 1.0;
  int size = 32;
  int samples = 4;
  double band_fraction = 0.5;
};

int cmd_bounds(const RunConfig& rc, const BoundsArgs& a) {
  CsvWriter csv(output_path(rc, "bounds.csv"));
  auto emit = [&](const std::string& method, const std::string& param, double v) {
    csv.row(method, param, v);
    std::cout << method << ',' << param << ',' << std::setprecision(17) << v << '\n';
  };
  if (a.kind == "kadec") {
    const BoundPair b = kadec_bounds(a.L, a.d);
    emit("kadec", "A", b.lower);
    emit("kadec", "B", b.upper);
  } else if (a.kind == "bessel") {
    const BesselPerturbation b = bessel_perturbation(a.A, a.B, a.M, a.rho, a.d);
    emit("bessel", "B_prime", b.b_prime);
    emit("bessel", "upper", b.upper);
  } else if (a.kind == "main") {
    const BoundPair b = main_theorem_bounds(to_transform_config(rc).window, a.omega, a.d);
    emit("main", "A", b.lower);
    emit("main", "B", b.upper);
  } else if (a.kind == "empirical") {
    const GridMap grid{a.size, a.size};
    auto s = build_sampling(rc, a.size, a.size);
    const EmpiricalBounds e = empirical_bounds(s, to_transform_config(rc), grid, a.samples, a.band_fraction);
    emit("empirical", "lambda_min", e.lambda_min);
    emit("empirical", "lambda_max", e.lambda_max);
  } else {
    throw ConfigError("unknown bounds kind: " + a.kind);
  }
  return 0;
}

Image random_disc_image(int side, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image f(side, side);
  const GridMap gm = f.grid();
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i)
      if (std::hypot(gm.x1(i), gm.x2(j)) <= 0.25 * side) f(i, j) = u(rng);
  return f;
}

bool report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
  return ok;
}

int cmd_verify(const std::string& suite, int size, int count) {
  bool ok = true;
  std::ostringstream d;
  d << std::setprecision(6);
  if (suite == "parseval" || suite == "all") {
    std::mt19937_64 rng(1);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) worst = std::max(worst, std::abs(verify_toy_parseval(random_disc_image(size, rng)) - 1.0));
    d.str("");
    d << "max |ratio - 1| = " << worst;
    ok &= report("parseval", worst <= 1e-10, d.str());
  }
  if (suite == "slice" || suite == "all") {
    std::mt19937_64 rng(2);
    const Image f = random_disc_image(size, rng);
    double worst = 0.0;
    for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}, {-1, 3}}) {
      const double n = std::hypot(a, b);
      worst = std::max(worst, verify_fourier_slice(f, a / n, b / n).max_relative_deviation);
    }
    d.str("");
    d << "max relative deviation = " << worst;
    ok &= report("slice", worst <= 1e-2, d.str());
  }
  if (suite == "annihilate" || suite == "all") {
    const auto r = annihilated_function({{1, 0}, {0, 1}, {1, 1}}, size);
    d.str("");
    d << "projection energy ratio = " << r.ratio;
    ok &= report("annihilate", r.ratio <= 1e-3, d.str());
  }
  if (suite == "bessel" || suite == "all") {
    const auto pts = unbounded_bessel_demo(count, 4, 0.0);
    double min_coef = pts.front().coefficient;
    for (const auto& p : pts) min_coef = std::min(min_coef, p.coefficient);
    const double shrink = pts.front().norm / pts.back().norm;
    d.str("");
    d << "norm shrink = " << shrink << ", min coefficient = " << min_coef;
    ok &= report("bessel", shrink >= std::sqrt(static_cast<double>(count)) * 0.99 && min_coef >= 0.9, d.str());
  }
  if (suite != "all" && suite != "parseval" && suite != "slice" && suite != "annihilate" && suite != "bessel") {
    throw ConfigError("unknown verify suite: " + suite);
  }
  return ok ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete directional Gabor frames"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SharedFlags flags;
  std::string input, output;
  int width = 0, height = 0;
  bool nonredundant = false, haar = false, coarse = false;
  BoundsArgs bargs;
  std::string suite = "all";
  int verify_size = 32, verify_count = 100;

  auto* transform = app.add_subcommand("transform", "analyze a PGM image into a .ddgf coefficient file");
  transform->add_option("input", input, "input PGM")->required();
  transform->add_option("-o,--output", output, "output .ddgf path");
  flags.attach(transform);

  auto* recon = app.add_subcommand("reconstruct", "rebuild an image from a .ddgf file");
  recon->add_option("input", input, "input .ddgf")->required();
  recon->add_option("-o,--output", output, "output PGM path");
  recon->add_option("--width", width, "image width (default 2M)");
  recon->add_option("--height", height, "image height (default 2N)");
  flags.attach(recon);

  auto* comp = app.add_subcommand("compress", "hard-threshold compression sweep");
  comp->add_option("input", input, "input PGM")->required();
  comp->add_flag("--nonredundant", nonredundant, "also run the k_max = 0 system");
  comp->add_flag("--haar", haar, "also run the undecimated Haar baseline");
  flags.attach(comp);

  auto* den = app.add_subcommand("denoise", "threshold sweep on noisy copies");
  den->add_option("input", input, "input PGM")->required();
  den->add_flag("--coarse", coarse, "sweep in steps of 0.01 instead of 0.005");
  flags.attach(den);

  auto* bnd = app.add_subcommand("bounds", "frame bound formulas and estimates");
  bnd->add_option("kind", bargs.kind, "kadec | bessel | main | empirical")
      ->check(CLI::IsMember({"kadec", "bessel", "main", "empirical"}));
  bnd->add_option("--L", bargs.L, "Kadec perturbation");
  bnd->add_option("--d", bargs.d, "dimension");
  bnd->add_option("--A", bargs.A, "lower Riesz bound");
  bnd->add_option("--B", bargs.B, "upper Riesz bound");
  bnd->add_option("--bessel-M", bargs.M, "frequency magnitude bound");
  bnd->add_option("--rho", bargs.rho, "perturbation scale");
  bnd->add_option("--omega", bargs.omega, "translation step in the unit domain");
  bnd->add_option("--size", bargs.size, "image side for empirical bounds");
  bnd->add_option("--samples", bargs.samples, "random starts for empirical bounds");
  bnd->add_option("--band-fraction", bargs.band_fraction, "test subspace band fraction");
  flags.attach(bnd);

  auto* ver = app.add_subcommand("verify", "run theory checks");
  ver->add_option("suite", suite, "parseval | slice | annihilate | bessel | all");
  ver->add_option("--size", verify_size, "grid side");
  ver->add_option("--count", verify_count, "k range for the bessel check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ver) return cmd_verify(suite, verify_size, verify_count);
    const RunConfig rc = flags.resolve();
    if (*transform) return cmd_transform(rc, input, output);
    if (*recon) return cmd_reconstruct(rc, input, output, width, height);
    if (*comp) return cmd_compress(rc, input, nonredundant, haar);
    if (*den) return cmd_denoise(rc, input, coarse);
    if (*bnd) return cmd_bounds(rc, bargs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PgmError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
