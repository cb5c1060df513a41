#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ddgf/transform.hpp"
#include "ddgf/window.hpp"

namespace ddgf {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// Riesz bounds of exponentials with frequencies perturbed by at most L < 1/4:
/// A = (2 pi)^d (cos(pi L) - sin(pi L))^{2d}, B = (2 pi)^d (2 - cos(pi L) + sin(pi L))^{2d}.
BoundPair kadec_bounds(double L, int d);

struct BesselPerturbation {
  double b_prime = 0.0;
  double upper = 0.0;  // B (1 + sqrt(B'))^2
};

/// B' = (B/A)(e^{M^2 rho^2 d} - 1)(e^{pi^2 d / rho^2} - 1).
BesselPerturbation bessel_perturbation(double A, double B, double M, double rho = 1.0, int d = 2);

/// Adaptive Simpson quadrature with absolute tolerance tol. Refinement also
/// stops once the estimate stalls at rounding level or after max_depth halvings.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// a(gamma) = (2 pi)^{2d} (cos(pi |gamma|) - sin(pi |gamma|))^{2d}
double lower_weight(double gamma, int d);
/// c(gamma) = (e^{gamma^2 d} - 1)(e^{pi^2 d} - 1)
double perturbation_weight(double gamma, int d);
/// b(gamma) = (1 + sqrt(c(gamma)))^2
double upper_weight(double gamma, int d);

/// A = (1/omega) int_{-1/4}^{1/4} a |g^|^2, B = (1/omega) int_{supp g^} b |g^|^2.
/// The window is expressed in the unit domain (g^ in cycles per unit length).
BoundPair main_theorem_bounds(const Window& w, double omega, int d = 2, double tol = 1e-10);

enum class QuotientNormalization {
  Pixel,       // sum |c|^2 / ||f||^2 with unit pixel weight
  UnitDomain,  // additionally divided by T1 T2, the pixel count of one modulation period
};

double rayleigh_quotient(FrameOperator& op, const Image& f, QuotientNormalization norm);

struct EmpiricalBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int n_samples = 0;
  std::string subspace;
};

struct EmpiricalOptions {
  int n_samples = 4;
  Subspace subspace;
  QuotientNormalization normalization = QuotientNormalization::Pixel;
  int max_iterations = 300;
  double relative_change = 1e-6;
  std::uint64_t seed = 1;
};

/// lambda_max by power iteration on the projected frame operator and lambda_min by
/// power iteration on lambda_max I - S, each from n_samples random starts inside
/// the subspace; the extremes over all starts and iterates are reported.
EmpiricalBounds empirical_bounds(FrameOperator& op, const EmpiricalOptions& options);

EmpiricalBounds empirical_bounds(std::shared_ptr<const SamplingSet> s, const TransformConfig& cfg,
                                 const GridMap& grid, int n_samples, double band_fraction);

struct FrameBoundsReport {
  std::optional<BoundPair> kadec;
  std::optional<double> bessel_perturbed_upper;
  std::optional<BoundPair> main;
  std::optional<EmpiricalBounds> empirical;
};

}  // namespace ddgf
