#pragma once

#include <optional>
#include <vector>

#include "wsp/field.hpp"

namespace wsp {

struct EmbeddingRatios {
  /// b_norm / ||f||_{L^p(w_gamma)}, bounded by 2^(gamma/p).
  double r1 = 0.0;
  /// ||f||_{L^p(w_delta)} / b_norm, bounded by dyadic_shell_constant.
  double r2 = 0.0;
  double bound1 = 0.0;
  double bound2 = 0.0;
  bool r1_ok = false;
  bool r2_ok = false;
  /// A denominator vanished; ratios are meaningless.
  bool undefined = false;
};

struct NormReport {
  double p = 2.0;
  double gamma = 0.0;
  double lp_wgamma = 0.0;
  double b_norm = 0.0;
  double sup_radius = 1.0;
  std::size_t radius_count = 0;
  /// |dB(0, R*)| h / 2 times the largest |f|^p, the midpoint-rule slack at R*.
  double boundary_error = 0.0;
  /// R^-gamma int_{B_R} |f|^p is nonincreasing over L/4, L/2, L and drops overall.
  bool decay_flag = false;
  std::optional<EmbeddingRatios> embedding;
};

/// sup over R in [1, L] of (R^-gamma int_{B(0,R)} |f|^p)^(1/p). Radii: every
/// distinct node radius in [1, 4], then steps of 1/8 up to L.
NormReport b_norm(const ScalarField& f, double p, double gamma);

/// (1 + 2^delta / (2^(delta - gamma) - 1))^(1/p).
double dyadic_shell_constant(double p, double gamma, double delta);

/// r1, r2 and their bounds; `slack` loosens the r1 bound multiplicatively.
EmbeddingRatios embedding_constants(const ScalarField& f, double p, double gamma, double delta,
                                    double slack = 0.05);

struct InterpolationSplit {
  double A = 1.0;
  /// Split radius A^(p/delta); zero when A <= 1 (f0 = 0).
  double R = 0.0;
  ScalarField f0;
  ScalarField f1;
  double norm_f0 = 0.0;  // ||f0||_p
  double norm_f1 = 0.0;  // ||f1||_{L^p(w_delta)}
  double b_norm = 0.0;
  /// norm_f0 / (A^(gamma/delta) b) and norm_f1 / (A^(gamma/delta - 1) b).
  double ratio0 = 0.0;
  double ratio1 = 0.0;
  bool undefined = false;
};

InterpolationSplit interpolation_split(const ScalarField& f, double A, double p, double gamma,
                                       double delta);

/// inf over radial splits f0 = f 1_{|x| <= R} of ||f0||_p + A ||f1||_{L^p(w_delta)}.
/// n_candidates = 0 searches every distinct node radius (plus R = 0), which
/// makes the result a minimum of affine functions of A; otherwise a geometric
/// radius family of that size plus the split radius A^(p/delta).
double k_functional(const ScalarField& f, double A, double p, double gamma, double delta,
                    int n_candidates = 0);

}  // namespace wsp
