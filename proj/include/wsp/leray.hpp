#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsp/field.hpp"
#include "wsp/pressure.hpp"

namespace wsp {

/// w = div H split as w = solenoidal + gradient_part.
struct HodgeParts {
  VectorField w;
  VectorField solenoidal;
  VectorField gradient_part;
  /// The potential whose discrete gradient is gradient_part.
  ScalarField potential;
};

/// Leray projection of w = div H. The potential is p_phi of h = -H, so that
/// Lap potential = div w, and solenoidal = w - grad potential.
HodgeParts leray_project(const TensorField& H, const PressureOptions& opts = {});

/// Same, reusing an assembler built for H's grid.
HodgeParts leray_project(const TensorField& H, PressureAssembler& assembler);

/// d_t u - Lap u + div(u (x) u) + grad p - div F per frame. F may be null.
VectorSeries ns_residual(const VectorSeries& u, const TensorSeries* F, const ScalarSeries& p);

/// d_t u - Lap u + P div(u (x) u - F) per frame. F may be null.
VectorSeries mns_residual(const VectorSeries& u, const TensorSeries* F,
                          const PressureOptions& opts = {});

/// phi(t, x) = cutoff(|x - c|; rho/2, rho) * theta(t), theta a smooth bump
/// supported in (t_lo, t_hi) with peak value 1.
struct TestFunction {
  std::string id;
  Point center{0.0, 0.0, 0.0};
  double radius = 1.0;
  double t_lo = 0.0;
  double t_hi = 1.0;

  double space(const Point& x, int d) const;
  double time(double t) const;
  double time_rate(double t) const;
};

struct SuitabilityReport {
  std::string test_id;
  Point center{0.0, 0.0, 0.0};
  double radius = 0.0;
  /// mu(phi) from the weak pairing, derivatives on phi.
  double mu_value = 0.0;
  /// The five weak terms; they sum to mu_value.
  double energy_rate = 0.0;     // int |u|^2/2 d_t phi
  double energy_diffusion = 0.0;  // int |u|^2/2 Lap phi
  double dissipation = 0.0;     // -int |grad u|^2 phi
  double transport = 0.0;       // int (|u|^2/2 + p) u . grad phi
  double forcing = 0.0;         // int u . div F phi
  /// mu from the strong balance (derivatives on u), and mu_value minus it.
  double mu_strong = 0.0;
  double balance_residual = 0.0;
  /// Sum of the absolute weak terms.
  double energy_scale = 0.0;
  /// (h^2 + dt^2) * energy_scale.
  double tolerance = 0.0;
  bool suitable = false;
};

/// Pairing against a sampled test function phi and its time derivative.
SuitabilityReport suitability_residual(const VectorSeries& u, const ScalarSeries& p,
                                       const TensorSeries* F, const ScalarSeries& phi,
                                       const ScalarSeries& phi_t);
SuitabilityReport suitability_residual(const VectorSeries& u, const ScalarSeries& p,
                                       const TensorSeries* F, const TestFunction& phi);

/// 15 structured functions (3 radii x 5 centres) and 13 seeded random ones,
/// all supported inside the box (stencil ring excluded) and inside the time span.
std::vector<TestFunction> suitability_battery(const Grid& g, double t0, double t1,
                                              std::uint64_t seed);
std::vector<SuitabilityReport> suitability_battery_run(const VectorSeries& u,
                                                       const ScalarSeries& p,
                                                       const TensorSeries* F,
                                                       std::uint64_t seed);

}  // namespace wsp
