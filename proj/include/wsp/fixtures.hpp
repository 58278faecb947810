#pragma once

#include <cmath>
#include <vector>

#include "wsp/field.hpp"

namespace wsp::fixtures {

/// Gaussian g(x) = amp * exp(-|x|^2 / (4 s)) and its derivatives.
struct Gaussian {
  double amp = 1.0;
  double s = 1.0;
  int dim = 2;

  double value(const Point& x) const;
  double d1(const Point& x, int i) const;
  double d2(const Point& x, int i, int j) const;
  double d3(const Point& x, int k, int i, int j) const;
  double laplacian(const Point& x) const;
  double d_laplacian(const Point& x, int k) const;
};

/// Exact 2D Navier-Stokes solution with F = 0: psi = (A/s) exp(-r^2/4s),
/// s = t + s0, u = (d2 psi, -d1 psi), p = -A^2 exp(-r^2/2s) / (4 s^3).
struct HeatVortex {
  double amp = 1.0;
  double s0 = 1.0;

  Point velocity(const Point& x, double t) const;
  double pressure(const Point& x, double t) const;
  Point pressure_gradient(const Point& x, double t) const;
  Point time_derivative(const Point& x, double t) const;

  VectorField sample_velocity(const Grid& g, double t, const ExecPolicy& exec = {}) const;
  ScalarField sample_pressure(const Grid& g, double t, const ExecPolicy& exec = {}) const;
  VectorField sample_pressure_gradient(const Grid& g, double t, const ExecPolicy& exec = {}) const;
};

/// Forced manufactured solution in 2D or 3D. u = a(t) (d2 psi, -d1 psi[, 0])
/// with psi a Gaussian, a(t) = 1 + t/2. With V_21 = a psi = -V_12 (div V = u)
/// the forcing F = u (x) u - (grad u + grad u^T - d_t V + q I) makes the
/// residual vanish identically with exact pressure p = -q.
struct ForcedSolution {
  int dim = 3;
  Gaussian psi{1.0, 1.0, 3};
  Gaussian q{0.5, 0.75, 3};

  double a(double t) const { return 1.0 + 0.5 * t; }
  double da(double) const { return 0.5; }

  Point velocity(const Point& x, double t) const;
  /// grad u, component (i, j) = d_i u_j.
  void velocity_gradient(const Point& x, double t, double* out) const;
  double pressure(const Point& x, double) const { return -q.value(x); }
  /// h = u (x) u - F, row-major d x d.
  void source(const Point& x, double t, double* out) const;
  void forcing(const Point& x, double t, double* out) const;

  VectorField sample_velocity(const Grid& g, double t, const ExecPolicy& exec = {}) const;
  TensorField sample_forcing(const Grid& g, double t, const ExecPolicy& exec = {}) const;
  ScalarField sample_pressure(const Grid& g, double t, const ExecPolicy& exec = {}) const;
};

ForcedSolution forced_solution(int dim);

/// The heat vortex seen from a frame moving with drift g(t) = (sin t, 0):
/// u(t, x) = v(t, x + E(t)) - g(t), E(t) = (1 - cos t, 0), with source
/// S = grad p_v(t, x + E) + g'(t).
struct DriftedVortex {
  HeatVortex v{};

  static Point drift(double t) { return {std::sin(t), 0.0, 0.0}; }
  static Point drift_rate(double t) { return {std::cos(t), 0.0, 0.0}; }
  static Point displacement(double t) { return {1.0 - std::cos(t), 0.0, 0.0}; }

  VectorField sample_velocity(const Grid& g, double t, const ExecPolicy& exec = {}) const;
  VectorField sample_source(const Grid& g, double t, const ExecPolicy& exec = {}) const;
};

/// h_ij = M_ij b(x) with b(x) = exp(-1 / (1 - |x|^2/rho^2)) inside |x| < rho.
TensorField compact_bump(const Grid& g, double rho);

/// Trace-free symmetric H whose divergence w = (-d2 Lap psi, d1 Lap psi) is
/// solenoidal (2D).
TensorField solenoidal_stress(const Grid& g, const Gaussian& psi);
VectorField solenoidal_stress_divergence(const Grid& g, const Gaussian& psi);
/// H_ij = d_i d_j chi, whose divergence grad Lap chi is a gradient.
TensorField gradient_stress(const Grid& g, const Gaussian& chi);
VectorField gradient_stress_divergence(const Grid& g, const Gaussian& chi);

/// Uniform frame times t0, t0 + dt, ..., count frames.
std::vector<double> uniform_times(double t0, double dt, int count);

}  // namespace wsp::fixtures
