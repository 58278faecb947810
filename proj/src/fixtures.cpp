#include "wsp/fixtures.hpp"

#include <cmath>

namespace wsp::fixtures {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

double Gaussian::value(const Point& x) const {
  return amp * std::exp(-dot(x, x, dim) / (4.0 * s));
}

double Gaussian::d1(const Point& x, int i) const { return -x[i] / (2.0 * s) * value(x); }

double Gaussian::d2(const Point& x, int i, int j) const {
  return (x[i] * x[j] / (4.0 * s * s) - delta(i, j) / (2.0 * s)) * value(x);
}

double Gaussian::d3(const Point& x, int k, int i, int j) const {
  return ((delta(i, k) * x[j] + delta(j, k) * x[i] + delta(i, j) * x[k]) / (4.0 * s * s) -
          x[i] * x[j] * x[k] / (8.0 * s * s * s)) *
         value(x);
}

double Gaussian::laplacian(const Point& x) const {
  const double r2 = dot(x, x, dim);
  return (r2 / (4.0 * s * s) - dim / (2.0 * s)) * value(x);
}

double Gaussian::d_laplacian(const Point& x, int k) const {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) acc += d3(x, k, i, i);
  return acc;
}

Point HeatVortex::velocity(const Point& x, double t) const {
  const Gaussian psi{amp / (t + s0), t + s0, 2};
  return {psi.d1(x, 1), -psi.d1(x, 0), 0.0};
}

double HeatVortex::pressure(const Point& x, double t) const {
  const double s = t + s0;
  return -amp * amp * std::exp(-dot(x, x, 2) / (2.0 * s)) / (4.0 * s * s * s);
}

Point HeatVortex::pressure_gradient(const Point& x, double t) const {
  const double s = t + s0;
  const double p = pressure(x, t);
  return {-x[0] / s * p, -x[1] / s * p, 0.0};
}

Point HeatVortex::time_derivative(const Point& x, double t) const {
  // psi solves the heat equation, so d_t u = Lap u = (d2 Lap psi, -d1 Lap psi).
  const Gaussian psi{amp / (t + s0), t + s0, 2};
  return {psi.d_laplacian(x, 1), -psi.d_laplacian(x, 0), 0.0};
}

VectorField HeatVortex::sample_velocity(const Grid& g, double t, const ExecPolicy& exec) const {
  return VectorField::sample(g, [&](const Point& x) { return velocity(x, t); }, t, exec);
}

ScalarField HeatVortex::sample_pressure(const Grid& g, double t, const ExecPolicy& exec) const {
  return ScalarField::sample(g, [&](const Point& x) { return pressure(x, t); }, t, exec);
}

VectorField HeatVortex::sample_pressure_gradient(const Grid& g, double t,
                                                 const ExecPolicy& exec) const {
  return VectorField::sample(g, [&](const Point& x) { return pressure_gradient(x, t); }, t, exec);
}

ForcedSolution forced_solution(int dim) {
  ForcedSolution f;
  f.dim = dim;
  f.psi = Gaussian{1.0, 1.0, dim};
  f.q = Gaussian{0.5, 0.75, dim};
  return f;
}

Point ForcedSolution::velocity(const Point& x, double t) const {
  return {a(t) * psi.d1(x, 1), -a(t) * psi.d1(x, 0), 0.0};
}

void ForcedSolution::velocity_gradient(const Point& x, double t, double* out) const {
  const int d = dim;
  for (int i = 0; i < d * d; ++i) out[i] = 0.0;
  for (int i = 0; i < d; ++i) {
    out[i * d + 0] = a(t) * psi.d2(x, i, 1);
    out[i * d + 1] = -a(t) * psi.d2(x, i, 0);
  }
}

void ForcedSolution::source(const Point& x, double t, double* out) const {
  const int d = dim;
  double gu[9];
  velocity_gradient(x, t, gu);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i * d + j] = gu[i * d + j] + gu[j * d + i];
  // d_t V with V_21 = a psi, V_12 = -a psi.
  const double dv = da(t) * psi.value(x);
  out[1 * d + 0] -= dv;
  out[0 * d + 1] += dv;
  const double qv = q.value(x);
  for (int i = 0; i < d; ++i) out[i * d + i] += qv;
}

void ForcedSolution::forcing(const Point& x, double t, double* out) const {
  const int d = dim;
  double h[9];
  source(x, t, h);
  const Point u = velocity(x, t);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out[i * d + j] = u[i] * u[j] - h[i * d + j];
}

VectorField ForcedSolution::sample_velocity(const Grid& g, double t, const ExecPolicy& exec) const {
  return VectorField::sample(g, [&](const Point& x) { return velocity(x, t); }, t, exec);
}

TensorField ForcedSolution::sample_forcing(const Grid& g, double t, const ExecPolicy& exec) const {
  return TensorField::sample(
      g, [&](const Point& x, double* out) { forcing(x, t, out); }, t, false, exec);
}

ScalarField ForcedSolution::sample_pressure(const Grid& g, double t, const ExecPolicy& exec) const {
  return ScalarField::sample(g, [&](const Point& x) { return pressure(x, t); }, t, exec);
}

VectorField DriftedVortex::sample_velocity(const Grid& g, double t, const ExecPolicy& exec) const {
  const Point e = displacement(t);
  const Point gv = drift(t);
  return VectorField::sample(
      g,
      [&](const Point& x) {
        const Point vv = v.velocity({x[0] + e[0], x[1] + e[1], 0.0}, t);
        return Point{vv[0] - gv[0], vv[1] - gv[1], 0.0};
      },
      t, exec);
}

VectorField DriftedVortex::sample_source(const Grid& g, double t, const ExecPolicy& exec) const {
  const Point e = displacement(t);
  const Point dg = drift_rate(t);
  return VectorField::sample(
      g,
      [&](const Point& x) {
        const Point gp = v.pressure_gradient({x[0] + e[0], x[1] + e[1], 0.0}, t);
        return Point{gp[0] + dg[0], gp[1] + dg[1], 0.0};
      },
      t, exec);
}

TensorField compact_bump(const Grid& g, double rho) {
  const int d = g.dim;
  // Symmetric, nonzero trace and off-diagonal entries.
  const double m3[9] = {1.0, 0.4, -0.3, 0.4, -0.5, 0.2, -0.3, 0.2, 0.8};
  const double m2[4] = {1.0, 0.4, 0.4, -0.5};
  const double* m = d == 3 ? m3 : m2;
  return TensorField::sample(
      g,
      [&](const Point& x, double* out) {
        const double r2 = dot(x, x, d) / (rho * rho);
        const double b = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        for (int c = 0; c < d * d; ++c) out[c] = m[c] * b;
      },
      0.0, true);
}

TensorField solenoidal_stress(const Grid& g, const Gaussian& psi) {
  return TensorField::sample(
      g,
      [&](const Point& x, double* out) {
        const double a = -2.0 * psi.d2(x, 0, 1);
        const double b = psi.d2(x, 0, 0) - psi.d2(x, 1, 1);
        out[0] = a;
        out[1] = b;
        out[2] = b;
        out[3] = -a;
      },
      0.0, true);
}

VectorField solenoidal_stress_divergence(const Grid& g, const Gaussian& psi) {
  return VectorField::sample(
      g, [&](const Point& x) { return Point{-psi.d_laplacian(x, 1), psi.d_laplacian(x, 0), 0.0}; });
}

TensorField gradient_stress(const Grid& g, const Gaussian& chi) {
  const int d = g.dim;
  return TensorField::sample(
      g,
      [&](const Point& x, double* out) {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) out[i * d + j] = chi.d2(x, i, j);
      },
      0.0, true);
}

VectorField gradient_stress_divergence(const Grid& g, const Gaussian& chi) {
  return VectorField::sample(g, [&](const Point& x) {
    Point w{0.0, 0.0, 0.0};
    for (int k = 0; k < g.dim; ++k) w[k] = chi.d_laplacian(x, k);
    return w;
  });
}

std::vector<double> uniform_times(double t0, double dt, int count) {
  std::vector<double> t;
  for (int k = 0; k < count; ++k) t.push_back(t0 + k * dt);
  return t;
}

}  // namespace wsp::fixtures
