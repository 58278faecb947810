#include "wsp/leray.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wsp/operators.hpp"

namespace wsp {

namespace {

void require_aligned(const std::vector<double>& a, const std::vector<double>& b, const char* what) {
  if (a != b) throw StructuralError(std::string(what) + ": frame times differ");
}

// Trapezoid weights in time.
std::vector<double> trapezoid_weights(const std::vector<double>& t) {
  std::vector<double> w(t.size(), 0.0);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double half = 0.5 * (t[k + 1] - t[k]);
    w[k] += half;
    w[k + 1] += half;
  }
  return w;
}

double max_step(const std::vector<double>& t) {
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) m = std::max(m, t[k + 1] - t[k]);
  return m;
}

double node_sum(const ScalarField& f) {
  return deterministic_sum(f.size(), ExecPolicy::serial(), [&](std::size_t n) { return f[n]; }) *
         f.grid().cell_volume();
}

ScalarField dot_fields(const VectorField& a, const VectorField& b) {
  ScalarField s = a[0] * b[0];
  for (int i = 1; i < a.dim(); ++i) s = s + a[i] * b[i];
  return s;
}

// Uniform double in [0, 1) from the top 53 bits, independent of the library's
// distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

HodgeParts leray_project(const TensorField& H, PressureAssembler& assembler) {
  HodgeParts out;
  out.w = divergence(H);
  out.potential = assembler.p_phi(-1.0 * H);
  out.gradient_part = gradient(out.potential);
  out.solenoidal = out.w - out.gradient_part;
  return out;
}

HodgeParts leray_project(const TensorField& H, const PressureOptions& opts) {
  PressureAssembler assembler(H.grid(), opts);
  return leray_project(H, assembler);
}

VectorSeries ns_residual(const VectorSeries& u, const TensorSeries* F, const ScalarSeries& p) {
  require_aligned(u.times(), p.times(), "ns_residual");
  if (F) require_aligned(u.times(), F->times(), "ns_residual");
  require_same_grid(u.grid(), p.grid(), "ns_residual");
  const VectorSeries dudt = time_derivative(u);
  std::vector<VectorField> out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    TensorField H = TensorField::outer(u[k]);
    if (F) H = H - (*F)[k];
    VectorField r = dudt[k] - laplacian(u[k]) + divergence(H) + gradient(p[k]);
    out.push_back(r.with_time(u.times()[k]));
  }
  return VectorSeries(std::move(out));
}

VectorSeries mns_residual(const VectorSeries& u, const TensorSeries* F,
                          const PressureOptions& opts) {
  if (F) require_aligned(u.times(), F->times(), "mns_residual");
  const VectorSeries dudt = time_derivative(u);
  PressureAssembler assembler(u.grid(), opts);
  std::vector<VectorField> out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    TensorField H = TensorField::outer(u[k]);
    if (F) H = H - (*F)[k];
    const HodgeParts parts = leray_project(H, assembler);
    out.push_back((dudt[k] - laplacian(u[k]) + parts.solenoidal).with_time(u.times()[k]));
  }
  return VectorSeries(std::move(out));
}

double TestFunction::space(const Point& x, int d) const {
  Point y{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) y[a] = x[a] - center[a];
  return cutoff_radial(norm(y, d), CutoffSpec{0.5 * radius, radius});
}

double TestFunction::time(double t) const {
  const double s = (t - t_lo) / (t_hi - t_lo);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(4.0 - 1.0 / (s * (1.0 - s)));
}

double TestFunction::time_rate(double t) const {
  const double s = (t - t_lo) / (t_hi - t_lo);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double q = s * (1.0 - s);
  return time(t) * (1.0 - 2.0 * s) / (q * q) / (t_hi - t_lo);
}

SuitabilityReport suitability_residual(const VectorSeries& u, const ScalarSeries& p,
                                       const TensorSeries* F, const ScalarSeries& phi,
                                       const ScalarSeries& phi_t) {
  require_aligned(u.times(), p.times(), "suitability");
  require_aligned(u.times(), phi.times(), "suitability");
  require_aligned(u.times(), phi_t.times(), "suitability");
  if (F) require_aligned(u.times(), F->times(), "suitability");
  const Grid& g = u.grid();
  const int d = g.dim;
  const std::size_t nt = u.size();

  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t n = 0; n < g.size(); ++n) {
      const double v = phi[k][n];
      if (v < 0.0) throw ParameterError("test function is negative");
      if (v != 0.0 && (k == 0 || k + 1 == nt || !g.is_interior(g.unflatten(n), 2)))
        throw ParameterError("test function touches the box boundary or the time ends");
    }

  const std::vector<double> wt = trapezoid_weights(u.times());
  std::vector<ScalarField> energy;
  for (std::size_t k = 0; k < nt; ++k) energy.push_back(0.5 * dot_fields(u[k], u[k]));
  const ScalarSeries dedt = time_derivative(ScalarSeries(energy));

  SuitabilityReport r;
  for (std::size_t k = 0; k < nt; ++k) {
    if (wt[k] == 0.0) continue;
    const VectorField& uk = u[k];
    const ScalarField& e = energy[k];
    const ScalarField& ph = phi[k];
    const VectorField gphi = gradient(ph);
    const TensorField J = jacobian(uk);
    ScalarField grad_sq = ScalarField::zeros(g);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) grad_sq = grad_sq + J(i, j) * J(i, j);
    const ScalarField ep = e + p[k];
    ScalarField uf = ScalarField::zeros(g);
    if (F) uf = dot_fields(uk, divergence((*F)[k]));

    r.energy_rate += wt[k] * node_sum(e * phi_t[k]);
    r.energy_diffusion += wt[k] * node_sum(e * laplacian(ph));
    r.dissipation -= wt[k] * node_sum(grad_sq * ph);
    r.transport += wt[k] * node_sum(ep * dot_fields(uk, gphi));
    r.forcing += wt[k] * node_sum(uf * ph);

    std::vector<ScalarField> flux;
    for (int a = 0; a < d; ++a) flux.push_back(ep * uk[a]);
    // d_t e = Lap e - |grad u|^2 - div((e + p) u) + u . div F - mu.
    const ScalarField strong = -1.0 * dedt[k] + laplacian(e) - grad_sq -
                               divergence(VectorField(std::move(flux))) + uf;
    r.mu_strong += wt[k] * node_sum(strong * ph);
  }
  r.mu_value = r.energy_rate + r.energy_diffusion + r.dissipation + r.transport + r.forcing;
  r.balance_residual = r.mu_value - r.mu_strong;
  r.energy_scale = std::abs(r.energy_rate) + std::abs(r.energy_diffusion) +
                   std::abs(r.dissipation) + std::abs(r.transport) + std::abs(r.forcing);
  const double h = g.spacing();
  const double dt = max_step(u.times());
  r.tolerance = (h * h + dt * dt) * r.energy_scale;
  r.suitable = r.mu_value >= -r.tolerance;
  return r;
}

SuitabilityReport suitability_residual(const VectorSeries& u, const ScalarSeries& p,
                                       const TensorSeries* F, const TestFunction& fn) {
  const Grid& g = u.grid();
  const int d = g.dim;
  if (!(fn.radius > 0.0) || !(fn.t_hi > fn.t_lo))
    throw ParameterError("test function needs a positive radius and time window");
  const double reach = g.half_width - 2.0 * g.spacing();
  for (int a = 0; a < d; ++a)
    if (std::abs(fn.center[a] - g.origin[a]) + fn.radius > reach)
      throw ParameterError("test function " + fn.id + " touches the box boundary");
  if (fn.t_lo < u.times().front() || fn.t_hi > u.times().back())
    throw ParameterError("test function " + fn.id + " leaves the time span");
  const ScalarField shape = ScalarField::sample(g, [&](const Point& x) { return fn.space(x, d); });
  std::vector<ScalarField> phi, phi_t;
  for (double t : u.times()) {
    phi.push_back(fn.time(t) * shape.with_time(t));
    phi_t.push_back(fn.time_rate(t) * shape.with_time(t));
  }
  SuitabilityReport r = suitability_residual(u, p, F, ScalarSeries(phi), ScalarSeries(phi_t));
  r.test_id = fn.id;
  r.center = fn.center;
  r.radius = fn.radius;
  return r;
}

std::vector<TestFunction> suitability_battery(const Grid& g, double t0, double t1,
                                              std::uint64_t seed) {
  const double L = g.half_width;
  const double span = t1 - t0;
  const double a = 0.3 * L;
  const Point offsets[5] = {{0, 0, 0}, {a, 0, 0}, {-a, 0, 0}, {0, a, 0}, {0, -a, 0}};
  std::vector<TestFunction> out;
  for (int s = 0; s < 3; ++s)
    for (int c = 0; c < 5; ++c) {
      TestFunction f;
      f.id = "grid-" + std::to_string(s) + "-" + std::to_string(c);
      for (int k = 0; k < 3; ++k) f.center[k] = g.origin[k] + offsets[c][k];
      f.radius = (0.25 + 0.15 * s) * L;
      f.t_lo = t0 + 0.05 * span;
      f.t_hi = t1 - 0.05 * span;
      out.push_back(f);
    }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 13; ++k) {
    TestFunction f;
    f.id = "random-" + std::to_string(k);
    for (int c = 0; c < g.dim; ++c) f.center[c] = g.origin[c] + (2.0 * unit(rng) - 1.0) * a;
    f.radius = (0.2 + 0.35 * unit(rng)) * L;
    f.t_lo = t0 + (0.05 + 0.25 * unit(rng)) * span;
    f.t_hi = t0 + (0.7 + 0.25 * unit(rng)) * span;
    out.push_back(f);
  }
  return out;
}

std::vector<SuitabilityReport> suitability_battery_run(const VectorSeries& u,
                                                       const ScalarSeries& p,
                                                       const TensorSeries* F,
                                                       std::uint64_t seed) {
  std::vector<SuitabilityReport> out;
  for (const TestFunction& f : suitability_battery(u.grid(), u.times().front(), u.times().back(), seed))
    out.push_back(suitability_residual(u, p, F, f));
  return out;
}

}  // namespace wsp
