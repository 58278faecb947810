#include "wsp/pressure.hpp"

#include <algorithm>
#include <cmath>

#include "wsp/operators.hpp"

namespace wsp {

namespace {

void require_resolution(const Grid& g, const CutoffSpec& spec) {
  spec.validate();
  if (g.spacing() > 0.25 * spec.r0 * (1.0 + 1e-12))
    throw ResolutionError("grid spacing " + std::to_string(g.spacing()) +
                          " does not resolve the cutoff (need h <= r0/4 = " +
                          std::to_string(0.25 * spec.r0) + ")");
}

LatticeConvolver::Sampler full_kernel(int i, int j, int d) {
  return [=](const Point& x) { return norm(x, d) == 0.0 ? 0.0 : hessian_green(x, i, j, d); };
}

ScalarField from_values(const Grid& g, std::vector<double> v, double time) {
  return ScalarField(g, std::move(v), time);
}

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  std::sort(v.begin(), v.end());
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TensorField source_tensor(const VectorField& u, const TensorField* F) {
  TensorField uu = TensorField::outer(u);
  if (F == nullptr) return uu;
  require_same_grid(u.grid(), F->grid(), "source tensor");
  return uu - F->with_time(u.time());
}

double near_stencil_sum(const Grid& g, int i, int j, const CutoffSpec& spec) {
  const int d = g.dim;
  const double h = g.spacing();
  const int reach = static_cast<int>(std::ceil(spec.r1 / h));
  double s = 0.0;
  for (int a = -reach; a <= reach; ++a)
    for (int b = -reach; b <= reach; ++b)
      for (int c = (d == 3 ? -reach : 0); c <= (d == 3 ? reach : 0); ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Point y{a * h, b * h, c * h};
        s += near_kernel(y, i, j, spec, d);
      }
  return s * g.cell_volume();
}

ScalarField near_field_conv(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                            ConvolutionMethod method, const ExecPolicy& exec) {
  const Grid& g = h.grid();
  require_resolution(g, spec);
  const int d = g.dim;
  LatticeConvolver conv(g, method, exec);
  conv.add(-1,
           [&](const Point& x) {
             return norm(x, d) == 0.0 ? 0.0 : near_kernel(x, i, j, spec, d);
           },
           h.values());
  std::vector<double> v = conv.take();
  const double hd = g.cell_volume();
  const double s = near_stencil_sum(g, i, j, spec);
  const double dirac = i == j ? 1.0 / d : 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = v[n] * hd - (s + dirac) * h[n];
  return from_values(g, std::move(v), h.time());
}

double far_origin_constant(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                           const ExecPolicy& exec) {
  const Grid& g = h.grid();
  const int d = g.dim;
  const double sum = deterministic_sum(g.size(), exec, [&](std::size_t n) {
    if (h[n] == 0.0) return 0.0;
    Point y = g.node(n);
    for (int a = 0; a < d; ++a) y[a] = -y[a];
    return far_kernel(y, i, j, spec, d) * h[n];
  });
  return sum * g.cell_volume();
}

namespace {

std::vector<double> far_plain_values(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                                     ConvolutionMethod method, const ExecPolicy& exec) {
  const Grid& g = h.grid();
  const int d = g.dim;
  LatticeConvolver conv(g, method, exec);
  conv.add(-1, [&](const Point& x) { return far_kernel(x, i, j, spec, d); }, h.values());
  std::vector<double> v = conv.take();
  for (double& x : v) x *= g.cell_volume();
  return v;
}

}  // namespace

ScalarField far_field_corrected(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                                ConvolutionMethod method, const ExecPolicy& exec) {
  spec.validate();
  const Grid& g = h.grid();
  std::vector<double> v = far_plain_values(h, i, j, spec, method, exec);
  const auto z = g.zero_node();
  const double c = z ? v[*z] : far_origin_constant(h, i, j, spec, exec);
  for (double& x : v) x -= c;
  if (z) v[*z] = 0.0;
  return from_values(g, std::move(v), h.time());
}

PlainFarField far_field_plain(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                              DecayClass decay, ConvolutionMethod method,
                              const ExecPolicy& exec) {
  spec.validate();
  const Grid& g = h.grid();
  PlainFarField out;
  out.field = from_values(g, far_plain_values(h, i, j, spec, method, exec), h.time());
  out.regime_warning = decay == DecayClass::WdPlusOne;
  out.tail.quantity = "far_field_plain";
  out.tail.constant = hessian_decay_constant(g.dim);
  out.tail.data_norm = weighted_lp_norm(h, 1.0, decay == DecayClass::Wd ? g.dim : g.dim + 1);
  out.tail.exponent = decay == DecayClass::Wd ? 1.0 : 0.0;
  out.tail.bound = out.tail.constant * out.tail.data_norm *
                   std::pow(g.half_width, -out.tail.exponent);
  return out;
}

std::vector<double> boundary_mean(const TensorField& h_all) {
  const Grid& g = h_all.grid();
  std::vector<double> mean(h_all.components().size(), 0.0);
  std::size_t count = 0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (g.is_interior(g.unflatten(n), 1)) continue;
    ++count;
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += h_all.components()[c][n];
  }
  for (double& m : mean) m /= static_cast<double>(count);
  return mean;
}

PressureAssembler::PressureAssembler(const Grid& grid, PressureOptions opts)
    : grid_(grid), opts_(opts), conv_(grid, opts.method, opts.exec) {
  require_resolution(grid_, opts_.spec);
}

double PressureAssembler::origin_constant(const TensorField& h_all) const {
  const int d = grid_.dim;
  double c = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c += far_origin_constant(h_all(i, j), i, j, opts_.spec, opts_.exec);
  return c;
}

ScalarField PressureAssembler::fused(const TensorField& h_in, bool corrected) {
  require_same_grid(grid_, h_in.grid(), "pressure assembly");
  const int d = grid_.dim;
  TensorField h_all = h_in;
  double far_constant = 0.0;
  if (opts_.constant_closure) {
    const auto mean = boundary_mean(h_in);
    std::vector<ScalarField> shifted;
    for (std::size_t c = 0; c < mean.size(); ++c)
      shifted.push_back(h_in.components()[c] -
                        ScalarField::constant(grid_, mean[c], h_in.time()));
    h_all = TensorField(std::move(shifted), false);
    for (int i = 0; i < d; ++i) far_constant -= mean[static_cast<std::size_t>(i * d + i)] / d;
  }
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      if (i == j) {
        conv_.add(i * 3 + j, full_kernel(i, j, d), h_all(i, j).values());
      } else {
        const ScalarField pair = h_all(i, j) + h_all(j, i);
        conv_.add(i * 3 + j, full_kernel(i, j, d), pair.values());
      }
    }
  std::vector<double> v = conv_.take();
  const double hd = grid_.cell_volume();
  for (double& x : v) x *= hd;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double s = near_stencil_sum(grid_, i, j, opts_.spec) + (i == j ? 1.0 / d : 0.0);
      const ScalarField& hij = h_all(i, j);
      for (std::size_t n = 0; n < v.size(); ++n) v[n] -= s * hij[n];
    }
  if (corrected) far_constant -= origin_constant(h_all);
  for (double& x : v) x += far_constant;
  return from_values(grid_, std::move(v), h_in.time());
}

ScalarField PressureAssembler::p_phi(const TensorField& h_all) { return fused(h_all, true); }
ScalarField PressureAssembler::p_0(const TensorField& h_all) { return fused(h_all, false); }

ScalarField assemble_p_phi(const VectorField& u, const TensorField* F, const PressureOptions& opts) {
  PressureAssembler a(u.grid(), opts);
  return a.p_phi(source_tensor(u, F));
}

ScalarField assemble_p0(const VectorField& u, const TensorField* F, const PressureOptions& opts) {
  PressureAssembler a(u.grid(), opts);
  return a.p_0(source_tensor(u, F));
}

double phi_change_constant(const TensorField& h_all, const CutoffSpec& a, const CutoffSpec& b,
                           const ExecPolicy& exec) {
  a.validate();
  b.validate();
  if (a == b) return 0.0;
  const Grid& g = h_all.grid();
  const int d = g.dim;
  double total = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ScalarField& h = h_all(i, j);
      total += deterministic_sum(g.size(), exec, [&](std::size_t n) {
        if (h[n] == 0.0) return 0.0;
        Point y = g.node(n);
        for (int k = 0; k < d; ++k) y[k] = -y[k];
        return (far_kernel(y, i, j, b, d) - far_kernel(y, i, j, a, d)) * h[n];
      });
    }
  return total * g.cell_volume();
}

double poisson_residual(const ScalarField& p, const TensorField& h_all) {
  require_same_grid(p.grid(), h_all.grid(), "poisson residual");
  const int d = p.grid().dim;
  ScalarField src = ScalarField::zeros(p.grid(), p.time());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) src = src + mixed_partial(h_all(i, j), i, j);
  const ScalarField r = laplacian(p) + src;
  const double scale = interior_l2(src);
  const double num = interior_l2(r);
  return scale > 0.0 ? num / scale : num;
}

std::vector<Point> parabolic_probes(int d) {
  std::vector<Point> dirs;
  const double s2 = 1.0 / std::sqrt(2.0);
  if (d == 2) {
    dirs = {{1, 0, 0}, {0, 1, 0}, {s2, s2, 0}, {s2, -s2, 0}};
  } else {
    const double s3 = 1.0 / std::sqrt(3.0);
    dirs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {s2, s2, 0}, {s2, 0, s2}, {0, s2, s2}, {s3, s3, s3}};
  }
  std::vector<Point> probes{{0.0, 0.0, 0.0}};
  for (int m = -8; m <= 24; ++m) {
    const double r = std::pow(2.0, m / 4.0);
    for (const auto& e : dirs) probes.push_back({r * e[0], r * e[1], r * e[2]});
  }
  return probes;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("slope fit needs two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Point> heat_smoothed_gradient(const TensorField& h_all, double tau,
                                          const std::vector<Point>& probes,
                                          const ExecPolicy& exec) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  const Grid& g = h_all.grid();
  const int d = g.dim;
  std::vector<std::size_t> support;
  for (std::size_t n = 0; n < g.size(); ++n)
    for (const auto& c : h_all.components())
      if (c[n] != 0.0) {
        support.push_back(n);
        break;
      }
  const double hd = g.cell_volume();
  std::vector<Point> out(probes.size(), Point{0.0, 0.0, 0.0});
  parallel_for(probes.size(), exec, [&](std::size_t q) {
    const Point& x = probes[q];
    double v[3] = {0.0, 0.0, 0.0};
    for (std::size_t n : support) {
      const Point y = g.node(n);
      Point z{0.0, 0.0, 0.0};
      for (int a = 0; a < d; ++a) z[a] = x[a] - y[a];
      const double r = norm(z, d);
      if (r == 0.0) continue;
      const auto f = heat_third_factors(r, tau, d);
      // Contraction of (delta_ik z_j + delta_jk z_i + delta_ij z_k) P - z_i z_j z_k Q
      // with h_ij.
      double tr = 0.0, zhz = 0.0;
      double hz[3] = {0.0, 0.0, 0.0}, zh[3] = {0.0, 0.0, 0.0};
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double hij = h_all(i, j)[n];
          if (i == j) tr += hij;
          zhz += z[i] * hij * z[j];
          hz[i] += hij * z[j];
          zh[j] += z[i] * hij;
        }
      for (int k = 0; k < d; ++k) v[k] += (hz[k] + zh[k] + z[k] * tr) * f.P - z[k] * zhz * f.Q;
    }
    for (int k = 0; k < d; ++k) out[q][k] = v[k] * hd;
  });
  return out;
}

HeatDecayReport heat_normalization(const TensorField& h_all, const std::vector<double>& taus,
                                   const std::vector<Point>& probes, const ExecPolicy& exec) {
  if (taus.empty()) throw ParameterError("heat normalization needs at least one tau");
  for (std::size_t k = 0; k < taus.size(); ++k)
    if (!(taus[k] > 0.0) || (k > 0 && !(taus[k] > taus[k - 1])))
      throw ParameterError("taus must be positive and increasing");
  const int d = h_all.dim();
  HeatDecayReport rep;
  rep.taus = taus;
  rep.probe_count = probes.size();
  for (double tau : taus) {
    const std::vector<Point> v = heat_smoothed_gradient(h_all, tau, probes, exec);
    double peak = 0.0, origin = 0.0;
    for (std::size_t q = 0; q < probes.size(); ++q) {
      const double m = norm(v[q], d);
      peak = std::max(peak, m);
      if (norm(probes[q], d) == 0.0) origin = m;
    }
    rep.max_abs.push_back(peak);
    rep.origin_abs.push_back(origin);
  }
  auto positive = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
  };
  if (taus.size() >= 2 && positive(rep.max_abs)) rep.slope = loglog_slope(taus, rep.max_abs);
  if (taus.size() >= 2 && positive(rep.origin_abs))
    rep.origin_slope = loglog_slope(taus, rep.origin_abs);
  return rep;
}

HeatDecayReport heat_normalization(const TensorField& h_all, const std::vector<double>& taus,
                                   const ExecPolicy& exec) {
  return heat_normalization(h_all, taus, parabolic_probes(h_all.grid().dim), exec);
}

std::vector<Point> cumulative_trapezoid(const std::vector<double>& t, const std::vector<Point>& f,
                                        int d) {
  if (t.size() != f.size()) throw StructuralError("trapezoid: times and values differ in length");
  std::vector<Point> out(t.size(), Point{0.0, 0.0, 0.0});
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double dt = t[k] - t[k - 1];
    if (!(dt > 0.0)) throw ParameterError("times must be strictly increasing");
    for (int a = 0; a < d; ++a) out[k][a] = out[k - 1][a] + 0.5 * dt * (f[k][a] + f[k - 1][a]);
  }
  return out;
}

TailReport far_field_tail(const TensorField& h_all) {
  const Grid& g = h_all.grid();
  TailReport t;
  t.quantity = "far_field_corrected";
  t.constant = hessian_decay_constant(g.dim);
  for (const auto& c : h_all.components()) t.data_norm += weighted_lp_norm(c, 1.0, g.dim + 1);
  t.exponent = 1.0;
  t.bound = t.constant * t.data_norm / g.half_width;
  return t;
}

double relative_curl(const VectorField& S) {
  const double c = interior_l2(curl(S));
  const double j = interior_l2(jacobian(S).components());
  return j > 0.0 ? c / j : 0.0;
}

PressureDecomposition decompose_source(const VectorSeries& S, const VectorSeries& u,
                                       const TensorSeries* F, const DecomposeOptions& opts) {
  if (S.size() != u.size()) throw StructuralError("S and u have different frame counts");
  if (F && F->size() != u.size()) throw StructuralError("F and u have different frame counts");
  require_same_grid(S.grid(), u.grid(), "decompose_source");
  const Grid& g = u.grid();
  const int d = g.dim;
  PressureAssembler assembler(g, opts.pressure);
  PressureDecomposition out;
  out.times = S.times();
  for (std::size_t k = 0; k < S.size(); ++k) {
    if (S.times()[k] != u.times()[k]) throw StructuralError("S and u frame times differ");
    const double rc = relative_curl(S[k]);
    out.relative_curl.push_back(rc);
    if (rc > opts.curl_threshold)
      throw NotAGradientError("S is not curl-free at frame " + std::to_string(k) +
                              " (relative curl " + std::to_string(rc) + ")");
    const TensorField h = source_tensor(u[k], F ? &(*F)[k] : nullptr);
    ScalarField p = assembler.p_phi(h);
    VectorField gp = gradient(p);
    const VectorField diff = S[k] - gp;
    Point dg{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
      std::vector<double> vals;
      for (std::size_t n = 0; n < g.size(); ++n)
        if (g.is_interior(g.unflatten(n), 1)) vals.push_back(diff[a][n]);
      dg[a] = median(std::move(vals));
    }
    Point neg{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) neg[a] = -dg[a];
    const double s_norm = interior_l2(S[k]);
    const double disp = interior_l2(add_constant(diff, neg));
    out.dispersion.push_back(s_norm > 0.0 ? disp / s_norm : disp);
    if (out.dispersion.back() > opts.dispersion_threshold)
      out.warnings.push_back("decomposition mismatch at frame " + std::to_string(k) +
                             ": dispersion " + std::to_string(out.dispersion.back()));
    out.tails.push_back(far_field_tail(h));
    out.dg.push_back(dg);
    out.p_phi.push_back(std::move(p));
    out.grad_p.push_back(std::move(gp));
  }
  out.g = cumulative_trapezoid(out.times, out.dg, d);
  out.E = cumulative_trapezoid(out.times, out.g, d);
  return out;
}

}  // namespace wsp
