#include "wsp/operators.hpp"

#include <algorithm>
#include <cmath>

namespace wsp {

namespace {

std::size_t axis_stride(const Grid& g, int axis) {
  std::size_t s = 1;
  for (int a = axis + 1; a < g.dim; ++a) s *= static_cast<std::size_t>(g.points);
  return s;
}

void require_axis(const Grid& g, int axis) {
  if (axis < 0 || axis >= g.dim) throw ParameterError("axis index out of range");
}

// Applies a 1D stencil functor along one axis: op(values, base, stride, k, N).
template <class Op>
ScalarField along_axis(const ScalarField& f, int axis, Op op) {
  const Grid& g = f.grid();
  require_axis(g, axis);
  const std::size_t stride = axis_stride(g, axis);
  const auto n = static_cast<std::size_t>(g.points);
  const auto v = f.values();
  std::vector<double> out(v.size());
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    const std::size_t k = (flat / stride) % n;
    const std::size_t base = flat - k * stride;
    out[flat] = op(v, base, stride, k, n);
  }
  return ScalarField(g, std::move(out), f.time());
}

double first_diff(std::span<const double> v, std::size_t base, std::size_t s, std::size_t k,
                  std::size_t n) {
  auto at = [&](std::size_t m) { return v[base + m * s]; };
  if (k == 0) return -3.0 * at(0) + 4.0 * at(1) - at(2);
  if (k == n - 1) return 3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3);
  return at(k + 1) - at(k - 1);
}

double second_diff(std::span<const double> v, std::size_t base, std::size_t s, std::size_t k,
                   std::size_t n) {
  auto at = [&](std::size_t m) { return v[base + m * s]; };
  if (k == 0) return 2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3);
  if (k == n - 1) return 2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4);
  return at(k + 1) - 2.0 * at(k) + at(k - 1);
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
  const double inv = 1.0 / (2.0 * f.grid().spacing());
  return inv * along_axis(f, axis, first_diff);
}

ScalarField second_partial(const ScalarField& f, int axis) {
  const double h = f.grid().spacing();
  return (1.0 / (h * h)) * along_axis(f, axis, second_diff);
}

ScalarField mixed_partial(const ScalarField& f, int i, int j) {
  if (i == j) return second_partial(f, i);
  return partial(partial(f, j), i);
}

VectorField gradient(const ScalarField& f) {
  std::vector<ScalarField> c;
  for (int a = 0; a < f.grid().dim; ++a) c.push_back(partial(f, a));
  return VectorField(std::move(c));
}

ScalarField divergence(const VectorField& v) {
  ScalarField out = partial(v[0], 0);
  for (int a = 1; a < v.dim(); ++a) out = out + partial(v[a], a);
  return out;
}

VectorField divergence(const TensorField& H) {
  const int d = H.dim();
  std::vector<ScalarField> c;
  for (int j = 0; j < d; ++j) {
    ScalarField s = partial(H(0, j), 0);
    for (int i = 1; i < d; ++i) s = s + partial(H(i, j), i);
    c.push_back(std::move(s));
  }
  return VectorField(std::move(c));
}

std::vector<ScalarField> curl(const VectorField& v) {
  if (v.dim() == 2) return {partial(v[1], 0) - partial(v[0], 1)};
  return {partial(v[2], 1) - partial(v[1], 2), partial(v[0], 2) - partial(v[2], 0),
          partial(v[1], 0) - partial(v[0], 1)};
}

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = second_partial(f, 0);
  for (int a = 1; a < f.grid().dim; ++a) out = out + second_partial(f, a);
  return out;
}

VectorField laplacian(const VectorField& v) {
  std::vector<ScalarField> c;
  for (int a = 0; a < v.dim(); ++a) c.push_back(laplacian(v[a]));
  return VectorField(std::move(c));
}

TensorField jacobian(const VectorField& v) {
  const int d = v.dim();
  std::vector<ScalarField> c;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c.push_back(partial(v[j], i));
  return TensorField(std::move(c), false);
}

namespace {

double weighted_sum(const Grid& g, double p, double gamma,
                    const std::function<double(std::size_t)>& magnitude) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("weighted norm needs p in [1, inf)");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("weighted norm needs gamma >= 0");
  const double hd = g.cell_volume();
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double r = norm(g.node(n), g.dim);
    s += std::pow(magnitude(n), p) * std::pow(1.0 + r, -gamma);
  }
  return std::pow(s * hd, 1.0 / p);
}

}  // namespace

double weighted_lp_norm(const ScalarField& f, double p, double gamma) {
  return weighted_sum(f.grid(), p, gamma, [&](std::size_t n) { return std::abs(f[n]); });
}

double weighted_lp_norm(const VectorField& f, double p, double gamma) {
  return weighted_sum(f.grid(), p, gamma, [&](std::size_t n) { return norm(f.at(n), f.dim()); });
}

double interior_l2(const std::vector<ScalarField>& comps, int ring) {
  const Grid& g = comps.front().grid();
  double s = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!g.is_interior(g.unflatten(n), ring)) continue;
    for (const auto& c : comps) s += c[n] * c[n];
  }
  return std::sqrt(s * g.cell_volume());
}

double interior_l2(const ScalarField& f, int ring) { return interior_l2(std::vector{f}, ring); }
double interior_l2(const VectorField& v, int ring) { return interior_l2(v.components(), ring); }

double interior_max(const ScalarField& f, int ring) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n)
    if (g.is_interior(g.unflatten(n), ring)) m = std::max(m, std::abs(f[n]));
  return m;
}

double interior_max(const VectorField& v, int ring) {
  const Grid& g = v.grid();
  double m = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n)
    if (g.is_interior(g.unflatten(n), ring)) m = std::max(m, norm(v.at(n), v.dim()));
  return m;
}

namespace {

// Fractional node coordinate along an axis, clamped to [0, N-1].
double node_coordinate(const Grid& g, int axis, double x) {
  const double t = (x - g.coord(axis, 0)) / g.spacing();
  return std::clamp(t, 0.0, static_cast<double>(g.points - 1));
}

}  // namespace

double interpolate_linear(const ScalarField& f, const Point& x) {
  const Grid& g = f.grid();
  int base[3] = {0, 0, 0};
  double w[3] = {0.0, 0.0, 0.0};
  for (int a = 0; a < g.dim; ++a) {
    const double t = node_coordinate(g, a, x[a]);
    base[a] = std::min(static_cast<int>(t), g.points - 2);
    w[a] = t - base[a];
  }
  double s = 0.0;
  const int corners = 1 << g.dim;
  for (int c = 0; c < corners; ++c) {
    Index idx{0, 0, 0};
    double wt = 1.0;
    for (int a = 0; a < g.dim; ++a) {
      const int bit = (c >> a) & 1;
      idx[a] = base[a] + bit;
      wt *= bit ? w[a] : 1.0 - w[a];
    }
    if (wt != 0.0) s += wt * f.at(idx);
  }
  return s;
}

double interpolate_cubic(const ScalarField& f, const Point& x) {
  const Grid& g = f.grid();
  int base[3] = {0, 0, 0};
  double w[3][4] = {};
  for (int a = 0; a < g.dim; ++a) {
    const double t = node_coordinate(g, a, x[a]);
    const int b = std::clamp(static_cast<int>(std::floor(t)) - 1, 0, g.points - 4);
    base[a] = b;
    const double s = t - b;
    // Lagrange basis on nodes 0, 1, 2, 3.
    w[a][0] = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    w[a][1] = s * (s - 2.0) * (s - 3.0) / 2.0;
    w[a][2] = -s * (s - 1.0) * (s - 3.0) / 2.0;
    w[a][3] = s * (s - 1.0) * (s - 2.0) / 6.0;
  }
  const int m1 = g.dim >= 2 ? 4 : 1;
  const int m2 = g.dim >= 3 ? 4 : 1;
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < m1; ++b)
      for (int c = 0; c < m2; ++c) {
        double wt = w[0][a] * w[1][b];
        if (g.dim == 3) wt *= w[2][c];
        s += wt * f.at(Index{base[0] + a, base[1] + b, g.dim == 3 ? base[2] + c : 0});
      }
  return s;
}

double interpolate(const ScalarField& f, const Point& x, Interpolation kind) {
  return kind == Interpolation::Cubic ? interpolate_cubic(f, x) : interpolate_linear(f, x);
}

ScalarField poincare_potential(const VectorField& X, int intervals, const ExecPolicy& exec) {
  if (intervals < 2 || intervals % 2 != 0)
    throw ParameterError("Simpson rule needs an even, positive interval count");
  const Grid& g = X.grid();
  for (int a = 0; a < g.dim; ++a)
    if (std::abs(g.origin[a]) >= g.half_width)
      throw ParameterError("poincare_potential needs the origin inside the box");
  const int d = g.dim;
  std::vector<double> q(g.size());
  parallel_for(g.size(), exec, [&](std::size_t n) {
    const Point x = g.node(n);
    double s = 0.0;
    for (int m = 0; m <= intervals; ++m) {
      const double lam = static_cast<double>(m) / intervals;
      const double wt = (m == 0 || m == intervals) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
      Point y{0.0, 0.0, 0.0};
      for (int a = 0; a < d; ++a) y[a] = lam * x[a];
      double dotv = 0.0;
      for (int a = 0; a < d; ++a) dotv += x[a] * interpolate_linear(X[a], y);
      s += wt * dotv;
    }
    q[n] = s / (3.0 * intervals);
  });
  return ScalarField(g, std::move(q), X.time());
}

std::array<double, 3> lagrange_derivative_weights(double t, double a, double b, double c) {
  return {((t - b) + (t - c)) / ((a - b) * (a - c)), ((t - a) + (t - c)) / ((b - a) * (b - c)),
          ((t - a) + (t - b)) / ((c - a) * (c - b))};
}

namespace {

template <class FieldT, class Combine>
TimeSeries<FieldT> time_derivative_impl(const TimeSeries<FieldT>& s, Combine combine) {
  const std::size_t n = s.size();
  if (n < 3) throw StructuralError("time derivative needs at least three frames");
  const auto& t = s.times();
  std::vector<FieldT> out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t c = std::clamp<std::size_t>(k, 1, n - 2);
    const auto w = lagrange_derivative_weights(t[k], t[c - 1], t[c], t[c + 1]);
    out.push_back(combine(w, s[c - 1], s[c], s[c + 1], t[k]));
  }
  return TimeSeries<FieldT>(std::move(out));
}

}  // namespace

ScalarSeries time_derivative(const ScalarSeries& s) {
  return time_derivative_impl(s, [](const std::array<double, 3>& w, const ScalarField& a,
                                    const ScalarField& b, const ScalarField& c, double t) {
    return (w[0] * a + w[1] * b + w[2] * c).with_time(t);
  });
}

VectorSeries time_derivative(const VectorSeries& s) {
  return time_derivative_impl(s, [](const std::array<double, 3>& w, const VectorField& a,
                                    const VectorField& b, const VectorField& c, double t) {
    return (w[0] * a + w[1] * b + w[2] * c).with_time(t);
  });
}

}  // namespace wsp
