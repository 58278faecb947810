#include "wsp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wsp/operators.hpp"

namespace wsp {

namespace {

// Nodes sorted by distance to the origin with running sums of |f|^p h^d
// (inner) and |f|^p w_delta h^d (outer, from the far end).
struct RadialProfile {
  std::vector<double> radius;
  std::vector<double> inner;  // inner[k] = sum over the first k nodes
  std::vector<double> outer;  // outer[k] = weighted sum over nodes k..end

  RadialProfile(const ScalarField& f, double p, double delta) {
    const Grid& g = f.grid();
    std::vector<std::pair<double, std::size_t>> order(g.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
      const Point x = g.node(g.unflatten(n));
      order[n] = {norm(x, g.dim), n};
    }
    std::sort(order.begin(), order.end());
    const double cell = g.cell_volume();
    radius.resize(order.size());
    inner.assign(order.size() + 1, 0.0);
    outer.assign(order.size() + 1, 0.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      radius[k] = order[k].first;
      inner[k + 1] = inner[k] + std::pow(std::abs(f[order[k].second]), p) * cell;
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      const double w = std::pow(1.0 + radius[k], -delta);
      outer[k] = outer[k + 1] + std::pow(std::abs(f[order[k].second]), p) * w * cell;
    }
  }

  // Number of nodes with |x| <= R.
  std::size_t count(double R) const {
    const double tol = 1e-12 * std::max(1.0, R);
    return static_cast<std::size_t>(std::upper_bound(radius.begin(), radius.end(), R + tol) -
                                    radius.begin());
  }
};

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must be >= 1");
}

double sphere_area(double R, int d) {
  return d == 2 ? 2.0 * std::numbers::pi * R : 4.0 * std::numbers::pi * R * R;
}

}  // namespace

NormReport b_norm(const ScalarField& f, double p, double gamma) {
  check_p(p);
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be >= 0");
  const Grid& g = f.grid();
  const double L = g.half_width;
  if (L < 1.0) throw ParameterError("b_norm needs L >= 1: the sup over [1, L] is empty");
  const RadialProfile prof(f, p, 0.0);

  std::vector<double> radii{1.0};
  for (double r : prof.radius)
    if (r > 1.0 && r <= std::min(4.0, L) && r != radii.back()) radii.push_back(r);
  for (double r = 4.0; r <= L + 1e-12; r += 0.125) radii.push_back(std::min(r, L));
  radii.push_back(L);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  auto level = [&](double R) { return std::pow(R, -gamma) * prof.inner[prof.count(R)]; };
  NormReport rep;
  rep.p = p;
  rep.gamma = gamma;
  rep.lp_wgamma = weighted_lp_norm(f, p, gamma);
  rep.radius_count = radii.size();
  double best = -1.0;
  for (double R : radii) {
    const double v = level(R);
    if (v > best) {
      best = v;
      rep.sup_radius = R;
    }
  }
  rep.b_norm = std::pow(std::max(best, 0.0), 1.0 / p);
  rep.boundary_error =
      sphere_area(rep.sup_radius, g.dim) * 0.5 * g.spacing() * std::pow(f.max_abs(), p);
  const double a = level(std::max(1.0, L / 4)), b = level(std::max(1.0, L / 2)), c = level(L);
  rep.decay_flag = c <= b && b <= a && c < a;
  return rep;
}

double dyadic_shell_constant(double p, double gamma, double delta) {
  if (!(delta > gamma)) throw ParameterError("need delta > gamma");
  return std::pow(1.0 + std::pow(2.0, delta) / (std::pow(2.0, delta - gamma) - 1.0), 1.0 / p);
}

EmbeddingRatios embedding_constants(const ScalarField& f, double p, double gamma, double delta,
                                    double slack) {
  check_p(p);
  if (!(delta > gamma) || !(gamma >= 0.0)) throw ParameterError("need delta > gamma >= 0");
  EmbeddingRatios r;
  const double b = b_norm(f, p, gamma).b_norm;
  const double wg = weighted_lp_norm(f, p, gamma);
  const double wd = weighted_lp_norm(f, p, delta);
  r.bound1 = std::pow(2.0, gamma / p);
  r.bound2 = dyadic_shell_constant(p, gamma, delta);
  if (wg == 0.0 || b == 0.0) {
    r.undefined = true;
    return r;
  }
  r.r1 = b / wg;
  r.r2 = wd / b;
  r.r1_ok = r.r1 <= r.bound1 * (1.0 + slack);
  r.r2_ok = r.r2 <= r.bound2 * (1.0 + slack);
  return r;
}

InterpolationSplit interpolation_split(const ScalarField& f, double A, double p, double gamma,
                                       double delta) {
  check_p(p);
  if (!(A > 0.0)) throw ParameterError("A must be positive");
  if (!(delta > gamma) || !(gamma > 0.0)) throw ParameterError("need delta > gamma > 0");
  const Grid& g = f.grid();
  InterpolationSplit s;
  s.A = A;
  s.R = A > 1.0 ? std::pow(A, p / delta) : 0.0;
  std::vector<double> v0(g.size(), 0.0), v1(g.size(), 0.0);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const bool in = A > 1.0 && norm(g.node(g.unflatten(n)), g.dim) <= s.R;
    (in ? v0 : v1)[n] = f[n];
  }
  s.f0 = ScalarField(g, std::move(v0), f.time());
  s.f1 = ScalarField(g, std::move(v1), f.time());
  s.norm_f0 = weighted_lp_norm(s.f0, p, 0.0);
  s.norm_f1 = weighted_lp_norm(s.f1, p, delta);
  s.b_norm = b_norm(f, p, gamma).b_norm;
  if (s.b_norm == 0.0) {
    s.undefined = true;
    return s;
  }
  s.ratio0 = s.norm_f0 / (std::pow(A, gamma / delta) * s.b_norm);
  s.ratio1 = s.norm_f1 / (std::pow(A, gamma / delta - 1.0) * s.b_norm);
  return s;
}

double k_functional(const ScalarField& f, double A, double p, double gamma, double delta,
                    int n_candidates) {
  check_p(p);
  if (!(A > 0.0)) throw ParameterError("A must be positive");
  if (!(delta > gamma) || !(gamma > 0.0)) throw ParameterError("need delta > gamma > 0");
  const RadialProfile prof(f, p, delta);
  const std::size_t n = prof.radius.size();
  auto cost = [&](std::size_t k) {
    return std::pow(prof.inner[k], 1.0 / p) + A * std::pow(prof.outer[k], 1.0 / p);
  };
  double best = cost(0);
  if (n_candidates <= 0) {
    for (std::size_t k = 1; k <= n; ++k)
      if (k == n || prof.radius[k] != prof.radius[k - 1]) best = std::min(best, cost(k));
    return best;
  }
  const Grid& g = f.grid();
  const double r_lo = g.spacing(), r_hi = std::sqrt(g.dim) * g.half_width;
  for (int c = 0; c < n_candidates; ++c) {
    const double t = n_candidates == 1 ? 0.0 : static_cast<double>(c) / (n_candidates - 1);
    best = std::min(best, cost(prof.count(r_lo * std::pow(r_hi / r_lo, t))));
  }
  if (A > 1.0) best = std::min(best, cost(prof.count(std::pow(A, p / delta))));
  return best;
}

}  // namespace wsp
