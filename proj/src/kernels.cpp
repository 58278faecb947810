#include "wsp/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "wsp/field_io.hpp"

namespace wsp {

namespace {

constexpr double kPi = std::numbers::pi;

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

void require_dim(int d) {
  if (d != 2 && d != 3) throw ParameterError("dimension must be 2 or 3");
}

void require_index(int a, int d) {
  if (a < 0 || a >= d) throw ParameterError("kernel index out of range");
}

double radius_or_throw(const Point& x, int d, const char* what) {
  require_dim(d);
  const double r = norm(x, d);
  if (r == 0.0) throw SingularityError(std::string(what) + " is singular at the origin");
  return r;
}

double smooth_step_b(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

CutoffSpec CutoffSpec::make(double r0, double r1) {
  CutoffSpec s{r0, r1};
  s.validate();
  return s;
}

void CutoffSpec::validate() const {
  if (!(r0 > 0.0) || !(r1 > r0) || !std::isfinite(r1))
    throw ParameterError("cutoff needs 0 < r0 < r1");
}

double green_function(const Point& x, int d) {
  const double r = radius_or_throw(x, d, "green_function");
  if (d == 2) return -std::log(r) / (2.0 * kPi);
  return 1.0 / (4.0 * kPi * r);
}

double hessian_green(const Point& x, int i, int j, int d) {
  const double r = radius_or_throw(x, d, "hessian_green");
  require_index(i, d);
  require_index(j, d);
  const double r2 = r * r;
  const double xx = x[i] * x[j];  // formed first so that (i, j) and (j, i) agree bitwise
  if (d == 2) return (2.0 * xx - delta(i, j) * r2) / (2.0 * kPi * r2 * r2);
  return (3.0 * xx - delta(i, j) * r2) / (4.0 * kPi * r2 * r2 * r);
}

double third_green(const Point& x, int k, int i, int j, int d) {
  const double r = radius_or_throw(x, d, "third_green");
  require_index(i, d);
  require_index(j, d);
  require_index(k, d);
  const double r2 = r * r;
  const double lin = delta(i, k) * x[j] + delta(j, k) * x[i];
  if (d == 2) {
    const double r4 = r2 * r2;
    return (2.0 * lin - 2.0 * delta(i, j) * x[k]) / (2.0 * kPi * r4) -
           4.0 * x[k] * (2.0 * x[i] * x[j] - delta(i, j) * r2) / (2.0 * kPi * r4 * r2);
  }
  const double r5 = r2 * r2 * r;
  return (3.0 * lin - 2.0 * delta(i, j) * x[k]) / (4.0 * kPi * r5) -
         5.0 * x[k] * (3.0 * x[i] * x[j] - delta(i, j) * r2) / (4.0 * kPi * r5 * r2);
}

double cutoff_radial(double r, const CutoffSpec& spec) {
  if (r <= spec.r0) return 1.0;
  if (r >= spec.r1) return 0.0;
  const double s = (spec.r1 - r) / (spec.r1 - spec.r0);
  const double a = smooth_step_b(s);
  const double b = smooth_step_b(1.0 - s);
  return a / (a + b);
}

double cutoff(const Point& x, const CutoffSpec& spec, int d) {
  return cutoff_radial(norm(x, d), spec);
}

double far_kernel(const Point& x, int i, int j, const CutoffSpec& spec, int d) {
  require_dim(d);
  const double r = norm(x, d);
  if (r <= spec.r0) return 0.0;
  return (1.0 - cutoff_radial(r, spec)) * hessian_green(x, i, j, d);
}

double near_kernel(const Point& x, int i, int j, const CutoffSpec& spec, int d) {
  require_dim(d);
  const double r = norm(x, d);
  if (r >= spec.r1) return 0.0;
  return cutoff_radial(r, spec) * hessian_green(x, i, j, d);
}

double heat_kernel(const Point& x, double t, int d) {
  require_dim(d);
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("heat kernel needs t > 0");
  const double r2 = dot(x, x, d);
  return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r2 / (4.0 * t));
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw ParameterError("Gauss rule needs at least one node");
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  // P_n and its derivative at z.
  auto legendre = [n](double z) {
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    return std::pair{p1, n * (z * p1 - p0) / (z * z - 1.0)};
  };
  for (int m = 0; m < (n + 1) / 2; ++m) {
    double z = std::cos(kPi * (m + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre(z).second;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(m);
    const auto hi = static_cast<std::size_t>(n - 1 - m);
    rule.x[lo] = -z;
    rule.x[hi] = z;
    rule.w[lo] = w;
    rule.w[hi] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

// int_0^1 sigma^e0 exp(-a sigma) and the same with e0 + 1, on the panels
// [2^-(m+1), 2^-m] (m < levels) plus [0, 2^-levels], each split `split` times.
std::pair<double, double> sigma_moments(double a, double e0, int levels, int split) {
  const GaussRule& g = gauss_legendre(64);
  double m0 = 0.0, m1 = 0.0;
  auto panel = [&](double lo, double hi) {
    const double width = (hi - lo) / split;
    for (int s = 0; s < split; ++s) {
      const double a0 = lo + s * width;
      const double half = 0.5 * width;
      const double mid = a0 + half;
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        const double sg = mid + half * g.x[q];
        const double f = std::pow(sg, e0) * std::exp(-a * sg) * g.w[q] * half;
        m0 += f;
        m1 += f * sg;
      }
    }
  };
  double hi = 1.0;
  for (int m = 0; m < levels; ++m) {
    panel(0.5 * hi, hi);
    hi *= 0.5;
  }
  panel(0.0, hi);
  return {m0, m1};
}

}  // namespace

HeatThirdFactors heat_third_factors(double r, double tau, int d) {
  require_dim(d);
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("heat smoothing needs tau > 0");
  const double a = r * r / (4.0 * tau);
  const double e0 = 0.5 * d;
  const int levels = 12 + static_cast<int>(std::ceil(std::log2(std::max(a, 1.0))));
  auto prev = sigma_moments(a, e0, levels, 1);
  for (int split = 2; split <= 16; split *= 2) {
    const auto next = sigma_moments(a, e0, levels, split);
    const double c0 = std::abs(next.first - prev.first);
    const double c1 = std::abs(next.second - prev.second);
    prev = next;
    if (c0 <= 1e-8 * std::abs(next.first) && c1 <= 1e-8 * std::abs(next.second)) break;
  }
  const double pre = std::pow(4.0 * kPi * tau, -0.5 * d);
  return {pre * prev.first / (4.0 * tau), pre * prev.second / (8.0 * tau * tau)};
}

double heat_smoothed_third_kernel(const Point& x, double tau, int k, int i, int j, int d) {
  require_index(i, d);
  require_index(j, d);
  require_index(k, d);
  const auto f = heat_third_factors(norm(x, d), tau, d);
  return (delta(i, k) * x[j] + delta(j, k) * x[i] + delta(i, j) * x[k]) * f.P -
         x[i] * x[j] * x[k] * f.Q;
}

void heat_smoothed_third_tensor(const Point& x, double tau, int d, double* out) {
  const auto f = heat_third_factors(norm(x, d), tau, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out[(k * d + i) * d + j] =
            (delta(i, k) * x[j] + delta(j, k) * x[i] + delta(i, j) * x[k]) * f.P -
            x[i] * x[j] * x[k] * f.Q;
}

std::string kernel_name(KernelId id) {
  switch (id) {
    case KernelId::Hessian: return "hessian";
    case KernelId::Near: return "near";
    case KernelId::Far: return "far";
    case KernelId::HeatThird: return "heat_third";
  }
  return "unknown";
}

KernelTable make_kernel_table(const Grid& grid, KernelId id, int i, int j, int k,
                              const CutoffSpec& spec, double tau, const ExecPolicy& exec) {
  grid.validate();
  spec.validate();
  const int d = grid.dim;
  require_index(i, d);
  require_index(j, d);
  if (id == KernelId::HeatThird) require_index(k, d);
  KernelTable t;
  t.id = id;
  t.i = i;
  t.j = j;
  t.k = id == KernelId::HeatThird ? k : 0;
  t.spec = spec;
  t.tau = tau;
  const bool singular = id == KernelId::Hessian || id == KernelId::Near;
  if (singular) t.singular_node = grid.zero_node();
  t.values = ScalarField::sample(
      grid,
      [&](const Point& x) {
        if (singular && norm(x, d) == 0.0) return 0.0;
        switch (id) {
          case KernelId::Hessian: return hessian_green(x, i, j, d);
          case KernelId::Near: return near_kernel(x, i, j, spec, d);
          case KernelId::Far: return far_kernel(x, i, j, spec, d);
          case KernelId::HeatThird: return heat_smoothed_third_kernel(x, tau, k, i, j, d);
        }
        return 0.0;
      },
      0.0, exec);
  return t;
}

void save_kernel_table(const std::string& path, const KernelTable& t) {
  FieldRecord r = to_record(t.values);
  r.version = 2;
  r.kernel_id = static_cast<std::uint32_t>(t.id);
  r.index_tuple = t.packed_indices();
  write_records(path, {r});
}

KernelTable load_kernel_table(const std::string& path, const CutoffSpec& spec, double tau) {
  const auto recs = read_records(path);
  if (recs.size() != 1 || recs.front().version != 2)
    throw IoError("kernel cache must hold exactly one version-2 record", 0);
  const FieldRecord& r = recs.front();
  if (r.kernel_id < 1 || r.kernel_id > 4)
    throw IoError("unknown kernel id " + std::to_string(r.kernel_id), 40);
  KernelTable t;
  t.id = static_cast<KernelId>(r.kernel_id);
  t.i = static_cast<int>(r.index_tuple & 0xF);
  t.j = static_cast<int>((r.index_tuple >> 4) & 0xF);
  t.k = static_cast<int>((r.index_tuple >> 8) & 0xF);
  t.spec = spec;
  t.tau = tau;
  t.values = scalar_from_record(r);
  if (t.id == KernelId::Hessian || t.id == KernelId::Near) t.singular_node = r.grid.zero_node();
  return t;
}

double spherical_average(const std::function<double(const Point&)>& f, double r, int d,
                         int resolution) {
  require_dim(d);
  if (resolution < 4) throw ParameterError("spherical average needs resolution >= 4");
  if (d == 2) {
    const int n = 2 * resolution;
    double s = 0.0;
    for (int m = 0; m < n; ++m) {
      const double th = 2.0 * kPi * m / n;
      s += f(Point{r * std::cos(th), r * std::sin(th), 0.0});
    }
    return s / n;
  }
  const GaussRule& g = gauss_legendre(resolution);
  const int nphi = 2 * resolution;
  double s = 0.0;
  for (std::size_t q = 0; q < g.x.size(); ++q) {
    const double ct = g.x[q];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double ring = 0.0;
    for (int m = 0; m < nphi; ++m) {
      const double ph = 2.0 * kPi * m / nphi;
      ring += f(Point{r * st * std::cos(ph), r * st * std::sin(ph), r * ct});
    }
    s += g.w[q] * ring / nphi;
  }
  return 0.5 * s;
}

double weighted_convolution_integral(double Y, double a, double b, int d) {
  require_dim(d);
  using boost::math::quadrature::gauss_kronrod;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double tol = 1e-10;
  if (d == 3) {
    if (Y < 1e-12) {
      auto f = [&](double r) { return r * r * std::pow(1.0 + r, -(a + b)); };
      return 4.0 * kPi * gauss_kronrod<double, 31>::integrate(f, 0.0, inf, 15, tol);
    }
    auto anti = [&](double s) {
      return std::pow(1.0 + s, 2.0 - b) / (2.0 - b) - std::pow(1.0 + s, 1.0 - b) / (1.0 - b);
    };
    auto f = [&](double r) {
      return r * std::pow(1.0 + r, -a) * (anti(r + Y) - anti(std::abs(r - Y)));
    };
    const double lo = gauss_kronrod<double, 31>::integrate(f, 0.0, Y, 15, tol);
    const double hi = gauss_kronrod<double, 31>::integrate(f, Y, inf, 15, tol);
    return 2.0 * kPi / Y * (lo + hi);
  }
  auto inner = [&](double r) {
    auto g = [&](double th) {
      const double s = std::sqrt(std::max(0.0, r * r + Y * Y - 2.0 * r * Y * std::cos(th)));
      return std::pow(1.0 + s, -b);
    };
    return 2.0 * gauss_kronrod<double, 31>::integrate(g, 0.0, kPi, 15, tol);
  };
  auto f = [&](double r) { return r * std::pow(1.0 + r, -a) * inner(r); };
  if (Y < 1e-12) return gauss_kronrod<double, 31>::integrate(f, 0.0, inf, 15, tol);
  return gauss_kronrod<double, 31>::integrate(f, 0.0, Y, 15, tol) +
         gauss_kronrod<double, 31>::integrate(f, Y, inf, 15, tol);
}

double hessian_decay_constant(int d) {
  require_dim(d);
  return 1.0 / (2.0 * kPi);
}

}  // namespace wsp
