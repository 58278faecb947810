#include "wsp/oracle.hpp"

#include <fftw3.h>

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <memory>
#include <numbers>

#include "wsp/operators.hpp"

namespace wsp {

namespace {

constexpr double kPi = std::numbers::pi;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

// Zero-padded periodic box with r2c transforms. Component fields are placed
// in the corner [0, N)^d; the rest is zero.
class PeriodicBox {
 public:
  PeriodicBox(const Grid& g, double enlargement)
      : g_(g), d_(g.dim), n_(g.points), m_(enlarged_points(g.points, enlargement)) {
    real_size_ = 1;
    for (int a = 0; a < d_; ++a) real_size_ *= static_cast<std::size_t>(m_);
    cplx_size_ = real_size_ / static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_ / 2 + 1);
    real_.reset(fftw_alloc_real(real_size_));
    cplx_.reset(fftw_alloc_complex(cplx_size_));
    int dims[3] = {m_, m_, m_};
    fwd_ = fftw_plan_dft_r2c(d_, dims, real_.get(), cplx_.get(), FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r(d_, dims, cplx_.get(), real_.get(), FFTW_ESTIMATE);
  }
  ~PeriodicBox() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  PeriodicBox(const PeriodicBox&) = delete;
  PeriodicBox& operator=(const PeriodicBox&) = delete;

  std::size_t cplx_size() const { return cplx_size_; }

  std::vector<std::complex<double>> forward(const ScalarField& f) {
    std::memset(real_.get(), 0, sizeof(double) * real_size_);
    for (std::size_t n = 0; n < g_.size(); ++n) real_[padded(n)] = f[n];
    fftw_execute(fwd_);
    std::vector<std::complex<double>> out(cplx_size_);
    for (std::size_t q = 0; q < cplx_size_; ++q) out[q] = {cplx_[q][0], cplx_[q][1]};
    return out;
  }

  ScalarField backward(const std::vector<std::complex<double>>& spec, double time) {
    for (std::size_t q = 0; q < cplx_size_; ++q) {
      cplx_[q][0] = spec[q].real();
      cplx_[q][1] = spec[q].imag();
    }
    fftw_execute(bwd_);
    std::vector<double> v(g_.size());
    const double scale = 1.0 / static_cast<double>(real_size_);
    for (std::size_t n = 0; n < g_.size(); ++n) v[n] = real_[padded(n)] * scale;
    return ScalarField(g_, std::move(v), time);
  }

  // Whole periodic box, no restriction.
  std::vector<double> backward_full(const std::vector<std::complex<double>>& spec) {
    for (std::size_t q = 0; q < cplx_size_; ++q) {
      cplx_[q][0] = spec[q].real();
      cplx_[q][1] = spec[q].imag();
    }
    fftw_execute(bwd_);
    const double scale = 1.0 / static_cast<double>(real_size_);
    std::vector<double> v(real_.get(), real_.get() + real_size_);
    for (double& x : v) x *= scale;
    return v;
  }

  std::vector<std::complex<double>> forward_full(const std::vector<double>& v) {
    std::copy(v.begin(), v.end(), real_.get());
    fftw_execute(fwd_);
    std::vector<std::complex<double>> out(cplx_size_);
    for (std::size_t q = 0; q < cplx_size_; ++q) out[q] = {cplx_[q][0], cplx_[q][1]};
    return out;
  }

  // Wavevector of a spectral index; nyq[a] flags the Nyquist plane.
  void wavevector(std::size_t q, double* xi, bool* nyq) const {
    const std::size_t last = static_cast<std::size_t>(m_ / 2 + 1);
    int idx[3] = {0, 0, 0};
    idx[d_ - 1] = static_cast<int>(q % last);
    std::size_t rest = q / last;
    for (int a = d_ - 2; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % static_cast<std::size_t>(m_));
      rest /= static_cast<std::size_t>(m_);
    }
    const double period = m_ * g_.spacing();
    for (int a = 0; a < d_; ++a) {
      const int k = idx[a] <= m_ / 2 ? idx[a] : idx[a] - m_;
      nyq[a] = idx[a] == m_ / 2;
      xi[a] = 2.0 * kPi * k / period;
    }
  }

 private:
  std::size_t padded(std::size_t flat) const {
    const Index idx = g_.unflatten(flat);
    std::size_t p = 0;
    for (int a = 0; a < d_; ++a) p = p * static_cast<std::size_t>(m_) + static_cast<std::size_t>(idx[a]);
    return p;
  }

  Grid g_;
  int d_, n_, m_;
  std::size_t real_size_ = 0, cplx_size_ = 0;
  std::unique_ptr<double[], FftwFree> real_;
  std::unique_ptr<fftw_complex[], FftwFree> cplx_;
  fftw_plan fwd_ = nullptr, bwd_ = nullptr;
};

// -sum xi_i xi_j h^_ij, mixed terms dropped on Nyquist planes.
std::vector<std::complex<double>> source_spectrum(PeriodicBox& box, const TensorField& h_all) {
  const int d = h_all.dim();
  std::vector<std::complex<double>> src(box.cplx_size(), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto hs = box.forward(h_all(i, j));
      for (std::size_t q = 0; q < src.size(); ++q) {
        double xi[3];
        bool nyq[3];
        box.wavevector(q, xi, nyq);
        if (i != j && (nyq[i] || nyq[j])) continue;
        src[q] -= xi[i] * xi[j] * hs[q];
      }
    }
  return src;
}

double xi_norm2(const double* xi, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += xi[a] * xi[a];
  return s;
}

}  // namespace

int enlarged_points(int n, double enlargement) {
  if (!(enlargement >= 1.0) || !std::isfinite(enlargement))
    throw ParameterError("enlargement must be >= 1");
  int m = static_cast<int>(std::lround(n * enlargement));
  if (m % 2 != 0) ++m;
  return std::max(m, n);
}

ScalarField spectral_pressure(const TensorField& h_all, double enlargement) {
  PeriodicBox box(h_all.grid(), enlargement);
  const int d = h_all.dim();
  auto spec = source_spectrum(box, h_all);
  for (std::size_t q = 0; q < spec.size(); ++q) {
    double xi[3];
    bool nyq[3];
    box.wavevector(q, xi, nyq);
    const double k2 = xi_norm2(xi, d);
    spec[q] = k2 > 0.0 ? spec[q] / k2 : 0.0;
  }
  return box.backward(spec, h_all.time());
}

SpectralProjection spectral_projection(const TensorField& H, double enlargement) {
  PeriodicBox box(H.grid(), enlargement);
  const int d = H.dim();
  const std::complex<double> I(0.0, 1.0);
  std::vector<std::vector<std::complex<double>>> w(static_cast<std::size_t>(d),
                                                   std::vector<std::complex<double>>(box.cplx_size(), 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto hs = box.forward(H(i, j));
      for (std::size_t q = 0; q < hs.size(); ++q) {
        double xi[3];
        bool nyq[3];
        box.wavevector(q, xi, nyq);
        if (nyq[i]) continue;
        w[j][q] += I * xi[i] * hs[q];
      }
    }
  std::vector<std::vector<std::complex<double>>> gp = w;
  for (std::size_t q = 0; q < box.cplx_size(); ++q) {
    double xi[3];
    bool nyq[3];
    box.wavevector(q, xi, nyq);
    const double k2 = xi_norm2(xi, d);
    std::complex<double> div = 0.0;
    for (int a = 0; a < d; ++a) div += xi[a] * w[a][q];
    for (int a = 0; a < d; ++a) gp[a][q] = k2 > 0.0 ? xi[a] * div / k2 : 0.0;
  }
  std::vector<ScalarField> wc, gc, sc;
  for (int a = 0; a < d; ++a) {
    wc.push_back(box.backward(w[a], H.time()));
    gc.push_back(box.backward(gp[a], H.time()));
    sc.push_back(wc.back() - gc.back());
  }
  return {VectorField(std::move(wc)), VectorField(std::move(sc)), VectorField(std::move(gc))};
}

double spectral_poisson_identity(const TensorField& h_all, double enlargement) {
  PeriodicBox box(h_all.grid(), enlargement);
  const int d = h_all.dim();
  const auto src = source_spectrum(box, h_all);
  std::vector<std::complex<double>> p(src.size());
  for (std::size_t q = 0; q < src.size(); ++q) {
    double xi[3];
    bool nyq[3];
    box.wavevector(q, xi, nyq);
    const double k2 = xi_norm2(xi, d);
    p[q] = k2 > 0.0 ? src[q] / k2 : 0.0;
  }
  // Round trip through physical space on the whole periodic box, then apply
  // -Lap spectrally.
  auto p_again = box.forward_full(box.backward_full(p));
  for (std::size_t q = 0; q < p_again.size(); ++q) {
    double xi[3];
    bool nyq[3];
    box.wavevector(q, xi, nyq);
    p_again[q] *= xi_norm2(xi, d);
  }
  const std::vector<double> lap = box.backward_full(p_again);
  const std::vector<double> rhs = box.backward_full(src);
  double err = 0.0, scale = 0.0;
  for (std::size_t n = 0; n < lap.size(); ++n) {
    err += (lap[n] - rhs[n]) * (lap[n] - rhs[n]);
    scale += rhs[n] * rhs[n];
  }
  return scale > 0.0 ? std::sqrt(err / scale) : std::sqrt(err);
}

SourceFn zero_extended_source(const ScalarField& h) {
  return [&h](const Point& x) {
    const Grid& g = h.grid();
    int base[3] = {0, 0, 0};
    double w[3] = {0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim; ++a) {
      const double t = (x[a] - g.coord(a, 0)) / g.spacing();
      if (t < -1.0 || t >= g.points) return 0.0;
      base[a] = static_cast<int>(std::floor(t));
      w[a] = t - base[a];
    }
    double s = 0.0;
    for (int c = 0; c < (1 << g.dim); ++c) {
      Index idx{0, 0, 0};
      double wt = 1.0;
      bool inside = true;
      for (int a = 0; a < g.dim; ++a) {
        const int bit = (c >> a) & 1;
        idx[a] = base[a] + bit;
        wt *= bit ? w[a] : 1.0 - w[a];
        if (idx[a] < 0 || idx[a] >= g.points) inside = false;
      }
      if (inside && wt != 0.0) s += wt * h.at(idx);
    }
    return s;
  };
}

double heat_third_closed_form(const Point& x, double tau, int k, int i, int j, int d) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  const double r2 = dot(x, x, d);
  const double c = 0.25 * r2;
  const double pre = std::pow(4.0 * kPi, -0.5 * d);
  // int_tau^inf s^-(n+1) exp(-c/s) ds = c^-n gamma(n, c/tau).
  auto moment = [&](double n) {
    const double z = c / tau;
    if (z < 1e-10) return std::pow(tau, -n) / n * (1.0 - n * z / (n + 1.0));
    return boost::math::tgamma_lower(n, z) * std::pow(c, -n);
  };
  const double P = pre * 0.25 * moment(0.5 * d + 1.0);
  const double Q = pre * 0.125 * moment(0.5 * d + 2.0);
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  return (dl(i, k) * x[j] + dl(j, k) * x[i] + dl(i, j) * x[k]) * P - x[i] * x[j] * x[k] * Q;
}

std::vector<double> quadrature_conv(const OracleKernelSpec& kernel, const Grid& grid,
                                    const SourceFn& source, const std::vector<Point>& probes,
                                    int oversample, const ExecPolicy& exec) {
  if (oversample != 1 && oversample != 2 && oversample != 4)
    throw ParameterError("oversample must be 1, 2 or 4");
  grid.validate();
  const int d = grid.dim;
  const double hf = grid.spacing() / oversample;
  const double cell = std::pow(hf, d);
  const int nf = grid.points * oversample;
  std::vector<double> out(probes.size(), 0.0);
  const auto& ks = kernel;
  if (ks.kind != OracleKernel::HeatSmoothed) ks.spec.validate();

  parallel_for(probes.size(), exec, [&](std::size_t q) {
    const Point& x = probes[q];
    double s = 0.0;
    if (ks.kind == OracleKernel::NearPv) {
      const int reach = static_cast<int>(std::ceil(ks.spec.r1 / hf));
      const double fx = source(x);
      for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b)
          for (int c = (d == 3 ? -reach : 0); c <= (d == 3 ? reach : 0); ++c) {
            if (a == 0 && b == 0 && c == 0) continue;
            const Point y{a * hf, b * hf, c * hf};
            const double r = norm(y, d);
            if (r >= ks.spec.r1) continue;
            const Point xy{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
            s += cutoff_radial(r, ks.spec) * hessian_green(y, ks.i, ks.j, d) * (source(xy) - fx);
          }
      out[q] = s * cell - (ks.i == ks.j ? fx / d : 0.0);
      return;
    }
    Index m{0, 0, 0};
    const int mz = d == 3 ? nf : 1;
    for (m[0] = 0; m[0] < nf; ++m[0])
      for (m[1] = 0; m[1] < nf; ++m[1])
        for (m[2] = 0; m[2] < mz; ++m[2]) {
          Point y{0.0, 0.0, 0.0};
          for (int a = 0; a < d; ++a) y[a] = grid.origin[a] - grid.half_width + m[a] * hf;
          const double f = source(y);
          if (f == 0.0) continue;
          const Point z{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
          switch (ks.kind) {
            case OracleKernel::FarCorrected: {
              const Point ny{-y[0], -y[1], -y[2]};
              s += (far_kernel(z, ks.i, ks.j, ks.spec, d) - far_kernel(ny, ks.i, ks.j, ks.spec, d)) * f;
              break;
            }
            case OracleKernel::FarPlain:
              s += far_kernel(z, ks.i, ks.j, ks.spec, d) * f;
              break;
            case OracleKernel::HeatSmoothed:
              s += heat_third_closed_form(z, ks.tau, ks.k, ks.i, ks.j, d) * f;
              break;
            case OracleKernel::NearPv:
              break;
          }
        }
    out[q] = s * cell;
  });
  return out;
}

std::vector<double> quadrature_conv(const OracleKernelSpec& kernel, const ScalarField& h,
                                    const std::vector<Point>& probes, int oversample,
                                    const ExecPolicy& exec) {
  return quadrature_conv(kernel, h.grid(), zero_extended_source(h), probes, oversample, exec);
}

Discrepancy compare_fields(const std::vector<ScalarField>& fast,
                           const std::vector<ScalarField>& reference, int ring) {
  if (fast.size() != reference.size()) throw StructuralError("compare: component counts differ");
  const Grid& g = reference.front().grid();
  double num = 0.0, den = 0.0, emax = 0.0, rmax = 0.0;
  for (std::size_t c = 0; c < fast.size(); ++c) {
    require_same_grid(fast[c].grid(), g, "compare");
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (!g.is_interior(g.unflatten(n), ring)) continue;
      const double e = fast[c][n] - reference[c][n];
      num += e * e;
      den += reference[c][n] * reference[c][n];
      emax = std::max(emax, std::abs(e));
      rmax = std::max(rmax, std::abs(reference[c][n]));
    }
  }
  Discrepancy out;
  out.relative_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  out.relative_max = rmax > 0.0 ? emax / rmax : emax;
  return out;
}

ScalarField remove_interior_mean(const ScalarField& f, int ring) {
  const Grid& g = f.grid();
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < g.size(); ++n)
    if (g.is_interior(g.unflatten(n), ring)) {
      s += f[n];
      ++count;
    }
  const double mean = count ? s / static_cast<double>(count) : 0.0;
  return f - ScalarField::constant(g, mean, f.time());
}

}  // namespace wsp
