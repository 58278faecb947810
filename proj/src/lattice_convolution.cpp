#include "wsp/lattice_convolution.hpp"

#include <fftw3.h>

#include <cstring>

#include "wsp/errors.hpp"

namespace wsp {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuf = std::unique_ptr<double[], FftwFree>;
using CplxBuf = std::unique_ptr<fftw_complex[], FftwFree>;

// Cached spectra beyond this many bytes are recomputed instead of stored.
constexpr std::size_t kCacheBudgetBytes = std::size_t{1} << 30;

}  // namespace

struct LatticeConvolver::Fft {
  int dim = 2;
  int n = 0;      // points per axis
  int m = 0;      // padded points per axis
  std::size_t real_size = 0;
  std::size_t cplx_size = 0;
  RealBuf real;
  CplxBuf work;
  CplxBuf acc;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::map<int, CplxBuf> cache;
  std::size_t cached_bytes = 0;

  Fft(int dim_, int n_) : dim(dim_), n(n_), m(2 * n_) {
    real_size = 1;
    for (int a = 0; a < dim; ++a) real_size *= static_cast<std::size_t>(m);
    cplx_size = real_size / static_cast<std::size_t>(m) * static_cast<std::size_t>(m / 2 + 1);
    real.reset(fftw_alloc_real(real_size));
    work.reset(fftw_alloc_complex(cplx_size));
    acc.reset(fftw_alloc_complex(cplx_size));
    if (!real || !work || !acc) throw std::bad_alloc();
    int dims[3] = {m, m, m};
    forward = fftw_plan_dft_r2c(dim, dims, real.get(), work.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r(dim, dims, acc.get(), real.get(), FFTW_ESTIMATE);
    clear_acc();
  }

  ~Fft() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }

  void clear_acc() { std::memset(acc.get(), 0, sizeof(fftw_complex) * cplx_size); }

  void load_kernel(const Sampler& kernel, double h, const ExecPolicy& exec) {
    const std::size_t slab = real_size / static_cast<std::size_t>(m);
    parallel_for(static_cast<std::size_t>(m), exec, [&](std::size_t p0) {
      for (std::size_t r = 0; r < slab; ++r) {
        const std::size_t flat = p0 * slab + r;
        std::size_t rest = flat;
        int pad[3] = {0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
          pad[a] = static_cast<int>(rest % static_cast<std::size_t>(m));
          rest /= static_cast<std::size_t>(m);
        }
        Point off{0.0, 0.0, 0.0};
        bool skip = false;
        for (int a = 0; a < dim; ++a) {
          if (pad[a] == n) skip = true;
          const int k = pad[a] < n ? pad[a] : pad[a] - m;
          off[a] = k * h;
        }
        real[flat] = skip ? 0.0 : kernel(off);
      }
    });
  }

  void load_source(std::span<const double> src) {
    std::memset(real.get(), 0, sizeof(double) * real_size);
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t um = static_cast<std::size_t>(m);
    if (dim == 2) {
      for (std::size_t i = 0; i < un; ++i)
        std::memcpy(&real[i * um], &src[i * un], sizeof(double) * un);
    } else {
      for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j)
          std::memcpy(&real[(i * um + j) * um], &src[(i * un + j) * un], sizeof(double) * un);
    }
  }

  void multiply_add(const fftw_complex* k, const fftw_complex* s) {
    for (std::size_t q = 0; q < cplx_size; ++q) {
      acc[q][0] += k[q][0] * s[q][0] - k[q][1] * s[q][1];
      acc[q][1] += k[q][0] * s[q][1] + k[q][1] * s[q][0];
    }
  }
};

LatticeConvolver::LatticeConvolver(const Grid& grid, ConvolutionMethod method, ExecPolicy exec)
    : grid_(grid), exec_(exec) {
  grid_.validate();
  fft_ = method == ConvolutionMethod::Fft ||
         (method == ConvolutionMethod::Auto && grid_.size() > kDirectLimit);
  if (fft_)
    impl_ = std::make_unique<Fft>(grid_.dim, grid_.points);
  else
    direct_acc_.assign(grid_.size(), 0.0);
}

LatticeConvolver::~LatticeConvolver() = default;

std::vector<double> LatticeConvolver::offset_samples(const Sampler& kernel) const {
  const int n = grid_.points;
  const int w = 2 * n - 1;
  const int d = grid_.dim;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(w);
  std::vector<double> table(total);
  const double h = grid_.spacing();
  parallel_for(total, exec_, [&](std::size_t flat) {
    std::size_t rest = flat;
    Point off{0.0, 0.0, 0.0};
    for (int a = d - 1; a >= 0; --a) {
      off[a] = (static_cast<int>(rest % static_cast<std::size_t>(w)) - (n - 1)) * h;
      rest /= static_cast<std::size_t>(w);
    }
    table[flat] = kernel(off);
  });
  return table;
}

void LatticeConvolver::add(int key, const Sampler& kernel, std::span<const double> src) {
  if (src.size() != grid_.size()) throw StructuralError("convolution source has wrong size");
  dirty_ = true;
  if (fft_) {
    Fft& f = *impl_;
    const fftw_complex* kspec = nullptr;
    auto it = key >= 0 ? f.cache.find(key) : f.cache.end();
    CplxBuf fresh;
    if (it != f.cache.end()) {
      kspec = it->second.get();
    } else {
      f.load_kernel(kernel, grid_.spacing(), exec_);
      fresh.reset(fftw_alloc_complex(f.cplx_size));
      if (!fresh) throw std::bad_alloc();
      fftw_execute_dft_r2c(f.forward, f.real.get(), fresh.get());
      kspec = fresh.get();
      const std::size_t bytes = sizeof(fftw_complex) * f.cplx_size;
      if (key >= 0 && f.cached_bytes + bytes <= kCacheBudgetBytes) {
        f.cached_bytes += bytes;
        f.cache.emplace(key, std::move(fresh));
      }
    }
    f.load_source(src);
    fftw_execute_dft_r2c(f.forward, f.real.get(), f.work.get());
    f.multiply_add(kspec, f.work.get());
    return;
  }
  std::vector<double> local;
  const std::vector<double>* table = nullptr;
  if (auto it = direct_cache_.find(key); key >= 0 && it != direct_cache_.end()) {
    table = &it->second;
  } else if (key >= 0) {
    table = &direct_cache_.emplace(key, offset_samples(kernel)).first->second;
  } else {
    local = offset_samples(kernel);
    table = &local;
  }
  const int n = grid_.points;
  const int w = 2 * n - 1;
  const int d = grid_.dim;
  parallel_for(grid_.size(), exec_, [&](std::size_t out) {
    const Index t = grid_.unflatten(out);
    double s = 0.0;
    for (std::size_t m = 0; m < grid_.size(); ++m) {
      if (src[m] == 0.0) continue;
      const Index q = grid_.unflatten(m);
      std::size_t off = 0;
      for (int a = 0; a < d; ++a)
        off = off * static_cast<std::size_t>(w) + static_cast<std::size_t>(t[a] - q[a] + n - 1);
      s += (*table)[off] * src[m];
    }
    direct_acc_[out] += s;
  });
}

std::vector<double> LatticeConvolver::take() {
  std::vector<double> out(grid_.size(), 0.0);
  if (!dirty_) return out;
  dirty_ = false;
  if (!fft_) {
    out.swap(direct_acc_);
    direct_acc_.assign(grid_.size(), 0.0);
    return out;
  }
  Fft& f = *impl_;
  fftw_execute(f.backward);
  const double scale = 1.0 / static_cast<double>(f.real_size);
  const std::size_t un = static_cast<std::size_t>(f.n);
  const std::size_t um = static_cast<std::size_t>(f.m);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rest = flat;
    std::size_t padded = 0;
    std::size_t mult = 1;
    for (int a = f.dim - 1; a >= 0; --a) {
      padded += (rest % un) * mult;
      rest /= un;
      mult *= um;
    }
    out[flat] = f.real[padded] * scale;
  }
  f.clear_acc();
  return out;
}

}  // namespace wsp
