#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "wsp/grid.hpp"
#include "wsp/parallel.hpp"

namespace wsp {

enum class ConvolutionMethod { Auto, Fft, Direct };

/// Aperiodic lattice convolution on one grid:
///   out[n] = sum_m K((n - m) h) src[m],   n, m in [0, N)^d.
/// K is sampled at lattice offsets in (-N, N)^d. The FFT path zero-pads to 2N
/// per axis so the circular product equals the aperiodic sum. Several
/// kernel/source pairs can be accumulated before one inverse transform.
/// Kernel spectra are cached under caller-chosen keys for reuse across frames.
class LatticeConvolver {
 public:
  using Sampler = std::function<double(const Point& offset)>;

  LatticeConvolver(const Grid& grid, ConvolutionMethod method = ConvolutionMethod::Auto,
                   ExecPolicy exec = {});
  ~LatticeConvolver();
  LatticeConvolver(const LatticeConvolver&) = delete;
  LatticeConvolver& operator=(const LatticeConvolver&) = delete;

  /// Adds conv(K, src) to the running sum. A negative key disables caching.
  void add(int key, const Sampler& kernel, std::span<const double> src);
  /// Returns the accumulated sum and resets the accumulator.
  std::vector<double> take();

  bool uses_fft() const { return fft_; }
  const Grid& grid() const { return grid_; }

  /// Direct method is picked for N^d at or below this size.
  static constexpr std::size_t kDirectLimit = 4096;

 private:
  struct Fft;
  std::vector<double> offset_samples(const Sampler& kernel) const;

  Grid grid_;
  bool fft_ = true;
  ExecPolicy exec_;
  std::unique_ptr<Fft> impl_;
  std::vector<double> direct_acc_;
  std::map<int, std::vector<double>> direct_cache_;
  bool dirty_ = false;
};

}  // namespace wsp
