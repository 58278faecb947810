#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wsp/field.hpp"

namespace wsp {

/// Radial cutoff: 1 for |x| <= r0, 0 for |x| >= r1, C-infinity in between.
struct CutoffSpec {
  double r0 = 1.0;
  double r1 = 2.0;

  static CutoffSpec make(double r0, double r1);
  void validate() const;
  friend bool operator==(const CutoffSpec&, const CutoffSpec&) = default;
};

/// G_2 = -ln|x| / (2 pi), G_3 = 1 / (4 pi |x|), so that -Laplace G = delta.
double green_function(const Point& x, int d);
/// Pointwise d_i d_j G_d for x != 0.
double hessian_green(const Point& x, int i, int j, int d);
/// Pointwise d_k d_i d_j G_d for x != 0.
double third_green(const Point& x, int k, int i, int j, int d);

double cutoff_radial(double r, const CutoffSpec& spec);
double cutoff(const Point& x, const CutoffSpec& spec, int d);
/// A_ij = (1 - phi) d_i d_j G_d; zero inside r0, including the origin.
double far_kernel(const Point& x, int i, int j, const CutoffSpec& spec, int d);
/// phi d_i d_j G_d; the caller handles the origin (value undefined there).
double near_kernel(const Point& x, int i, int j, const CutoffSpec& spec, int d);

/// (4 pi t)^(-d/2) exp(-|x|^2 / 4t).
double heat_kernel(const Point& x, double t, int d);

/// Radial factors of int_tau^inf d_k d_i d_j W_s(x) ds. The kernel equals
/// (delta_ik x_j + delta_jk x_i + delta_ij x_k) P - x_i x_j x_k Q.
struct HeatThirdFactors {
  double P = 0.0;
  double Q = 0.0;
};

/// Gauss-Legendre (64 nodes) on geometric panels in sigma = tau/s, panels
/// doubled until the relative change drops below 1e-8.
HeatThirdFactors heat_third_factors(double r, double tau, int d);
double heat_smoothed_third_kernel(const Point& x, double tau, int k, int i, int j, int d);
/// All d^3 components, out[(k*d + i)*d + j].
void heat_smoothed_third_tensor(const Point& x, double tau, int d, double* out);

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

enum class KernelId : std::uint32_t {
  Hessian = 1,   ///< d_i d_j G, singular node set to 0
  Near = 2,      ///< phi d_i d_j G, singular node set to 0
  Far = 3,       ///< (1 - phi) d_i d_j G
  HeatThird = 4  ///< heat-smoothed third derivative
};

std::string kernel_name(KernelId id);

/// Kernel samples at the nodes of a grid, flagged at the singular node.
struct KernelTable {
  KernelId id = KernelId::Hessian;
  int i = 0, j = 0, k = 0;
  CutoffSpec spec{};
  double tau = 0.0;
  ScalarField values;
  std::optional<std::size_t> singular_node;

  std::uint32_t packed_indices() const {
    return static_cast<std::uint32_t>(i | (j << 4) | (k << 8));
  }
};

KernelTable make_kernel_table(const Grid& grid, KernelId id, int i, int j, int k,
                              const CutoffSpec& spec, double tau = 0.0,
                              const ExecPolicy& exec = {});

/// Version-2 FLD1 cache of a table. The cutoff radii and tau are not stored;
/// the loader takes them from the caller.
void save_kernel_table(const std::string& path, const KernelTable& t);
KernelTable load_kernel_table(const std::string& path, const CutoffSpec& spec, double tau = 0.0);

/// Average of f over the sphere of radius r: trapezoid in angle (2D), Gauss in
/// cos(theta) times trapezoid in azimuth (3D).
double spherical_average(const std::function<double(const Point&)>& f, double r, int d,
                         int resolution = 64);

/// I(y) = int (1+|x|)^-a (1+|x-y|)^-b dx over R^d at |y| = Y.
double weighted_convolution_integral(double Y, double a, double b, int d);

/// sup |x|^d |d_i d_j G_d(x)|, the same for both dimensions.
double hessian_decay_constant(int d);

}  // namespace wsp
