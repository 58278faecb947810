#pragma once

#include <functional>
#include <vector>

#include "wsp/field.hpp"
#include "wsp/kernels.hpp"

namespace wsp {

/// Periodic spectral solve on a box enlarged by `enlargement` (zero padding):
/// p^ = -sum xi_i xi_j h^_ij / |xi|^2, p^(0) = 0, restricted to the original
/// box. Mixed-index terms are dropped at the Nyquist frequency.
ScalarField spectral_pressure(const TensorField& h_all, double enlargement = 2.0);

struct SpectralProjection {
  VectorField w;
  VectorField solenoidal;
  VectorField gradient_part;
};

/// Spectral w = div H and its Leray split on the enlarged periodic box.
SpectralProjection spectral_projection(const TensorField& H, double enlargement = 2.0);

/// || -Lap p - sum d_i d_j h_ij || / || sum d_i d_j h_ij || with spectral
/// derivatives on the enlarged periodic box.
double spectral_poisson_identity(const TensorField& h_all, double enlargement = 2.0);

/// Padded points per axis used for an enlargement factor (even, >= N).
int enlarged_points(int n, double enlargement);

enum class OracleKernel { NearPv, FarCorrected, FarPlain, HeatSmoothed };

struct OracleKernelSpec {
  OracleKernel kind = OracleKernel::NearPv;
  int i = 0, j = 0, k = 0;
  CutoffSpec spec{};
  double tau = 1.0;
};

/// Source for the brute-force convolver: either exact values at any point or
/// a sampled field read through zero-extended multilinear interpolation.
using SourceFn = std::function<double(const Point&)>;
SourceFn zero_extended_source(const ScalarField& h);

/// Direct Riemann sums on a lattice of spacing h/oversample, one probe at a
/// time, in plain index order. `grid` fixes the box and the base spacing.
std::vector<double> quadrature_conv(const OracleKernelSpec& kernel, const Grid& grid,
                                    const SourceFn& source, const std::vector<Point>& probes,
                                    int oversample, const ExecPolicy& exec = {});
std::vector<double> quadrature_conv(const OracleKernelSpec& kernel, const ScalarField& h,
                                    const std::vector<Point>& probes, int oversample,
                                    const ExecPolicy& exec = {});

/// Closed form of int_tau^inf d_k d_i d_j W_s(x) ds via lower incomplete gamma.
double heat_third_closed_form(const Point& x, double tau, int k, int i, int j, int d);

struct Discrepancy {
  double relative_l2 = 0.0;
  double relative_max = 0.0;
};

/// Compares on interior nodes (ring excluded).
Discrepancy compare_fields(const std::vector<ScalarField>& fast,
                           const std::vector<ScalarField>& reference, int ring = 1);

/// Subtracts the interior mean (ring excluded).
ScalarField remove_interior_mean(const ScalarField& f, int ring = 1);

}  // namespace wsp
