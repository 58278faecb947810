#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsp/field.hpp"
#include "wsp/kernels.hpp"
#include "wsp/lattice_convolution.hpp"

namespace wsp {

/// Truncation estimate for a whole-space quantity computed on the box:
/// bound ~ C * data_norm * L^-exponent.
struct TailReport {
  std::string quantity;
  double data_norm = 0.0;
  double constant = 0.0;
  double exponent = 0.0;
  double bound = 0.0;
};

struct PressureOptions {
  CutoffSpec spec{};
  ConvolutionMethod method = ConvolutionMethod::Auto;
  /// Subtract the boundary-ring mean h_inf of every h_ij before convolving and
  /// add back its whole-space pressure -tr(h_inf)/d. Needed when u tends to a
  /// nonzero constant at infinity.
  bool constant_closure = false;
  ExecPolicy exec{};
};

/// h_ij = u_i u_j - F_ij. A missing F counts as zero.
TensorField source_tensor(const VectorField& u, const TensorField* F);

/// Sum over the full stencil of phi K_ij h^d (the subtraction constant).
double near_stencil_sum(const Grid& g, int i, int j, const CutoffSpec& spec);

/// sum_{y != 0} phi K_ij(y) [h(x - y) - h(x)] h^d - (delta_ij / d) h(x),
/// with h extended by zero outside the box.
ScalarField near_field_conv(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                            ConvolutionMethod method = ConvolutionMethod::Auto,
                            const ExecPolicy& exec = {});

/// sum_y [A_ij(x - y) - A_ij(-y)] h(y) h^d; exactly zero at x = 0 when the
/// origin is a node.
ScalarField far_field_corrected(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                                ConvolutionMethod method = ConvolutionMethod::Auto,
                                const ExecPolicy& exec = {});

/// Decay class declared by the caller for the plain far field.
enum class DecayClass { Wd, WdPlusOne };

struct PlainFarField {
  ScalarField field;
  /// Set when the data is only declared w_{d+1}-integrable: the plain
  /// integral may diverge logarithmically and the tail exponent is 0.
  bool regime_warning = false;
  TailReport tail;
};

/// sum_y A_ij(x - y) h(y) h^d.
PlainFarField far_field_plain(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                              DecayClass decay = DecayClass::Wd,
                              ConvolutionMethod method = ConvolutionMethod::Auto,
                              const ExecPolicy& exec = {});

/// sum_y A_ij(-y) h(y) h^d, summed in a fixed order.
double far_origin_constant(const ScalarField& h, int i, int j, const CutoffSpec& spec,
                           const ExecPolicy& exec = {});

/// Boundary-ring mean of every component.
std::vector<double> boundary_mean(const TensorField& h_all);

/// Reusable pressure assembler for one grid. The full-kernel spectra are
/// cached, so a time series pays for them once.
class PressureAssembler {
 public:
  PressureAssembler(const Grid& grid, PressureOptions opts);

  /// p_phi for the source tensor h_all (near + corrected far over all i, j).
  ScalarField p_phi(const TensorField& h_all);
  /// p_0 = near + plain far; differs from p_phi by the constant c_phi.
  ScalarField p_0(const TensorField& h_all);
  /// sum_ij sum_y A_ij(-y) h_ij(y) h^d for this assembler's cutoff.
  double origin_constant(const TensorField& h_all) const;

  const PressureOptions& options() const { return opts_; }

 private:
  ScalarField fused(const TensorField& h_all, bool corrected);

  Grid grid_;
  PressureOptions opts_;
  LatticeConvolver conv_;
};

ScalarField assemble_p_phi(const VectorField& u, const TensorField* F,
                           const PressureOptions& opts = {});
ScalarField assemble_p0(const VectorField& u, const TensorField* F,
                        const PressureOptions& opts = {});

/// sum_ij sum_y [A_ij,B(-y) - A_ij,A(-y)] h_ij(y) h^d, which equals
/// p_A - p_B.
double phi_change_constant(const TensorField& h_all, const CutoffSpec& a, const CutoffSpec& b,
                           const ExecPolicy& exec = {});

/// || Lap p + sum_ij d_i d_j h_ij || / || sum_ij d_i d_j h_ij || on interior nodes.
double poisson_residual(const ScalarField& p, const TensorField& h_all);

struct HeatDecayReport {
  std::vector<double> taus;
  /// max over the probe set of |e^{tau Lap} grad p|.
  std::vector<double> max_abs;
  /// |e^{tau Lap} grad p| at the origin probe.
  std::vector<double> origin_abs;
  double slope = 0.0;
  double origin_slope = 0.0;
  std::size_t probe_count = 0;
};

/// Origin plus points on the axes and diagonals at radii 2^(m/4), m = -8..24.
/// Quadrupling tau maps the set onto itself (radius doubles), so the sup over
/// the set samples the parabolic scaling exactly.
std::vector<Point> parabolic_probes(int d);

/// e^{tau Lap} grad p at the probes: sum over nodes of the heat-smoothed third
/// kernel contracted with h_ij.
std::vector<Point> heat_smoothed_gradient(const TensorField& h_all, double tau,
                                          const std::vector<Point>& probes,
                                          const ExecPolicy& exec = {});

HeatDecayReport heat_normalization(const TensorField& h_all, const std::vector<double>& taus,
                                   const std::vector<Point>& probes, const ExecPolicy& exec = {});
HeatDecayReport heat_normalization(const TensorField& h_all, const std::vector<double>& taus,
                                   const ExecPolicy& exec = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct PressureDecomposition {
  std::vector<double> times;
  std::vector<ScalarField> p_phi;
  std::vector<VectorField> grad_p;
  /// d/dt g per frame (spatial median of S - grad p_phi).
  std::vector<Point> dg;
  std::vector<Point> g;
  std::vector<Point> E;
  /// Interior L2 of S - grad p - dg over interior L2 of S, per frame.
  std::vector<double> dispersion;
  std::vector<double> relative_curl;
  std::vector<TailReport> tails;
  std::vector<std::string> warnings;
};

struct DecomposeOptions {
  PressureOptions pressure{};
  double curl_threshold = 0.05;
  double dispersion_threshold = 1e-2;
};

/// S = grad p_phi + d/dt g, frame by frame. F may be null.
PressureDecomposition decompose_source(const VectorSeries& S, const VectorSeries& u,
                                       const TensorSeries* F, const DecomposeOptions& opts = {});

/// Trapezoid cumulative integral, starting at zero.
std::vector<Point> cumulative_trapezoid(const std::vector<double>& t, const std::vector<Point>& f,
                                        int d);

/// Far-field truncation estimate C ||h||_{L1(w_{d+1})} / L.
TailReport far_field_tail(const TensorField& h_all);

/// Relative curl ||curl S|| / ||grad S|| on interior nodes.
double relative_curl(const VectorField& S);

}  // namespace wsp
