#pragma once

#include <vector>

#include "wsp/field.hpp"
#include "wsp/operators.hpp"

namespace wsp {

/// Drift g(t) and displacement E(t) = int_0^t g on the series times.
struct DriftCurve {
  std::vector<double> times;
  std::vector<Point> g;
  std::vector<Point> E;
};

/// Trapezoid cumulative integral of g with E(t_0) = 0.
DriftCurve displacement(const std::vector<double>& times, const std::vector<Point>& g, int dim);

/// Reads "t,g1,...,gd" lines; '#' comments and blank lines skipped.
DriftCurve read_drift_csv(const std::string& path, int dim);

struct GalileanOptions {
  Interpolation interpolation = Interpolation::Linear;
  /// Largest |E(t)| allowed (length units).
  double margin = 1.0;
  /// Maps w back to u: u(t, x) = w(t, x + E) - g.
  bool inverse = false;
};

/// w(t, x) = u(t, x - E(t)) + g(t). Shifted points that leave the box read
/// the nearest boundary value; `valid_ring` reports how many rings that spoils.
VectorSeries galilean_transform(const VectorSeries& u, const DriftCurve& drift,
                                const GalileanOptions& opts = {});

/// q(t, x) = p(t, x - E(t)) (or p(t, x + E) with opts.inverse).
ScalarSeries galilean_pressure(const ScalarSeries& p, const DriftCurve& drift,
                               const GalileanOptions& opts = {});

/// Shift of one field: f(x - shift).
ScalarField shift_field(const ScalarField& f, const Point& shift, Interpolation kind);

/// Boundary rings whose shifted points may leave the box, plus `stencil` extra.
int valid_ring(const Grid& g, const DriftCurve& drift, int stencil);

}  // namespace wsp
