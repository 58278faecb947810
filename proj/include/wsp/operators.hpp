#pragma once

#include <vector>

#include "wsp/field.hpp"

namespace wsp {

// Second-order finite differences. Interior nodes use central stencils; the
// first and last node on each axis use second-order one-sided closures.

ScalarField partial(const ScalarField& f, int axis);
ScalarField second_partial(const ScalarField& f, int axis);
/// D_i D_j for i != j, the compact second difference for i == j.
ScalarField mixed_partial(const ScalarField& f, int i, int j);

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
/// (div H)_j = sum_i d_i H_ij.
VectorField divergence(const TensorField& H);
/// One component (d1 v2 - d2 v1) in 2D, three in 3D.
std::vector<ScalarField> curl(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
/// d_i v_j stored as component (i, j).
TensorField jacobian(const VectorField& v);

/// (sum |f|^p (1+|x|)^-gamma h^d)^(1/p) over every node of the box.
double weighted_lp_norm(const ScalarField& f, double p, double gamma);
double weighted_lp_norm(const VectorField& f, double p, double gamma);

/// Riemann-sum L2 norm and max norm over nodes at least `ring` away from the edge.
double interior_l2(const ScalarField& f, int ring = 1);
double interior_l2(const VectorField& v, int ring = 1);
double interior_l2(const std::vector<ScalarField>& comps, int ring = 1);
double interior_max(const ScalarField& f, int ring = 1);
double interior_max(const VectorField& v, int ring = 1);

/// Multilinear interpolation; coordinates are clamped to the node range.
double interpolate_linear(const ScalarField& f, const Point& x);
/// Tensor-product 4-point Lagrange interpolation, clamped like the linear one.
double interpolate_cubic(const ScalarField& f, const Point& x);

enum class Interpolation { Linear, Cubic };
double interpolate(const ScalarField& f, const Point& x, Interpolation kind);

/// q(x) = int_0^1 x . X(lambda x) d lambda by composite Simpson in lambda
/// (`intervals` even) with multilinear interpolation of X.
ScalarField poincare_potential(const VectorField& X, int intervals = 64,
                               const ExecPolicy& exec = {});

/// Three-point Lagrange derivative in time on the (possibly nonuniform)
/// frame times; one-sided at both ends. Needs at least three frames.
ScalarSeries time_derivative(const ScalarSeries& s);
VectorSeries time_derivative(const VectorSeries& s);

/// Derivative weights at t for nodes (a, b, c).
std::array<double, 3> lagrange_derivative_weights(double t, double a, double b, double c);

}  // namespace wsp
