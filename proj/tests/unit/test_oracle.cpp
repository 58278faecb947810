#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wsp/fixtures.hpp"
#include "wsp/kernels.hpp"
#include "wsp/oracle.hpp"
#include "wsp/pressure.hpp"

using namespace wsp;

TEST_CASE("spectral pressure of a single Fourier mode") {
  const Grid g = Grid::make(2, 32, std::numbers::pi);
  const TensorField mode = TensorField::sample(g, [](const Point& x, double* out) {
    out[0] = std::cos(x[0] + 2 * x[1]);
    out[1] = out[2] = out[3] = 0.0;
  });
  const ScalarField p = spectral_pressure(mode, 1.0);
  const ScalarField e = ScalarField::sample(g, [](const Point& x) { return -0.2 * std::cos(x[0] + 2 * x[1]); });
  CHECK((p - e).max_abs() < 1e-12);
  CHECK_THROWS_AS(spectral_pressure(mode, 0.5), ParameterError);
  CHECK(enlarged_points(32, 2.0) == 64);
}

TEST_CASE("spectral Poisson identity holds to rounding") {
  const Grid g = Grid::make(2, 32, 6.0);
  const TensorField h = source_tensor(fixtures::HeatVortex{}.sample_velocity(g, 0.0), nullptr);
  CHECK(spectral_poisson_identity(h, 2.0) < 1e-10);
}

TEST_CASE("closed form of the heat-smoothed kernel matches the quadrature") {
  for (int d : {2, 3})
    for (double tau : {0.3, 2.0})
      CHECK(heat_third_closed_form({0.7, -0.2, 0.4}, tau, 0, 1, 1, d) ==
            doctest::Approx(heat_smoothed_third_kernel({0.7, -0.2, 0.4}, tau, 0, 1, 1, d)).epsilon(1e-8));
}

TEST_CASE("quadrature convolver equals the fast path at oversample 1") {
  const Grid g = Grid::make(2, 16, 4.0);
  const CutoffSpec sp{2.0, 5.0};
  const SourceFn src = [](const Point& x) {
    const double r2 = dot(x, x, 2) / 14.0625;
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  };
  const ScalarField h = ScalarField::sample(g, src);
  const ScalarField fast = near_field_conv(h, 0, 1, sp);
  const Point probe{1.0, 0.5, 0.0};
  const OracleKernelSpec ks{OracleKernel::NearPv, 0, 1, 0, sp, 1.0};
  const double ref = quadrature_conv(ks, g, src, {probe}, 1)[0];
  CHECK(fast.at({10, 9, 0}) == doctest::Approx(ref).epsilon(1e-10));
  CHECK_THROWS_AS(quadrature_conv(ks, g, src, {probe}, 3), ParameterError);
}

TEST_CASE("compare_fields and mean removal") {
  const Grid g = Grid::make(2, 8, 1.0);
  const ScalarField a = ScalarField::constant(g, 2.0);
  CHECK(compare_fields({a}, {a}).relative_l2 == 0.0);
  CHECK(remove_interior_mean(a).max_abs() == 0.0);
  CHECK_THROWS_AS(compare_fields({a, a}, {a}), StructuralError);
}
