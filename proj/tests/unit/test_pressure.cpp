#include <doctest.h>

#include <cmath>
#include <random>

#include "wsp/fixtures.hpp"
#include "wsp/lattice_convolution.hpp"
#include "wsp/operators.hpp"
#include "wsp/pressure.hpp"

using namespace wsp;

namespace {

ScalarField random_field(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return ScalarField(g, std::move(v));
}

}  // namespace

TEST_CASE("lattice convolution: FFT and direct sums agree") {
  const Grid g = Grid::make(2, 16, 2.0);
  const ScalarField src = random_field(g, 3);
  auto kernel = [](const Point& y) { return std::exp(-dot(y, y, 2)) * (1.0 + y[0]); };
  LatticeConvolver fft(g, ConvolutionMethod::Fft), direct(g, ConvolutionMethod::Direct);
  fft.add(-1, kernel, src.values());
  direct.add(-1, kernel, src.values());
  const auto a = fft.take(), b = direct.take();
  for (std::size_t n = 0; n < a.size(); ++n) CHECK(a[n] == doctest::Approx(b[n]).epsilon(1e-12).scale(1.0));
  CHECK(fft.uses_fft());
  CHECK_FALSE(direct.uses_fft());
}

TEST_CASE("near-field convolution of a constant is minus delta_ij/d times it") {
  const Grid g = Grid::make(3, 32, 2.0);
  const ScalarField three = ScalarField::constant(g, 3.0);
  CHECK(near_field_conv(three, 0, 0, {0.5, 1.0}).at({16, 16, 16}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(near_field_conv(three, 0, 1, {0.5, 1.0}).at({16, 16, 16})) < 1e-12);
}

TEST_CASE("resolution check rejects coarse grids") {
  const Grid g = Grid::make(2, 16, 4.0);
  CHECK_THROWS_AS(near_field_conv(ScalarField::zeros(g), 0, 0, {1.0, 2.0}), ResolutionError);
  CHECK_NOTHROW(near_field_conv(ScalarField::zeros(g), 0, 0, {2.0, 3.0}));
}

TEST_CASE("convolution operators are linear and the zero field maps to zero") {
  const Grid g = Grid::make(2, 32, 4.0);
  const CutoffSpec sp{1.0, 2.0};
  const ScalarField a = random_field(g, 1), b = random_field(g, 2);
  const ScalarField lhs = far_field_corrected(a + 2.5 * b, 0, 1, sp);
  const ScalarField rhs = far_field_corrected(a, 0, 1, sp) + 2.5 * far_field_corrected(b, 0, 1, sp);
  CHECK((lhs - rhs).max_abs() <= 1e-12 * rhs.max_abs());
  const ScalarField nl = near_field_conv(a - 3.0 * b, 1, 1, sp);
  const ScalarField nr = near_field_conv(a, 1, 1, sp) - 3.0 * near_field_conv(b, 1, 1, sp);
  CHECK((nl - nr).max_abs() <= 1e-12 * nr.max_abs());
  CHECK(far_field_plain(ScalarField::zeros(g), 0, 0, sp).field.max_abs() == 0.0);
}

TEST_CASE("corrected far field vanishes at the origin and differs from the plain one by a constant") {
  const Grid g = Grid::make(2, 32, 4.0);
  const CutoffSpec sp{1.0, 2.0};
  const ScalarField h = random_field(g, 5);
  const ScalarField corr = far_field_corrected(h, 0, 0, sp);
  REQUIRE(g.zero_node());
  CHECK(corr[*g.zero_node()] == 0.0);
  const PlainFarField plain = far_field_plain(h, 0, 0, sp);
  const double c = far_origin_constant(h, 0, 0, sp);
  CHECK((plain.field - corr - ScalarField::constant(g, c)).max_abs() <= 1e-12 * plain.field.max_abs());
  CHECK_FALSE(plain.regime_warning);
  CHECK(far_field_plain(h, 0, 0, sp, DecayClass::WdPlusOne).regime_warning);
}

TEST_CASE("pressure is homogeneous of degree one in h and symmetric in (i, j)") {
  const Grid g = Grid::make(2, 32, 4.0);
  const fixtures::HeatVortex v{0.5, 0.5};
  const TensorField h = source_tensor(v.sample_velocity(g, 0.0), nullptr);
  PressureAssembler pa(g, {});
  const ScalarField p = pa.p_phi(h);
  CHECK((pa.p_phi(-2.0 * h) + 2.0 * p).max_abs() <= 1e-12 * p.max_abs());
  const CutoffSpec sp{1.0, 2.0};
  CHECK((near_field_conv(h(0, 1), 0, 1, sp) - near_field_conv(h(0, 1), 1, 0, sp)).max_abs() == 0.0);
}

TEST_CASE("heat vortex pressure is recovered") {
  const Grid g = Grid::make(2, 128, 8.0);
  const fixtures::HeatVortex v{0.5, 0.5};
  const TensorField h = source_tensor(v.sample_velocity(g, 0.0), nullptr);
  const VectorField gp = gradient(PressureAssembler(g, {}).p_phi(h));
  const VectorField exact = v.sample_pressure_gradient(g, 0.0);
  CHECK(interior_l2(gp - exact) / interior_l2(exact) < 2e-2);
}

TEST_CASE("phi change constant matches the difference of p_phi for two cutoffs") {
  const Grid g = Grid::make(2, 128, 8.0);
  const TensorField h = source_tensor(fixtures::HeatVortex{0.5, 0.5}.sample_velocity(g, 0.0), nullptr);
  const CutoffSpec a{1.0, 2.0}, b{0.5, 3.0};
  const ScalarField diff = PressureAssembler(g, {a}).p_phi(h) - PressureAssembler(g, {b}).p_phi(h);
  const double c = phi_change_constant(h, a, b);
  CHECK((diff - ScalarField::constant(g, c)).max_abs() < 1e-10);
}

TEST_CASE("loglog slope and cumulative trapezoid") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 3.0 / 4, 3.0 / 16, 3.0 / 64}) == doctest::Approx(-2.0).epsilon(1e-14));
  const auto E = cumulative_trapezoid({0.0, 0.5, 1.5}, {Point{1, 0, 0}, Point{2, 0, 0}, Point{4, 0, 0}}, 2);
  CHECK(E[0][0] == 0.0);
  CHECK(E[1][0] == doctest::Approx(0.75));
  CHECK(E[2][0] == doctest::Approx(3.75));
}

TEST_CASE("parabolic probes map onto themselves under doubling") {
  const auto probes = parabolic_probes(2);
  std::size_t hits = 0;
  for (const Point& x : probes)
    for (const Point& y : probes)
      if (std::abs(y[0] - 2 * x[0]) + std::abs(y[1] - 2 * x[1]) < 1e-12) {
        ++hits;
        break;
      }
  CHECK(hits >= probes.size() / 2);
}

TEST_CASE("decompose rejects a source with curl") {
  const Grid g = Grid::make(2, 32, 4.0);
  std::vector<VectorField> s, u;
  for (double t : {0.0, 0.1, 0.2}) {
    s.push_back(VectorField::sample(g, [](const Point& x) { return Point{-x[1], x[0], 0.0}; }, t));
    u.push_back(VectorField::zeros(g, t));
  }
  CHECK_THROWS_AS(decompose_source(VectorSeries(s), VectorSeries(u), nullptr), NotAGradientError);
}

TEST_CASE("decompose recovers a constant drift rate") {
  const Grid g = Grid::make(2, 32, 4.0);
  std::vector<VectorField> s, u;
  const std::vector<double> times{0.0, 0.25, 0.5};
  for (double t : times) {
    s.push_back(VectorField::sample(g, [t](const Point&) { return Point{0.5 + t, -1.0, 0.0}; }, t));
    u.push_back(VectorField::zeros(g, t));
  }
  const PressureDecomposition d = decompose_source(VectorSeries(s), VectorSeries(u), nullptr);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(d.dg[k][0] == doctest::Approx(0.5 + times[k]).epsilon(1e-12));
    CHECK(d.dg[k][1] == doctest::Approx(-1.0).epsilon(1e-12));
  }
  CHECK(d.g.back()[0] == doctest::Approx(0.5 * 0.5 + 0.5 * 0.5 * 0.5).epsilon(1e-12));
}
