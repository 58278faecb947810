#include <doctest.h>

#include <cmath>

#include "wsp/fixtures.hpp"
#include "wsp/leray.hpp"
#include "wsp/operators.hpp"

using namespace wsp;

TEST_CASE("leray projection splits w exactly and leaves solenoidal data alone") {
  const Grid g = Grid::make(2, 64, 8.0);
  const fixtures::Gaussian psi{1.0, 1.75, 2};
  const HodgeParts sol = leray_project(fixtures::solenoidal_stress(g, psi));
  CHECK(interior_max(sol.solenoidal + sol.gradient_part - sol.w) <= 1e-14 * interior_max(sol.w));
  CHECK(interior_l2(sol.gradient_part) / interior_l2(sol.w) < 5e-3);
  const HodgeParts grad = leray_project(fixtures::gradient_stress(g, psi));
  CHECK(interior_l2(grad.solenoidal) / interior_l2(grad.w) < 5e-3);
}

TEST_CASE("leray projection is linear") {
  const Grid g = Grid::make(2, 32, 4.0);
  const fixtures::Gaussian a{1.0, 0.75, 2}, b{-0.5, 0.5, 2};
  const TensorField Ha = fixtures::solenoidal_stress(g, a), Hb = fixtures::gradient_stress(g, b);
  const VectorField lhs = leray_project(Ha + 3.0 * Hb).solenoidal;
  const VectorField rhs = leray_project(Ha).solenoidal + 3.0 * leray_project(Hb).solenoidal;
  CHECK((lhs - rhs).max_norm() <= 1e-12 * rhs.max_norm());
}

TEST_CASE("ns residual of the forced solution is second-order small") {
  const auto fs = fixtures::forced_solution(2);
  std::vector<double> res;
  for (int n : {32, 64}) {
    const Grid g = Grid::make(2, n, 4.0);
    std::vector<VectorField> us;
    std::vector<TensorField> Fs;
    std::vector<ScalarField> ps;
    const double dt = 0.8 / n;
    for (double t : fixtures::uniform_times(0.0, dt, 5)) {
      us.push_back(fs.sample_velocity(g, t));
      Fs.push_back(fs.sample_forcing(g, t));
      ps.push_back(fs.sample_pressure(g, t));
    }
    const TensorSeries F(Fs);
    const VectorSeries r = ns_residual(VectorSeries(us), &F, ScalarSeries(ps));
    res.push_back(interior_l2(r[2], 2));
  }
  CHECK(res[0] / res[1] > 3.0);
}

TEST_CASE("suitability battery is seeded and reproducible") {
  const Grid g = Grid::make(2, 64, 8.0);
  const auto a = suitability_battery(g, 0.0, 1.0, 7);
  const auto b = suitability_battery(g, 0.0, 1.0, 7);
  const auto c = suitability_battery(g, 0.0, 1.0, 8);
  REQUIRE(a.size() == 28);
  bool same = true, differ = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    same = same && a[k].center == b[k].center && a[k].radius == b[k].radius && a[k].t_lo == b[k].t_lo;
    differ = differ || a[k].center != c[k].center;
  }
  CHECK(same);
  CHECK(differ);
  for (const auto& f : a) {
    CHECK(f.time(f.t_lo) == 0.0);
    CHECK(f.space(f.center, 2) == 1.0);
  }
}

TEST_CASE("test function support is checked") {
  const Grid g = Grid::make(2, 32, 4.0);
  std::vector<VectorField> u;
  std::vector<ScalarField> p;
  for (double t : {0.0, 0.1, 0.2, 0.3}) {
    u.push_back(VectorField::zeros(g, t));
    p.push_back(ScalarField::zeros(g, t));
  }
  const TestFunction outside{"edge", {3.5, 0.0, 0.0}, 1.0, 0.05, 0.25};
  CHECK_THROWS_AS(suitability_residual(VectorSeries(u), ScalarSeries(p), nullptr, outside), ParameterError);
  const TestFunction inside{"ok", {0.0, 0.0, 0.0}, 1.0, 0.05, 0.25};
  const auto r = suitability_residual(VectorSeries(u), ScalarSeries(p), nullptr, inside);
  CHECK(r.mu_value == 0.0);
}
