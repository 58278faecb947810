#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wsp/operators.hpp"
#include "wsp/spaces.hpp"

using namespace wsp;

namespace {

ScalarField gaussian(const Grid& g, double s) {
  return ScalarField::sample(g, [s](const Point& x) { return std::exp(-dot(x, x, 2) / (4 * s)); });
}

}  // namespace

TEST_CASE("b norm: homogeneity and monotone in gamma") {
  const Grid g = Grid::make(2, 64, 8.0);
  const ScalarField f = gaussian(g, 1.0);
  CHECK(b_norm(-3.0 * f, 2.0, 1.0).b_norm == doctest::Approx(3.0 * b_norm(f, 2.0, 1.0).b_norm).epsilon(1e-13));
  for (double gm = 0.0; gm < 2.0; gm += 0.5)
    CHECK(b_norm(f, 2.0, gm).b_norm >= b_norm(f, 2.0, gm + 0.5).b_norm);
  CHECK(b_norm(f, 2.0, 1.0).decay_flag);
  CHECK(b_norm(ScalarField::zeros(g), 2.0, 1.0).b_norm == 0.0);
}

TEST_CASE("b norm of the unit-ball indicator is close to sqrt(pi)") {
  const Grid g = Grid::make(2, 128, 8.0);
  const ScalarField ball = ScalarField::sample(g, [](const Point& x) { return norm(x, 2) <= 1.0 ? 1.0 : 0.0; });
  const NormReport r = b_norm(ball, 2.0, 0.5);
  CHECK(std::abs(r.b_norm * r.b_norm - std::numbers::pi) <= r.boundary_error);
  CHECK(r.sup_radius == 1.0);
}

TEST_CASE("b norm parameter checks") {
  CHECK_THROWS_AS(b_norm(ScalarField::zeros(Grid::make(2, 8, 0.5)), 2.0, 1.0), ParameterError);
  const Grid g = Grid::make(2, 8, 2.0);
  CHECK_THROWS_AS(b_norm(ScalarField::zeros(g), 0.5, 1.0), ParameterError);
  CHECK_THROWS_AS(b_norm(ScalarField::zeros(g), 2.0, -1.0), ParameterError);
  CHECK_THROWS_AS(dyadic_shell_constant(2.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("embedding ratios respect their bounds") {
  const Grid g = Grid::make(2, 64, 8.0);
  for (double s : {0.5, 2.0, 8.0}) {
    const EmbeddingRatios e = embedding_constants(gaussian(g, s), 2.0, 1.0, 3.0);
    CHECK(e.r1_ok);
    CHECK(e.r2_ok);
  }
  CHECK(embedding_constants(ScalarField::zeros(g), 2.0, 1.0, 3.0).undefined);
  CHECK(dyadic_shell_constant(2.0, 1.0, 3.0) == doctest::Approx(std::sqrt(1.0 + 8.0 / 3.0)));
}

TEST_CASE("interpolation split is exact and empty for A <= 1") {
  const Grid g = Grid::make(2, 32, 8.0);
  const ScalarField f = gaussian(g, 4.0);
  const InterpolationSplit s = interpolation_split(f, 4.0, 2.0, 1.0, 3.0);
  CHECK(s.R == doctest::Approx(std::pow(4.0, 2.0 / 3.0)));
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(s.f0[n] + s.f1[n] == f[n]);
  const InterpolationSplit low = interpolation_split(f, 0.5, 2.0, 1.0, 3.0);
  CHECK(low.f0.max_abs() == 0.0);
}

TEST_CASE("K-functional is nondecreasing, concave and below min(||f||_p, A ||f||_w)") {
  const Grid g = Grid::make(2, 32, 8.0);
  const ScalarField f = ScalarField::sample(g, [](const Point& x) { return std::pow(1.0 + norm(x, 2), -0.5); });
  std::vector<double> As, K;
  for (int k = 0; k <= 10; ++k) {
    As.push_back(0.25 * std::pow(2.0, 0.75 * k));
    K.push_back(k_functional(f, As.back(), 2.0, 1.0, 3.0));
    CHECK(K.back() <= weighted_lp_norm(f, 2.0, 0.0) * (1 + 1e-14));
    CHECK(K.back() <= As.back() * weighted_lp_norm(f, 2.0, 3.0) * (1 + 1e-14));
  }
  for (std::size_t k = 1; k < As.size(); ++k) CHECK(K[k] >= K[k - 1]);
  for (std::size_t k = 1; k + 1 < As.size(); ++k) {
    const double w = (As[k] - As[k - 1]) / (As[k + 1] - As[k - 1]);
    CHECK(K[k] >= (1 - w) * K[k - 1] + w * K[k + 1] - 1e-12 * K[k + 1]);
  }
  CHECK(k_functional(f, 2.0, 2.0, 1.0, 3.0, 32) >= k_functional(f, 2.0, 2.0, 1.0, 3.0) * (1 - 1e-14));
}
