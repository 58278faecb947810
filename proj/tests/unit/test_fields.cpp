#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wsp/field_io.hpp"
#include "wsp/fixtures.hpp"
#include "wsp/operators.hpp"
#include "wsp/parallel.hpp"

using namespace wsp;

TEST_CASE("grid validation and indexing") {
  CHECK_THROWS_AS(Grid::make(4, 8, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid::make(2, 7, 1.0), ParameterError);
  CHECK_THROWS_AS(Grid::make(2, 8, -1.0), ParameterError);
  const Grid g = Grid::make(3, 8, 2.0);
  CHECK(g.spacing() == doctest::Approx(0.5));
  CHECK(g.size() == 512);
  for (std::size_t n : {0ul, 17ul, 511ul}) CHECK(g.flatten(g.unflatten(n)) == n);
  REQUIRE(g.zero_node());
  CHECK(norm(g.node(*g.zero_node()), 3) == 0.0);
  CHECK(g.coord(0, 0) == -2.0);
}

TEST_CASE("field construction rejects bad input") {
  const Grid g = Grid::make(2, 4, 1.0);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(15, 0.0)), StructuralError);
  std::vector<double> v(16, 0.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(ScalarField(g, v), InvalidFieldError);
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(16, 0.0), std::nan("")), InvalidFieldError);
  const ScalarField a = ScalarField::constant(g, 1.0, 0.0), b = ScalarField::constant(g, 1.0, 0.5);
  CHECK_THROWS_AS(VectorField({a, b}), StructuralError);
  CHECK_THROWS_AS(a + ScalarField::constant(Grid::make(2, 8, 1.0), 1.0), StructuralError);
  std::vector<ScalarField> comps{a, 2.0 * a, a, a};
  CHECK_THROWS_AS(TensorField(comps, true), StructuralError);
}

TEST_CASE("weighted norm: unit box, homogeneity, monotone in gamma") {
  const Grid unit = Grid::make(2, 16, 1.0);
  CHECK(weighted_lp_norm(ScalarField::constant(unit, 1.0), 2.0, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
  const Grid g = Grid::make(2, 32, 3.0);
  const fixtures::Gaussian q{1.0, 0.5, 2};
  const ScalarField f = ScalarField::sample(g, [&](const Point& x) { return q.value(x); });
  for (double lambda : {-3.0, 0.5, 7.0})
    CHECK(weighted_lp_norm(lambda * f, 3.0, 1.0) ==
          doctest::Approx(std::abs(lambda) * weighted_lp_norm(f, 3.0, 1.0)).epsilon(1e-14));
  for (double gam = 0.0; gam < 3.0; gam += 0.5)
    CHECK(weighted_lp_norm(f, 2.0, gam) >= weighted_lp_norm(f, 2.0, gam + 0.5));
}

TEST_CASE("difference operators are exact on low-degree polynomials") {
  const Grid g = Grid::make(2, 16, 2.0);
  const ScalarField quad = ScalarField::sample(g, [](const Point& x) { return x[0] * x[0] + 3 * x[0] * x[1]; });
  const ScalarField lap = laplacian(quad);
  CHECK(interior_max(lap - ScalarField::constant(g, 2.0), 0) < 1e-11);
  const VectorField gq = gradient(quad);
  CHECK(interior_max(gq[0] - ScalarField::sample(g, [](const Point& x) { return 2 * x[0] + 3 * x[1]; }), 0) < 1e-11);
  CHECK(interior_max(curl(gq)[0]) < 1e-12);
  const VectorField rot = VectorField::sample(g, [](const Point& x) { return Point{-x[1], x[0], 0.0}; });
  CHECK(interior_max(divergence(rot)) < 1e-12);
}

TEST_CASE("poincare potential inverts the gradient of a linear function") {
  const Grid g = Grid::make(2, 16, 2.0);
  const VectorField c = VectorField::sample(g, [](const Point&) { return Point{0.5, -1.5, 0.0}; });
  const ScalarField q = poincare_potential(c);
  CHECK(interior_max(q - ScalarField::sample(g, [](const Point& x) { return 0.5 * x[0] - 1.5 * x[1]; }), 0) < 1e-12);
}

TEST_CASE("time derivative is exact on quadratics in t, nonuniform spacing") {
  const Grid g = Grid::make(2, 4, 1.0);
  std::vector<ScalarField> frames;
  for (double t : {0.0, 0.1, 0.3, 0.35, 0.8}) frames.push_back(ScalarField::constant(g, t * t - t, t));
  const ScalarSeries dt = time_derivative(ScalarSeries(frames));
  for (std::size_t k = 0; k < dt.size(); ++k) CHECK(dt[k][0] == doctest::Approx(2 * dt.times()[k] - 1).epsilon(1e-12));
  CHECK_THROWS(time_derivative(ScalarSeries({frames[0], frames[1]})));
}

TEST_CASE("time series requires increasing times") {
  const Grid g = Grid::make(2, 4, 1.0);
  CHECK_THROWS_AS(ScalarSeries({ScalarField::zeros(g, 1.0), ScalarField::zeros(g, 1.0)}), ParameterError);
}

TEST_CASE("FLD1 round trip is bit exact") {
  const Grid g = Grid::make(3, 4, 1.5);
  const VectorField v = VectorField::sample(
      g, [](const Point& x) { return Point{std::sin(x[0]) / 3, 1e-310 * x[1], -x[2] / 7}; }, 0.3);
  std::stringstream ss;
  write_record(ss, to_record(v));
  write_record(ss, to_record(v.with_time(0.4)));
  const auto recs = read_records(ss);
  REQUIRE(recs.size() == 2);
  const VectorField back = vector_from_record(recs[0]);
  CHECK(back.time() == 0.3);
  for (int c = 0; c < 3; ++c)
    for (std::size_t n = 0; n < g.size(); ++n) CHECK(back[c][n] == v[c][n]);
  CHECK_THROWS_AS(scalar_from_record(recs[0]), StructuralError);
}

TEST_CASE("FLD1 errors carry the byte offset") {
  const Grid g = Grid::make(2, 4, 1.0);
  std::stringstream full;
  write_record(full, to_record(ScalarField::constant(g, 1.0)));
  const std::string bytes = full.str();
  REQUIRE(bytes.size() == 36 + 16 * 8);

  auto offset_of = [](const std::string& data) -> std::uint64_t {
    std::stringstream ss(data);
    try {
      read_records(ss);
    } catch (const IoError& e) {
      return e.offset();
    }
    return ~0ull;
  };
  CHECK(offset_of(bytes.substr(0, 100)) == 100);
  CHECK(offset_of(bytes.substr(0, 10)) == 10);
  CHECK(offset_of(bytes + "FLD2") == bytes.size());
  std::string bad_version = bytes;
  bad_version[4] = 9;
  CHECK(offset_of(bad_version) == 4);
  std::string bad_kind = bytes;
  bad_kind[12] = 5;
  CHECK(offset_of(bad_kind) == 12);
  CHECK(offset_of("") == 0);
}

TEST_CASE("deterministic sum does not depend on the worker count") {
  const std::size_t n = 3 * kReductionBlock + 17;
  auto term = [](std::size_t i) { return std::sin(0.37 * static_cast<double>(i)) * 1e3 + 1e-7; };
  const double one = deterministic_sum(n, ExecPolicy{1}, term);
  for (int w : {2, 3, 8}) CHECK(deterministic_sum(n, ExecPolicy{w}, term) == one);
}
