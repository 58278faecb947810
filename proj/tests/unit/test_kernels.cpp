#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "wsp/kernels.hpp"

using namespace wsp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("green function and hessian closed values") {
  CHECK(green_function({1, 0, 0}, 3) == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-15));
  CHECK(green_function({0, 1, 0}, 2) == 0.0);
  CHECK(hessian_green({1, 0, 0}, 0, 0, 3) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-15));
  CHECK(hessian_green({1, 0, 0}, 0, 0, 2) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-15));
  CHECK_THROWS_AS(hessian_green({0, 0, 0}, 0, 1, 2), SingularityError);
  CHECK_THROWS_AS(green_function({0, 0, 0}, 3), SingularityError);
  CHECK_THROWS_AS(hessian_green({1, 0, 0}, 0, 3, 3), ParameterError);
  CHECK_THROWS_AS(green_function({1, 0, 0}, 4), ParameterError);
}

TEST_CASE("hessian: symmetry, trace-free, homogeneity of degree -d") {
  for (int d : {2, 3})
    for (const Point& x : {Point{0.7, -0.2, 0.4}, Point{-3.0, 1.0, 2.0}}) {
      double tr = 0.0;
      for (int i = 0; i < d; ++i) {
        tr += hessian_green(x, i, i, d);
        for (int j = 0; j < d; ++j) {
          CHECK(hessian_green(x, i, j, d) == hessian_green(x, j, i, d));
          const Point y{2.5 * x[0], 2.5 * x[1], 2.5 * x[2]};
          CHECK(hessian_green(y, i, j, d) * std::pow(2.5, d) ==
                doctest::Approx(hessian_green(x, i, j, d)).epsilon(1e-13));
        }
      }
      CHECK(std::abs(tr) < 1e-14);
    }
}

TEST_CASE("cutoff plateaus and kernel split") {
  const CutoffSpec sp{1.0, 2.0};
  CHECK(cutoff_radial(0.0, sp) == 1.0);
  CHECK(cutoff_radial(1.0, sp) == 1.0);
  CHECK(cutoff_radial(2.0, sp) == 0.0);
  CHECK(cutoff_radial(1.5, sp) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(CutoffSpec::make(2.0, 1.0), ParameterError);
  for (int d : {2, 3}) {
    CHECK(far_kernel({0, 0, 0}, 0, 1, sp, d) == 0.0);
    CHECK(far_kernel({0.9, 0, 0}, 0, 0, sp, d) == 0.0);
    const Point x{1.2, 0.6, 0.1};
    CHECK(far_kernel(x, 0, 1, sp, d) + near_kernel(x, 0, 1, sp, d) ==
          doctest::Approx(hessian_green(x, 0, 1, d)).epsilon(1e-14));
  }
  CHECK(far_kernel({4, 0, 0}, 0, 0, sp, 3) == doctest::Approx(1.0 / (128 * kPi)).epsilon(1e-15));
}

TEST_CASE("heat kernel mass and origin value") {
  CHECK(heat_kernel({0, 0, 0}, 0.25, 3) == doctest::Approx(std::pow(kPi, -1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(heat_kernel({0, 0, 0}, 0.0, 2), ParameterError);
}

// Reference values from an independent arbitrary-precision quadrature.
TEST_CASE("heat-smoothed third kernel against frozen reference values") {
  struct Ref {
    Point x;
    double tau;
    int k, i, j, d;
    double value;
  };
  const Ref refs[] = {
      {{0.7, -0.2, 0.0}, 0.3, 0, 0, 1, 2, -0.0078843005612535143},
      {{0.7, -0.2, 0.0}, 0.3, 1, 1, 1, 2, -0.048966191807782789},
      {{0.7, -0.2, 0.4}, 1.0, 0, 1, 2, 3, 3.9278275623633135e-5},
      {{0.7, -0.2, 0.4}, 1.0, 0, 0, 0, 3, 0.0039299277068500591},
      {{2.0, 1.0, -1.5}, 0.25, 2, 2, 1, 3, -0.0008396484681534315},
  };
  for (const Ref& r : refs)
    CHECK(heat_smoothed_third_kernel(r.x, r.tau, r.k, r.i, r.j, r.d) ==
          doctest::Approx(r.value).epsilon(1e-10));
}

TEST_CASE("heat-smoothed third kernel: parabolic scaling, symmetry, origin") {
  for (int d : {2, 3}) {
    CHECK(heat_smoothed_third_kernel({0, 0, 0}, 1.0, 0, 0, 0, d) == 0.0);
    const Point x{0.7, -0.2, d == 3 ? 0.4 : 0.0};
    for (double lambda : {2.0, 3.0}) {
      const Point y{lambda * x[0], lambda * x[1], lambda * x[2]};
      CHECK(heat_smoothed_third_kernel(y, lambda * lambda * 0.5, 0, 1, 1, d) * std::pow(lambda, d + 1) ==
            doctest::Approx(heat_smoothed_third_kernel(x, 0.5, 0, 1, 1, d)).epsilon(1e-7));
    }
    CHECK(heat_smoothed_third_kernel(x, 0.5, 0, 1, 0, d) ==
          doctest::Approx(heat_smoothed_third_kernel(x, 0.5, 1, 0, 0, d)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(heat_smoothed_third_kernel({1, 0, 0}, 0.0, 0, 0, 0, 2), ParameterError);
}

TEST_CASE("spherical average of the hessian vanishes") {
  for (int d : {2, 3})
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(std::abs(spherical_average([&](const Point& x) { return hessian_green(x, i, j, d); }, 1.5, d)) <
              1e-12);
}

TEST_CASE("weighted convolution integral against frozen reference values") {
  CHECK(weighted_convolution_integral(4, 3, 3, 2) == doctest::Approx(0.0312641071271032).epsilon(1e-8));
  CHECK(weighted_convolution_integral(10, 2, 3, 2) == doctest::Approx(0.0281972683508158).epsilon(1e-8));
  CHECK(weighted_convolution_integral(4, 4, 4, 3) == doctest::Approx(0.00654169784948857).epsilon(1e-8));
  CHECK(weighted_convolution_integral(0, 3, 3, 2) == doctest::Approx(kPi / 10).epsilon(1e-8));
  CHECK(hessian_decay_constant(2) == doctest::Approx(1.0 / (2 * kPi)));
  CHECK(hessian_decay_constant(3) == doctest::Approx(1.0 / (2 * kPi)));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussRule& r = gauss_legendre(8);
  double s = 0.0;
  for (std::size_t k = 0; k < r.x.size(); ++k) s += r.w[k] * std::pow(r.x[k], 14);
  CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("kernel table save and load") {
  const Grid g = Grid::make(2, 8, 2.0);
  const CutoffSpec sp{0.5, 1.0};
  const KernelTable t = make_kernel_table(g, KernelId::Near, 0, 1, 0, sp);
  REQUIRE(t.singular_node);
  CHECK(t.values[*t.singular_node] == 0.0);
  const auto path = std::filesystem::temp_directory_path() / "wsp_kernel_table.fld";
  save_kernel_table(path.string(), t);
  const KernelTable back = load_kernel_table(path.string(), sp);
  CHECK(back.id == KernelId::Near);
  CHECK(back.i == 0);
  CHECK(back.j == 1);
  CHECK(back.singular_node == t.singular_node);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(back.values[n] == t.values[n]);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_kernel_table(path.string(), sp), IoError);
}
