#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trop/ball_rule.hpp"
#include "trop/kernel.hpp"
#include "trop/quadrature.hpp"
#include "test_util.hpp"

using namespace trop;
using testutil::Rng;

namespace {

Box box1(double lo, double hi) {
  Box b;
  b.lower = make_vec({lo});
  b.upper = make_vec({hi});
  return b;
}

Box box2(double lo, double hi) {
  Box b;
  b.lower = make_vec({lo, lo});
  b.upper = make_vec({hi, hi});
  return b;
}

AffineSet axis_line(int dim, int axis, double value) {
  Mat a = Mat::Zero(1, dim);
  a(0, axis) = 1.0;
  Vec b(1);
  b(0) = value;
  return AffineSet(a, b);
}

double slope_fit(const std::vector<double>& logx, const std::vector<double>& logy) {
  const std::size_t n = logx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += logx[i];
    sy += logy[i];
    sxx += logx[i] * logx[i];
    sxy += logx[i] * logy[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("inverse square root on the unit interval") {
  auto f = [](const Vec& y) { return std::pow(std::abs(y(0)), -0.5); };
  QuadResult r = adaptive_integrate(f, box1(0.0, 1.0), 1e-7, {axis_line(1, 0, 0.0)});
  CHECK(!r.flagged);
  CHECK(std::abs(r.value - 2.0) / 2.0 < 1e-6);
  CHECK(r.singular_cells > 0);
}

TEST_CASE("point singular integral over the disc") {
  // |y|^{-1} over the unit disc, as an iterated integral: the slice over y2
  // has the near-singular pinch at y2 = 0, the outer integral the resulting
  // logarithmic singularity at y1 = 0.
  bool inner_flagged = false;
  auto outer = [&](const Vec& y1v) {
    const double y1 = y1v(0);
    if (y1 == 0.0) throw singular_point_error("slice through the pole diverges");
    const double s = std::sqrt(std::max(0.0, 1.0 - y1 * y1));
    auto slice = [&](const Vec& y2v) {
      return 1.0 / std::hypot(y1, y2v(0));
    };
    // The pinch scale |y1| can sit far below the slice width when the outer
    // integral grades toward its logarithmic singularity; allow the depth.
    QuadResult inner = adaptive_integrate(slice, box1(-s, s), 2e-8, {axis_line(1, 0, 0.0)},
                                          QuadOptions{.max_depth = 110});
    inner_flagged = inner_flagged || inner.flagged;
    return inner.value;
  };
  QuadResult r = adaptive_integrate(outer, box1(-1.0, 1.0), 1e-7, {axis_line(1, 0, 0.0)});
  CHECK(!r.flagged);
  CHECK(!inner_flagged);
  CHECK(std::abs(r.value - 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi) < 1e-6);
}

TEST_CASE("product singularity on the square") {
  auto f = [](const Vec& y) {
    return std::pow(std::abs(y(0)), -0.5) * std::pow(std::abs(y(1)), -0.5);
  };
  QuadResult r = adaptive_integrate(f, box2(-1.0, 1.0), 1e-7,
                                    {axis_line(2, 0, 0.0), axis_line(2, 1, 0.0)},
                                    QuadOptions{.max_evaluations = 10'000'000});
  CHECK(!r.flagged);
  CHECK(std::abs(r.value - 16.0) / 16.0 < 1e-6);
}

TEST_CASE("riesz block application in one dimension") {
  auto g = [](const Vec&) { return 1.0; };

  SUBCASE("at the center of the support") {
    QuadResult r = riesz_block_apply(0.5, g, box1(-1.0, 1.0), make_vec({0.0}), 1e-7);
    CHECK(!r.flagged);
    CHECK(std::abs(r.value - 4.0) / 4.0 < 1e-5);
  }

  SUBCASE("far field approaches |x|^{alpha-d} times the mass") {
    std::vector<double> errs;
    for (double x : {10.0, 20.0, 40.0}) {
      QuadResult r = riesz_block_apply(0.5, g, box1(-1.0, 1.0), make_vec({x}), 1e-8);
      const double predicted = std::pow(x, -0.5) * 2.0;
      errs.push_back(std::abs(r.value - predicted) / r.value);
    }
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
    CHECK(errs[2] < 2e-4);
  }

  SUBCASE("mean-zero data decays one power faster") {
    auto gz = [](const Vec& y) { return y(0); };
    std::vector<double> lx, ly;
    for (double x : {8.0, 16.0, 32.0, 64.0, 128.0}) {
      QuadResult r = riesz_block_apply(0.5, gz, box1(-1.0, 1.0), make_vec({x}), 1e-9);
      lx.push_back(std::log(x));
      ly.push_back(std::log(std::abs(r.value)));
    }
    const double slope = slope_fit(lx, ly);
    CHECK(std::abs(slope - (0.5 - 1.0 - 1.0)) < 0.05);
  }

  SUBCASE("alpha outside (0,d) is rejected") {
    CHECK_THROWS_AS(riesz_block_apply(1.5, g, box1(-1, 1), make_vec({0.0}), 1e-6),
                    std::invalid_argument);
  }
}

TEST_CASE("tensor application") {
  SUBCASE("unit kernels on the unit square") {
    std::vector<BlockKernel> kernels(2);
    for (auto& k : kernels) {
      k.dim = 1;
      k.eval = [](const Vec&, const Vec&) { return 1.0; };
    }
    auto f = [](const Vec&) { return 1.0; };
    std::vector<Box> supports = {box1(0.0, 1.0), box1(0.0, 1.0)};
    QuadResult r = tensor_apply(kernels, f, supports, make_vec({0.5, 0.5}), 1e-8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("separable data factorizes (Fubini)") {
    auto riesz_half = [](const Vec& x, const Vec& y) {
      const double d = (x - y).norm();
      return std::pow(d, -0.5);
    };
    std::vector<BlockKernel> kernels(2);
    for (auto& k : kernels) {
      k.dim = 1;
      k.eval = riesz_half;
      k.diagonal_singular = true;
    }
    auto g1 = [](const Vec& y) { return 1.0 - y(0) * y(0); };
    auto g2 = [](const Vec& y) { return std::cos(y(0)); };
    auto f = [&](const Vec& y) { return g1(Vec(y.segment(0, 1))) * g2(Vec(y.segment(1, 1))); };

    const Vec x = make_vec({0.3, -0.2});
    std::vector<Box> supports = {box1(-1.0, 1.0), box1(-1.0, 1.0)};
    QuadResult joint = tensor_apply(kernels, f, supports, x, 1e-7);
    QuadResult f1 = riesz_block_apply(0.5, g1, supports[0], Vec(x.segment(0, 1)), 1e-8);
    QuadResult f2 = riesz_block_apply(0.5, g2, supports[1], Vec(x.segment(1, 1)), 1e-8);
    CHECK(joint.value == doctest::Approx(f1.value * f2.value).epsilon(1e-6));
  }

  SUBCASE("non-separable data against a direct 2-d quadrature") {
    auto riesz_half = [](const Vec& x, const Vec& y) {
      return std::pow((x - y).norm(), -0.5);
    };
    std::vector<BlockKernel> kernels(2);
    for (auto& k : kernels) {
      k.dim = 1;
      k.eval = riesz_half;
      k.diagonal_singular = true;
    }
    auto f = [](const Vec& y) { return std::exp(-y(0) * y(1)) + 0.2 * y(0); };
    const Vec x = make_vec({0.25, -0.4});
    std::vector<Box> supports = {box1(-1.0, 1.0), box1(-1.0, 1.0)};
    QuadResult iterated = tensor_apply(kernels, f, supports, x, 2e-6);

    auto direct_integrand = [&](const Vec& y) {
      const double d1 = std::abs(x(0) - y(0));
      const double d2 = std::abs(x(1) - y(1));
      if (d1 == 0.0 || d2 == 0.0) return 0.0;
      return std::pow(d1, -0.5) * std::pow(d2, -0.5) * f(y);
    };
    QuadResult direct = adaptive_integrate(
        direct_integrand, box2(-1.0, 1.0), 1e-6,
        {axis_line(2, 0, x(0)), axis_line(2, 1, x(1))},
        QuadOptions{.max_evaluations = 20'000'000});
    CHECK(!direct.flagged);
    CHECK(iterated.value == doctest::Approx(direct.value).epsilon(1e-4));
  }
}

TEST_CASE("linearity of the adaptive integral") {
  auto f = [](const Vec& y) { return std::pow(std::abs(y(0)), -0.5); };
  auto g = [](const Vec& y) { return std::cos(3.0 * y(0)); };
  const double a = 1.7, b = -0.6;
  auto combo = [&](const Vec& y) { return a * f(y) + b * g(y); };
  const Box dom = box1(0.0, 1.0);
  const std::vector<AffineSet> sets = {axis_line(1, 0, 0.0)};
  const double tol = 1e-8;
  QuadResult rf = adaptive_integrate(f, dom, tol, sets);
  QuadResult rg = adaptive_integrate(g, dom, tol);
  QuadResult rc = adaptive_integrate(combo, dom, tol, sets);
  const double expect = a * rf.value + b * rg.value;
  CHECK(std::abs(rc.value - expect) <=
        std::abs(a) * rf.error_estimate + std::abs(b) * rg.error_estimate +
            rc.error_estimate + 1e-12 * std::abs(expect));
}

TEST_CASE("halving the tolerance never worsens the reference error") {
  auto f = [](const Vec& y) { return std::pow(std::abs(y(0)), -0.5); };
  const std::vector<AffineSet> sets = {axis_line(1, 0, 0.0)};
  double prev_err = 1e300;
  for (double tol = 1e-2; tol >= 1e-6; tol /= 2.0) {
    QuadResult r = adaptive_integrate(f, box1(0.0, 1.0), tol, sets);
    const double err = std::abs(r.value - 2.0);
    CHECK(err <= tol * 2.0);
    CHECK(err <= prev_err * (1.0 + 1e-9) + 1e-15);
    prev_err = err;
  }
}

TEST_CASE("budget exhaustion flags the result") {
  auto f = [](const Vec& y) { return std::pow(std::abs(y(0)), -0.9); };
  QuadOptions options;
  options.max_evaluations = 200;
  QuadResult r = adaptive_integrate(f, box1(0.0, 1.0), 1e-10, {axis_line(1, 0, 0.0)}, options);
  CHECK(r.flagged);
}

TEST_CASE("near-cancelling integrands terminate gracefully") {
  auto f = [](const Vec& y) { return y(0); };
  QuadResult r = adaptive_integrate(f, box1(-1.0, 1.0), 1e-8);
  CHECK(std::abs(r.value) < 1e-12);
  CHECK(!r.flagged);
}

TEST_CASE("domain validation") {
  auto f = [](const Vec&) { return 1.0; };
  Box bad = box1(1.0, 0.0);
  CHECK_THROWS_AS(adaptive_integrate(f, bad, 1e-6), std::invalid_argument);
  Box five;
  five.lower = Vec::Zero(5);
  five.upper = Vec::Ones(5);
  CHECK_THROWS_AS(adaptive_integrate(f, five, 1e-6), std::invalid_argument);
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre(4, nodes, weights);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * std::pow(nodes[i], 6);
  CHECK(acc == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("ball rules are polynomial-exact") {
  SUBCASE("volumes in dimensions 1 through 4") {
    for (int dim = 1; dim <= 4; ++dim) {
      const double radius = 0.75;
      const double vol = integrate_over_ball([](const Vec&) { return 1.0; },
                                             Vec(Vec::Zero(dim)), radius, 0);
      CHECK(vol == doctest::Approx(unit_ball_volume(dim) * std::pow(radius, dim)).epsilon(1e-12));
    }
  }
  SUBCASE("quadratic moment over the 3-ball") {
    const double radius = 1.3;
    const double val = integrate_over_ball([](const Vec& v) { return v(0) * v(0); },
                                           Vec(Vec::Zero(3)), radius, 2);
    const double expect = 4.0 * std::numbers::pi / 15.0 * std::pow(radius, 5);
    CHECK(val == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("odd moments vanish") {
    for (int dim = 2; dim <= 4; ++dim) {
      const double val = integrate_over_ball([](const Vec& v) { return v(0); },
                                             Vec(Vec::Zero(dim)), 1.0, 1);
      CHECK(std::abs(val) < 1e-14);
    }
  }
  SUBCASE("translated center") {
    const Vec center = make_vec({2.0, -1.0});
    const double val = integrate_over_ball([&](const Vec& y) { return y(0); }, center, 0.5, 1);
    CHECK(val == doctest::Approx(2.0 * std::numbers::pi * 0.25).epsilon(1e-12));
  }
  SUBCASE("degree-8 polynomial over the 4-ball against a product formula") {
    // v1^2 v3^4: separates over the 2+2 split.
    const double val = integrate_over_ball(
        [](const Vec& v) { return v(0) * v(0) * std::pow(v(2), 4); }, Vec(Vec::Zero(4)), 1.0, 8);
    // Exact value: S_sigma / (n + |sigma|), sigma = (2,0,4,0), n = 4.
    // S_sigma = 2 * Gamma(3/2) Gamma(1/2) Gamma(5/2) Gamma(1/2) / Gamma(5)
    //         = 2 * (1/2) (3/4) pi^2 / 24 = pi^2 / 32.
    const double expect = (std::numbers::pi * std::numbers::pi / 32.0) / 10.0;
    CHECK(val == doctest::Approx(expect).epsilon(1e-12));
  }
}
