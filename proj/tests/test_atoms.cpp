#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trop/atom.hpp"
#include "trop/ball_rule.hpp"
#include "trop/quadrature.hpp"
#include "test_util.hpp"

using namespace trop;
using testutil::Rng;

namespace {

AtomSpec spec_of(std::size_t n, double p, Vec center, double radius, std::uint64_t seed) {
  AtomSpec s;
  s.n = n;
  s.p = p;
  s.center = std::move(center);
  s.radius = radius;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("moment degree arithmetic") {
  CHECK(spec_of(1, 1.0, make_vec({0}), 1.0, 1).moment_degree() == 0);
  CHECK(spec_of(3, 0.75, Vec(Vec::Zero(3)), 1.0, 1).moment_degree() == 1);
  CHECK(spec_of(2, 0.5, Vec(Vec::Zero(2)), 1.0, 1).moment_degree() == 2);
  CHECK_THROWS_AS(spec_of(2, 1.5, Vec(Vec::Zero(2)), 1.0, 1).moment_degree(),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_of(2, 1.0, Vec(Vec::Zero(2)), -1.0, 1).moment_degree(),
                  std::invalid_argument);
}

TEST_CASE("a 1-atom on the line has vanishing mean") {
  Atom atom = build_atom(spec_of(1, 1.0, make_vec({0}), 1.0, 42));
  MultiIndex zero{};
  CHECK(std::abs(moment_check(atom, zero)) <= 1e-10 * moment_scale(atom, 0));
  CHECK(moments_vanish(atom));
}

TEST_CASE("a 3/4-atom in three dimensions kills moments up to degree one") {
  Atom atom = build_atom(spec_of(3, 0.75, Vec(Vec::Zero(3)), 1.0, 7));
  CHECK(atom.spec().moment_degree() == 1);
  for (int v = -1; v < 3; ++v) {
    MultiIndex beta{};
    if (v >= 0) beta[v] = 1;
    const int order = v >= 0 ? 1 : 0;
    CHECK(std::abs(moment_check(atom, beta)) <= 1e-10 * moment_scale(atom, order));
  }
}

TEST_CASE("sup certificate holds on dense samples") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Atom atom = build_atom(spec_of(2, 1.0, make_vec({0.5, -1.0}), 0.75, seed));
    CHECK(atom.sup_bound() <= atom.spec().sup_norm_limit() * (1 + 1e-12));
    Rng rng(seed + 999);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      Vec y = atom.spec().center + atom.spec().radius * rng.point(2, -1.0, 1.0);
      worst = std::max(worst, std::abs(atom.eval(y)));
    }
    CHECK(worst <= atom.sup_bound());
  }
}

TEST_CASE("unprojected profiles are detected by direct quadrature") {
  Atom raw = build_atom(spec_of(1, 1.0, make_vec({0}), 1.0, 42), /*project_moments=*/false);
  MultiIndex zero{};
  CHECK(std::abs(moment_check(raw, zero)) > 1e-6 * moment_scale(raw, 0));
}

TEST_CASE("translation keeps the vanishing moments (binomial shift)") {
  Atom atom = build_atom(spec_of(2, 0.75, make_vec({3.0, -2.0}), 0.5, 11));
  const int degree = atom.spec().moment_degree();
  REQUIRE(degree == 0);
  MultiIndex zero{};
  // About its own center and about the origin: both vanish up to the moment
  // degree, since shifted monomials expand into lower-order ones.
  CHECK(std::abs(moment_check_centered(atom, zero)) <= 1e-10 * moment_scale(atom, 0));
  CHECK(std::abs(moment_check(atom, zero)) <= 1e-10 * moment_scale(atom, 0));

  // Order above the vanishing threshold is generically nonzero.
  double above = 0.0;
  for (int v = 0; v < 2; ++v) {
    MultiIndex beta{};
    beta[v] = 1;
    above = std::max(above, std::abs(moment_check_centered(atom, beta)));
  }
  CHECK(above > 1e-8 * moment_scale(atom, 1));
}

TEST_CASE("dilation") {
  Atom atom = build_atom(spec_of(2, 1.0, Vec(Vec::Zero(2)), 1.0, 5));

  SUBCASE("identity dilation") {
    Atom same = dilate_atom(atom, 1.0);
    CHECK(same.amplitude() == atom.amplitude());
    CHECK(same.spec().radius == atom.spec().radius);
    CHECK(same.sup_bound() == atom.sup_bound());
  }
  SUBCASE("exponent arithmetic at t = 2, p = 1, n = 2") {
    Atom half = dilate_atom(atom, 2.0);
    CHECK(half.spec().radius == doctest::Approx(0.5));
    CHECK(half.sup_bound() == doctest::Approx(4.0 * atom.sup_bound()));
    // Pointwise identity a_t(y) = t^{n/p} a(t y).
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
      Vec y = rng.point(2, -1.0, 1.0);
      CHECK(half.eval(y) == doctest::Approx(4.0 * atom.eval(Vec(2.0 * y))).epsilon(1e-12));
    }
    CHECK(half.sup_bound() <= half.spec().sup_norm_limit() * (1 + 1e-12));
  }
  SUBCASE("moments still vanish after dilation") {
    Atom half = dilate_atom(atom, 2.0);
    CHECK(moments_vanish(half));
    Atom big = dilate_atom(atom, 0.25);
    CHECK(moments_vanish(big));
  }
  SUBCASE("non-origin centers are rejected") {
    Atom shifted = build_atom(spec_of(2, 1.0, make_vec({1.0, 0.0}), 1.0, 5));
    CHECK_THROWS_AS(dilate_atom(shifted, 2.0), std::invalid_argument);
  }
}

TEST_CASE("atoms are bounded with compact support, hence in every L^{p0}") {
  Atom atom = build_atom(spec_of(2, 0.75, Vec(Vec::Zero(2)), 1.5, 21));
  const double p0 = 1.5;
  Box support;
  support.lower = make_vec({-1.5, -1.5});
  support.upper = make_vec({1.5, 1.5});
  auto integrand = [&](const Vec& y) { return std::pow(std::abs(atom.eval(y)), p0); };
  QuadResult r = adaptive_integrate(integrand, support, 1e-5);
  const double norm = std::pow(r.value, 1.0 / p0);
  const double bound = std::pow(atom.spec().ball_volume(), 1.0 / p0 - 1.0 / atom.spec().p);
  CHECK(norm <= bound * 1.01);
}

TEST_CASE("construction is deterministic in the seed") {
  Atom a = build_atom(spec_of(3, 1.0, Vec(Vec::Zero(3)), 2.0, 123));
  Atom b = build_atom(spec_of(3, 1.0, Vec(Vec::Zero(3)), 2.0, 123));
  CHECK(a.amplitude() == b.amplitude());
  CHECK(a.profile_coefficients() == b.profile_coefficients());
}
