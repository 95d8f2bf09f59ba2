#include "trop/ball_rule.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trop {

void gauss_legendre(int points, std::vector<double>& nodes, std::vector<double>& weights) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  nodes.resize(points);
  weights.resize(points);
  const int m = (points + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < points; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = points * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[points - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[points - 1 - i] = w;
  }
}

namespace {

// Gauss rule on [0, radius].
void radial_rule(int points, double radius, std::vector<double>& nodes,
                 std::vector<double>& weights) {
  std::vector<double> gn, gw;
  gauss_legendre(points, gn, gw);
  nodes.resize(points);
  weights.resize(points);
  for (int i = 0; i < points; ++i) {
    nodes[i] = 0.5 * radius * (gn[i] + 1.0);
    weights[i] = 0.5 * radius * gw[i];
  }
}

BallRule ball_rule_1d(double radius, int degree) {
  std::vector<double> gn, gw;
  gauss_legendre(degree / 2 + 1, gn, gw);
  BallRule rule;
  for (std::size_t i = 0; i < gn.size(); ++i) {
    Vec p(1);
    p(0) = radius * gn[i];
    rule.points.push_back(p);
    rule.weights.push_back(radius * gw[i]);
  }
  return rule;
}

BallRule ball_rule_2d(double radius, int degree) {
  std::vector<double> rn, rw;
  radial_rule((degree + 3) / 2, radius, rn, rw);
  const int angular = degree + 1;
  const double dtheta = 2.0 * std::numbers::pi / angular;
  BallRule rule;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    for (int j = 0; j < angular; ++j) {
      const double theta = dtheta * j;
      Vec p(2);
      p(0) = rn[i] * std::cos(theta);
      p(1) = rn[i] * std::sin(theta);
      rule.points.push_back(p);
      rule.weights.push_back(rw[i] * rn[i] * dtheta);
    }
  }
  return rule;
}

BallRule ball_rule_3d(double radius, int degree) {
  std::vector<double> rn, rw, tn, tw;
  radial_rule((degree + 4) / 2, radius, rn, rw);
  gauss_legendre(degree / 2 + 1, tn, tw);
  const int angular = degree + 1;
  const double dtheta = 2.0 * std::numbers::pi / angular;
  BallRule rule;
  for (std::size_t i = 0; i < rn.size(); ++i) {
    for (std::size_t k = 0; k < tn.size(); ++k) {
      const double t = tn[k];
      const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int j = 0; j < angular; ++j) {
        const double theta = dtheta * j;
        Vec p(3);
        p(0) = rn[i] * s * std::cos(theta);
        p(1) = rn[i] * s * std::sin(theta);
        p(2) = rn[i] * t;
        rule.points.push_back(p);
        rule.weights.push_back(rw[i] * rn[i] * rn[i] * tw[k] * dtheta);
      }
    }
  }
  return rule;
}

BallRule ball_rule_4d(double radius, int degree) {
  // Iterated 2+2 split: the inner 2-d ball integral of a polynomial is a
  // polynomial in the outer variables of degree at most degree + 2.
  BallRule outer = ball_rule_2d(radius, degree + 2);
  BallRule rule;
  for (std::size_t i = 0; i < outer.points.size(); ++i) {
    const double ra2 = outer.points[i].squaredNorm();
    const double inner_radius = std::sqrt(std::max(0.0, radius * radius - ra2));
    if (inner_radius <= 0.0) continue;
    BallRule inner = ball_rule_2d(inner_radius, degree);
    for (std::size_t j = 0; j < inner.points.size(); ++j) {
      Vec p(4);
      p.segment(0, 2) = outer.points[i];
      p.segment(2, 2) = inner.points[j];
      rule.points.push_back(p);
      rule.weights.push_back(outer.weights[i] * inner.weights[j]);
    }
  }
  return rule;
}

}  // namespace

BallRule ball_rule(int dim, double radius, int degree) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball_rule: radius must be positive");
  if (degree < 0) degree = 0;
  switch (dim) {
    case 1:
      return ball_rule_1d(radius, degree);
    case 2:
      return ball_rule_2d(radius, degree);
    case 3:
      return ball_rule_3d(radius, degree);
    case 4:
      return ball_rule_4d(radius, degree);
    default:
      throw std::invalid_argument("ball_rule supports dimensions 1 through 4");
  }
}

double integrate_over_ball(const std::function<double(const Vec&)>& f, const Vec& center,
                           double radius, int degree) {
  BallRule rule = ball_rule(static_cast<int>(center.size()), radius, degree);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    acc += rule.weights[i] * f(Vec(center + rule.points[i]));
  }
  return acc;
}

double unit_ball_volume(int dim) {
  switch (dim) {
    case 1:
      return 2.0;
    case 2:
      return std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi / 3.0;
    case 4:
      return std::numbers::pi * std::numbers::pi / 2.0;
    default:
      throw std::invalid_argument("unit_ball_volume supports dimensions 1 through 4");
  }
}

}  // namespace trop
