#ifndef TROP_BALL_RULE_HPP
#define TROP_BALL_RULE_HPP

#include "trop/types.hpp"

#include <functional>
#include <vector>

namespace trop {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int points, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature rule over the ball B(0, radius) in dimension 1..4, exact for
/// polynomial integrands of total degree <= degree. Radial Gauss rules
/// combined with exact angular rules (equispaced in angles, Gauss in the
/// polar cosine); dimension 4 iterates two 2-d ball rules.
struct BallRule {
  std::vector<Vec> points;  // offsets from the ball center
  std::vector<double> weights;
};

BallRule ball_rule(int dim, double radius, int degree);

/// Integral over B(center, radius); exact for polynomials up to degree.
double integrate_over_ball(const std::function<double(const Vec&)>& f, const Vec& center,
                           double radius, int degree);

/// Volume of the unit ball in dimension 1..4.
double unit_ball_volume(int dim);

}  // namespace trop

#endif
