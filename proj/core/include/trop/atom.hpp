#ifndef TROP_ATOM_HPP
#define TROP_ATOM_HPP

#include "trop/jet.hpp"
#include "trop/types.hpp"

#include <cstdint>
#include <vector>

namespace trop {

/// Parameters of a p-atom draw.
struct AtomSpec {
  std::size_t n = 0;
  double p = 1.0;
  Vec center;
  double radius = 1.0;
  std::uint64_t seed = 0;

  /// Highest vanishing-moment degree: floor(n (1/p - 1)). Throws
  /// std::invalid_argument unless p lies in (0, 1] and the radius is
  /// positive.
  int moment_degree() const;

  /// One above the vanishing-moment degree (the Taylor order the far-field
  /// analysis uses).
  int order() const { return moment_degree() + 1; }

  double ball_volume() const;
  /// The size bound |B|^{-1/p} of the supporting ball.
  double sup_norm_limit() const;
};

/// A concrete p-atom: amplitude * Q((y-z)/delta) * (1 - |(y-z)/delta|^2)^3
/// on the ball, zero outside. Q is a polynomial whose bump-weighted moments
/// up to the moment degree vanish exactly (rational construction); the sup
/// bound is certified by a grid + Lipschitz argument with a factor-2 safety
/// margin. Immutable value object.
class Atom {
 public:
  Atom(AtomSpec spec, double amplitude, std::vector<double> profile, int profile_degree,
       double sup_bound);

  const AtomSpec& spec() const { return spec_; }
  double amplitude() const { return amplitude_; }
  const std::vector<double>& profile_coefficients() const { return profile_; }
  int profile_degree() const { return profile_degree_; }

  /// Certified bound on ||a||_inf; at most |B|^{-1/p} by construction.
  double sup_bound() const { return sup_bound_; }

  double eval(const Vec& y) const;

  /// Q(v) (1-|v|^2)^3 in the unit-ball variable, without the amplitude.
  double profile_eval(const Vec& v) const;

 private:
  AtomSpec spec_;
  double amplitude_;
  std::vector<double> profile_;  // monomial coefficients over the unit ball
  int profile_degree_;
  double sup_bound_;
};

/// Draws and certifies an atom. project_moments=false skips the moment
/// projection and yields the negative-control profile (not a valid p-atom).
/// Degenerate draws retry on a derived seed, with a bounded retry count.
Atom build_atom(const AtomSpec& spec, bool project_moments = true);

/// Raw moment of y^beta against the atom, by a polynomial-exact ball rule
/// (a route independent of the construction's closed-form moments).
double moment_check(const Atom& atom, const MultiIndex& beta);

/// Moment of (y - z)^beta about the atom's own center.
double moment_check_centered(const Atom& atom, const MultiIndex& beta);

/// Dilation-invariant tolerance scale for a moment of order |beta|:
/// |B|^{-1/p} * delta^{n + |beta|}.
double moment_scale(const Atom& atom, int beta_order);

/// True when every moment up to the moment degree vanishes within
/// 1e-10 * moment_scale (checked about the center).
bool moments_vanish(const Atom& atom);

/// a_t(y) = t^{n/p} a(t y): support shrinks to radius/t, the sup bound
/// scales by t^{n/p}, and the result is again a valid p-atom. Origin-centered
/// atoms only.
Atom dilate_atom(const Atom& atom, double t);

}  // namespace trop

#endif
