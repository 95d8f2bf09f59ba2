#include "trop/atom.hpp"

#include "trop/ball_rule.hpp"
#include "trop/matrix.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace trop {

int AtomSpec::moment_degree() const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("atoms exist for p in (0, 1]");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("atom radius must be positive");
  if (n < 1 || n > 4) throw std::invalid_argument("atom dimension must be 1..4");
  // Nudge before flooring: the common parameter choices put n(1/p - 1)
  // exactly on an integer, where roundoff must not drop a whole degree.
  return static_cast<int>(std::floor(static_cast<double>(n) * (1.0 / p - 1.0) + 1e-9));
}

double AtomSpec::ball_volume() const {
  return unit_ball_volume(static_cast<int>(n)) * std::pow(radius, static_cast<double>(n));
}

double AtomSpec::sup_norm_limit() const { return std::pow(ball_volume(), -1.0 / p); }

Atom::Atom(AtomSpec spec, double amplitude, std::vector<double> profile, int profile_degree,
           double sup_bound)
    : spec_(std::move(spec)),
      amplitude_(amplitude),
      profile_(std::move(profile)),
      profile_degree_(profile_degree),
      sup_bound_(sup_bound) {}

double Atom::profile_eval(const Vec& v) const {
  const MonomialBasis& basis = MonomialBasis::get(static_cast<int>(spec_.n), profile_degree_);
  thread_local std::vector<double> monomials;
  basis.monomials_at(v, monomials);
  double q = 0.0;
  for (std::size_t i = 0; i < profile_.size(); ++i) q += profile_[i] * monomials[i];
  const double bump = 1.0 - v.squaredNorm();
  return q * bump * bump * bump;
}

double Atom::eval(const Vec& y) const {
  const Vec v = (y - spec_.center) / spec_.radius;
  if (v.squaredNorm() >= 1.0) return 0.0;
  return amplitude_ * profile_eval(v);
}

namespace {

BigInt factorial_big(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Gamma((2k+1)/2) / sqrt(pi) = (2k)! / (4^k k!), exact.
Rational half_gamma_ratio(int k) {
  BigInt four_pow = 1;
  for (int i = 0; i < k; ++i) four_pow *= 4;
  return Rational(factorial_big(2 * k), four_pow * factorial_big(k));
}

// Integral over the unit sphere S^{n-1} of omega^sigma, divided by the
// common transcendental unit (a fixed power of pi for fixed n). Zero when
// any exponent is odd.
Rational sphere_moment_rational(int n, const MultiIndex& sigma) {
  int total = 0;
  for (int v = 0; v < n; ++v) {
    if (sigma[v] % 2 != 0) return Rational(0);
    total += sigma[v];
  }
  Rational numerator = 2;
  for (int v = 0; v < n; ++v) numerator *= half_gamma_ratio(sigma[v] / 2);
  const int t = n + total;  // Gamma(t/2) in the denominator
  if (t % 2 == 0) {
    return numerator / Rational(factorial_big(t / 2 - 1));
  }
  return numerator / half_gamma_ratio((t - 1) / 2);
}

// Integral over the unit ball of v^sigma (1-|v|^2)^3, divided by the same
// transcendental unit; the unit cancels in the Gram solve.
Rational weighted_ball_moment(int n, const MultiIndex& sigma) {
  const Rational sphere = sphere_moment_rational(n, sigma);
  if (sphere == 0) return Rational(0);
  int total = 0;
  for (int v = 0; v < n; ++v) total += sigma[v];
  static const int binom3[4] = {1, 3, 3, 1};
  Rational acc = 0;
  for (int i = 0; i <= 3; ++i) {
    const Rational term = Rational(binom3[i]) / Rational(n + total + 2 * i);
    acc += (i % 2 == 0) ? term : -term;
  }
  return sphere * acc;
}

MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex s{};
  for (int v = 0; v < kMaxDim; ++v) s[v] = static_cast<std::uint8_t>(a[v] + b[v]);
  return s;
}

// Multiplies the coefficient vector (over basis_out) by (1 - |v|^2).
std::vector<double> multiply_by_bump_factor(const std::vector<double>& coef,
                                            const MonomialBasis& basis_out, int n) {
  std::vector<double> out(basis_out.size(), 0.0);
  for (std::size_t i = 0; i < coef.size(); ++i) {
    if (coef[i] == 0.0) continue;
    const MultiIndex& beta = basis_out.exponent(i);
    out[i] += coef[i];
    for (int v = 0; v < n; ++v) {
      MultiIndex up = beta;
      up[v] = static_cast<std::uint8_t>(up[v] + 2);
      const int target = basis_out.index_of(up);
      if (target >= 0) out[static_cast<std::size_t>(target)] -= coef[i];
    }
  }
  return out;
}

}  // namespace

Atom build_atom(const AtomSpec& spec, bool project_moments) {
  const int n = static_cast<int>(spec.n);
  const int moment_degree = spec.moment_degree();  // validates the spec
  const int profile_degree = moment_degree + 3;    // N + 2

  const MonomialBasis& basis = MonomialBasis::get(n, profile_degree);
  const MonomialBasis& low = MonomialBasis::get(n, std::max(moment_degree, 0));

  std::uint64_t seed = spec.seed;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(seed);
    std::vector<Rational> coef(basis.size());
    for (auto& c : coef) c = Rational(static_cast<std::int64_t>(rng() % 19) - 9);

    if (project_moments) {
      // Bump-weighted Gram system over the low-degree monomials; exact
      // rational solve, common pi powers cancel.
      const std::size_t low_size = low.size();
      RationalMatrix gram(low_size, low_size);
      for (std::size_t a = 0; a < low_size; ++a) {
        for (std::size_t b = 0; b < low_size; ++b) {
          gram.at(a, b) = weighted_ball_moment(n, add_indices(low.exponent(a), low.exponent(b)));
        }
      }
      RationalMatrix rhs(low_size, 1);
      for (std::size_t a = 0; a < low_size; ++a) {
        Rational acc = 0;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          if (coef[k] == 0) continue;
          acc += coef[k] * weighted_ball_moment(n, add_indices(low.exponent(a), basis.exponent(k)));
        }
        rhs.at(a, 0) = acc;
      }
      auto gram_inv = inverse(gram);
      if (!gram_inv) throw std::logic_error("weighted moment Gram matrix is singular");
      RationalMatrix lambda = (*gram_inv) * rhs;
      for (std::size_t a = 0; a < low_size; ++a) {
        const int idx = basis.index_of(low.exponent(a));
        coef[static_cast<std::size_t>(idx)] -= lambda.at(a, 0);
      }
    }

    bool all_zero = true;
    for (const auto& c : coef) {
      if (c != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      continue;
    }

    std::vector<double> profile(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) profile[k] = to_double(coef[k]);

    // Certified sup bound of Q(v)(1-|v|^2)^3 over the unit ball: dense grid
    // maximum plus a Lipschitz covering term, plus a crude cap on the thin
    // shell the inside grid cannot cover.
    const MonomialBasis& expanded_basis = MonomialBasis::get(n, profile_degree + 6);
    std::vector<double> expanded(expanded_basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const int idx = expanded_basis.index_of(basis.exponent(k));
      expanded[static_cast<std::size_t>(idx)] = profile[k];
    }
    for (int rep = 0; rep < 3; ++rep) expanded = multiply_by_bump_factor(expanded, expanded_basis, n);

    double lipschitz_sq = 0.0;
    for (int v = 0; v < n; ++v) {
      double axis = 0.0;
      for (std::size_t k = 0; k < expanded.size(); ++k) {
        axis += std::abs(expanded[k]) * expanded_basis.exponent(k)[v];
      }
      lipschitz_sq += axis * axis;
    }
    const double lipschitz = std::sqrt(lipschitz_sq);
    double coeff_mass = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) coeff_mass += std::abs(profile[k]);

    const int per_axis = (n == 1) ? 20001 : (n == 2 ? 317 : (n == 3 ? 47 : 18));
    const double h = 2.0 / (per_axis - 1);
    double grid_max = 0.0;
    Atom probe(spec, 1.0, profile, profile_degree, 0.0);
    Vec v(n);
    std::vector<int> idx(n, 0);
    while (true) {
      for (int d = 0; d < n; ++d) v(d) = -1.0 + h * idx[d];
      if (v.squaredNorm() < 1.0) grid_max = std::max(grid_max, std::abs(probe.profile_eval(v)));
      int d = 0;
      for (; d < n; ++d) {
        if (++idx[d] < per_axis) break;
        idx[d] = 0;
      }
      if (d == n) break;
    }
    const double cover = h * std::sqrt(static_cast<double>(n));
    const double shell = coeff_mass * std::pow(2.0 * cover, 3.0);
    const double sup_cert = grid_max + lipschitz * cover + shell;
    if (!(sup_cert > 0.0)) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      continue;
    }

    // Rescale so the certified sup equals half the admissible bound.
    const double target = 0.5 * spec.sup_norm_limit();
    const double amplitude = target / sup_cert;
    return Atom(spec, amplitude, std::move(profile), profile_degree, target);
  }
  throw std::runtime_error("build_atom: retry budget exhausted on degenerate draws");
}

namespace {

double moment_about(const Atom& atom, const MultiIndex& beta, const Vec& origin) {
  const auto& spec = atom.spec();
  const int n = static_cast<int>(spec.n);
  int order = 0;
  for (int v = 0; v < n; ++v) order += beta[v];
  const int degree = order + atom.profile_degree() + 6;
  auto integrand = [&](const Vec& y) {
    double mono = 1.0;
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < beta[v]; ++k) mono *= y(v) - origin(v);
    }
    return mono * atom.eval(y);
  };
  return integrate_over_ball(integrand, spec.center, spec.radius, degree);
}

}  // namespace

double moment_check(const Atom& atom, const MultiIndex& beta) {
  if (multi_index_order(beta) > 8) {
    throw std::invalid_argument("moment_check supports orders up to 8");
  }
  return moment_about(atom, beta, Vec(Vec::Zero(atom.spec().n)));
}

double moment_check_centered(const Atom& atom, const MultiIndex& beta) {
  if (multi_index_order(beta) > 8) {
    throw std::invalid_argument("moment_check supports orders up to 8");
  }
  return moment_about(atom, beta, atom.spec().center);
}

double moment_scale(const Atom& atom, int beta_order) {
  const auto& spec = atom.spec();
  return spec.sup_norm_limit() *
         std::pow(spec.radius, static_cast<double>(spec.n) + beta_order);
}

bool moments_vanish(const Atom& atom) {
  const int n = static_cast<int>(atom.spec().n);
  const int degree = atom.spec().moment_degree();
  const MonomialBasis& low = MonomialBasis::get(n, std::max(degree, 0));
  for (std::size_t i = 0; i < low.size(); ++i) {
    const MultiIndex& beta = low.exponent(i);
    const int order = multi_index_order(beta);
    if (order > degree) continue;
    if (std::abs(moment_check_centered(atom, beta)) > 1e-10 * moment_scale(atom, order)) {
      return false;
    }
  }
  return true;
}

Atom dilate_atom(const Atom& atom, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  if (atom.spec().center.norm() != 0.0) {
    throw std::invalid_argument("dilate_atom acts about the origin only");
  }
  AtomSpec spec = atom.spec();
  spec.radius = atom.spec().radius / t;
  const double factor = std::pow(t, static_cast<double>(spec.n) / spec.p);
  return Atom(spec, atom.amplitude() * factor, atom.profile_coefficients(),
              atom.profile_degree(), atom.sup_bound() * factor);
}

}  // namespace trop
