#include "trop/norms.hpp"

#include "trop/ball_rule.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace trop {

double q_from_p(double p, double r) {
  const double inv_q = 1.0 / p - r;
  if (!(inv_q > 0.0)) throw std::invalid_argument("index relation requires p < 1/r");
  return 1.0 / inv_q;
}

double fit_remainder_constant(const KernelParams& params, const AtomGeometry& geom, int order,
                              std::size_t samples, std::uint64_t seed) {
  const int n = static_cast<int>(params.n);
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto direction = [&]() {
    while (true) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v(i) = uniform(-1.0, 1.0);
      const double norm = v.norm();
      if (norm > 1e-3 && norm <= 1.0) return Vec(v / norm);
    }
  };

  double worst = 0.0;
  std::size_t accepted = 0;
  while (accepted < samples) {
    const Vec y = geom.center + geom.radius * uniform(0.0, 0.95) * direction();
    const std::size_t anchor = rng() % params.m;
    const double rho = geom.inflation * std::exp(uniform(std::log(1.05), std::log(256.0)));
    const Vec x = params.matrices[anchor] * geom.center + rho * direction();
    const RegionLabel label = classify_region(geom, params, x);
    if (!label.is_far()) continue;

    const double lhs =
        std::abs(kernel_eval(params, x, y) - taylor_eval(params, x, geom.center, y, order - 1));
    const double rhs = remainder_rhs(params, geom, x, y, order, label.index);
    if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    ++accepted;
  }
  return 2.0 * worst;
}

NormEstimate lq_norm_Tr(const KernelParams& params, const Integrand& f, const Vec& center,
                        double radius, int order, double q, const LqOptions& options) {
  const int n = static_cast<int>(params.n);
  const double nn = static_cast<double>(n);
  const double decay = nn * (1.0 - params.r) + static_cast<double>(order);
  if (!(q * decay > nn)) {
    throw std::invalid_argument(
        "unsupported parameters: far-field integral diverges, need q (n(1-r) + N) > n");
  }

  const AtomGeometry geom = make_geometry(params, center, radius);

  // Region bookkeeping: a central box covering every inflated image ball,
  // then dyadic box shells out to the far boundary.
  double image_reach = 0.0;  // max |A_i z|_inf
  double image_norm = 0.0;   // max |A_i z|_2
  for (const auto& a : params.matrices) {
    const Vec img = a * center;
    image_reach = std::max(image_reach, img.cwiseAbs().maxCoeff());
    image_norm = std::max(image_norm, img.norm());
  }
  const double r0 = image_reach + geom.inflation;
  const double r_far = std::max(8.0 * geom.matrix_bound * radius + image_norm, 2.0);
  int shells = 0;
  double r_outer = r0;
  while (r_outer < r_far) {
    r_outer *= 2.0;
    ++shells;
  }

  // Probe the scale of |T a| so the inner tolerance has an absolute floor
  // and near-zero samples stop early.
  Box support;
  support.lower = center - Vec(Vec::Constant(n, radius));
  support.upper = center + Vec(Vec::Constant(n, radius));
  QuadOptions probe_options;
  probe_options.max_evaluations = options.inner_budget;
  double t_scale = 0.0;
  for (std::size_t i = 0; i < params.m; ++i) {
    Vec probe = params.matrices[i] * center;
    probe(0) += 0.37 * geom.inflation;
    t_scale = std::max(t_scale, std::abs(apply_Tr(params, f, support, probe, 1e-2, probe_options).value));
  }
  if (!(t_scale > 0.0)) t_scale = 1.0;

  QuadOptions inner_options;
  inner_options.max_evaluations = options.inner_budget;
  inner_options.abs_scale_hint = 0.05 * t_scale;

  bool flagged = false;
  auto integrand = [&](const Vec& x) {
    EvalResult r = apply_Tr(params, f, support, x, options.inner_rel_tol, inner_options);
    if (r.flagged) flagged = true;
    return std::pow(std::abs(r.value), q);
  };

  QuadOptions outer_options;
  outer_options.max_evaluations = options.outer_budget;
  outer_options.abs_scale_hint = std::pow(0.05 * t_scale, q);

  double power_sum = 0.0;
  double err_sum = 0.0;
  auto add_region = [&](const Box& region) {
    QuadResult r = adaptive_integrate(integrand, region, options.outer_rel_tol, {}, outer_options);
    power_sum += r.value;
    err_sum += r.error_estimate;
    if (r.flagged) flagged = true;
  };

  {
    Box central;
    central.lower = Vec(Vec::Constant(n, -r0));
    central.upper = Vec(Vec::Constant(n, r0));
    add_region(central);
  }
  double inner_r = r0;
  for (int s = 0; s < shells; ++s) {
    const double outer_r = inner_r * 2.0;
    // Disjoint slab decomposition of box(outer) \ box(inner): axis a takes
    // the two slabs |x_a| in [inner, outer], bounded by inner on earlier
    // axes and outer on later ones.
    for (int axis = 0; axis < n; ++axis) {
      for (int side = 0; side < 2; ++side) {
        Box slab;
        slab.lower = Vec(n);
        slab.upper = Vec(n);
        for (int c = 0; c < n; ++c) {
          const double half = c < axis ? inner_r : outer_r;
          slab.lower(c) = -half;
          slab.upper(c) = half;
        }
        slab.lower(axis) = side == 0 ? inner_r : -outer_r;
        slab.upper(axis) = side == 0 ? outer_r : -inner_r;
        add_region(slab);
      }
    }
    inner_r = outer_r;
  }
  r_outer = inner_r;

  // Analytic tail: data mass times the fitted remainder constant, with the
  // margin between |x| and |x - A_k z| folded in.
  const double c_kernel =
      fit_remainder_constant(params, geom, order, options.fit_samples, options.fit_seed);
  double data_mass;
  {
    auto abs_f = [&](const Vec& y) { return std::abs(f(y)); };
    QuadOptions mass_options;
    mass_options.max_evaluations = options.inner_budget;
    data_mass = adaptive_integrate(abs_f, support, 1e-4, {}, mass_options).value;
  }
  const double gamma = 1.0 - image_norm / std::max(r_outer, image_norm + 1e-300);
  const double c_used = c_kernel * data_mass * std::pow(std::max(gamma, 1e-6), -decay);
  const double sphere_area = nn * unit_ball_volume(n);
  const double tail_power = sphere_area * std::pow(c_used * std::pow(radius, order), q) *
                            std::pow(r_outer, nn - q * decay) / (q * decay - nn);

  NormEstimate est;
  est.q = q;
  est.near_value = std::pow(std::max(power_sum, 0.0), 1.0 / q);
  est.tail_bound = std::pow(std::max(tail_power, 0.0), 1.0 / q);
  est.total_upper = std::pow(std::max(power_sum, 0.0) + std::max(tail_power, 0.0), 1.0 / q);
  est.tol = power_sum > 0.0 ? err_sum / power_sum / q : 0.0;
  est.flagged = flagged;
  return est;
}

NormEstimate lq_norm_Tr_atom(const KernelParams& params, const Atom& atom, double q,
                             const LqOptions& options) {
  auto f = [&](const Vec& y) { return atom.eval(y); };
  return lq_norm_Tr(params, f, atom.spec().center, atom.spec().radius, atom.spec().order(), q,
                    options);
}

}  // namespace trop
