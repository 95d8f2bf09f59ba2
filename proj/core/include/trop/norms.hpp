#ifndef TROP_NORMS_HPP
#define TROP_NORMS_HPP

#include "trop/operator.hpp"

#include <cstdint>

namespace trop {

/// An L^q norm estimate of T a, split into the quadrature value over the
/// near region (image balls plus dyadic shells out to the far boundary) and
/// the analytic far-field tail bound. total_upper combines both and is an
/// upper estimate; the tail is reported separately, never silently folded
/// into the quadrature value.
struct NormEstimate {
  double q = 0.0;
  double near_value = 0.0;
  double tail_bound = 0.0;
  double total_upper = 0.0;
  double tol = 0.0;  // achieved relative tolerance of the near quadrature
  bool flagged = false;
};

/// Fits the far-field remainder constant: the largest observed ratio of
/// |k(x,y) - q_N(x,y)| to the dominating expression over sampled far points
/// and ball points, doubled for validation margin.
double fit_remainder_constant(const KernelParams& params, const AtomGeometry& geom, int order,
                              std::size_t samples, std::uint64_t seed);

struct LqOptions {
  double inner_rel_tol = 1e-3;       // per-point T a accuracy
  std::size_t inner_budget = 40'000;
  double outer_rel_tol = 3e-3;       // per-region |T a|^q integration
  std::size_t outer_budget = 30'000;
  std::uint64_t fit_seed = 1;
  std::size_t fit_samples = 200;
};

/// Norm estimate for general data supported on B(center, radius) with
/// vanishing moments below `order`. Requires the far-field convergence
/// condition q (n (1 - r) + order) > n; violations raise
/// std::invalid_argument (unsupported parameters).
NormEstimate lq_norm_Tr(const KernelParams& params, const Integrand& f, const Vec& center,
                        double radius, int order, double q, const LqOptions& options = {});

NormEstimate lq_norm_Tr_atom(const KernelParams& params, const Atom& atom, double q,
                             const LqOptions& options = {});

/// Exponent pairing of the mapping theorem: 1/q = 1/p - r.
double q_from_p(double p, double r);

}  // namespace trop

#endif
