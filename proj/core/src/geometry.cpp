#include "trop/geometry.hpp"

#include <cmath>
#include <limits>

namespace trop {

AtomGeometry make_geometry(const KernelParams& params, const Vec& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("atom radius must be positive");
  AtomGeometry geom;
  geom.center = center;
  geom.radius = radius;
  geom.matrix_bound = estimate_D(params);
  geom.inflation = 4.0 * geom.matrix_bound * radius;
  return geom;
}

RegionLabel classify_region(const AtomGeometry& geom, const KernelParams& params, const Vec& x) {
  std::size_t far_index = 0;
  double far_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < params.m; ++i) {
    const double dist = (x - params.matrices[i] * geom.center).norm();
    if (dist < geom.inflation) return {RegionLabel::Kind::Near, i};
    if (dist < far_dist) {
      far_dist = dist;
      far_index = i;
    }
  }
  return {RegionLabel::Kind::Far, far_index};
}

bool geometric_comparability_check(const AtomGeometry& geom, const KernelParams& params,
                                   const Vec& x, const Vec& xi) {
  for (std::size_t i = 0; i < params.m; ++i) {
    const Vec image_center = params.matrices[i] * geom.center;
    const double dist_center = (x - image_center).norm();
    const double dist_xi = (x - params.matrices[i] * xi).norm();
    // Tiny relative slack absorbs roundoff at the extremal ratio 3/4.
    if (dist_xi < 0.75 * dist_center * (1.0 - 1e-12)) return false;
  }
  return true;
}

double remainder_rhs(const KernelParams& params, const AtomGeometry& geom, const Vec& x,
                     const Vec& y, int order, std::size_t k_star) {
  const RegionLabel label = classify_region(geom, params, x);
  if (!label.is_far() || label.index != k_star) {
    throw std::invalid_argument("remainder_rhs: x does not lie in the Far region of block " +
                                std::to_string(k_star + 1));
  }
  const double moment = (y - geom.center).norm();
  const double dist = (x - params.matrices[k_star] * geom.center).norm();
  const double n = static_cast<double>(params.n);
  const double decay = -n * (1.0 - params.r) - static_cast<double>(order);
  return std::pow(moment, order) * std::pow(dist, decay);
}

bool tensor_domination_check(const KernelParams& params, const Vec& x, const Vec& y) {
  if (!params.is_canonical()) {
    throw std::invalid_argument("tensor_domination_check requires a canonical projection family");
  }
  double lhs_log = 0.0;
  double rhs_log = 0.0;
  for (std::size_t j = 0; j < params.m; ++j) {
    const std::size_t off = params.block_offset(j);
    const std::size_t len = params.partition[j];
    const double full = (x - params.matrices[j] * y).norm();
    const double block = (x.segment(off, len) - y.segment(off, len)).norm();
    if (full == 0.0 || block == 0.0) {
      throw singular_point_error("tensor domination at a singular point");
    }
    lhs_log += params.exponents[j] * std::log(full);
    rhs_log += params.exponents[j] * std::log(block);
  }
  return lhs_log <= rhs_log + 1e-9;
}

}  // namespace trop
