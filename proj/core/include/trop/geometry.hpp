#ifndef TROP_GEOMETRY_HPP
#define TROP_GEOMETRY_HPP

#include "trop/kernel.hpp"
#include "trop/types.hpp"

namespace trop {

/// Ball geometry attached to an atom: center z, radius delta, the family
/// constant D bounding every |A_i y| / |y|, and the inflation radius 4*D*delta
/// of the image balls B(A_i z, 4 D delta).
struct AtomGeometry {
  Vec center;
  double radius = 0.0;
  double matrix_bound = 0.0;  // D
  double inflation = 0.0;     // 4 * D * delta
};

AtomGeometry make_geometry(const KernelParams& params, const Vec& center, double radius);

/// Region of a point x relative to the geometry: inside some inflated image
/// ball (Near, smallest such block index), or outside all of them (Far, the
/// block whose image center is closest, ties to the smallest index).
struct RegionLabel {
  enum class Kind { Near, Far };
  Kind kind = Kind::Far;
  std::size_t index = 0;

  bool is_near() const { return kind == Kind::Near; }
  bool is_far() const { return kind == Kind::Far; }
};

RegionLabel classify_region(const AtomGeometry& geom, const KernelParams& params, const Vec& x);

/// Checks |x - A_i xi| >= (3/4) |x - A_i z| for every i, which must hold for
/// x outside the inflated balls and xi inside the atom ball. A false return
/// indicates a geometry bug rather than an expected outcome.
bool geometric_comparability_check(const AtomGeometry& geom, const KernelParams& params,
                                   const Vec& x, const Vec& xi);

/// The far-field dominating expression |y - z|^N * |x - A_k z|^{-n(1-r)-N}
/// (without the implicit constant). Requires x to classify as Far(k_star).
double remainder_rhs(const KernelParams& params, const AtomGeometry& geom, const Vec& x,
                     const Vec& y, int order, std::size_t k_star);

/// For a canonical-projection family: k(x,y) <= prod_j |x^j - y^j|^{e_j},
/// the blockwise tensor kernel domination. Throws std::invalid_argument if
/// the family is not canonical; singular_point_error when either side is
/// infinite.
bool tensor_domination_check(const KernelParams& params, const Vec& x, const Vec& y);

}  // namespace trop

#endif
