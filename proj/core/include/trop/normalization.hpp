#ifndef TROP_NORMALIZATION_HPP
#define TROP_NORMALIZATION_HPP

#include "trop/family.hpp"

#include <optional>
#include <vector>

namespace trop {

/// The exact normalization certificate for a valid family: invertible B, C
/// with B = (A_1 + ... + A_m) C and B^{-1} A_j C equal to the canonical
/// projection onto block j for every j.
struct Normalization {
  RationalMatrix C;
  RationalMatrix B;
  RationalMatrix B_inv;
  /// The computed products B^{-1} A_j C, in block order.
  std::vector<RationalMatrix> projections;
};

/// Ordered bases for the complementary intersections; block k supplies
/// exactly partition[k] vectors, used as consecutive columns of C.
using BasisChoice = std::vector<std::vector<RationalVector>>;

/// Constructive normalization. The columns of C are bases of the
/// complementary intersections in block order; by default the canonical
/// reduced bases, or the caller's basis_choice when supplied (validated for
/// span and independence). Requires a family that passes validate_family.
Normalization build_normalization(const FamilySpec& spec,
                                  const std::optional<BasisChoice>& basis_choice = std::nullopt);

/// True iff B_inv * A_j * C equals the canonical projection onto block j
/// exactly, for every j.
bool verify_projections(const Normalization& norm, const FamilySpec& spec);

}  // namespace trop

#endif
