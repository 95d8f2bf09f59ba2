#ifndef TROP_BUILTIN_HPP
#define TROP_BUILTIN_HPP

#include "trop/family.hpp"
#include "trop/normalization.hpp"

#include <string>

namespace trop {

/// The bundled 3x3 example family with partition (1,1,1): three singular
/// integer matrices whose complementary null-space intersections split R^3.
FamilySpec example_family_3x3();

/// The basis ordering used in the worked example: (1,1,1), (4,-3,4), (1,1,8).
BasisChoice example_family_basis();

/// Resolves a named builtin family: "paper-example" for the bundled 3x3
/// family. Throws std::invalid_argument for unknown names.
FamilySpec builtin_family(const std::string& name);

}  // namespace trop

#endif
