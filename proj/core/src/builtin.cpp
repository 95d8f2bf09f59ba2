#include "trop/builtin.hpp"

#include <stdexcept>

namespace trop {

FamilySpec example_family_3x3() {
  std::vector<RationalMatrix> mats = {
      parse_matrix("4,4,-1; 0,0,0; -4,-4,1"),
      parse_matrix("1,-1,0; -2,2,0; 0,0,0"),
      parse_matrix("1,0,-1; -3,0,3; -1,0,1"),
  };
  return FamilySpec({1, 1, 1}, std::move(mats));
}

BasisChoice example_family_basis() {
  return {
      {{Rational(1), Rational(1), Rational(1)}},
      {{Rational(4), Rational(-3), Rational(4)}},
      {{Rational(1), Rational(1), Rational(8)}},
  };
}

FamilySpec builtin_family(const std::string& name) {
  if (name == "paper-example") return example_family_3x3();
  throw std::invalid_argument("unknown builtin family '" + name + "'");
}

}  // namespace trop
