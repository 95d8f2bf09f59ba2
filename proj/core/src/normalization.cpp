#include "trop/normalization.hpp"

#include <stdexcept>
#include <string>

namespace trop {

Normalization build_normalization(const FamilySpec& spec,
                                  const std::optional<BasisChoice>& basis_choice) {
  ValidationReport report = validate_family(spec);
  if (!report.all_pass()) {
    throw std::invalid_argument("build_normalization requires a valid family:\n" + report.summary());
  }

  std::vector<std::vector<RationalVector>> bases;
  for (std::size_t k = 0; k < spec.m; ++k) {
    Subspace w = spec.complement_intersection(k);
    if (basis_choice) {
      const auto& chosen = basis_choice->at(k);
      if (chosen.size() != spec.partition[k]) {
        throw std::invalid_argument("basis_choice block " + std::to_string(k + 1) +
                                    " has wrong vector count");
      }
      for (const auto& v : chosen) {
        if (!w.contains(v)) {
          throw std::invalid_argument("basis_choice block " + std::to_string(k + 1) +
                                      " contains a vector outside the intersection subspace");
        }
      }
      // Independence within the block (span is checked by dimension).
      Subspace check(spec.n, chosen);
      if (check.dim() != spec.partition[k]) {
        throw std::invalid_argument("basis_choice block " + std::to_string(k + 1) +
                                    " is linearly dependent");
      }
      bases.push_back(chosen);
    } else {
      bases.push_back(w.basis());
    }
  }

  RationalMatrix c(spec.n, spec.n);
  std::size_t col = 0;
  for (const auto& block : bases) {
    for (const auto& v : block) {
      for (std::size_t i = 0; i < spec.n; ++i) c.at(i, col) = v[i];
      ++col;
    }
  }

  RationalMatrix sum = RationalMatrix::zero(spec.n, spec.n);
  for (const auto& a : spec.matrices) sum = sum + a;
  RationalMatrix b = sum * c;
  auto b_inv = inverse(b);
  if (!b_inv) {
    // Cannot happen for a valid family; the columns of C form a basis and
    // the sum is invertible.
    throw std::logic_error("normalization produced a singular B");
  }

  Normalization norm{std::move(c), std::move(b), std::move(*b_inv), {}};
  for (std::size_t j = 0; j < spec.m; ++j) {
    norm.projections.push_back(norm.B_inv * spec.matrices[j] * norm.C);
  }
  return norm;
}

bool verify_projections(const Normalization& norm, const FamilySpec& spec) {
  if (norm.B_inv.rows() != spec.n || norm.C.rows() != spec.n) {
    throw std::invalid_argument("normalization shape does not match the family");
  }
  for (std::size_t j = 0; j < spec.m; ++j) {
    RationalMatrix product = norm.B_inv * spec.matrices[j] * norm.C;
    if (!(product == canonical_projection(spec.partition, j))) return false;
  }
  return true;
}

}  // namespace trop
