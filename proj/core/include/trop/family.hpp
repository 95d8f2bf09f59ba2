#ifndef TROP_FAMILY_HPP
#define TROP_FAMILY_HPP

#include "trop/matrix.hpp"
#include "trop/subspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace trop {

/// A family of m singular n x n matrices together with the dimension
/// partition n = n_1 + ... + n_m it is supposed to realize. Construction
/// checks shapes only; the mathematical hypotheses are checked by
/// validate_family.
struct FamilySpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> partition;
  std::vector<RationalMatrix> matrices;

  FamilySpec() = default;
  FamilySpec(std::vector<std::size_t> partition, std::vector<RationalMatrix> matrices);

  /// Null space of the j-th matrix (0-based).
  Subspace hypothesis_null_space(std::size_t j) const;

  /// Intersection of all null spaces except the k-th (0-based).
  Subspace complement_intersection(std::size_t k) const;

  /// Offset of block k inside a partitioned coordinate vector.
  std::size_t block_offset(std::size_t k) const;
};

/// Canonical projection onto coordinate block j of the partition: the n x n
/// 0/1 matrix keeping block j and zeroing the rest.
RationalMatrix canonical_projection(const std::vector<std::size_t>& partition, std::size_t j);

/// Family whose matrices are exactly the canonical projections.
FamilySpec canonical_family(const std::vector<std::size_t>& partition);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const;
  std::string summary() const;
};

/// Checks every hypothesis on the family: partition consistency, rank of
/// each matrix (equivalently the null space dimensions), invertibility of
/// the sum, and the direct-sum decomposition by the complementary
/// intersections. Failures are report entries, never exceptions.
ValidationReport validate_family(const FamilySpec& spec);

/// Draws a family satisfying all hypotheses by construction: random
/// invertible integer matrices B0, C0 (entries in [-3,3], singular draws
/// retried) and A_j = B0 * P_j * C0^{-1}. Deterministic in the seed.
/// Throws std::runtime_error if the retry budget is exhausted.
FamilySpec random_family(std::size_t n, const std::vector<std::size_t>& partition,
                         std::uint64_t seed);

}  // namespace trop

#endif
