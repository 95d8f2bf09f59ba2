#ifndef TROP_SUBSPACE_HPP
#define TROP_SUBSPACE_HPP

#include "trop/matrix.hpp"
#include "trop/rational.hpp"

#include <vector>

namespace trop {

using RationalVector = std::vector<Rational>;

/// A linear subspace of Q^n given by an independent basis. Bases produced by
/// this module are canonical: derived from the reduced row-echelon
/// parametrization, scaled to integer vectors with positive leading entry
/// and coordinate gcd 1.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient_dim, std::vector<RationalVector> basis);

  static Subspace full(std::size_t ambient_dim);
  static Subspace trivial(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RationalVector>& basis() const { return basis_; }

  bool contains(const RationalVector& v) const;
  bool same_span(const Subspace& other) const;

  /// Matrix whose columns are the basis vectors.
  RationalMatrix basis_as_columns() const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<RationalVector> basis_;
};

/// Scales to integer entries with gcd 1 and positive leading entry. Zero
/// vectors are rejected.
RationalVector normalize_vector(const RationalVector& v);

/// Exact kernel of an arbitrary (possibly rectangular) matrix.
Subspace kernel(const RationalMatrix& m);

/// Kernel of a square matrix; the hypothesis sets arise this way.
/// Throws std::invalid_argument if the matrix is not square.
Subspace null_space(const RationalMatrix& m);

/// Exact intersection, via the kernel of the stacked basis-combination
/// system. Throws std::invalid_argument on ambient dimension mismatch.
Subspace intersect(const Subspace& u, const Subspace& v);

/// Dimension of U + V (rank of concatenated bases).
std::size_t sum_dim(const Subspace& u, const Subspace& v);

/// Image A(U) as a subspace.
Subspace image_of(const RationalMatrix& a, const Subspace& u);

}  // namespace trop

#endif
