#ifndef TROP_JET_HPP
#define TROP_JET_HPP

#include "trop/types.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace trop {

using MultiIndex = std::array<std::uint8_t, kMaxDim>;

inline int multi_index_order(const MultiIndex& beta) {
  int total = 0;
  for (auto b : beta) total += b;
  return total;
}

/// Graded-lexicographic enumeration of monomials v^beta with |beta| <= degree
/// in n variables, with index lookup and (for small degrees) a product table.
/// Instances are cached and immutable.
class MonomialBasis {
 public:
  static const MonomialBasis& get(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return exponents_.size(); }
  const MultiIndex& exponent(std::size_t i) const { return exponents_[i]; }
  const std::vector<MultiIndex>& exponents() const { return exponents_; }

  /// Index of a multi-index, or -1 if its degree exceeds the basis degree.
  int index_of(const MultiIndex& beta) const;

  /// Index of the product monomial, or -1 when the degree overflows.
  int product_index(std::size_t i, std::size_t j) const { return product_[i * size() + j]; }

  /// Monomial values u^beta for every basis element.
  void monomials_at(const Vec& u, std::vector<double>& out) const;

 private:
  MonomialBasis(int vars, int degree);
  int vars_;
  int degree_;
  std::vector<MultiIndex> exponents_;
  std::vector<std::int64_t> index_map_;  // dense ranking over packed exponents
  std::vector<int> product_;
};

/// Truncated multivariate Taylor polynomial (jet) at a point, in the offset
/// variable u. Coefficients are Taylor coefficients: coef(beta) =
/// partial^beta f / beta!.
class Jet {
 public:
  Jet(int vars, int degree);

  int vars() const { return basis_->vars(); }
  int degree() const { return basis_->degree(); }
  const MonomialBasis& basis() const { return *basis_; }

  double& coef(std::size_t i) { return coef_[i]; }
  double coef(std::size_t i) const { return coef_[i]; }
  double coef(const MultiIndex& beta) const;
  double constant() const { return coef_[0]; }

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double s);
  Jet operator*(const Jet& other) const;

  /// Polynomial value at offset u, using terms of total degree <= max_degree
  /// (pass degree() for the full jet).
  double eval(const Vec& u, int max_degree) const;

 private:
  const MonomialBasis* basis_;
  std::vector<double> coef_;
};

/// Jet of s(u)^p given the jet of s, via the binomial series around the
/// constant term. Requires s(0) > 0; throws std::domain_error otherwise.
Jet jet_pow(const Jet& s, double p);

/// beta! as a double (orders here are tiny).
double multi_index_factorial(const MultiIndex& beta);

}  // namespace trop

#endif
