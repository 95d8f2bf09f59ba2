#ifndef TROP_KERNEL_HPP
#define TROP_KERNEL_HPP

#include "trop/family.hpp"
#include "trop/jet.hpp"
#include "trop/types.hpp"

#include <stdexcept>
#include <vector>

namespace trop {

/// Raised when an evaluation lands exactly on a singular set {A_i y = x}.
/// Quadrature catches this and subdivides instead of propagating non-finite
/// values.
class singular_point_error : public std::domain_error {
 public:
  explicit singular_point_error(const std::string& what) : std::domain_error(what) {}
};

/// Highest supported derivative order for the kernel jets. Covers p down to
/// n/(n+3); the experiment grid needs order 2 at most.
constexpr int kMaxDerivativeOrder = 3;

/// Floating-point shadow of a matrix family together with the kernel
/// exponents: k(x,y) = prod_i |x - A_i y|^{e_i} with e_i = -n_i + alpha_i,
/// alpha_i = r * n_i. The rational matrices are converted round-to-nearest
/// exactly once, at construction.
struct KernelParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> partition;
  std::vector<Mat> matrices;
  double r = 0.0;
  std::vector<double> alphas;
  std::vector<double> exponents;

  static KernelParams from_family(const FamilySpec& spec, double r);
  static KernelParams canonical(const std::vector<std::size_t>& partition, double r);

  /// Block offset of block k.
  std::size_t block_offset(std::size_t k) const;

  /// sum_i e_i; equals -n(1-r) identically.
  double exponent_sum() const;

  /// True iff the matrices are exactly the canonical projections.
  bool is_canonical() const;
};

/// k(x,y); strictly positive away from the singular sets. Throws
/// singular_point_error when some |x - A_i y| vanishes.
double kernel_eval(const KernelParams& params, const Vec& x, const Vec& y);

/// All y-partial derivatives of k(x, .) at y = z up to a total order, held
/// as a jet (Taylor coefficients). Built by truncated-polynomial arithmetic
/// on the closed-form factors, not by differencing.
class DerivativeTower {
 public:
  DerivativeTower(Jet jet) : jet_(std::move(jet)) {}

  double value() const { return jet_.constant(); }

  /// partial^beta k(x, .) |_{y=z}.
  double partial(const MultiIndex& beta) const {
    return jet_.coef(beta) * multi_index_factorial(beta);
  }
  double partial(std::initializer_list<int> beta) const;

  /// Taylor polynomial of k(x, .) around z, truncated at total degree
  /// `degree`, evaluated at y = z + offset.
  double taylor(const Vec& offset, int degree) const { return jet_.eval(offset, degree); }

  const Jet& jet() const { return jet_; }

 private:
  Jet jet_;
};

DerivativeTower kernel_derivatives(const KernelParams& params, const Vec& x, const Vec& z,
                                   int order);

/// Value of the degree-`degree` Taylor polynomial of y -> k(x,y) around z,
/// at y.
double taylor_eval(const KernelParams& params, const Vec& x, const Vec& z, const Vec& y,
                   int degree);

/// Certified upper bound on max_i of the largest singular value of A_i,
/// within 1e-9 relative. Gram-matrix Jacobi eigenvalues plus an off-diagonal
/// residual certificate.
double estimate_D(const KernelParams& params);
double estimate_D(const std::vector<Mat>& matrices);

}  // namespace trop

#endif
