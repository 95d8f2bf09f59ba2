#ifndef TROP_QUADRATURE_HPP
#define TROP_QUADRATURE_HPP

#include "trop/types.hpp"

#include <Eigen/QR>
#include <functional>
#include <vector>

namespace trop {

/// Axis-aligned integration domain.
struct Box {
  Vec lower;
  Vec upper;

  int dim() const { return static_cast<int>(lower.size()); }
  Vec center() const { return 0.5 * (lower + upper); }
  double volume() const;
  double diameter() const { return (upper - lower).norm(); }
};

/// Near-singular manifold descriptor for integrands with factors
/// |b - A y|^{-s}. The descriptor is the affine set {y : A y = b}; when b is
/// not in the range of A the set is empty, but the least-squares residual
/// manifold {y : A^T (A y - b) = 0} still marks where the factor is smallest,
/// and refinement is guided there with the residual folded into the
/// effective distance.
class AffineSet {
 public:
  AffineSet(const Mat& a, const Vec& b);

  /// sqrt(squared distance to the residual manifold + squared residual).
  double effective_distance(const Vec& point) const;

  /// Normal-extent weight of a coordinate axis: the norm of the projection
  /// of e_axis onto the row space of A. Splitting the axis with the largest
  /// h * weight shrinks the cell across the manifold fastest.
  double axis_weight(int axis) const { return axis_weight_[axis]; }

  const Mat& matrix() const { return a_; }
  const Vec& rhs() const { return b_; }

 private:
  Mat a_;
  Vec b_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
  std::vector<double> axis_weight_;
};

struct QuadOptions {
  std::size_t max_evaluations = 1'000'000;
  int max_depth = 60;
  /// The relative tolerance is taken against max(|value|, abs_scale_hint);
  /// a positive hint stops runaway refinement of near-zero integrals.
  double abs_scale_hint = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t cells = 1;
  std::size_t singular_cells = 0;
  std::size_t evaluations = 0;
  bool flagged = false;
};

using Integrand = std::function<double(const Vec&)>;

/// Adaptive tensor Gauss-Legendre integration with dyadic subdivision.
/// Refinement is error-driven (embedded order-5/order-3 estimate) and graded
/// geometrically toward the supplied singular sets; cells near a set are
/// bisected across it, so the mesh thins normally and stays coarse
/// tangentially. Exact singular hits inside the integrand are caught and
/// force subdivision. The result is flagged, never silently returned, when
/// the evaluation budget or depth cap is reached before the tolerance.
QuadResult adaptive_integrate(const Integrand& f, const Box& domain, double rel_tol,
                              const std::vector<AffineSet>& singular_sets = {},
                              const QuadOptions& options = {});

/// Unnormalized Riesz potential on a block: integral of |x - y|^{alpha - d}
/// g(y) dy over the support box, with the point singularity at y = x.
/// Requires 0 < alpha < d.
QuadResult riesz_block_apply(double alpha, const Integrand& g, const Box& support, const Vec& x,
                             double rel_tol, const QuadOptions& options = {});

/// One factor of a tensor-product kernel.
struct BlockKernel {
  int dim = 0;
  std::function<double(const Vec& x_block, const Vec& y_block)> eval;
  /// Kernel singular on the diagonal y_block = x_block.
  bool diagonal_singular = false;
};

/// Applies K_1 (x) ... (x) K_m to f at x by iterated blockwise integration,
/// innermost block last in the list. Each level runs adaptive_integrate at
/// the given per-level tolerance; flags and evaluation counts accumulate.
QuadResult tensor_apply(const std::vector<BlockKernel>& kernels, const Integrand& f,
                        const std::vector<Box>& supports, const Vec& x, double level_rel_tol,
                        const QuadOptions& options = {});

}  // namespace trop

#endif
