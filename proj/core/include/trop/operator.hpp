#ifndef TROP_OPERATOR_HPP
#define TROP_OPERATOR_HPP

#include "trop/atom.hpp"
#include "trop/geometry.hpp"
#include "trop/kernel.hpp"
#include "trop/normalization.hpp"
#include "trop/quadrature.hpp"

namespace trop {

struct EvalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool flagged = false;
};

/// T f(x) = integral of k(x,y) f(y) dy over the support box, with the
/// singular sets {y : A_i y = x} supplied to the quadrature. Flagged when
/// the evaluation budget is exceeded, never silently truncated.
EvalResult apply_Tr(const KernelParams& params, const Integrand& f, const Box& support,
                    const Vec& x, double rel_tol, const QuadOptions& options = {});

/// Convenience overload for atoms; the support box is the atom ball's
/// bounding box.
EvalResult apply_Tr(const KernelParams& params, const Atom& atom, const Vec& x, double rel_tol,
                    const QuadOptions& options = {});

Box atom_support(const Atom& atom);

/// The two evaluation routes of the change of variables through the
/// normalization: the projected form |det C| * integral of
/// prod_j |B (x - P_j y)|^{e_j} f(y) dy, and the direct substitution
/// T((f o C^{-1}))(B x). They agree up to quadrature error.
struct ConjugationPair {
  EvalResult projected;
  EvalResult direct;
};

ConjugationPair conjugated_apply(const KernelParams& params, const Normalization& norm,
                                 const Integrand& f, const Box& support, const Vec& x,
                                 double rel_tol, const QuadOptions& options = {});

}  // namespace trop

#endif
