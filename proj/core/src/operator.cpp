#include "trop/operator.hpp"

#include <cmath>
#include <limits>

namespace trop {

namespace {

EvalResult from_quad(const QuadResult& r) {
  return {r.value, r.error_estimate, r.evaluations, r.flagged};
}

}  // namespace

EvalResult apply_Tr(const KernelParams& params, const Integrand& f, const Box& support,
                    const Vec& x, double rel_tol, const QuadOptions& options) {
  auto integrand = [&](const Vec& y) { return kernel_eval(params, x, y) * f(y); };
  std::vector<AffineSet> sets;
  sets.reserve(params.m);
  for (const auto& a : params.matrices) sets.emplace_back(a, x);
  return from_quad(adaptive_integrate(integrand, support, rel_tol, sets, options));
}

Box atom_support(const Atom& atom) {
  Box support;
  const auto& spec = atom.spec();
  support.lower = spec.center - Vec(Vec::Constant(spec.n, spec.radius));
  support.upper = spec.center + Vec(Vec::Constant(spec.n, spec.radius));
  return support;
}

EvalResult apply_Tr(const KernelParams& params, const Atom& atom, const Vec& x, double rel_tol,
                    const QuadOptions& options) {
  auto f = [&](const Vec& y) { return atom.eval(y); };
  return apply_Tr(params, f, atom_support(atom), x, rel_tol, options);
}

ConjugationPair conjugated_apply(const KernelParams& params, const Normalization& norm,
                                 const Integrand& f, const Box& support, const Vec& x,
                                 double rel_tol, const QuadOptions& options) {
  const int n = static_cast<int>(params.n);
  const Mat b_float = to_float(norm.B);
  const double det_c = std::abs(to_double(determinant(norm.C)));

  ConjugationPair pair;

  // Projected route: the kernel factors are |B (x - P_j y)|^{e_j}.
  {
    auto integrand = [&](const Vec& y) {
      double value = 1.0;
      for (std::size_t j = 0; j < params.m; ++j) {
        const std::size_t off = params.block_offset(j);
        const std::size_t len = params.partition[j];
        Vec w = x;
        w.segment(off, len) -= y.segment(off, len);
        const double dist = (b_float * w).norm();
        if (dist == 0.0) throw singular_point_error("projected kernel factor vanishes");
        value *= std::pow(dist, params.exponents[j]);
      }
      return value * f(y);
    };
    std::vector<AffineSet> sets;
    for (std::size_t j = 0; j < params.m; ++j) {
      sets.emplace_back(to_float(canonical_projection(params.partition, j)), x);
    }
    QuadResult r = adaptive_integrate(integrand, support, rel_tol, sets, options);
    r.value *= det_c;
    r.error_estimate *= det_c;
    pair.projected = from_quad(r);
  }

  // Direct route: substitute u = C y and evaluate T(f o C^{-1}) at B x.
  {
    const auto c_inv_exact = inverse(norm.C);
    if (!c_inv_exact) throw std::invalid_argument("normalization C is singular");
    const Mat c_float = to_float(norm.C);
    const Mat c_inv = to_float(*c_inv_exact);
    const Vec bx = b_float * x;

    // Bounding box of the image of the support under C.
    Box image;
    image.lower = Vec(Vec::Constant(n, std::numeric_limits<double>::infinity()));
    image.upper = Vec(Vec::Constant(n, -std::numeric_limits<double>::infinity()));
    const std::size_t corners = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      Vec corner(n);
      for (int i = 0; i < n; ++i) {
        corner(i) = (mask >> i) & 1 ? support.upper(i) : support.lower(i);
      }
      const Vec mapped = c_float * corner;
      image.lower = image.lower.cwiseMin(mapped);
      image.upper = image.upper.cwiseMax(mapped);
    }

    auto g = [&](const Vec& u) { return f(Vec(c_inv * u)); };
    pair.direct = apply_Tr(params, g, image, bx, rel_tol, options);
  }
  return pair;
}

}  // namespace trop
