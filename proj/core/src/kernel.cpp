#include "trop/kernel.hpp"

#include <cmath>

namespace trop {

KernelParams KernelParams::from_family(const FamilySpec& spec, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must lie in (0,1)");
  KernelParams p;
  p.n = spec.n;
  p.m = spec.m;
  p.partition = spec.partition;
  p.r = r;
  for (const auto& a : spec.matrices) p.matrices.push_back(to_float(a));
  for (std::size_t nk : spec.partition) {
    p.alphas.push_back(r * static_cast<double>(nk));
    p.exponents.push_back(-static_cast<double>(nk) * (1.0 - r));
  }
  return p;
}

KernelParams KernelParams::canonical(const std::vector<std::size_t>& partition, double r) {
  return from_family(canonical_family(partition), r);
}

std::size_t KernelParams::block_offset(std::size_t k) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < k; ++i) off += partition[i];
  return off;
}

double KernelParams::exponent_sum() const {
  double s = 0.0;
  for (double e : exponents) s += e;
  return s;
}

bool KernelParams::is_canonical() const {
  for (std::size_t j = 0; j < m; ++j) {
    const Mat want = to_float(canonical_projection(partition, j));
    if (matrices[j].rows() != want.rows() || matrices[j].cols() != want.cols()) return false;
    if ((matrices[j].array() != want.array()).any()) return false;
  }
  return true;
}

double kernel_eval(const KernelParams& params, const Vec& x, const Vec& y) {
  double value = 1.0;
  for (std::size_t i = 0; i < params.m; ++i) {
    const double dist = (x - params.matrices[i] * y).norm();
    if (dist == 0.0) {
      throw singular_point_error("kernel factor " + std::to_string(i + 1) + " vanishes");
    }
    value *= std::pow(dist, params.exponents[i]);
  }
  return value;
}

double DerivativeTower::partial(std::initializer_list<int> beta) const {
  MultiIndex b{};
  int v = 0;
  for (int e : beta) b[v++] = static_cast<std::uint8_t>(e);
  return partial(b);
}

DerivativeTower kernel_derivatives(const KernelParams& params, const Vec& x, const Vec& z,
                                   int order) {
  if (order < 0 || order > kMaxDerivativeOrder) {
    throw std::invalid_argument("derivative order outside supported range");
  }
  const int n = static_cast<int>(params.n);

  Jet product(n, order);
  product.coef(std::size_t{0}) = 1.0;
  for (std::size_t i = 0; i < params.m; ++i) {
    const Mat& a = params.matrices[i];
    const Vec w = x - a * z;
    const double c = w.squaredNorm();
    if (c == 0.0) throw singular_point_error("derivative expansion on a singular set");

    // s_i(u) = |w - A u|^2 = c - 2 w^T A u + u^T A^T A u, a quadratic jet.
    Jet s(n, order);
    s.coef(std::size_t{0}) = c;
    if (order >= 1) {
      const Vec lin = -2.0 * (a.transpose() * w);
      for (int v = 0; v < n; ++v) {
        MultiIndex beta{};
        beta[v] = 1;
        s.coef(std::size_t(s.basis().index_of(beta))) = lin(v);
      }
    }
    if (order >= 2) {
      const Mat gram = a.transpose() * a;
      for (int v = 0; v < n; ++v) {
        for (int w2 = v; w2 < n; ++w2) {
          MultiIndex beta{};
          beta[v] += 1;
          beta[w2] += 1;
          const double coef = (v == w2) ? gram(v, v) : 2.0 * gram(v, w2);
          s.coef(std::size_t(s.basis().index_of(beta))) = coef;
        }
      }
    }
    product = product * jet_pow(s, params.exponents[i] / 2.0);
  }
  return DerivativeTower(std::move(product));
}

double taylor_eval(const KernelParams& params, const Vec& x, const Vec& z, const Vec& y,
                   int degree) {
  DerivativeTower tower = kernel_derivatives(params, x, z, degree);
  return tower.taylor(y - z, degree);
}

namespace {

// Cyclic Jacobi eigenvalue iteration for a small symmetric matrix. Returns a
// certified upper bound for the largest eigenvalue: max diagonal plus the
// Frobenius norm of the remaining off-diagonal part (Weyl).
double max_eigenvalue_upper_bound(Mat g) {
  const int n = static_cast<int>(g.rows());
  if (n == 1) return g(0, 0);
  const double scale = g.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  auto offdiag_frobenius = [&]() {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (p != q) s += g(p, q) * g(p, q);
      }
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (offdiag_frobenius() <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = g(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (g(q, q) - g(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double gkp = g(k, p), gkq = g(k, q);
          g(k, p) = c * gkp - s * gkq;
          g(k, q) = s * gkp + c * gkq;
        }
        for (int k = 0; k < n; ++k) {
          const double gpk = g(p, k), gqk = g(q, k);
          g(p, k) = c * gpk - s * gqk;
          g(q, k) = s * gpk + c * gqk;
        }
      }
    }
  }
  double max_diag = g(0, 0);
  for (int i = 1; i < n; ++i) max_diag = std::max(max_diag, g(i, i));
  return max_diag + offdiag_frobenius();
}

}  // namespace

double estimate_D(const std::vector<Mat>& matrices) {
  double best = 0.0;
  for (const auto& a : matrices) {
    const Mat gram = a.transpose() * a;
    const double bound = max_eigenvalue_upper_bound(gram);
    best = std::max(best, bound > 0.0 ? std::sqrt(bound) : 0.0);
  }
  return best;
}

double estimate_D(const KernelParams& params) { return estimate_D(params.matrices); }

}  // namespace trop
