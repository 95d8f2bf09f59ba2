#include "trop/subspace.hpp"

#include <stdexcept>

namespace trop {

namespace {

RationalMatrix rows_from_vectors(const std::vector<RationalVector>& vecs, std::size_t ambient) {
  RationalMatrix m(vecs.size(), ambient);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (vecs[i].size() != ambient) throw std::invalid_argument("basis vector length mismatch");
    for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vecs[i][j];
  }
  return m;
}

// Canonical basis of the row space: nonzero rows of the RREF, normalized.
std::vector<RationalVector> canonical_row_basis(const RationalMatrix& rows_matrix) {
  RrefResult r = rref(rows_matrix);
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    RationalVector v(rows_matrix.cols());
    for (std::size_t j = 0; j < rows_matrix.cols(); ++j) v[j] = r.rref.at(i, j);
    out.push_back(normalize_vector(v));
  }
  return out;
}

}  // namespace

RationalVector normalize_vector(const RationalVector& v) {
  BigInt l = 1;
  for (const Rational& x : v) l = lcm(l, rat_den(x));
  std::vector<BigInt> ints(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = rat_num(v[i] * Rational(l));
    g = gcd(g, ints[i]);
  }
  if (g == 0) throw std::invalid_argument("cannot normalize the zero vector");
  int lead_sign = 0;
  for (const BigInt& x : ints) {
    if (x != 0) {
      lead_sign = x > 0 ? 1 : -1;
      break;
    }
  }
  if (lead_sign < 0) g = -g;
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

Subspace::Subspace(std::size_t ambient_dim, std::vector<RationalVector> basis)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  for (const auto& v : basis_) {
    if (v.size() != ambient_dim_) throw std::invalid_argument("basis vector length mismatch");
  }
  if (!basis_.empty()) {
    if (rank(rows_from_vectors(basis_, ambient_dim_)) != basis_.size()) {
      throw std::invalid_argument("basis vectors are linearly dependent");
    }
  }
}

Subspace Subspace::full(std::size_t n) {
  std::vector<RationalVector> basis(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  return Subspace(n, std::move(basis));
}

Subspace Subspace::trivial(std::size_t n) { return Subspace(n, {}); }

bool Subspace::contains(const RationalVector& v) const {
  if (v.size() != ambient_dim_) throw std::invalid_argument("vector length mismatch");
  bool zero = true;
  for (const Rational& x : v) {
    if (x != 0) {
      zero = false;
      break;
    }
  }
  if (zero) return true;
  if (basis_.empty()) return false;
  auto stacked = basis_;
  stacked.push_back(v);
  return rank(rows_from_vectors(stacked, ambient_dim_)) == basis_.size();
}

bool Subspace::same_span(const Subspace& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  if (dim() != other.dim()) return false;
  for (const auto& v : other.basis_) {
    if (!contains(v)) return false;
  }
  return true;
}

RationalMatrix Subspace::basis_as_columns() const {
  RationalMatrix m(ambient_dim_, basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    for (std::size_t i = 0; i < ambient_dim_; ++i) m.at(i, k) = basis_[k][i];
  }
  return m;
}

Subspace kernel(const RationalMatrix& m) {
  RrefResult r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RationalVector v(cols);
    v[free_col] = 1;
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) {
      v[r.pivot_cols[p]] = -r.rref.at(p, free_col);
    }
    basis.push_back(normalize_vector(v));
  }
  return Subspace(cols, std::move(basis));
}

Subspace null_space(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("null_space expects a square matrix");
  return kernel(m);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw std::invalid_argument("ambient dimension mismatch in intersect");
  }
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace::trivial(n);

  // x in U∩V iff x = U c = V d for some coefficients; solve [U | -V] (c,d)=0.
  RationalMatrix m(n, u.dim() + v.dim());
  for (std::size_t k = 0; k < u.dim(); ++k) {
    for (std::size_t i = 0; i < n; ++i) m.at(i, k) = u.basis()[k][i];
  }
  for (std::size_t k = 0; k < v.dim(); ++k) {
    for (std::size_t i = 0; i < n; ++i) m.at(i, u.dim() + k) = -v.basis()[k][i];
  }
  Subspace combos = kernel(m);

  std::vector<RationalVector> raw;
  for (const auto& cd : combos.basis()) {
    RationalVector x(n);
    for (std::size_t k = 0; k < u.dim(); ++k) {
      for (std::size_t i = 0; i < n; ++i) x[i] += cd[k] * u.basis()[k][i];
    }
    raw.push_back(std::move(x));
  }
  if (raw.empty()) return Subspace::trivial(n);
  return Subspace(n, canonical_row_basis(rows_from_vectors(raw, n)));
}

std::size_t sum_dim(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw std::invalid_argument("ambient dimension mismatch in sum_dim");
  }
  auto stacked = u.basis();
  for (const auto& b : v.basis()) stacked.push_back(b);
  if (stacked.empty()) return 0;
  return rank(RationalMatrix(stacked.size(), u.ambient_dim(), [&] {
    std::vector<Rational> e;
    e.reserve(stacked.size() * u.ambient_dim());
    for (const auto& row : stacked)
      for (const auto& x : row) e.push_back(x);
    return e;
  }()));
}

Subspace image_of(const RationalMatrix& a, const Subspace& u) {
  std::vector<RationalVector> images;
  for (const auto& b : u.basis()) images.push_back(a.apply(b));
  if (images.empty()) return Subspace::trivial(a.rows());
  RationalMatrix rows(images.size(), a.rows());
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < a.rows(); ++j) rows.at(i, j) = images[i][j];
  }
  // Drop dependent images; keep the canonical reduced basis.
  RrefResult r = rref(rows);
  std::vector<RationalVector> basis;
  for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
    RationalVector v(a.rows());
    for (std::size_t j = 0; j < a.rows(); ++j) v[j] = r.rref.at(i, j);
    basis.push_back(normalize_vector(v));
  }
  return Subspace(a.rows(), std::move(basis));
}

}  // namespace trop
