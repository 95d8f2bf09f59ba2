#include "trop/matrix.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace trop {

std::string format_rational(const Rational& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) {
    s += "/";
    s += rat_den(r).str();
  }
  return s;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto check_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    for (std::size_t i = start; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!check_int(s)) throw std::invalid_argument("bad integer");
      return Rational(BigInt(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!check_int(num) || !check_int(den)) throw std::invalid_argument("bad fraction");
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(num), d);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: '" + text + "'");
  }
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix entry count does not match rows*cols");
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::zero(std::size_t rows, std::size_t cols) {
  return RationalMatrix(rows, cols);
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix shape mismatch in +");
  }
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + other.entries_[k];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("matrix shape mismatch in -");
  }
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] - other.entries_[k];
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out.at(i, j) += a * other.at(k, j);
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] * s;
  return out;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch in apply");
  std::vector<Rational> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

void RationalMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

namespace {

// Clears denominators row by row so elimination runs on integers. Row scaling
// does not change the row space, rank, or null space.
void clear_denominators(RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const BigInt d = rat_den(m.at(i, j));
      l = lcm(l, d);
    }
    if (l != 1) {
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= Rational(l);
    }
  }
}

}  // namespace

RrefResult rref(const RationalMatrix& input) {
  RationalMatrix m = input;
  clear_denominators(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;

  // Forward pass: fraction-free (Bareiss) elimination with partial pivoting.
  std::size_t row = 0;
  Rational prev_pivot = 1;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t best = row;
    Rational best_abs = rat_abs(m.at(row, col));
    for (std::size_t i = row + 1; i < rows; ++i) {
      Rational a = rat_abs(m.at(i, col));
      if (a > best_abs) {
        best = i;
        best_abs = a;
      }
    }
    if (best_abs == 0) continue;
    m.swap_rows(row, best);

    const Rational pivot = m.at(row, col);
    for (std::size_t i = row + 1; i < rows; ++i) {
      const Rational factor = m.at(i, col);
      for (std::size_t j = col; j < cols; ++j) {
        m.at(i, j) = (m.at(i, j) * pivot - factor * m.at(row, j)) / prev_pivot;
      }
    }
    prev_pivot = pivot;
    pivots.push_back(col);
    ++row;
  }

  // Back substitution to reduced form: unit pivots, zeros above each pivot.
  for (std::size_t r = pivots.size(); r-- > 0;) {
    const std::size_t pc = pivots[r];
    const Rational pivot = m.at(r, pc);
    for (std::size_t j = pc; j < cols; ++j) m.at(r, j) /= pivot;
    for (std::size_t i = 0; i < r; ++i) {
      const Rational factor = m.at(i, pc);
      if (factor == 0) continue;
      for (std::size_t j = pc; j < cols; ++j) m.at(i, j) -= factor * m.at(r, j);
    }
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivot_cols.size(); }

Rational determinant(const RationalMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  RationalMatrix m = input;
  Rational det_scale = 1;  // product of row-clearing factors to divide out
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, rat_den(m.at(i, j)));
    if (l != 1) {
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) *= Rational(l);
      det_scale *= Rational(l);
    }
  }

  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = k;
    Rational best_abs = rat_abs(m.at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      Rational a = rat_abs(m.at(i, k));
      if (a > best_abs) {
        best = i;
        best_abs = a;
      }
    }
    if (best_abs == 0) return 0;
    if (best != k) {
      m.swap_rows(k, best);
      sign = -sign;
    }
    const Rational pivot = m.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * pivot - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  Rational det = m.at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det / det_scale;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = input.rows();
  // Gauss-Jordan on [A | I], exact.
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = input.at(i, j);
    aug.at(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    Rational best_abs = rat_abs(aug.at(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      Rational a = rat_abs(aug.at(i, col));
      if (a > best_abs) {
        best = i;
        best_abs = a;
      }
    }
    if (best_abs == 0) return std::nullopt;
    aug.swap_rows(col, best);
    const Rational pivot = aug.at(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) aug.at(col, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Rational factor = aug.at(i, col);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) aug.at(i, j) -= factor * aug.at(col, j);
    }
  }
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  }
  return out;
}

RationalMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream row_stream(text);
  std::string row_text;
  while (std::getline(row_stream, row_text, ';')) {
    std::vector<Rational> row;
    std::stringstream entry_stream(row_text);
    std::string entry;
    while (std::getline(entry_stream, entry, ',')) {
      row.push_back(parse_rational(entry));
    }
    if (row.empty()) throw std::invalid_argument("empty matrix row in '" + row_text + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix text");
  const std::size_t cols = rows[0].size();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw std::invalid_argument("ragged matrix text: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(cols));
    }
  }
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const RationalMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += format_rational(m.at(i, j));
    }
  }
  return out;
}

}  // namespace trop
