#ifndef TROP_MATRIX_HPP
#define TROP_MATRIX_HPP

#include "trop/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace trop {

/// Dense matrix over exact rationals, row-major. All arithmetic here is
/// exact; no floating point enters this type.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<Rational>& entries() const { return entries_; }

  bool operator==(const RationalMatrix& other) const = default;

  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix scaled(const Rational& s) const;
  RationalMatrix transposed() const;

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Reduced row-echelon form computed by fraction-free elimination on
/// integer-cleared rows, followed by exact pivot normalization. Returns the
/// RREF and the pivot column indices.
struct RrefResult {
  RationalMatrix rref;
  std::vector<std::size_t> pivot_cols;
};
RrefResult rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Exact determinant via Bareiss fraction-free elimination.
Rational determinant(const RationalMatrix& m);

/// Exact inverse, or nullopt if singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Text format: rows separated by ';', entries by ',', each entry an integer
/// or a p/q fraction. Example: "4,4,-1; 0,0,0; -4,-4,1".
RationalMatrix parse_matrix(const std::string& text);
std::string format_matrix(const RationalMatrix& m);

}  // namespace trop

#endif
