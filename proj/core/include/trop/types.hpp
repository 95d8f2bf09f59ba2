#ifndef TROP_TYPES_HPP
#define TROP_TYPES_HPP

#include <Eigen/Dense>

#include "trop/matrix.hpp"

namespace trop {

// Numeric kernels and quadrature work in small fixed-capacity vectors;
// dimensions above 8 never occur on the floating-point side.
constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline Mat to_float(const RationalMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m.at(i, j));
  }
  return out;
}

inline Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace trop

#endif
