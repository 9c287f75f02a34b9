#pragma once

#include <Eigen/Dense>

namespace ergot {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using Vector2 = Eigen::Vector2d;
using Matrix2 = Eigen::Matrix2d;

}  // namespace ergot
