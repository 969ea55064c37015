#pragma once

#include <array>

#include <Eigen/Dense>

namespace sdpls {

// 2D quantities are embedded in 3D with a zero z-component.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Second derivatives of a vector field: hessian[k](i, j) = d_i d_j v_k.
using VelocityHessian = std::array<Mat3, 3>;

using CellIndex = std::array<int, 3>;

}  // namespace sdpls
