#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <complex>

namespace liesurf {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;

inline constexpr cplx I{0.0, 1.0};

}  // namespace liesurf
