#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace fibersim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

inline Mat3 outer(const Vec3& a, const Vec3& b) { return a * b.transpose(); }

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace fibersim
