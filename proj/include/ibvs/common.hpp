#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ibvs {

using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix3 = Eigen::Matrix3d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// 4x4 homogeneous rigid transform; rotation block orthonormal, bottom row [0,0,0,1].
using HomTransform = Eigen::Matrix4d;

// Joint rotations in radians, base to wrist.
using JointAngles = Vector6;

// Stereo image coordinates [ul1, ur1, v1, ul2, ur2, v2] in millimeters.
using FeatureVector = Vector6;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

// Invalid or inconsistent configuration; maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values or diverging simulation; maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures; maps to CLI exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Unreachable pose or singular geometry request.
class KinematicsError : public std::runtime_error {
public:
    explicit KinematicsError(const std::string& what) : std::runtime_error(what) {}
};

// A marker could not be measured; drives the feature-estimation fallback.
class FeatureLossError : public std::runtime_error {
public:
    explicit FeatureLossError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ibvs
