#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pampa {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Sentinel for "no adjacent element" on boundary edges.
inline constexpr int kNone = -1;

/// Positivity floors for depth and potential temperature. States below them
/// are outside the invariant domain.
inline constexpr double kDepthFloor = 1e-13;
inline constexpr double kTemperatureFloor = 1e-13;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state left the invariant domain h > 0, theta > 0 (or p > 0).
class InvariantDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K = J.n could not be diagonalized with real eigenvalues.
class HyperbolicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file, config value or unknown name.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fatal numerical failure during time stepping.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pampa
