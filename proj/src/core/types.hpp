#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace wlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  singularity = 3,
  non_convergence = 4,
  unbounded_support = 5,
  out_of_plateau = 6,
  ill_conditioned = 7,
  bracketing = 8,
  config = 9,
  io = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Value, flat gradient and flat Laplacian of a scalar field at a point.
struct FieldJet {
  double value = 0.0;
  Vec3 gradient = Vec3::Zero();
  double laplacian = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace wlab
