#include "core/bump.hpp"

#include <cmath>

namespace wlab {

RadialJet smooth_step(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  // s = 1 / (1 + e^q) with q = 1/x - 1/(1-x).
  const double y = 1.0 - x;
  const double q = 1.0 / x - 1.0 / y;
  const double dq = -1.0 / (x * x) - 1.0 / (y * y);
  const double ddq = 2.0 / (x * x * x) - 2.0 / (y * y * y);
  double s, s_one_minus_s;
  if (q > 0.0) {
    const double e = std::exp(-q);
    s = e / (1.0 + e);
    s_one_minus_s = e / ((1.0 + e) * (1.0 + e));
  } else {
    const double e = std::exp(q);
    s = 1.0 / (1.0 + e);
    s_one_minus_s = e / ((1.0 + e) * (1.0 + e));
  }
  const double ds = -s_one_minus_s * dq;
  const double dds = -ds * (1.0 - 2.0 * s) * dq - s_one_minus_s * ddq;
  return {s, ds, dds};
}

BumpProfile::BumpProfile(double support_lo, double plateau_lo, double plateau_hi, double support_hi)
    : s0_(support_lo), p0_(plateau_lo), p1_(plateau_hi), s1_(support_hi) {
  if (!(s0_ < p0_ && p0_ <= p1_ && p1_ < s1_)) fail(ErrorCode::invalid_argument, "bump profile needs s0 < p0 <= p1 < s1");
}

BumpProfile BumpProfile::oscillator() { return {2.0, 3.0, 5.0, 6.0}; }

BumpProfile BumpProfile::shell_base() { return {0.5, 0.75, 3.0, 4.0}; }

BumpProfile BumpProfile::shell(int k) {
  if (k < 1) fail(ErrorCode::invalid_argument, "shell index k must be positive");
  const double k2 = static_cast<double>(k) * k;
  return {0.5, 0.75, 3.0 * k2, 4.0 * k2};
}

BumpProfile BumpProfile::glue(double rho, double theta) {
  if (!(rho > 0.0 && theta >= rho)) fail(ErrorCode::invalid_argument, "glue profile needs 0 < rho <= theta");
  return {rho / 3.0, rho / 2.0, 2.0 * theta, 3.0 * theta};
}

RadialJet BumpProfile::jet(double t) const {
  if (t <= s0_ || t >= s1_) return {0.0, 0.0, 0.0};
  if (t >= p0_ && t <= p1_) return {1.0, 0.0, 0.0};
  if (t < p0_) {
    const double w = p0_ - s0_;
    const RadialJet r = smooth_step((t - s0_) / w);
    return {r.value, r.d1 / w, r.d2 / (w * w)};
  }
  const double w = s1_ - p1_;
  const RadialJet r = smooth_step((s1_ - t) / w);
  return {r.value, -r.d1 / w, r.d2 / (w * w)};
}

std::vector<double> BumpProfile::breakpoints(double scale, int ramp_pieces) const {
  std::vector<double> out;
  for (int i = 0; i < ramp_pieces; ++i) out.push_back(scale * (s0_ + (p0_ - s0_) * i / ramp_pieces));
  out.push_back(scale * p0_);
  for (int i = 0; i < ramp_pieces; ++i) out.push_back(scale * (p1_ + (s1_ - p1_) * i / ramp_pieces));
  out.push_back(scale * s1_);
  return out;
}

}  // namespace wlab
