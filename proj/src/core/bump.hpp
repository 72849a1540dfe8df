#pragma once

#include <vector>

#include "core/types.hpp"

namespace wlab {

struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// s(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}), extended by 0 below 0 and 1 above 1.
RadialJet smooth_step(double x);

// Plateau function: 0 outside (s0, s1), 1 on [p0, p1], smooth-step ramps between.
class BumpProfile {
 public:
  BumpProfile(double support_lo, double plateau_lo, double plateau_hi, double support_hi);

  // chi of the com-oscillator: 1 on [3, 5], support [2, 6].
  static BumpProfile oscillator();
  // chi of the shell families: 1 on [3/4, 3], support [1/2, 4].
  static BumpProfile shell_base();
  // chi_k: chi on t <= 1, 1 on [1, k^2], chi(t/k^2) beyond.
  static BumpProfile shell(int k);
  // gamma stretched to a leaf: gamma(t/rho) below rho, 1 on [rho, theta], gamma(t/theta) above.
  static BumpProfile glue(double rho, double theta);

  double operator()(double t) const { return jet(t).value; }
  RadialJet jet(double t) const;

  Interval support() const { return {s0_, s1_}; }
  Interval plateau() const { return {p0_, p1_}; }

  // Support ends, plateau ends and interior ramp subdivisions, scaled by `scale`.
  std::vector<double> breakpoints(double scale, int ramp_pieces = 4) const;

 private:
  double s0_, p0_, p1_, s1_;
};

}  // namespace wlab
