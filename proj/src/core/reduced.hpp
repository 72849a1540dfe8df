#pragma once

#include "core/catalog.hpp"
#include "core/metric.hpp"
#include "core/quadrature.hpp"

namespace wlab::reduced {

struct Settings {
  quad::Resolution resolution;
  int radial_order = 32;
  double max_log_width = 0.5;
};

double g1(const Vec3& xi);
Vec3 grad_g1(const Vec3& xi);

// 2 pi [8 (1-t)^{-2} + 40 (1-t)^{-1} - 24 log(1-t)] xi/|xi|, t = |xi| in (0.5, 1).
Vec3 g1_boundary_form(const Vec3& xi);

// int_{S_lambda(lambda xi)} R nu dmu_flat
Vec3 curvature_moment(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings = {});

// 2 lambda int_{outside B_lambda(lambda xi)} R dv_flat
double g2(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings = {});
// -2 lambda^2 int_{S_lambda(lambda xi)} R nu dmu_flat
Vec3 grad_g2(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings = {});

struct ShellGradient {
  Vec3 value = Vec3::Zero();
  // The bounded 8 sum a_i f_i(xi) xi term is not evaluated.
  bool remainder_unevaluated = true;
};

// -16 pi [a1 (1-t)^{-2} + (a1+a2)(1-t)^{-1} + (a1-a3) log(1-t)] xi/|xi| + 64 pi a4 e3.
ShellGradient shell_gradient_closed_form(const ShellParams& shell, const Vec3& xi);

struct ReducedEnergyEval {
  Vec3 xi = Vec3::Zero();
  double lambda = 0.0;
  double g1 = 0.0, g2 = 0.0, g = 0.0;
  Vec3 grad_g1 = Vec3::Zero(), grad_g2 = Vec3::Zero(), grad_g = Vec3::Zero();
  bool has_value = true;
};

// G = G1 + G2; the O(1/lambda) term G3 is not modeled. With with_value = false
// only the gradients are computed.
ReducedEnergyEval g_total(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings = {},
                          bool with_value = true);

double hawking_from_g(double g, double lambda);

}  // namespace wlab::reduced
