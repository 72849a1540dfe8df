#include "core/reduced.hpp"

#include <cmath>
#include <sstream>

namespace wlab::reduced {
namespace {

constexpr double kSeriesSwitch = 1e-3;

double series_coefficient(int n) { return kPi * (32.0 - 96.0 / (2.0 * n + 1.0) + 128.0 / n); }

double check_xi(const Vec3& xi) {
  const double t = xi.norm();
  if (!(t < 1.0)) {
    std::ostringstream msg;
    msg << "|xi| = " << t << " must be below 1";
    fail(ErrorCode::domain, msg.str());
  }
  return t;
}

void check_ball(const ConformalMetric& model, const Vec3& xi, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "lambda must be positive");
  const double t = check_xi(xi);
  if (model.inner_radius() > 0.0 && (lambda * (1.0 - t) <= model.inner_radius() + model.center().norm()))
    fail(ErrorCode::singularity, "sphere S_lambda(lambda xi) meets the inner region");
}

bool touches(const std::vector<Interval>& support, double lo, double hi) {
  for (const auto& iv : support)
    if (iv.hi > lo && iv.lo < hi) return true;
  return false;
}

}  // namespace

double g1(const Vec3& xi) {
  const double t = check_xi(xi);
  const double t2 = t * t;
  if (t < kSeriesSwitch) {
    double sum = 0.0, p = t2;
    for (int n = 1; n <= 6; ++n, p *= t2) sum += series_coefficient(n) * p;
    return sum;
  }
  const double log_ratio = 2.0 * std::atanh(t);
  return 64.0 * kPi + 32.0 * kPi / (1.0 - t2) - 48.0 * kPi * log_ratio / t - 128.0 * kPi * std::log1p(-t2);
}

Vec3 grad_g1(const Vec3& xi) {
  const double t = check_xi(xi);
  const double t2 = t * t;
  double radial_over_t;
  if (t < kSeriesSwitch) {
    radial_over_t = 0.0;
    double p = 1.0;
    for (int n = 1; n <= 6; ++n, p *= t2) radial_over_t += 2.0 * n * series_coefficient(n) * p;
  } else {
    const double q = 1.0 - t2;
    const double log_ratio = 2.0 * std::atanh(t);
    const double d = 64.0 * kPi * t / (q * q) + 48.0 * kPi * log_ratio / t2 - 96.0 * kPi / (t * q) +
                     256.0 * kPi * t / q;
    radial_over_t = d / t;
  }
  return radial_over_t * xi;
}

Vec3 g1_boundary_form(const Vec3& xi) {
  const double t = xi.norm();
  if (!(t > 0.5 && t < 1.0)) fail(ErrorCode::domain, "boundary form needs 0.5 < |xi| < 1");
  const double e = 1.0 - t;
  return 2.0 * kPi * (8.0 / (e * e) + 40.0 / e - 24.0 * std::log(e)) * (xi / t);
}

Vec3 curvature_moment(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings) {
  check_ball(model, xi, lambda);
  std::vector<Interval> support;
  const bool bounded = model.curvature_support(support);
  if (!model.perturbation()) return Vec3::Zero();
  const Vec3 center = lambda * xi;
  const double c = center.norm();
  if (bounded && !touches(support, lambda - c, lambda + c)) return Vec3::Zero();
  const auto rule = quad::SphereRule::origin_adapted(center, lambda, settings.resolution, model.breakpoints());
  return quad::integrate_sphere_vec([&](const Vec3& x, const Vec3& nu) -> Vec3 { return scalar_curvature(model, x) * nu; },
                                    rule);
}

double g2(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings) {
  check_ball(model, xi, lambda);
  if (!model.perturbation()) return 0.0;
  quad::ExteriorRule rule;
  rule.center = lambda * xi;
  rule.radius = lambda;
  rule.resolution = settings.resolution;
  rule.radial_order = settings.radial_order;
  rule.max_log_width = settings.max_log_width;
  rule.breakpoints = model.breakpoints();
  std::vector<Interval> support;
  if (!model.curvature_support(support))
    fail(ErrorCode::unbounded_support, "scalar curvature of this model has no declared bounded support");
  if (support.empty()) return 0.0;
  rule.support = support;
  const auto res = quad::integrate_exterior([&](const Vec3& x) { return scalar_curvature(model, x); }, rule);
  return 2.0 * lambda * res.value;
}

Vec3 grad_g2(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings) {
  return -2.0 * lambda * lambda * curvature_moment(model, xi, lambda, settings);
}

ShellGradient shell_gradient_closed_form(const ShellParams& shell, const Vec3& xi) {
  const double t = xi.norm();
  const double k2 = static_cast<double>(shell.k) * shell.k;
  if (!(t < 1.0 - 1.0 / k2) && t != 0.0) fail(ErrorCode::domain, "closed form needs |xi| < 1 - k^{-2}");
  const auto& a = shell.a;
  ShellGradient out;
  out.value = 64.0 * kPi * a[3] * Vec3::UnitZ();
  if (t > 0.0) {
    const double e = 1.0 - t;
    const double bracket = a[0] / (e * e) + (a[0] + a[1]) / e + (a[0] - a[2]) * std::log(e);
    out.value += -16.0 * kPi * bracket * (xi / t);
  }
  return out;
}

ReducedEnergyEval g_total(const ConformalMetric& model, const Vec3& xi, double lambda, const Settings& settings,
                          bool with_value) {
  ReducedEnergyEval e;
  e.xi = xi;
  e.lambda = lambda;
  e.has_value = with_value;
  e.grad_g1 = grad_g1(xi);
  e.grad_g2 = grad_g2(model, xi, lambda, settings);
  e.grad_g = e.grad_g1 + e.grad_g2;
  if (with_value) {
    e.g1 = g1(xi);
    e.g2 = g2(model, xi, lambda, settings);
    e.g = e.g1 + e.g2;
  }
  return e;
}

double hawking_from_g(double g, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "lambda must be positive");
  return 2.0 - g / (32.0 * kPi * lambda);
}

}  // namespace wlab::reduced
