#include "core/metric.hpp"

#include <cmath>
#include <sstream>

namespace wlab {

ConformalMetric::ConformalMetric(double mass, const Vec3& center, std::shared_ptr<const Perturbation> psi)
    : mass_(mass), center_(center), psi_(std::move(psi)) {
  if (!(mass >= 0.0)) fail(ErrorCode::invalid_argument, "mass must be non-negative");
  if (!center.allFinite()) fail(ErrorCode::invalid_argument, "center must be finite");
}

ConformalMetric ConformalMetric::schwarzschild(double mass, const Vec3& center) { return {mass, center, nullptr}; }

FieldJet ConformalMetric::psi(const Vec3& x) const { return psi_ ? psi_->evaluate(x) : FieldJet{}; }

FieldJet ConformalMetric::excess(const Vec3& x) const {
  FieldJet w = psi(x);
  if (mass_ > 0.0) {
    const Vec3 y = x - center_;
    const double r = y.norm();
    const double half = 0.5 * mass_;
    w.value += half / r;
    w.gradient -= half / (r * r * r) * y;
  }
  return w;
}

bool ConformalMetric::curvature_support(std::vector<Interval>& out) const {
  out.clear();
  if (!psi_) return true;
  return psi_->support(out);
}

std::vector<double> ConformalMetric::breakpoints() const { return psi_ ? psi_->breakpoints() : std::vector<double>{}; }

double ConformalMetric::decay_constant() const { return psi_ ? psi_->decay_constant() : 0.0; }

void require_outside_inner(const ConformalMetric& model, const Vec3& x, bool allow_boundary) {
  const double d = (x - model.center()).norm();
  const double r0 = model.inner_radius();
  const bool bad = allow_boundary ? d < r0 * (1.0 - 1e-12) : d <= r0;
  if (bad || (model.mass() > 0.0 && d == 0.0)) {
    std::ostringstream msg;
    msg << "point at distance " << d << " from the mass center lies inside the inner boundary r = " << r0;
    fail(ErrorCode::singularity, msg.str());
  }
}

double scalar_curvature(const ConformalMetric& model, const Vec3& x) {
  require_outside_inner(model, x, false);
  if (!model.perturbation()) return 0.0;
  const FieldJet w = model.excess(x);
  const double u = 1.0 + w.value;
  // R = -8 u^{-5} (flat Laplacian of u); the point-mass term is harmonic.
  return -8.0 * w.laplacian / std::pow(u, 5);
}

MetricDeviation metric_deviation(const ConformalMetric& model, const Vec3& x) {
  require_outside_inner(model, x, false);
  const FieldJet w = model.excess(x);
  const double u = 1.0 + w.value;
  MetricDeviation d;
  // u^4 - 1 factored to keep relative accuracy when w is tiny.
  d.h = w.value * (u + 1.0) * (u * u + 1.0);
  d.grad_h = 4.0 * u * u * u * w.gradient;

  const double r = x.norm();
  const double s = 1.0 + 1.0 / r;
  const Vec3 grad_s = -x / (r * r * r);
  // u - s: differences of the point-mass terms plus psi.
  const FieldJet p = model.psi(x);
  double diff = p.value;
  if (model.mass() > 0.0) diff += 0.5 * model.mass() / (x - model.center()).norm();
  diff -= 1.0 / r;
  d.sigma = diff * (u + s) * (u * u + s * s);
  d.grad_sigma = 4.0 * u * u * u * w.gradient - 4.0 * s * s * s * grad_s;
  return d;
}

double mean_curvature_sphere(const ConformalMetric& model, const Vec3& center, double radius, const Vec3& direction) {
  if (!(radius > 0.0)) fail(ErrorCode::domain, "sphere radius must be positive");
  const double gap = std::abs(radius - (center - model.center()).norm());
  if (model.inner_radius() > 0.0 && gap < model.inner_radius() * (1.0 - 1e-12))
    fail(ErrorCode::singularity, "coordinate sphere meets the inner boundary");
  const Vec3 nu = direction.normalized();
  const FieldJet w = model.excess(center + radius * nu);
  const double u = 1.0 + w.value;
  return (2.0 / radius + 4.0 * w.gradient.dot(nu) / u) / (u * u);
}

Mat3 ricci_schwarzschild_leading(const Vec3& x) {
  const double r2 = x.squaredNorm();
  const double r = std::sqrt(r2);
  return 2.0 / (r2 * r) * (Mat3::Identity() - 3.0 * x * x.transpose() / r2);
}

}  // namespace wlab
