#include "core/flux.hpp"

#include <cmath>

namespace wlab::flux {
namespace {

void check_radius(const ConformalMetric& model, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "flux sphere radius must be positive");
  if (model.inner_radius() > 0.0 && lambda <= model.inner_radius() + model.center().norm())
    fail(ErrorCode::singularity, "flux sphere meets the inner region");
}

// x^j [d_i h_ij - d_j h_ii]
double mass_flux_density(const MetricDeviation& d, const Vec3& x) {
  Vec3 div = Vec3::Zero();
  Vec3 grad_trace = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const Mat3 dk = d.h_derivative(k);
    div += dk.row(k).transpose();
    grad_trace[k] = dk.trace();
  }
  return x.dot(div - grad_trace);
}

void check_sphere(const ConformalMetric& model, const Vec3& center, double radius) {
  if (!(radius > 0.0)) fail(ErrorCode::domain, "sphere radius must be positive");
  const double gap = std::abs(radius - (center - model.center()).norm());
  if (model.inner_radius() > 0.0 && gap < model.inner_radius() * (1.0 - 1e-12))
    fail(ErrorCode::singularity, "coordinate sphere meets the inner boundary");
}

}  // namespace

double adm_mass(const ConformalMetric& model, double lambda, const quad::Resolution& res) {
  check_radius(model, lambda);
  const auto rule = quad::SphereRule::product(Vec3::Zero(), lambda, res);
  const double flux = quad::integrate_sphere(
      [&](const Vec3& x, const Vec3&) { return mass_flux_density(metric_deviation(model, x), x); }, rule);
  return flux / (16.0 * kPi * lambda);
}

Vec3 hamiltonian_com(const ConformalMetric& model, double lambda, double mass, const quad::Resolution& res) {
  check_radius(model, lambda);
  if (!(mass > 0.0)) fail(ErrorCode::domain, "center of mass needs positive mass");
  const auto rule = quad::SphereRule::product(Vec3::Zero(), lambda, res);
  const Vec3 flux = quad::integrate_sphere_vec(
      [&](const Vec3& x, const Vec3&) -> Vec3 {
        const MetricDeviation d = metric_deviation(model, x);
        const Mat3 h = d.h_matrix();
        return x * mass_flux_density(d, x) - (h * x - h.trace() * x);
      },
      rule);
  return flux / (16.0 * kPi * mass * lambda);
}

double hawking_mass(const ConformalMetric& model, const Vec3& center, double radius, const quad::Resolution& res) {
  check_sphere(model, center, radius);
  const auto rule = quad::SphereRule::origin_adapted(center, radius, res, model.breakpoints());
  struct Pair {
    double area = 0.0, willmore = 0.0;
    Pair operator+(const Pair& o) const { return {area + o.area, willmore + o.willmore}; }
    Pair operator-(const Pair& o) const { return {area - o.area, willmore - o.willmore}; }
  };
  const Pair total = parallel::deterministic_sum(rule.size(), Pair{}, [&](std::size_t i) {
    const auto n = rule.node(i);
    const FieldJet w = model.excess(n.point);
    const double u = 1.0 + w.value;
    const double u2 = u * u;
    // H^2 dmu = (2/r + 4 d_nu u / u)^2 dmu_flat
    const double hbar = 2.0 / radius + 4.0 * w.gradient.dot(n.normal) / u;
    return Pair{u2 * u2 * n.weight, hbar * hbar * n.weight};
  });
  return std::sqrt(total.area / (16.0 * kPi)) * (1.0 - total.willmore / (16.0 * kPi));
}

double willmore_energy_sphere(const ConformalMetric& model, const Vec3& xi, double lambda, const quad::Resolution& res) {
  const Vec3 center = lambda * xi;
  check_sphere(model, center, lambda);
  const auto rule = quad::SphereRule::origin_adapted(center, lambda, res, model.breakpoints());
  return quad::integrate_sphere(
      [&](const Vec3& x, const Vec3& nu) {
        const FieldJet w = model.excess(x);
        const double hbar = 2.0 / lambda + 4.0 * w.gradient.dot(nu) / (1.0 + w.value);
        return hbar * hbar;
      },
      rule);
}

Extrapolation extrapolate_limit(const std::vector<std::pair<double, double>>& samples, double tolerance) {
  if (samples.size() < 3) fail(ErrorCode::invalid_argument, "extrapolation needs at least three samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      fail(ErrorCode::ill_conditioned, "extrapolation radii must be strictly increasing");
  // Neville interpolation in h = 1/lambda, evaluated at h = 0.
  auto linear = [&](std::size_t i) {
    const double h0 = 1.0 / samples[i].first, h1 = 1.0 / samples[i + 1].first;
    return (h0 * samples[i + 1].second - h1 * samples[i].second) / (h0 - h1);
  };
  auto quadratic = [&](std::size_t i) {
    const double h0 = 1.0 / samples[i].first, h2 = 1.0 / samples[i + 2].first;
    return (h0 * linear(i + 1) - h2 * linear(i)) / (h0 - h2);
  };
  const std::size_t n = samples.size();
  Extrapolation e;
  e.limit = quadratic(n - 3);
  e.error = std::abs(e.limit - linear(n - 2));
  if (n >= 4) e.error = std::max(e.error, std::abs(e.limit - quadratic(n - 4)));
  e.converged = e.error <= tolerance;
  return e;
}

FluxReport flux_report(const ConformalMetric& model, const std::vector<double>& radii, const quad::Resolution& res,
                       double tolerance) {
  FluxReport rep;
  rep.radii = radii;
  std::vector<std::pair<double, double>> ms;
  for (double r : radii) {
    rep.mass_samples.push_back(adm_mass(model, r, res));
    ms.emplace_back(r, rep.mass_samples.back());
  }
  rep.mass = extrapolate_limit(ms, tolerance);
  std::vector<std::pair<double, double>> cs[3];
  for (double r : radii) {
    rep.center_samples.push_back(hamiltonian_com(model, r, rep.mass.limit, res));
    for (int k = 0; k < 3; ++k) cs[k].emplace_back(r, rep.center_samples.back()[k]);
  }
  for (int k = 0; k < 3; ++k) rep.center[k] = extrapolate_limit(cs[k], tolerance);
  return rep;
}

}  // namespace wlab::flux
