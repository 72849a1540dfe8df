#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Geometry>


namespace wlab::quad {
namespace {

std::vector<double> sorted_edges(std::vector<double> e) {
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  for (double v : e) {
    if (out.empty() || v - out.back() > 1e-13) out.push_back(v);
  }
  return out;
}

GaussRule build_gauss(int n) {
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int l = 1; l < n; ++l) {
        const double p2 = ((2.0 * l + 1.0) * z * p1 - l * p0) / (l + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int l = 1; l < n; ++l) {
      const double p2 = ((2.0 * l + 1.0) * z * p1 - l * p0) / (l + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    g.x[i] = -z;
    g.x[n - 1 - i] = z;
    g.w[i] = g.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

}  // namespace

void validate(const Resolution& res) {
  if (res.n_polar < 2 || res.n_azimuth < 3) fail(ErrorCode::invalid_argument, "resolution needs n_polar >= 2 and n_azimuth >= 3");
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "Gauss-Legendre order must be positive");
  static std::mutex m;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lk(m);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss(n));
  return *slot;
}

PolarRule composite_polar(const std::vector<double>& edges, int order) {
  const auto& g = gauss_legendre(order);
  PolarRule p;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
      p.s.push_back(mid + half * g.x[i]);
      p.w.push_back(half * g.w[i]);
    }
  }
  return p;
}

void complete_frame(const Vec3& axis, Vec3& e1, Vec3& e2) {
  const Vec3 a = axis.normalized();
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a[i]) < std::abs(a[k])) k = i;
  Vec3 helper = Vec3::Zero();
  helper[k] = 1.0;
  e1 = (helper - helper.dot(a) * a).normalized();
  e2 = a.cross(e1);
}

SphereRule::SphereRule(const Vec3& center, double radius, const Vec3& axis, PolarRule polar, int n_azimuth)
    : center_(center), radius_(radius), polar_(std::move(polar)), n_azimuth_(n_azimuth) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "sphere radius must be positive");
  if (!(axis.norm() > 0.0)) fail(ErrorCode::invalid_argument, "sphere axis must be nonzero");
  if (n_azimuth < 3) fail(ErrorCode::invalid_argument, "need at least 3 azimuthal nodes");
  axis_ = axis.normalized();
  complete_frame(axis_, e1_, e2_);
  cos_phi_.resize(n_azimuth);
  sin_phi_.resize(n_azimuth);
  for (int j = 0; j < n_azimuth; ++j) {
    const double phi = 2.0 * kPi * j / n_azimuth;
    cos_phi_[j] = std::cos(phi);
    sin_phi_[j] = std::sin(phi);
  }
}

SphereRule SphereRule::product(const Vec3& center, double radius, const Resolution& res, const Vec3& axis) {
  validate(res);
  return {center, radius, axis, composite_polar({-1.0, 1.0}, res.n_polar), res.n_azimuth};
}

SphereRule SphereRule::equator_split(const Vec3& center, double radius, const Resolution& res, const Vec3& axis) {
  validate(res);
  const int half = std::max(1, res.n_polar / 2);
  return {center, radius, axis, composite_polar({-1.0, 0.0, 1.0}, half), res.n_azimuth};
}

SphereRule SphereRule::origin_adapted(const Vec3& center, double radius, const Resolution& res,
                                      const std::vector<double>& radial_breaks) {
  validate(res);
  const double c = center.norm();
  const Vec3 axis = c > 0.0 ? Vec3(center / c) : Vec3::UnitZ();
  std::vector<double> edges{-1.0, 1.0};
  if (c > 0.0) {
    // |x|^2 = radius^2 + c^2 + 2 radius c s on the sphere.
    auto s_of = [&](double b) { return ((b - radius) * (b + radius) - c * c) / (2.0 * radius * c); };
    const double r_min = std::abs(radius - c), r_max = radius + c;
    for (double b : radial_breaks)
      if (b > r_min && b < r_max) edges.push_back(s_of(b));
    if (r_min > 0.0)
      for (double b = 2.0 * r_min; b < r_max; b *= 2.0) edges.push_back(s_of(b));
  }
  edges = sorted_edges(edges);
  if (edges.size() == 2) return {center, radius, axis, composite_polar(edges, res.n_polar), res.n_azimuth};
  const int order = std::max(8, res.n_polar / 3);
  return {center, radius, axis, composite_polar(edges, order), res.n_azimuth};
}

SurfaceNode SphereRule::node(std::size_t i) const {
  const std::size_t ip = i / static_cast<std::size_t>(n_azimuth_);
  const std::size_t ia = i % static_cast<std::size_t>(n_azimuth_);
  const double s = polar_.s[ip];
  const double sin_t = std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s)));
  const Vec3 nu = sin_t * (cos_phi_[ia] * e1_ + sin_phi_[ia] * e2_) + s * axis_;
  const double w = polar_.w[ip] * (2.0 * kPi / n_azimuth_) * radius_ * radius_;
  return {center_ + radius_ * nu, nu, w, s};
}

double integrate_sphere(const std::function<double(const Vec3&, const Vec3&)>& f, const SphereRule& rule) {
  return integrate_sphere_as<double>(f, rule, 0.0);
}

Vec3 integrate_sphere_vec(const std::function<Vec3(const Vec3&, const Vec3&)>& f, const SphereRule& rule) {
  return integrate_sphere_as<Vec3>(f, rule, Vec3::Zero());
}

double integrate_hemisphere(const std::function<double(const Vec3&, const Vec3&)>& f, const SphereRule& rule,
                            const Vec3& axis, int sign) {
  if (!(axis.norm() > 0.0)) fail(ErrorCode::invalid_argument, "hemisphere axis must be nonzero");
  if (sign != 1 && sign != -1) fail(ErrorCode::invalid_argument, "hemisphere sign must be +1 or -1");
  const Resolution res{static_cast<int>(rule.polar().s.size()), rule.n_azimuth()};
  const SphereRule aligned = SphereRule::equator_split(rule.center(), rule.radius(), res, axis);
  return parallel::deterministic_sum(aligned.size(), 0.0, [&](std::size_t i) {
    const SurfaceNode n = aligned.node(i);
    const double side = sign * n.s;
    if (side < -1e-15) return 0.0;
    const double share = std::abs(n.s) <= 1e-15 ? 0.5 : 1.0;
    return share * f(n.point, n.normal) * n.weight;
  });
}

ExteriorResult integrate_exterior(const std::function<double(const Vec3&)>& f, const ExteriorRule& rule) {
  validate(rule.resolution);
  if (!rule.support && !rule.decay)
    fail(ErrorCode::unbounded_support, "exterior integrand declares neither compact support nor decay");
  const double lam = rule.radius;
  const Vec3& cvec = rule.center;
  const double c = cvec.norm();
  if (!(c < lam)) fail(ErrorCode::domain, "exterior quadrature needs the origin inside the excluded ball");
  if (rule.radial_order < 1 || !(rule.max_log_width > 0.0)) fail(ErrorCode::invalid_argument, "bad radial panel settings");

  // Radial intervals to integrate, intersected with [lam - c, infinity) per ray below.
  std::vector<Interval> spans;
  ExteriorResult result;
  if (rule.support) {
    spans = *rule.support;
  } else {
    if (!(rule.decay->cutoff > lam + c)) fail(ErrorCode::invalid_argument, "decay cutoff must exceed the excluded ball");
    spans = {{0.0, rule.decay->cutoff}};
    result.tail_estimate = 4.0 * kPi * rule.decay->constant / rule.decay->cutoff;
  }
  std::vector<double> breaks = rule.breakpoints;
  for (const auto& iv : spans) {
    breaks.push_back(iv.lo);
    breaks.push_back(iv.hi);
  }
  breaks = sorted_edges(breaks);

  // Polar panels of ray directions break where the exit radius crosses a breakpoint.
  const Vec3 axis = c > 0.0 ? Vec3(cvec / c) : Vec3::UnitZ();
  std::vector<double> edges{-1.0, 1.0};
  if (c > 0.0) {
    auto s_of = [&](double b) { return ((b - lam) * (b + lam) + c * c) / (2.0 * b * c); };
    const double r_min = lam - c, r_max = lam + c;
    for (double b : breaks)
      if (b > r_min && b < r_max) edges.push_back(s_of(b));
    for (double b = 2.0 * r_min; b < r_max; b *= 2.0) edges.push_back(s_of(b));
  }
  edges = sorted_edges(edges);
  const int order = edges.size() == 2 ? rule.resolution.n_polar : std::max(8, rule.resolution.n_polar / 3);
  const SphereRule dirs(Vec3::Zero(), 1.0, axis, composite_polar(edges, order), rule.resolution.n_azimuth);
  const GaussRule& g = gauss_legendre(rule.radial_order);

  auto ray_integral = [&](const Vec3& omega, double s) {
    const double exit = c * s + std::sqrt(std::max(0.0, c * c * s * s + (lam - c) * (lam + c)));
    parallel::Kahan<double> acc(0.0);
    std::vector<double> cuts;
    for (const auto& iv : spans) {
      const double a = std::max(iv.lo, exit);
      const double b = iv.hi;
      if (!(b > a)) continue;
      cuts.assign(1, a);
      for (double br : breaks)
        if (br > a && br < b) cuts.push_back(br);
      cuts.push_back(b);
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double la = std::log(cuts[k]), lb = std::log(cuts[k + 1]);
        const int panels = std::max(1, static_cast<int>(std::ceil((lb - la) / rule.max_log_width)));
        const double h = (lb - la) / panels;
        for (int p = 0; p < panels; ++p) {
          const double mid = la + (p + 0.5) * h;
          for (int i = 0; i < rule.radial_order; ++i) {
            const double r = std::exp(mid + 0.5 * h * g.x[i]);
            acc.add(f(r * omega) * r * r * r * 0.5 * h * g.w[i]);
          }
        }
      }
    }
    return acc.sum;
  };

  result.value = parallel::deterministic_sum(dirs.size(), 0.0, [&](std::size_t i) {
    const SurfaceNode n = dirs.node(i);
    return ray_integral(n.normal, n.s) * n.weight;
  });
  return result;
}

}  // namespace wlab::quad
