#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/parallel.hpp"
#include "core/types.hpp"

namespace wlab::quad {

struct Resolution {
  int n_polar = 48;
  int n_azimuth = 96;
};

void validate(const Resolution& res);

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre rule in s = cos(theta) over the given panel edges.
struct PolarRule {
  std::vector<double> s;
  std::vector<double> w;
};
PolarRule composite_polar(const std::vector<double>& edges, int order);

struct SurfaceNode {
  Vec3 point;
  Vec3 normal;
  double weight;  // includes radius^2
  double s;       // cos of the polar angle about the rule axis
};

// Product rule: polar nodes in cos(theta) about `axis` times uniform azimuth.
class SphereRule {
 public:
  SphereRule(const Vec3& center, double radius, const Vec3& axis, PolarRule polar, int n_azimuth);

  // Single Gauss-Legendre panel with n_polar nodes.
  static SphereRule product(const Vec3& center, double radius, const Resolution& res = {},
                            const Vec3& axis = Vec3::UnitZ());
  // Two panels split at the equator of `axis`, so hemispheres are exact unions of node circles.
  static SphereRule equator_split(const Vec3& center, double radius, const Resolution& res, const Vec3& axis);
  // Axis through the origin; polar panels break where the sphere crosses the
  // given origin-centred radii and are graded geometrically toward the point
  // nearest the origin.
  static SphereRule origin_adapted(const Vec3& center, double radius, const Resolution& res,
                                   const std::vector<double>& radial_breaks = {});

  std::size_t size() const { return polar_.s.size() * static_cast<std::size_t>(n_azimuth_); }
  SurfaceNode node(std::size_t i) const;

  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }
  const Vec3& axis() const { return axis_; }
  const PolarRule& polar() const { return polar_; }
  int n_azimuth() const { return n_azimuth_; }

 private:
  Vec3 center_;
  double radius_;
  Vec3 axis_, e1_, e2_;
  PolarRule polar_;
  int n_azimuth_;
  std::vector<double> cos_phi_, sin_phi_;
};

// Orthonormal e1, e2 completing `axis` to a right-handed frame.
void complete_frame(const Vec3& axis, Vec3& e1, Vec3& e2);

template <class T, class F>
T integrate_sphere_as(const F& f, const SphereRule& rule, const T& zero) {
  return parallel::deterministic_sum(rule.size(), zero, [&](std::size_t i) -> T {
    const SurfaceNode n = rule.node(i);
    return T(f(n.point, n.normal) * n.weight);
  });
}

// f(point, outward normal) -> double
double integrate_sphere(const std::function<double(const Vec3&, const Vec3&)>& f, const SphereRule& rule);
// f(point, outward normal) -> Vec3
Vec3 integrate_sphere_vec(const std::function<Vec3(const Vec3&, const Vec3&)>& f, const SphereRule& rule);

// Restricted to nodes with sign * <normal, axis> >= 0; equator nodes count half.
double integrate_hemisphere(const std::function<double(const Vec3&, const Vec3&)>& f, const SphereRule& rule,
                            const Vec3& axis, int sign);

struct DecayBound {
  double constant;  // |f| <= constant |x|^{-4}
  double cutoff;    // outer radius of the quadrature
};

struct ExteriorRule {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
  Resolution resolution;
  std::vector<double> breakpoints;  // origin-centred radii where f is not smooth
  std::optional<std::vector<Interval>> support;
  std::optional<DecayBound> decay;
  int radial_order = 32;
  double max_log_width = 0.5;
};

struct ExteriorResult {
  double value = 0.0;
  double tail_estimate = 0.0;
};

// Integral of f over the complement of the ball B_radius(center). The origin
// must lie inside the ball; f is sampled along rays from the origin.
ExteriorResult integrate_exterior(const std::function<double(const Vec3&)>& f, const ExteriorRule& rule);

}  // namespace wlab::quad
