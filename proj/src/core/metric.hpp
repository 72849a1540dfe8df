#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace wlab {

// A conformal perturbation psi of u = 1 + m/(2|x - c|) + psi.
class Perturbation {
 public:
  virtual ~Perturbation() = default;

  virtual FieldJet evaluate(const Vec3& x) const = 0;
  virtual bool closed_form() const { return true; }
  // Radial shells |x| in [lo, hi] outside of which psi vanishes identically.
  // Returns false when the support is not known to be bounded.
  virtual bool support(std::vector<Interval>& out) const = 0;
  // Radii where psi stops being smooth enough for a single quadrature panel.
  virtual std::vector<double> breakpoints() const { return {}; }
  // C with |psi(x)| <= C |x|^{-2} for |x| >= 1.
  virtual double decay_constant() const = 0;
};

class ConformalMetric {
 public:
  ConformalMetric(double mass, const Vec3& center, std::shared_ptr<const Perturbation> psi);

  static ConformalMetric schwarzschild(double mass = 2.0, const Vec3& center = Vec3::Zero());
  static ConformalMetric flat() { return schwarzschild(0.0); }

  double mass() const { return mass_; }
  const Vec3& center() const { return center_; }
  const Perturbation* perturbation() const { return psi_.get(); }
  std::shared_ptr<const Perturbation> perturbation_ptr() const { return psi_; }

  // Coordinate radius |x - c| at or below which the model is singular.
  double inner_radius() const { return 0.5 * mass_; }

  // w = u - 1 with flat gradient and Laplacian.
  FieldJet excess(const Vec3& x) const;
  FieldJet psi(const Vec3& x) const;

  // Shells carrying the scalar curvature. Returns false if unbounded.
  bool curvature_support(std::vector<Interval>& out) const;
  std::vector<double> breakpoints() const;
  double decay_constant() const;

 private:
  double mass_;
  Vec3 center_;
  std::shared_ptr<const Perturbation> psi_;
};

void require_outside_inner(const ConformalMetric& model, const Vec3& x, bool allow_boundary);

double scalar_curvature(const ConformalMetric& model, const Vec3& x);

// h = g - flat and sigma = g - g_S are multiples of the identity; only the
// scalar factors and their gradients are stored.
struct MetricDeviation {
  double h = 0.0;
  Vec3 grad_h = Vec3::Zero();
  double sigma = 0.0;
  Vec3 grad_sigma = Vec3::Zero();

  Mat3 h_matrix() const { return h * Mat3::Identity(); }
  Mat3 sigma_matrix() const { return sigma * Mat3::Identity(); }
  // d_k h_ij for k = 0, 1, 2.
  Mat3 h_derivative(int k) const { return grad_h[k] * Mat3::Identity(); }
  Mat3 sigma_derivative(int k) const { return grad_sigma[k] * Mat3::Identity(); }
};

MetricDeviation metric_deviation(const ConformalMetric& model, const Vec3& x);

double mean_curvature_sphere(const ConformalMetric& model, const Vec3& center, double radius, const Vec3& direction);

Mat3 ricci_schwarzschild_leading(const Vec3& x);

}  // namespace wlab
