#pragma once

#include <utility>
#include <vector>

#include "core/metric.hpp"
#include "core/quadrature.hpp"

namespace wlab::flux {

// (1/16 pi) lambda^{-1} int_{S_lambda(0)} x^j [d_i h_ij - d_j h_ii] with h = g - flat.
double adm_mass(const ConformalMetric& model, double lambda, const quad::Resolution& res = {});

// Hamiltonian center from the same flux plus the correction row, both written
// with h = g - flat (the flat part of the correction integrates to zero).
Vec3 hamiltonian_com(const ConformalMetric& model, double lambda, double mass, const quad::Resolution& res = {});

double hawking_mass(const ConformalMetric& model, const Vec3& center, double radius, const quad::Resolution& res = {});

// int H^2 dmu over S_lambda(lambda xi).
double willmore_energy_sphere(const ConformalMetric& model, const Vec3& xi, double lambda,
                              const quad::Resolution& res = {});

struct Extrapolation {
  double limit = 0.0;
  double error = 0.0;
  bool converged = false;
};

// Richardson extrapolation for value = L + c1/lambda + c2/lambda^2 using the
// last three samples; the error is the largest gap between successive extrapolants.
Extrapolation extrapolate_limit(const std::vector<std::pair<double, double>>& samples, double tolerance = 1e-3);

struct FluxReport {
  std::vector<double> radii;
  std::vector<double> mass_samples;
  std::vector<Vec3> center_samples;
  Extrapolation mass;
  Extrapolation center[3];
  Vec3 center_limit() const { return {center[0].limit, center[1].limit, center[2].limit}; }
  Vec3 center_error() const { return {center[0].error, center[1].error, center[2].error}; }
};

// Mass and center at each radius, then extrapolated. The center samples use the
// extrapolated mass in their prefactor.
FluxReport flux_report(const ConformalMetric& model, const std::vector<double>& radii,
                       const quad::Resolution& res = {}, double tolerance = 1e-3);

}  // namespace wlab::flux
