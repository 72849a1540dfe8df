#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/flux.hpp"
#include "core/reduced.hpp"

namespace wlab::solver {

enum class Classification { minimum, saddle, maximum, degenerate, boundary_hit };
const char* to_string(Classification c);

struct CriticalPoint {
  Vec3 xi = Vec3::Zero();
  double lambda = 0.0;
  double grad_norm = 0.0;
  Vec3 gradient = Vec3::Zero();
  Mat3 hessian = Mat3::Zero();
  Vec3 hessian_eigenvalues = Vec3::Zero();  // ascending
  double hessian_asymmetry = 0.0;           // |H - H^T| / |H|
  Vec3 barycenter = Vec3::Zero();
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  Classification classification = Classification::degenerate;
  int iterations = 0;
  int seed_index = -1;
};

struct SeedFailure {
  int seed_index = -1;
  Vec3 last_xi = Vec3::Zero();
  double grad_norm = 0.0;
  std::string reason;
};

struct SearchResult {
  std::vector<CriticalPoint> points;  // distinct, ordered by seed index
  std::vector<SeedFailure> failures;
};

struct Options {
  reduced::Settings settings;
  double relative_tolerance = 1e-9;
  int max_iterations = 200;
  double fd_step = 1e-5;
  double dedup_distance = 1e-6;
};

std::vector<Vec3> default_seeds(double delta);

SearchResult find_critical_points(const ConformalMetric& model, double lambda, double delta,
                                  const std::vector<Vec3>& seeds, const Options& options = {});

// Central-difference Hessian of G from gradient evaluations.
Mat3 fd_hessian(const ConformalMetric& model, const Vec3& xi, double lambda, const Options& options);

struct BranchEntry {
  double lambda = 0.0;
  std::optional<CriticalPoint> point;
  std::vector<SeedFailure> failures;
};

struct BranchTrace {
  std::vector<BranchEntry> entries;
  Vec3 oscillation = Vec3::Zero();  // max - min of each barycenter component
};

// Warm-started: the previous critical point leads the seed list at each lambda,
// and the point closest to the previous one (to the origin at first) is kept.
BranchTrace trace_branch(const ConformalMetric& model, const std::vector<double>& lambdas, double delta,
                         const std::vector<Vec3>& seeds, const Options& options = {});

struct ComComparison {
  double lambda = 0.0;
  CriticalPoint point;
  flux::FluxReport flux;
  Vec3 c_flux = Vec3::Zero();
  Vec3 barycenter = Vec3::Zero();
  Vec3 curvature_term = Vec3::Zero();  // lambda^3 / (128 pi) int R nu
  Vec3 residual = Vec3::Zero();
};

ComComparison com_compare(const ConformalMetric& model, double lambda, double delta,
                          const std::vector<double>& flux_radii, const std::vector<Vec3>& seeds,
                          const Options& options = {});

struct ScanSample {
  Vec3 xi;
  double grad_norm;
};

struct ScanResult {
  double lambda = 0.0;
  double spacing = 0.0;
  double min_grad_norm = 0.0;
  Vec3 argmin = Vec3::Zero();
  std::vector<ScanSample> samples;
  std::optional<CriticalPoint> refined;
};

ScanResult stationary_scan(const ConformalMetric& model, double lambda, double delta, double spacing,
                           const Options& options = {}, bool refine = true);

struct ScalarField {
  std::function<double(const Vec3&)> f;
  std::vector<double> breakpoints;
};

struct ConvexityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool hypothesis_ok = true;
  std::string warning;
};

// LHS - RHS of the monotone-gradient inequality with normal component along xi2 - xi1.
ConvexityResult convexity_check(const ScalarField& field, const Vec3& xi1, const Vec3& xi2, double lambda,
                                const quad::Resolution& res = {});

struct RayMap {
  double theta = 0.0;
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
};

RayMap ray_map(double zeta, const Vec3& xi1, const Vec3& xi2);

// theta'(zeta) = t^{-1}(cos theta cos zeta + a cos zeta + sin zeta sin theta)/(1 + a cos theta)
double ray_map_rate(double zeta, const RayMap& m);

}  // namespace wlab::solver
