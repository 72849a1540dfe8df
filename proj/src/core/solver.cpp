#include "core/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace wlab::solver {
namespace {

Vec3 gradient(const ConformalMetric& model, const Vec3& xi, double lambda, const Options& o) {
  return reduced::grad_g1(xi) + reduced::grad_g2(model, xi, lambda, o.settings);
}

Vec3 project(const Vec3& xi, double radius) {
  const double n = xi.norm();
  return n > radius ? Vec3(xi * (radius / n)) : xi;
}

Classification classify(const Vec3& ev) {
  const double scale = ev.cwiseAbs().maxCoeff();
  const double tau = 1e-6 * scale;
  if (scale == 0.0) return Classification::degenerate;
  if (ev.minCoeff() > tau) return Classification::minimum;
  if (ev.maxCoeff() < -tau) return Classification::maximum;
  if (ev.minCoeff() < -tau && ev.maxCoeff() > tau) return Classification::saddle;
  return Classification::degenerate;
}

CriticalPoint describe(const ConformalMetric& model, const Vec3& xi, double lambda, const Vec3& g, const Options& o) {
  CriticalPoint p;
  p.xi = xi;
  p.lambda = lambda;
  p.gradient = g;
  p.grad_norm = g.norm();
  p.hessian = fd_hessian(model, xi, lambda, o);
  const double hn = p.hessian.norm();
  p.hessian_asymmetry = hn > 0.0 ? (p.hessian - p.hessian.transpose()).norm() / hn : 0.0;
  const Mat3 sym = 0.5 * (p.hessian + p.hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(sym, Eigen::EigenvaluesOnly);
  p.hessian_eigenvalues = es.eigenvalues();
  p.classification = classify(p.hessian_eigenvalues);
  p.barycenter = lambda * xi;
  p.inner_radius = lambda * (1.0 - xi.norm());
  p.outer_radius = lambda * (1.0 + xi.norm());
  return p;
}

struct SeedOutcome {
  bool converged = false;
  bool boundary = false;
  Vec3 xi = Vec3::Zero();
  Vec3 g = Vec3::Zero();
  int iterations = 0;
  std::string reason;
};

SeedOutcome newton_from(const ConformalMetric& model, double lambda, double radius, const Vec3& seed,
                        const Options& o) {
  SeedOutcome out;
  Vec3 xi = project(seed, radius);
  Vec3 g = gradient(model, xi, lambda, o);
  const double tol = o.relative_tolerance * std::max(1.0, g.norm());
  double trust = 0.25 * radius;
  double mu = 0.0;
  int it = 0;
  for (; it < o.max_iterations; ++it) {
    if (g.norm() <= tol) {
      out.converged = true;
      break;
    }
    const Mat3 j = fd_hessian(model, xi, lambda, o);
    const Mat3 jtj = j.transpose() * j;
    const Vec3 jtg = j.transpose() * g;
    const double floor = 1e-14 * jtj.trace();
    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      const Mat3 a = jtj + std::max(mu, floor) * Mat3::Identity();
      Vec3 step = -a.ldlt().solve(jtg);
      if (!step.allFinite()) step = -g / std::max(1.0, j.norm());
      if (step.norm() > trust) step *= trust / step.norm();
      const Vec3 cand = project(xi + step, radius);
      const Vec3 gc = gradient(model, cand, lambda, o);
      if (gc.norm() < g.norm()) {
        accepted = true;
        const double moved = (cand - xi).norm();
        xi = cand;
        g = gc;
        mu *= 0.1;
        trust = std::min(radius, std::max(trust, 4.0 * moved));
        if (moved == 0.0) break;
      } else {
        mu = std::max(10.0 * mu, 1e-8 * jtj.trace());
        trust *= 0.5;
        if (trust < 1e-15) break;
      }
    }
    if (!accepted) {
      out.reason = "no decrease of |grad G| from the regularized Newton step";
      break;
    }
  }
  out.xi = xi;
  out.g = g;
  out.iterations = it;
  out.boundary = xi.norm() >= radius * (1.0 - 1e-12);
  if (!out.converged && out.reason.empty()) out.reason = "iteration limit reached";
  return out;
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::minimum: return "min";
    case Classification::saddle: return "saddle";
    case Classification::maximum: return "max";
    case Classification::degenerate: return "degenerate";
    case Classification::boundary_hit: return "boundary-hit";
  }
  return "unknown";
}

Mat3 fd_hessian(const ConformalMetric& model, const Vec3& xi, double lambda, const Options& o) {
  Mat3 h;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = o.fd_step;
    h.col(k) = (gradient(model, xi + e, lambda, o) - gradient(model, xi - e, lambda, o)) / (2.0 * o.fd_step);
  }
  return h;
}

std::vector<Vec3> default_seeds(double delta) {
  const double r = 0.5 * (1.0 - delta);
  std::vector<Vec3> s{Vec3::Zero()};
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = r;
    s.push_back(e);
    s.push_back(-e);
  }
  return s;
}

SearchResult find_critical_points(const ConformalMetric& model, double lambda, double delta,
                                  const std::vector<Vec3>& seeds, const Options& options) {
  if (!(delta > 0.0 && delta < 0.5)) fail(ErrorCode::domain, "delta must lie in (0, 1/2)");
  if (seeds.empty()) fail(ErrorCode::invalid_argument, "need at least one seed");
  const double radius = 1.0 - delta;
  for (const auto& s : seeds)
    if (!(s.norm() <= radius + 1e-12)) fail(ErrorCode::domain, "seed outside |xi| <= 1 - delta");

  std::vector<SeedOutcome> outcomes(seeds.size());
  parallel::for_each_index(seeds.size(), [&](std::size_t i) {
    try {
      outcomes[i] = newton_from(model, lambda, radius, seeds[i], options);
    } catch (const Error& e) {
      outcomes[i].reason = e.what();
      outcomes[i].xi = seeds[i];
    }
  });

  SearchResult res;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.converged && !o.boundary) {
      res.failures.push_back({static_cast<int>(i), o.xi, o.g.norm(), o.reason});
      continue;
    }
    bool duplicate = false;
    for (const auto& p : res.points)
      if ((p.xi - o.xi).norm() <= options.dedup_distance) duplicate = true;
    if (duplicate) continue;
    CriticalPoint p = describe(model, o.xi, lambda, o.g, options);
    p.iterations = o.iterations;
    p.seed_index = static_cast<int>(i);
    if (!o.converged) p.classification = Classification::boundary_hit;
    res.points.push_back(p);
  }
  return res;
}

BranchTrace trace_branch(const ConformalMetric& model, const std::vector<double>& lambdas, double delta,
                         const std::vector<Vec3>& seeds, const Options& options) {
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] > lambdas[i - 1])) fail(ErrorCode::invalid_argument, "lambda grid must be increasing");
  BranchTrace trace;
  std::optional<Vec3> previous;
  for (double lam : lambdas) {
    BranchEntry entry;
    entry.lambda = lam;
    std::vector<Vec3> s;
    if (previous) s.push_back(*previous);
    s.insert(s.end(), seeds.begin(), seeds.end());
    try {
      SearchResult r = find_critical_points(model, lam, delta, s, options);
      entry.failures = r.failures;
      const Vec3 anchor = previous.value_or(Vec3::Zero());
      const CriticalPoint* best = nullptr;
      for (const auto& p : r.points) {
        if (p.classification == Classification::boundary_hit) continue;
        if (!best || (p.xi - anchor).norm() < (best->xi - anchor).norm() - 1e-12) best = &p;
      }
      if (best) {
        entry.point = *best;
        previous = best->xi;
      }
    } catch (const Error& e) {
      entry.failures.push_back({-1, Vec3::Zero(), 0.0, e.what()});
    }
    trace.entries.push_back(entry);
  }
  Vec3 lo = Vec3::Constant(INFINITY), hi = Vec3::Constant(-INFINITY);
  for (const auto& e : trace.entries)
    if (e.point) {
      lo = lo.cwiseMin(e.point->barycenter);
      hi = hi.cwiseMax(e.point->barycenter);
    }
  if (lo[0] <= hi[0]) trace.oscillation = hi - lo;
  return trace;
}

ComComparison com_compare(const ConformalMetric& model, double lambda, double delta,
                          const std::vector<double>& flux_radii, const std::vector<Vec3>& seeds,
                          const Options& options) {
  SearchResult r = find_critical_points(model, lambda, delta, seeds, options);
  const CriticalPoint* best = nullptr;
  for (const auto& p : r.points) {
    if (p.classification == Classification::boundary_hit) continue;
    if (!best || p.xi.norm() < best->xi.norm()) best = &p;
  }
  if (!best) fail(ErrorCode::non_convergence, "no interior critical point found for the comparison");
  ComComparison c;
  c.lambda = lambda;
  c.point = *best;
  c.flux = flux::flux_report(model, flux_radii, options.settings.resolution);
  c.c_flux = c.flux.center_limit();
  c.barycenter = best->barycenter;
  c.curvature_term = std::pow(lambda, 3) / (128.0 * kPi) *
                     reduced::curvature_moment(model, best->xi, lambda, options.settings);
  c.residual = c.barycenter - c.c_flux - c.curvature_term;
  return c;
}

ScanResult stationary_scan(const ConformalMetric& model, double lambda, double delta, double spacing,
                           const Options& options, bool refine) {
  if (!(delta > 0.0 && delta < 0.5)) fail(ErrorCode::domain, "delta must lie in (0, 1/2)");
  if (!(spacing > 0.0)) fail(ErrorCode::invalid_argument, "grid spacing must be positive");
  const double radius = 1.0 - delta;
  const int n = static_cast<int>(std::floor(radius / spacing + 1e-9));
  ScanResult out;
  out.lambda = lambda;
  out.spacing = spacing;
  for (int i = -n; i <= n; ++i)
    for (int j = -n; j <= n; ++j)
      for (int k = -n; k <= n; ++k) {
        const Vec3 xi = spacing * Vec3(i, j, k);
        if (xi.norm() <= radius + 1e-12) out.samples.push_back({xi, 0.0});
      }
  parallel::for_each_index(out.samples.size(), [&](std::size_t i) {
    out.samples[i].grad_norm = gradient(model, out.samples[i].xi, lambda, options).norm();
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.samples.size(); ++i)
    if (out.samples[i].grad_norm < out.samples[best].grad_norm) best = i;
  out.min_grad_norm = out.samples[best].grad_norm;
  out.argmin = out.samples[best].xi;
  if (refine) {
    SearchResult r = find_critical_points(model, lambda, delta, {out.argmin}, options);
    if (!r.points.empty()) out.refined = r.points.front();
  }
  return out;
}

ConvexityResult convexity_check(const ScalarField& field, const Vec3& xi1, const Vec3& xi2, double lambda,
                                const quad::Resolution& res) {
  if (!(xi1.norm() < 1.0 && xi2.norm() < 1.0)) fail(ErrorCode::domain, "convexity check needs |xi| < 1");
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "lambda must be positive");
  const Vec3 d = xi2 - xi1;
  ConvexityResult out;
  auto side = [&](const Vec3& xi) {
    const auto rule = quad::SphereRule::origin_adapted(lambda * xi, lambda, res, field.breakpoints);
    return quad::integrate_sphere([&](const Vec3& x, const Vec3& nu) { return nu.dot(d) * field.f(x); }, rule);
  };
  out.lhs = side(xi1);
  out.rhs = side(xi2);
  out.margin = out.lhs - out.rhs;

  // Sample f >= 0 and a nonincreasing |x|^2 f along rays on the annulus the spheres sweep.
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double r_lo = lambda * std::max(1e-3, 1.0 - std::max(xi1.norm(), xi2.norm()));
  const double r_hi = lambda * (1.0 + std::max(xi1.norm(), xi2.norm()));
  int negative = 0, increasing = 0;
  for (int i = 0; i < 256; ++i) {
    Vec3 dir(unit(rng), unit(rng), unit(rng));
    if (dir.norm() < 1e-3) continue;
    dir.normalize();
    const double r = r_lo * std::pow(r_hi / r_lo, 0.5 * (unit(rng) + 1.0));
    const double h = 1e-4 * r;
    const double fr = field.f(r * dir);
    if (fr < 0.0) ++negative;
    const double up = (r + h) * (r + h) * field.f((r + h) * dir);
    const double down = (r - h) * (r - h) * field.f((r - h) * dir);
    if ((up - down) / (2.0 * h) > 1e-9 * std::max(1.0, std::abs(r * r * fr)) / r) ++increasing;
  }
  if (negative || increasing) {
    out.hypothesis_ok = false;
    std::ostringstream msg;
    msg << "hypothesis sampling: " << negative << " negative values, " << increasing
        << " points with increasing |x|^2 f";
    out.warning = msg.str();
  }
  return out;
}

RayMap ray_map(double zeta, const Vec3& xi1, const Vec3& xi2) {
  if (!(zeta > 0.0 && zeta < kPi)) fail(ErrorCode::domain, "zeta must lie in (0, pi)");
  if (!(xi1.norm() < 1.0 && xi2.norm() < 1.0)) fail(ErrorCode::domain, "ray map needs |xi| < 1");
  const Vec3 d = xi2 - xi1;
  if (!(d.norm() > 0.0)) fail(ErrorCode::domain, "ray map needs xi1 != xi2");
  const Vec3 e3 = d.normalized();
  RayMap m;
  m.a = xi1.dot(e3);
  m.b = xi2.dot(e3);
  const double cz = std::cos(zeta), sz = std::sin(zeta);
  auto h = [&](double th) { return std::sin(th) * (cz + m.b) - sz * (std::cos(th) + m.a); };
  auto dh = [&](double th) { return std::cos(th) * (cz + m.b) + sz * std::sin(th); };
  double lo = 0.0, hi = zeta;
  if (!(h(lo) < 0.0 && h(hi) >= 0.0)) fail(ErrorCode::bracketing, "ray map root is not bracketed on (0, zeta]");
  double th = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = h(th);
    if (v < 0.0) lo = th; else hi = th;
    const double slope = dh(th);
    double next = slope != 0.0 ? th - v / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - th) <= 1e-16 * std::max(1.0, th) || hi - lo <= 1e-16) {
      th = next;
      break;
    }
    th = next;
  }
  m.theta = th;
  m.t = sz / std::sin(th);
  return m;
}

double ray_map_rate(double zeta, const RayMap& m) {
  const double cz = std::cos(zeta), sz = std::sin(zeta);
  const double ct = std::cos(m.theta), st = std::sin(m.theta);
  return (ct * cz + m.a * cz + sz * st) / (m.t * (1.0 + m.a * ct));
}

}  // namespace wlab::solver
