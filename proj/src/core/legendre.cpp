#include "core/legendre.hpp"

#include <cmath>
#include <sstream>

namespace wlab::legendre {
namespace {

double clamp_argument(double s) {
  if (!(std::abs(s) <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "Legendre argument " << s << " outside [-1, 1]";
    fail(ErrorCode::domain, msg.str());
  }
  return std::clamp(s, -1.0, 1.0);
}

double norm_below_one(const Vec3& xi) {
  const double t = xi.norm();
  if (!(t < 1.0)) fail(ErrorCode::domain, "|xi| must be below 1");
  return t;
}

}  // namespace

void validate(const SeriesTruncation& trunc) {
  if (trunc.max_degree < 2) fail(ErrorCode::invalid_argument, "series truncation needs max_degree >= 2");
  if (!(trunc.tail_tolerance > 0.0)) fail(ErrorCode::invalid_argument, "series tail tolerance must be positive");
}

double legendre_eval(int degree, double s) {
  if (degree < 0) fail(ErrorCode::domain, "Legendre degree must be non-negative");
  s = clamp_argument(s);
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = s;
  for (int l = 1; l < degree; ++l) {
    const double next = ((2.0 * l + 1.0) * s * cur - l * prev) / (l + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

int truncation_degree(double t, const SeriesTruncation& trunc) {
  validate(trunc);
  if (t == 0.0) return 2;
  for (int l = 2; l <= trunc.max_degree; ++l) {
    if (std::pow(t, l + 1) / (1.0 - t) <= trunc.tail_tolerance) return l;
  }
  std::ostringstream msg;
  msg << "series at |xi| = " << t << " does not meet tail tolerance " << trunc.tail_tolerance
      << " within degree " << trunc.max_degree;
  fail(ErrorCode::non_convergence, msg.str());
}

double graph_profile(const Vec3& xi, double s, const SeriesTruncation& trunc) {
  const double t = norm_below_one(xi);
  s = clamp_argument(s);
  const int L = truncation_degree(t, trunc);
  double sum = 0.0;
  double p_prev = 1.0;
  double p = s;
  double tl = t;
  for (int l = 2; l <= L; ++l) {
    const double p_next = ((2.0 * l - 1.0) * s * p - (l - 1.0) * p_prev) / l;
    p_prev = p;
    p = p_next;
    tl *= t;
    sum += tl / l * p;
  }
  return -2.0 + 4.0 * sum;
}

double willmore_operator_sphere(const Vec3& xi, double lambda, double s, const SeriesTruncation& trunc) {
  const double t = norm_below_one(xi);
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "lambda must be positive");
  s = clamp_argument(s);
  auto weight = [](int l) { return (l - 1.0) * (l + 1.0) * (l + 2.0); };
  // The cubic weights make the plain geometric bound too optimistic, so the
  // degree is raised until the weighted tail w(L+1) t^{L+1} / (1 - q) fits,
  // where q bounds the ratio of consecutive weighted terms.
  int L = truncation_degree(t, trunc);
  while (t > 0.0) {
    const double ratio = t * weight(L + 2) / weight(L + 1);
    if (ratio < 1.0 && weight(L + 1) * std::pow(t, L + 1) / (1.0 - ratio) <= trunc.tail_tolerance) break;
    if (++L > trunc.max_degree) {
      std::ostringstream msg;
      msg << "weighted sphere series at |xi| = " << t << " does not converge within degree " << trunc.max_degree;
      fail(ErrorCode::non_convergence, msg.str());
    }
  }
  double sum = weight(0);
  double p_prev = 1.0;
  double p = s;
  double tl = 1.0;
  for (int l = 1; l <= L; ++l) {
    if (l >= 2) {
      const double p_next = ((2.0 * l - 1.0) * s * p - (l - 1.0) * p_prev) / l;
      p_prev = p;
      p = p_next;
    }
    tl *= t;
    sum += weight(l) * tl * p;
  }
  const double l2 = lambda * lambda;
  return 4.0 * sum / (l2 * l2);
}

double lagrange_multiplier_estimate(double lambda) {
  if (!(lambda > 0.0)) fail(ErrorCode::domain, "lambda must be positive");
  return 4.0 / (lambda * lambda * lambda);
}

}  // namespace wlab::legendre
