#pragma once

#include "core/types.hpp"

namespace wlab::legendre {

struct SeriesTruncation {
  int max_degree = 256;
  double tail_tolerance = 1e-10;
};

void validate(const SeriesTruncation& trunc);

double legendre_eval(int degree, double s);

// Smallest degree L >= 2 whose geometric tail bound t^{L+1}/(1-t) is within
// the tolerance. Throws non_convergence if max_degree is not enough.
int truncation_degree(double t, const SeriesTruncation& trunc);

// Leading-order graph function -2 + 4 sum_{l>=2} (t^l/l) P_l(s), t = |xi|.
double graph_profile(const Vec3& xi, double s, const SeriesTruncation& trunc = {});

// 4 lambda^{-4} sum_{l>=0} (l-1)(l+1)(l+2) t^l P_l(s). The O(lambda^{-5})
// remainder of the sphere's Willmore operator is not part of this value.
double willmore_operator_sphere(const Vec3& xi, double lambda, double s, const SeriesTruncation& trunc = {});

// Leading term 4 lambda^{-3} of the Lagrange multiplier; O(lambda^{-4}) is not modeled.
double lagrange_multiplier_estimate(double lambda);

}  // namespace wlab::legendre
