#include "core/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wlab {
namespace {

double pow10_int(int e) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= 10.0;
  return v;
}

// Jet of chi(|x|) F(x) from the radial jet of chi and the jet of F.
FieldJet radial_cutoff_product(const RadialJet& chi, const Vec3& x, double r, const FieldJet& f) {
  const Vec3 rhat = x / r;
  const double dr_f = rhat.dot(f.gradient);
  FieldJet out;
  out.value = chi.value * f.value;
  out.gradient = chi.d1 * f.value * rhat + chi.value * f.gradient;
  out.laplacian = chi.value * f.laplacian + 2.0 * chi.d1 * dr_f + f.value * (chi.d2 + 2.0 * chi.d1 / r);
  return out;
}

RadialJet scaled(const RadialJet& j, double scale) { return {j.value, j.d1 / scale, j.d2 / (scale * scale)}; }

void append_sorted_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

OscillatorPerturbation::OscillatorPerturbation(int k_min, int k_max) : k_min_(k_min), k_max_(k_max) {
  if (k_min < 0 || k_max < k_min || k_max > 15)
    fail(ErrorCode::invalid_argument, "oscillator needs 0 <= k_min <= k_max <= 15");
}

FieldJet OscillatorPerturbation::evaluate(const Vec3& x) const {
  const double r = x.norm();
  RadialJet eta;
  double scale = 1.0;
  for (int k = 0; k < k_min_; ++k) scale *= 10.0;
  for (int k = k_min_; k <= k_max_; ++k, scale *= 10.0) {
    const RadialJet c = scaled(chi_.jet(r / scale), scale);
    eta.value += c.value;
    eta.d1 += c.d1;
    eta.d2 += c.d2;
  }
  if (eta.value == 0.0 && eta.d1 == 0.0 && eta.d2 == 0.0) return {};
  // w = x3 |x|^{-4}
  const double r2 = r * r;
  const double r4 = r2 * r2;
  FieldJet w;
  w.value = x[2] / r4;
  w.gradient = Vec3::UnitZ() / r4 - 4.0 * x[2] / (r4 * r2) * x;
  w.laplacian = 4.0 * x[2] / (r4 * r2);
  FieldJet out = radial_cutoff_product(eta, x, r, w);
  out.value *= -0.125;
  out.gradient *= -0.125;
  out.laplacian *= -0.125;
  return out;
}

bool OscillatorPerturbation::support(std::vector<Interval>& out) const {
  out.clear();
  double scale = pow10_int(k_min_);
  for (int k = k_min_; k <= k_max_; ++k, scale *= 10.0) out.push_back({2.0 * scale, 6.0 * scale});
  return true;
}

std::vector<double> OscillatorPerturbation::breakpoints() const {
  std::vector<double> out;
  double scale = pow10_int(k_min_);
  for (int k = k_min_; k <= k_max_; ++k, scale *= 10.0) {
    auto b = chi_.breakpoints(scale);
    out.insert(out.end(), b.begin(), b.end());
  }
  append_sorted_unique(out);
  return out;
}

double ShellParams::radial_scale() const { return pow10_int(l * l); }

double ShellParams::lambda() const { return static_cast<double>(k) * k * radial_scale(); }

Interval ShellParams::support() const { return {0.5 * radial_scale(), 4.0 * k * k * radial_scale()}; }

Interval ShellParams::plateau() const { return {0.75 * radial_scale(), 3.0 * k * k * radial_scale()}; }

namespace {

void check_shell(const ShellParams& p) {
  if (p.k < 1 || p.l < 1 || p.l > 4) fail(ErrorCode::invalid_argument, "shell needs k >= 1 and 1 <= l <= 4");
}

// The profile F = a1 r^-2 + a2 L^-1 r^-1 log(L/r) + a3 L^-2 log(r/L) + a4 L^-5 x3^3.
FieldJet shell_profile(const ShellParams& p, const Vec3& x, double r) {
  const double lam = p.lambda();
  const double lg = std::log(lam / r);
  const double r2 = r * r;
  const auto& a = p.a;
  const double l5 = std::pow(lam, -5.0);
  FieldJet f;
  f.value = a[0] / r2 + a[1] * lg / (lam * r) - a[2] * lg / (lam * lam) + a[3] * l5 * x[2] * x[2] * x[2];
  const double dfr = -2.0 * a[0] / (r2 * r) - a[1] * (lg + 1.0) / (lam * r2) + a[2] / (lam * lam * r);
  f.gradient = dfr / r * x;
  f.gradient[2] += 3.0 * a[3] * l5 * x[2] * x[2];
  f.laplacian = 2.0 * a[0] / (r2 * r2) + a[1] / (lam * r2 * r) + a[2] / (lam * lam * r2) + 6.0 * a[3] * l5 * x[2];
  return f;
}

}  // namespace

FieldJet shell_eta(const ShellParams& p, const Vec3& x) {
  check_shell(p);
  const double r = x.norm();
  const double scale = p.radial_scale();
  const RadialJet chi = scaled(BumpProfile::shell(p.k).jet(r / scale), scale);
  if (chi.value == 0.0 && chi.d1 == 0.0 && chi.d2 == 0.0) return {};
  return radial_cutoff_product(chi, x, r, shell_profile(p, x, r));
}

double shell_laplacian_closed_form(const ShellParams& p, const Vec3& x) {
  check_shell(p);
  const double r = x.norm();
  const double lam = p.lambda();
  const double k2 = static_cast<double>(p.k) * p.k;
  const double t = r / lam;
  if (!(t >= 1.0 / k2 && t <= 2.0)) {
    std::ostringstream msg;
    msg << "|x| / lambda = " << t << " is outside the plateau [" << 1.0 / k2 << ", 2]";
    fail(ErrorCode::out_of_plateau, msg.str());
  }
  const auto& a = p.a;
  return 2.0 * a[0] / std::pow(r, 4) + a[1] / (lam * r * r * r) + a[2] / (lam * lam * r * r) +
         6.0 * a[3] * std::pow(lam, -5.0) * x[2];
}

std::vector<ShellParams> shell_family(int k, int i_min, int i_max, const std::array<double, 4>& a, bool diagonal) {
  if (i_min < 1 || i_max < i_min) fail(ErrorCode::invalid_argument, "shell family needs 1 <= i_min <= i_max");
  std::vector<ShellParams> out;
  for (int i = i_min; i <= i_max; ++i) out.push_back(ShellParams{diagonal ? i : k, i, a});
  return out;
}

bool shells_disjoint(const std::vector<ShellParams>& shells) {
  for (std::size_t i = 0; i < shells.size(); ++i)
    for (std::size_t j = i + 1; j < shells.size(); ++j) {
      const Interval a = shells[i].support();
      const Interval b = shells[j].support();
      if (!(a.hi < b.lo || b.hi < a.lo)) return false;
    }
  return true;
}

ShellSumPerturbation::ShellSumPerturbation(std::vector<ShellParams> shells, double coefficient)
    : shells_(std::move(shells)), coefficient_(coefficient) {
  if (shells_.empty()) fail(ErrorCode::invalid_argument, "shell sum needs at least one shell");
  for (const auto& s : shells_) check_shell(s);
  if (!shells_disjoint(shells_)) fail(ErrorCode::invalid_argument, "shell supports overlap");
}

FieldJet ShellSumPerturbation::evaluate(const Vec3& x) const {
  const double r = x.norm();
  for (const auto& s : shells_) {
    const Interval sup = s.support();
    if (r > sup.lo && r < sup.hi) {
      FieldJet j = shell_eta(s, x);
      j.value *= coefficient_;
      j.gradient *= coefficient_;
      j.laplacian *= coefficient_;
      return j;
    }
  }
  return {};
}

bool ShellSumPerturbation::support(std::vector<Interval>& out) const {
  out.clear();
  for (const auto& s : shells_) out.push_back(s.support());
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return true;
}

std::vector<double> ShellSumPerturbation::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : shells_) {
    auto b = BumpProfile::shell(s.k).breakpoints(s.radial_scale());
    out.insert(out.end(), b.begin(), b.end());
  }
  append_sorted_unique(out);
  return out;
}

double ShellSumPerturbation::decay_constant() const {
  double c = 0.0;
  for (const auto& s : shells_) {
    const auto& a = s.a;
    c = std::max(c, std::abs(coefficient_) *
                        (std::abs(a[0]) + 6.0 * std::abs(a[1]) + 23.0 * std::abs(a[2]) + 1024.0 * std::abs(a[3])));
  }
  return c;
}

GluedPerturbation::GluedPerturbation(std::vector<GluePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) fail(ErrorCode::invalid_argument, "glued metric needs at least one piece");
  std::sort(pieces_.begin(), pieces_.end(), [](const GluePiece& a, const GluePiece& b) { return a.rho < b.rho; });
  for (const auto& p : pieces_) {
    if (!p.psi) fail(ErrorCode::invalid_argument, "glue piece without a leaf metric");
    gamma_.push_back(BumpProfile::glue(p.rho, p.theta));
  }
  for (std::size_t i = 1; i < gamma_.size(); ++i)
    if (!(gamma_[i - 1].support().hi < gamma_[i].support().lo))
      fail(ErrorCode::invalid_argument, "glue profiles overlap; need rho_{k+1} > 9 theta_k");
}

FieldJet GluedPerturbation::evaluate(const Vec3& x) const {
  const double r = x.norm();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const RadialJet g = gamma_[i].jet(r);
    if (g.value == 0.0 && g.d1 == 0.0 && g.d2 == 0.0) continue;
    const FieldJet p = pieces_[i].psi->evaluate(x);
    if (g.value == 1.0 && g.d1 == 0.0 && g.d2 == 0.0) return p;

    const Vec3 rhat = x / r;
    const double s = 1.0 + 1.0 / r;
    const Vec3 grad_s = -x / (r * r * r);
    const double grad_s2 = 1.0 / (r * r * r * r);
    const double u = s + p.value;
    const Vec3 grad_u = grad_s + p.gradient;
    const double d = p.value * (u + s) * (u * u + s * s);
    const Vec3 grad_d = 4.0 * u * u * u * grad_u - 4.0 * s * s * s * grad_s;
    const double lap_d = 4.0 * u * u * u * p.laplacian + 12.0 * u * u * grad_u.squaredNorm() - 12.0 * s * s * grad_s2;

    const double v = s * s * s * s + g.value * d;
    const Vec3 grad_v = 4.0 * s * s * s * grad_s + g.d1 * d * rhat + g.value * grad_d;
    const double lap_v = 12.0 * s * s * grad_s2 + (g.d2 + 2.0 * g.d1 / r) * d + 2.0 * g.d1 * rhat.dot(grad_d) +
                         g.value * lap_d;
    const double ug = std::pow(v, 0.25);
    const double v34 = ug * ug * ug;
    FieldJet out;
    out.value = g.value * d / ((ug + s) * (ug * ug + s * s));
    out.gradient = 0.25 * grad_v / v34 - grad_s;
    out.laplacian = 0.25 * lap_v / v34 - 0.1875 * grad_v.squaredNorm() / (v34 * v);
    return out;
  }
  return {};
}

bool GluedPerturbation::support(std::vector<Interval>& out) const {
  out.clear();
  for (const auto& g : gamma_) out.push_back(g.support());
  return true;
}

std::vector<double> GluedPerturbation::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    auto b = gamma_[i].breakpoints(1.0);
    out.insert(out.end(), b.begin(), b.end());
    for (double r : pieces_[i].psi->breakpoints())
      if (r > gamma_[i].support().lo && r < gamma_[i].support().hi) out.push_back(r);
  }
  append_sorted_unique(out);
  return out;
}

double GluedPerturbation::decay_constant() const {
  double c = 0.0;
  for (const auto& p : pieces_) c = std::max(c, p.psi->decay_constant());
  return 1.1 * c;
}

SampledPerturbation::SampledPerturbation(std::function<double(const Vec3&)> value, double decay_constant,
                                         std::vector<Interval> support, bool bounded)
    : value_(std::move(value)), decay_(decay_constant), support_(std::move(support)), bounded_(bounded) {
  if (!value_) fail(ErrorCode::invalid_argument, "sampled perturbation needs a value function");
}

FieldJet SampledPerturbation::evaluate(const Vec3& x) const { return finite_difference_jet(value_, x); }

bool SampledPerturbation::support(std::vector<Interval>& out) const {
  out = support_;
  return bounded_;
}

FieldJet finite_difference_jet(const std::function<double(const Vec3&)>& f, const Vec3& x) {
  const double h = std::max(1e-4 * x.norm(), 1e-6);
  FieldJet j;
  j.value = f(x);
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    const double fp = f(x + e);
    const double fm = f(x - e);
    j.gradient[k] = (fp - fm) / (2.0 * h);
    j.laplacian += (fp - 2.0 * j.value + fm) / (h * h);
  }
  return j;
}

}  // namespace wlab
