#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "core/bump.hpp"
#include "core/metric.hpp"

namespace wlab {

// psi = -(1/8) eta(|x|) x3 |x|^{-4} with eta = sum_k chi(|x| / 10^k).
class OscillatorPerturbation final : public Perturbation {
 public:
  OscillatorPerturbation(int k_min, int k_max);

  FieldJet evaluate(const Vec3& x) const override;
  bool support(std::vector<Interval>& out) const override;
  std::vector<double> breakpoints() const override;
  double decay_constant() const override { return 0.125; }

  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }

 private:
  int k_min_, k_max_;
  BumpProfile chi_ = BumpProfile::oscillator();
};

struct ShellParams {
  int k = 1;
  int l = 1;
  std::array<double, 4> a{0.0, 0.0, 0.0, 0.0};

  double lambda() const;          // k^2 10^{l^2}
  double radial_scale() const;    // 10^{l^2}
  Interval support() const;       // [10^{l^2}/2, 4 k^2 10^{l^2}]
  Interval plateau() const;       // [3/4 10^{l^2}, 3 k^2 10^{l^2}]
};

// eta_{k,l} = chi_k(|x| / 10^{l^2}) F(x) for the four-term profile F.
FieldJet shell_eta(const ShellParams& p, const Vec3& x);

// Flat Laplacian of eta on the plateau where chi_k = 1.
double shell_laplacian_closed_form(const ShellParams& p, const Vec3& x);

// psi = coefficient * sum of eta over shells with pairwise disjoint supports.
class ShellSumPerturbation final : public Perturbation {
 public:
  explicit ShellSumPerturbation(std::vector<ShellParams> shells, double coefficient = 0.5);

  FieldJet evaluate(const Vec3& x) const override;
  bool support(std::vector<Interval>& out) const override;
  std::vector<double> breakpoints() const override;
  double decay_constant() const override;

  const std::vector<ShellParams>& shells() const { return shells_; }
  double coefficient() const { return coefficient_; }

 private:
  std::vector<ShellParams> shells_;
  double coefficient_;
};

// Shells sum_{i} eta_{k_i, i} for i in [i_min, i_max], with k_i = k or k_i = i.
std::vector<ShellParams> shell_family(int k, int i_min, int i_max, const std::array<double, 4>& a, bool diagonal);

// True when the shell supports are pairwise disjoint (closed intervals).
bool shells_disjoint(const std::vector<ShellParams>& shells);

struct GluePiece {
  std::shared_ptr<const Perturbation> psi;  // perturbation of the leaf metric g_k
  double rho = 0.0;                          // inner radius of the leaf
  double theta = 0.0;                        // outer radius of the leaf
};

// u^4 = S^4 + sum_k gamma_k (u_k^4 - S^4) with S = 1 + 1/|x|; psi = u - S.
class GluedPerturbation final : public Perturbation {
 public:
  explicit GluedPerturbation(std::vector<GluePiece> pieces);

  FieldJet evaluate(const Vec3& x) const override;
  bool support(std::vector<Interval>& out) const override;
  std::vector<double> breakpoints() const override;
  double decay_constant() const override;

  const std::vector<GluePiece>& pieces() const { return pieces_; }

 private:
  std::vector<GluePiece> pieces_;
  std::vector<BumpProfile> gamma_;
};

// Perturbation given only by its values; derivatives by central differences.
class SampledPerturbation final : public Perturbation {
 public:
  SampledPerturbation(std::function<double(const Vec3&)> value, double decay_constant,
                      std::vector<Interval> support = {}, bool bounded = false);

  FieldJet evaluate(const Vec3& x) const override;
  bool closed_form() const override { return false; }
  bool support(std::vector<Interval>& out) const override;
  double decay_constant() const override { return decay_; }

 private:
  std::function<double(const Vec3&)> value_;
  double decay_;
  std::vector<Interval> support_;
  bool bounded_;
};

// Central-difference jet with step max(1e-4 |x|, 1e-6).
FieldJet finite_difference_jet(const std::function<double(const Vec3&)>& f, const Vec3& x);

}  // namespace wlab
