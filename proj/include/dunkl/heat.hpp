#pragma once

#include "dunkl/types.hpp"

#include <array>
#include <vector>

namespace dunkl {

/// Dunkl heat kernel of Z_2^N with coordinate multiplicities kappa_i: the
/// product of rank-one kernels.
class HeatKernel {
 public:
  /// With `validate`, the normalization is checked by numerical mass
  /// integration and the first-derivative identity against the
  /// finite-difference oracle; failure throws QuadratureFailure.
  explicit HeatKernel(std::vector<double> kappa, bool validate = true);

  int dim() const { return static_cast<int>(kappa_.size()); }
  const std::vector<double>& kappa() const { return kappa_; }
  double homogeneous_dimension() const;
  /// c_kappa for one coordinate: integral of e^{-x^2/2} 2^k |x|^{2k} dx.
  double normalization(int axis) const { return norm_[axis]; }
  /// Largest |mass - 1| seen during validation.
  double validation_mass_error() const { return mass_error_; }

  /// Rank-one kernel along one axis.
  double h1(int axis, double t, double x, double y) const;

  double eval(double t, const Vec& x, const Vec& y) const;
  double Tj(double t, const Vec& x, const Vec& y, int j) const;
  double Aij(double t, const Vec& x, const Vec& y, int i, int j) const;

  /// Per-axis factors f_k = h1(x_k, y_k) and g_k = h1(-x_k, y_k); every kernel
  /// quantity at (t, x, y) is assembled from them.
  struct Factors {
    std::array<double, kMaxDim> f{};
    std::array<double, kMaxDim> g{};
    double h = 0.0;
  };
  Factors factors(double t, const Vec& x, const Vec& y) const;
  double Aij_from(const Factors& fac, double t, const Vec& x, const Vec& y, int i, int j) const;
  /// h_t(sigma_k x, y)
  double reflected_from(const Factors& fac, int k) const;

 private:
  std::vector<double> kappa_;
  std::vector<double> norm_;
  std::vector<double> log_pref_;  // -log(c_kappa) per axis
  double mass_error_ = 0.0;
};

}  // namespace dunkl
