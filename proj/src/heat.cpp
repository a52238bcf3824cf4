#include "dunkl/heat.hpp"

#include "dunkl/bessel.hpp"
#include "dunkl/calculus.hpp"
#include "dunkl/geometry.hpp"
#include "dunkl/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace dunkl {
namespace {

constexpr double kSwitch = 20.0;
constexpr double kUnderflow = -745.0;

}  // namespace

HeatKernel::HeatKernel(std::vector<double> kappa, bool validate) : kappa_(std::move(kappa)) {
  if (kappa_.empty() || dim() > kMaxDim) throw Unsupported("heat kernels need 1 <= N <= 4");
  for (double k : kappa_) {
    if (!(k >= 0.0)) throw DomainError("multiplicities must be >= 0");
    const double log_c = (2.0 * k + 0.5) * std::numbers::ln2 + std::lgamma(k + 0.5);
    norm_.push_back(std::exp(log_c));
    log_pref_.push_back(-log_c);
  }
  if (!validate) return;

  for (int axis = 0; axis < dim(); ++axis) {
    const double k = kappa_[axis];
    for (double t : {0.1, 1.0, 10.0}) {
      for (double x : {0.0, 0.7, -2.5}) {
        const double L = std::abs(x) + 40.0 * std::sqrt(t);
        auto breaks = quad::graded_breakpoints(0.0, std::sqrt(t), 40);
        breaks.push_back(x);
        breaks.push_back(-x);
        for (double b = -L; b < L; b += 0.5 * std::sqrt(t)) breaks.push_back(b);
        const double mass = quad::integrate(
            [&](double y) { return h1(axis, t, x, y) * std::pow(2.0 * y * y, k); }, -L, L, breaks, 1, 12);
        mass_error_ = std::max(mass_error_, std::abs(mass - 1.0));
      }
    }
  }
  if (mass_error_ > 1e-6) throw QuadratureFailure("heat kernel normalization check failed");

  // First-derivative identity at a few off-wall probes.
  const RootSystemSpec spec = RootSystemSpec::sign_product(kappa_);
  const DunklOracleConfig cfg;
  const double probes[][3] = {{1.0, 0.9, -0.4}, {0.3, 1.3, 2.1}, {2.0, -1.1, 0.6}};
  for (const auto& p : probes) {
    const double t = p[0];
    Vec x(dim());
    Vec y(dim());
    for (int i = 0; i < dim(); ++i) {
      x[i] = p[1] * (1.0 + 0.3 * i);
      y[i] = p[2] - 0.2 * i;
    }
    for (int j = 0; j < dim(); ++j) {
      const auto oracle = dunkl_apply_detail(
          cfg, spec, [&](const Vec& z) { return eval(t, z, y); }, unit_vec(dim(), j), x);
      const double exact = Tj(t, x, y, j);
      if (relative_error(oracle.value, exact, oracle.scale) > 1e-5) {
        throw QuadratureFailure("heat kernel failed the first-derivative identity check");
      }
    }
  }
}

double HeatKernel::homogeneous_dimension() const {
  double n = dim();
  for (double k : kappa_) n += 2.0 * k;
  return n;
}

double HeatKernel::h1(int axis, double t, double x, double y) const {
  if (!(t > 0.0)) throw DomainError("heat time must be positive");
  const double k = kappa_[axis];
  if (k == 0.0) {
    const double d = x - y;
    return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
  }
  const double z = x * y / (2.0 * t);
  const double az = std::abs(z);
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (az < kSwitch) {
    const double s = ax + ay;
    const double expo = -s * s / (4.0 * t);
    if (expo + 2.0 * az < kUnderflow) return 0.0;
    const double m = bessel::kummer_series(k + (z > 0.0 ? 1.0 : 0.0), 2.0 * k + 1.0, 2.0 * az);
    return std::exp(expo - (k + 0.5) * std::log(2.0 * t) + log_pref_[axis]) * m;
  }
  const double d = ax - ay;
  const double expo = -d * d / (4.0 * t);
  if (expo < kUnderflow) return 0.0;
  const double comb = bessel::scaled_bessel_combination(k - 0.5, k + 0.5, z > 0.0 ? 1.0 : -1.0, az);
  const double log_scale = -(2.0 * k + 0.5) * std::numbers::ln2 - (k + 0.5) * std::log(2.0 * t) +
                           (0.5 - k) * std::log(0.5 * az) - 0.5 * std::log(2.0 * std::numbers::pi * az);
  return std::exp(expo + log_scale) * comb;
}

HeatKernel::Factors HeatKernel::factors(double t, const Vec& x, const Vec& y) const {
  Factors fac;
  fac.h = 1.0;
  for (int k = 0; k < dim(); ++k) {
    fac.f[k] = h1(k, t, x[k], y[k]);
    fac.g[k] = kappa_[k] == 0.0 ? 0.0 : h1(k, t, -x[k], y[k]);
    fac.h *= fac.f[k];
  }
  return fac;
}

double HeatKernel::reflected_from(const Factors& fac, int k) const {
  double value = fac.g[k];
  for (int m = 0; m < dim(); ++m) {
    if (m != k) value *= fac.f[m];
  }
  return value;
}

double HeatKernel::eval(double t, const Vec& x, const Vec& y) const {
  if (!(t > 0.0)) throw DomainError("heat time must be positive");
  double h = 1.0;
  for (int k = 0; k < dim(); ++k) h *= h1(k, t, x[k], y[k]);
  return h;
}

double HeatKernel::Tj(double t, const Vec& x, const Vec& y, int j) const {
  return (y[j] - x[j]) / (2.0 * t) * eval(t, x, y);
}

double HeatKernel::Aij_from(const Factors& fac, double t, const Vec& x, const Vec& y, int i, int j) const {
  double value = (y[i] - x[i]) * (y[j] - x[j]) / (4.0 * t * t) * fac.h;
  if (i == j) {
    value -= fac.h / (2.0 * t);
    if (kappa_[i] != 0.0) value -= kappa_[i] / t * reflected_from(fac, i);
  }
  return value;
}

double HeatKernel::Aij(double t, const Vec& x, const Vec& y, int i, int j) const {
  if (!(t > 0.0)) throw DomainError("heat time must be positive");
  return Aij_from(factors(t, x, y), t, x, y, i, j);
}

}  // namespace dunkl
