#include "dunkl/lifting.hpp"

#include <cmath>

namespace dunkl {
namespace {

void require_chamber(const ChamberAtlas& atlas, const Vec& x, const Vec& y) {
  const double tol = 1e-12 * std::max({1.0, x.norm(), y.norm()});
  if (!atlas.in_closed_chamber(x, tol) || !atlas.in_closed_chamber(y, tol)) {
    throw DomainError("lifted kernels take points of the closed fundamental chamber");
  }
}

void debug_identity(const Context& ctx, const Vec& xr, const Vec& yr, double euclid) {
#ifndef NDEBUG
  if (std::abs(ctx.distance(xr, yr) - euclid) > 1e-10 * std::max(1.0, euclid)) {
    throw InvalidRootSystem("chamber identity failed at a lifted evaluation");
  }
#else
  (void)ctx;
  (void)xr;
  (void)yr;
  (void)euclid;
#endif
}

}  // namespace

LiftedFunction lift(const ChamberAtlas& atlas, const std::function<double(const Vec&)>& f, const Grid& base) {
  LiftedFunction F;
  F.base = base;
  F.values.resize(base.size(), atlas.order());
  for (int a = 0; a < base.size(); ++a) {
    for (int rho = 0; rho < atlas.order(); ++rho) F.values(a, rho) = f(atlas.group().apply(rho, base.nodes[a]));
  }
  return F;
}

std::vector<double> unlift(const LiftedFunction& F) {
  std::vector<double> out;
  out.reserve(F.values.size());
  for (int a = 0; a < F.values.rows(); ++a) {
    for (int rho = 0; rho < F.order(); ++rho) out.push_back(F.values(a, rho));
  }
  return out;
}

double unlift_at(const ChamberAtlas& atlas, const LiftedFunction& F, const Vec& y) {
  const ChamberIndex c = atlas.chamber_of(y);
  const double tol = 1e-12 * std::max(1.0, y.norm());
  for (int a = 0; a < F.base.size(); ++a) {
    if ((F.base.nodes[a] - c.rep).norm() <= tol) return F.values(a, c.rho);
  }
  throw DomainError("point is not an image of a base grid node");
}

double lifted_norm(const LiftedFunction& F, double p) {
  if (std::isinf(p)) return F.values.cwiseAbs().maxCoeff();
  double sum = 0.0;
  for (int a = 0; a < F.values.rows(); ++a) {
    double fibre = 0.0;
    for (int rho = 0; rho < F.order(); ++rho) fibre += std::pow(std::abs(F.values(a, rho)), p);
    sum += F.base.weights[a] * fibre;
  }
  return std::pow(sum, 1.0 / p);
}

double chamber_identity_error(const ChamberAtlas& atlas, const ReflectionGroup& group, const Vec& x, const Vec& y) {
  const double euclid = (x - y).norm();
  double err = 0.0;
  for (int rho = 0; rho < atlas.order(); ++rho) {
    const Vec xr = group.apply(rho, x);
    for (int tau = 0; tau < atlas.order(); ++tau) {
      err = std::max(err, std::abs(orbit_distance(group, xr, group.apply(tau, y)) - euclid));
    }
  }
  return err;
}

KernelProbe lifted_theta(const Context& ctx, const Symbol& b, double s, int i, int j, int rho, int tau,
                         const Vec& x, const Vec& y) {
  require_chamber(ctx.atlas(), x, y);
  const Vec xr = ctx.group().apply(rho, x);
  const Vec yr = ctx.group().apply(tau, y);
  KernelProbe p = theta(ctx, b, s, i, j, xr, yr);
  const double euclid = (x - y).norm();
  debug_identity(ctx, xr, yr, euclid);
  p.distance = euclid;
  p.volume = ctx.measure().chamber_volume_max(x, y, s);
  const double log_g = -kGaussC * euclid * euclid / (s * s);
  p.gaussian = std::exp(log_g);
  p.ratio = p.value == 0.0 ? 0.0 : std::abs(p.value) * p.volume * std::exp(-log_g) / p.lip;
  return p;
}

KernelProbe lifted_K(const Context& ctx, const Symbol& b, int i, int j, int rho, int tau, const Vec& x,
                     const Vec& y, const HeatIntegralSettings& settings) {
  require_chamber(ctx.atlas(), x, y);
  const double euclid = (x - y).norm();
  if (euclid <= 1e-6) throw OrbitDiagonal("lifted kernel is singular on the chamber diagonal");
  const Vec xr = ctx.group().apply(rho, x);
  const Vec yr = ctx.group().apply(tau, y);
  debug_identity(ctx, xr, yr, euclid);
  KernelProbe p = integrated_kernel(ctx, b, i, j, xr, yr, settings);
  p.distance = euclid;
  p.scale = euclid;
  p.volume = ctx.measure().chamber_volume_max(x, y, euclid);
  p.ratio = p.value == 0.0 ? 0.0 : std::abs(p.value) * p.volume / p.lip;
  return p;
}

Eigen::MatrixXd lifted_slice(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& y,
                             double s) {
  const int m = ctx.atlas().order();
  Eigen::MatrixXd out(m, m);
  for (int rho = 0; rho < m; ++rho) {
    for (int tau = 0; tau < m; ++tau) {
      out(rho, tau) = s > 0.0 ? lifted_theta(ctx, b, s, i, j, rho, tau, x, y).value
                              : lifted_K(ctx, b, i, j, rho, tau, x, y).value;
    }
  }
  return out;
}

}  // namespace dunkl
