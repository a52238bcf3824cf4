#pragma once

#include "dunkl/grid.hpp"
#include "dunkl/kernels.hpp"

#include <Eigen/Dense>

#include <functional>

namespace dunkl {

/// (Uf)(x) = (f(sigma_1 x), ..., f(sigma_M x)) sampled on a chamber grid.
struct LiftedFunction {
  Grid base;               // nodes in the open chamber
  Eigen::MatrixXd values;  // base.size() x M, column rho <-> f(sigma_rho x)

  int order() const { return static_cast<int>(values.cols()); }
};

LiftedFunction lift(const ChamberAtlas& atlas, const std::function<double(const Vec&)>& f, const Grid& base);

/// Values of U^{-1}F on orbit_grid(atlas, F.base), in its a * M + rho order.
std::vector<double> unlift(const LiftedFunction& F);

/// U^{-1}F at an arbitrary image point y = sigma_rho x_a of the base grid.
double unlift_at(const ChamberAtlas& atlas, const LiftedFunction& F, const Vec& y);

/// Norm of L^p(C; l^p_M) with the base weights.
double lifted_norm(const LiftedFunction& F, double p);

/// max over rho, tau of |d(sigma_rho x, sigma_tau y) - |x - y||.
double chamber_identity_error(const ChamberAtlas& atlas, const ReflectionGroup& group, const Vec& x, const Vec& y);

/// theta_s(sigma_rho x, sigma_tau y) for x, y in the closed chamber. The
/// probe's distance is |x - y| and its volume V_C(x, y, s).
KernelProbe lifted_theta(const Context& ctx, const Symbol& b, double s, int i, int j, int rho, int tau,
                         const Vec& x, const Vec& y);

/// K_b(sigma_rho x, sigma_tau y); volume V_C(x, y, |x - y|).
KernelProbe lifted_K(const Context& ctx, const Symbol& b, int i, int j, int rho, int tau, const Vec& x,
                     const Vec& y, const HeatIntegralSettings& settings = {});

/// All M x M entries at a fixed pair; s <= 0 selects the integrated kernel.
Eigen::MatrixXd lifted_slice(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& y,
                             double s = 0.0);

}  // namespace dunkl
