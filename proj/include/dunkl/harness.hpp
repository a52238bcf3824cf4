#pragma once

#include "dunkl/calculus.hpp"
#include "dunkl/context.hpp"
#include "dunkl/symbols.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dunkl {

struct Ball {
  Vec center;
  double r = 0.0;
  std::string kind;  // "deep", "wall-adjacent", "wall-centered"
};

/// Unit vector along the sum of the positive roots, inside the chamber.
Vec chamber_direction(const ChamberAtlas& atlas);

/// Deep (wall distance 3r), wall-adjacent (r / 2) and wall-centered (origin)
/// balls for every radius.
std::vector<Ball> standard_balls(const ChamberAtlas& atlas,
                                 const std::vector<double>& radii = {0.1, 0.3, 1.0, 3.0, 10.0});

struct HarnessSettings {
  int s_per_decade = 64;
  double s_decades = 4.0;    // s runs over [r 10^{-s_decades}, r]
  int spatial_nodes = 32;    // per axis, over the ball
  int inner_nodes = 64;      // per axis, for integrals in y
  double truncation = 12.0;  // y integrals cut at orbit distance truncation * s

  HarnessSettings refined() const;
};

struct ScaleNode {
  double s;
  double w;  // trapezoid weight in log s
};
std::vector<ScaleNode> log_scale_grid(double lo, double hi, int per_decade);

/// (1/omega(B)) int_{r 10^-decades}^r int_B F(x, s)^2 d omega(x) ds / s.
double carleson_integral(const Context& ctx, const Ball& ball, const std::function<double(const Vec&, double)>& F,
                         const HarnessSettings& settings);

struct CarlesonReport {
  std::string quantity;
  std::vector<Ball> balls;
  std::vector<double> values;  // normalized integrals, already divided by `normalization`
  double sup = 0.0;
  double normalization = 1.0;  // |b|^2 or |g|_inf^2
  HarnessSettings settings;
};

struct WallLayerReport {
  Ball ball;
  std::vector<double> lambdas;
  std::vector<double> ratios;  // omega(B cap {dist <= lambda r}) / omega(B)
  double slope = 0.0;          // log-log fit
};
WallLayerReport wall_layer_measure_check(const Context& ctx, const Ball& ball, const std::vector<double>& lambdas,
                                         int nodes_per_axis = 256);

/// Normalized Carleson integral of the wall layer m_s.
double wall_layer_carleson(const Context& ctx, const Ball& ball, const HarnessSettings& settings = {});

/// G_s F(x) = int V(x,y,s)^{-1} e^{-c d(x,y)^2/s^2} F(y) d omega(y), truncated
/// at d(x, y) <= truncation * s.
double gaussian_average(const Context& ctx, double s, const Field& F, const Vec& x,
                        const HarnessSettings& settings = {});

/// Theta_s chi_tau(x) = int_{Omega_tau} theta_s(x, y) d omega(y); with
/// `adjoint` the transposed kernel theta_s(y, x) is used instead.
double theta_indicator(const Context& ctx, const Symbol& b, double s, int i, int j, int tau, const Vec& x,
                       const HarnessSettings& settings = {}, bool adjoint = false);

CarlesonReport component_testing(const Context& ctx, const Symbol& b, int tau, const std::vector<Ball>& balls,
                                 int i, int j, const HarnessSettings& settings = {});

/// Tensor grid of cells on [-L, L]^N shifted by `offset` cell widths, with
/// product omega weights (Z_2^N). Nodes sit at cell midpoints.
struct TensorGrid {
  std::vector<std::vector<double>> nodes;    // per axis
  std::vector<std::vector<double>> weights;  // per axis
  int size() const;
  Vec point(int flat) const;  // row-major, last axis fastest
};
TensorGrid tensor_grid(const Context& ctx, double L, int per_axis, double offset = 0.0);

struct SquareFunctionSettings {
  double s_lo = 1e-3;
  double s_hi = 1e3;
  int per_decade = 64;
};

/// int ||s T_l H_{s^2} f||^2 ds/s / ||f||^2 on the grid, with the exact
/// first-derivative kernel s (y_l - x_l) / (2 s^2) h_{s^2}(x, y).
double vertical_square_function(const Context& ctx, const TensorGrid& grid, const std::vector<double>& f, int l,
                                const SquareFunctionSettings& settings = {});

/// s T_l H_{s^2} g(x) by quadrature over the orbit neighbourhood of x.
double gradient_apply(const Context& ctx, const Field& g, double s, int l, const Vec& x,
                      const HarnessSettings& settings = {});

CarlesonReport gradient_carleson(const Context& ctx, const Field& g, double g_sup, const std::vector<Ball>& balls,
                                 int l, const HarnessSettings& settings = {});

/// |s T_l H_{s^2}(g 1_{d(., x) > r})(x)|, integrating over r < d(x, y) <= r + truncation * s.
double gradient_far_field(const Context& ctx, const Field& g, const Vec& x, double r, double s, int l,
                          const HarnessSettings& settings = {});

/// Smooth bump exp(1 - 1/(1 - |y - c|^2 / rho^2)) supported in B(c, rho).
struct Bump {
  Vec center;
  double radius = 1.0;
  double operator()(const Vec& y) const;
  Vec gradient(const Vec& y) const;
};

struct CommutatorResidual {
  double theta_phi = 0.0;    // Theta_s phi(x)
  double commutator = 0.0;   // s [M_b, T_i H_{s^2}](T_j phi)(x)
  double correction = 0.0;   // s T_i H_{s^2}((d_j b) phi)(x)
  double residual = 0.0;     // theta_phi - commutator + correction
  double scale = 0.0;        // sum of the absolute values of the pieces
};
CommutatorResidual commutator_identity(const Context& ctx, const Symbol& b, double s, int i, int j, const Bump& phi,
                                       const Vec& x, int nodes_per_axis = 96);

}  // namespace dunkl
