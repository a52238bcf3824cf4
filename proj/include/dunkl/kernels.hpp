#pragma once

#include "dunkl/context.hpp"
#include "dunkl/symbols.hpp"

#include <string>

namespace dunkl {

/// One kernel evaluation with the pieces of its size bound.
struct KernelProbe {
  Vec x;
  Vec y;
  double scale = 0.0;      // s, or d(x, y) for the integrated kernel
  bool integrated = false;
  double value = 0.0;
  double distance = 0.0;   // d(x, y)
  double volume = 0.0;     // V(x, y, s) or V(x, y, d)
  double gaussian = 1.0;   // e^{-c d^2 / s^2}; 1 for the integrated kernel
  double lip = 0.0;        // symbol norm used for normalization
  double ratio = 0.0;      // |value| * volume / (gaussian * lip)
};

struct HeatIntegralSettings {
  double U = 30.0;
  int panels = 512;
  int order = 4;
  double rel_tol = 1e-7;
};

/// Integral of A_t^{ij}(x, y) dt / sqrt(t) over (0, inf) through t = d^2 e^u.
struct HeatIntegral {
  double value = 0.0;
  double l1 = 0.0;          // integral of |A| dt / sqrt(t)
  double tail_bound = 0.0;  // bound on the part beyond u = U
};
HeatIntegral heat_time_integral(const Context& ctx, int i, int j, const Vec& x, const Vec& y,
                                const HeatIntegralSettings& settings = {});

/// theta_s(x, y) = s (b(x) - b(y)) A_{s^2}^{ij}(x, y).
KernelProbe theta(const Context& ctx, const Symbol& b, double s, int i, int j, const Vec& x, const Vec& y);

/// K_b^{ij}(x, y) = (b(x) - b(y)) * heat_time_integral.
KernelProbe integrated_kernel(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& y,
                              const HeatIntegralSettings& settings = {});

enum class ProbeMode { Scale, Integrated };

/// Difference of kernel values when one endpoint moves, normalized by the
/// regularity bound. `moved` = 0 moves x to x2, 1 moves y to x2; h is the
/// length of the move.
/// Scale mode: |dtheta| V(x,y,s) e^{c d^2/s^2} / (lip h / s), needs h <= s.
/// Integrated mode: |dK| V(x,y,d) / (lip h / d), needs h <= d / 4.
double regularity_probe(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& x2,
                        const Vec& y, ProbeMode mode, double s = 0.0, int moved = 0,
                        const HeatIntegralSettings& settings = {});

struct BasicIntegralReport {
  double r = 0.0;
  double delta = 0.0;
  double global_lhs = 0.0;
  double global_ratio = 0.0;  // lhs * V(z, y, r)
  double perturbative_lhs = 0.0;
  double perturbative_ratio = 0.0;  // lhs * r^2 V(z, y, r) / delta
};

/// Evaluates both heat-parameter integrals of the basic-integral lemma with
/// c = 1/16 and reports the ratios to their right-hand side forms.
BasicIntegralReport heat_parameter_integral_check(const Context& ctx, const Vec& z, const Vec& y, double delta);

}  // namespace dunkl
