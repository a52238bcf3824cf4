#pragma once

#include "dunkl/geometry.hpp"

#include <functional>

namespace dunkl {

struct DunklOracleConfig {
  double h_rel = 1e-5;  // step = h_rel * max(1, |x|)
  double guard = 10.0;  // require dist(x, walls) >= guard * step
};

using Field = std::function<double(const Vec&)>;

/// Oracle value together with the sum of absolute values of its parts, the
/// natural size for relative comparisons when the parts cancel.
struct OracleValue {
  double value = 0.0;
  double scale = 0.0;
};

/// |a - b| / max(|b|, scale)
double relative_error(double a, double b, double scale);

/// T_xi f(x): central difference for the directional derivative plus the
/// exact reflection sum. Throws TooCloseToWall inside the guard band.
OracleValue dunkl_apply_detail(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f,
                               const Vec& xi, const Vec& x);
double dunkl_apply(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f, const Vec& xi,
                   const Vec& x);

/// T_i T_j f(x), the inner application materialized as a callable; the guard
/// is doubled at x.
OracleValue dunkl_apply_second_detail(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f,
                                      int i, int j, const Vec& x);
double dunkl_apply_second(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f, int i, int j,
                          const Vec& x);

/// T_xi f(x) with an analytic gradient; no finite differences.
double dunkl_apply_exact(const RootSystemSpec& spec, const Field& f, const std::function<Vec(const Vec&)>& gradient,
                         const Vec& xi, const Vec& x);

}  // namespace dunkl
