#include "dunkl/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {
namespace {

double step_for(const DunklOracleConfig& cfg, const Vec& x) { return cfg.h_rel * std::max(1.0, x.norm()); }

OracleValue apply_unchecked(double h, const RootSystemSpec& spec, const Field& f, const Vec& xi, const Vec& x) {
  const double fx = f(x);
  const double derivative = (f(x + h * xi) - f(x - h * xi)) / (2.0 * h);
  OracleValue out{derivative, std::abs(derivative)};
  for (std::size_t a = 0; a < spec.roots.size(); ++a) {
    const double k = spec.kappa[a];
    const Vec& alpha = spec.roots[a];
    const double ax = alpha.dot(xi);
    if (k == 0.0 || ax == 0.0) continue;
    const double term = 0.5 * k * ax * (fx - f(reflect(alpha, x))) / alpha.dot(x);
    out.value += term;
    out.scale += std::abs(term);
  }
  return out;
}

}  // namespace

double relative_error(double a, double b, double scale) {
  const double denom = std::max(std::abs(b), scale);
  if (denom == 0.0) return std::abs(a - b) == 0.0 ? 0.0 : INFINITY;
  return std::abs(a - b) / denom;
}

OracleValue dunkl_apply_detail(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f,
                               const Vec& xi, const Vec& x) {
  const double h = step_for(cfg, x);
  if (wall_distance(spec, x) < cfg.guard * h) throw TooCloseToWall("oracle point inside the wall guard band");
  return apply_unchecked(h, spec, f, xi, x);
}

double dunkl_apply(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f, const Vec& xi,
                   const Vec& x) {
  return dunkl_apply_detail(cfg, spec, f, xi, x).value;
}

OracleValue dunkl_apply_second_detail(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f,
                                      int i, int j, const Vec& x) {
  const double h = step_for(cfg, x);
  if (wall_distance(spec, x) < 2.0 * cfg.guard * h) {
    throw TooCloseToWall("oracle point inside the doubled wall guard band");
  }
  const int n = spec.dim;
  const Vec ei = unit_vec(n, i);
  const Vec ej = unit_vec(n, j);
  const Field inner = [&](const Vec& z) { return apply_unchecked(step_for(cfg, z), spec, f, ej, z).value; };
  return apply_unchecked(h, spec, inner, ei, x);
}

double dunkl_apply_second(const DunklOracleConfig& cfg, const RootSystemSpec& spec, const Field& f, int i, int j,
                          const Vec& x) {
  return dunkl_apply_second_detail(cfg, spec, f, i, j, x).value;
}

}  // namespace dunkl

namespace dunkl {

double dunkl_apply_exact(const RootSystemSpec& spec, const Field& f, const std::function<Vec(const Vec&)>& gradient,
                         const Vec& xi, const Vec& x) {
  double value = gradient(x).dot(xi);
  const double fx = f(x);
  for (std::size_t a = 0; a < spec.roots.size(); ++a) {
    const double k = spec.kappa[a];
    const Vec& alpha = spec.roots[a];
    const double ax = alpha.dot(xi);
    if (k == 0.0 || ax == 0.0) continue;
    const double den = alpha.dot(x);
    if (den == 0.0) throw OnWall("reflection quotient evaluated on a wall");
    value += 0.5 * k * ax * (fx - f(reflect(alpha, x))) / den;
  }
  return value;
}

}  // namespace dunkl
