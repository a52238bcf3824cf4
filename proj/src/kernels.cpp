#include "dunkl/kernels.hpp"

#include "dunkl/quadrature.hpp"

#include <cmath>

namespace dunkl {
namespace {

const std::vector<quad::Node1>& u_nodes(const HeatIntegralSettings& s) {
  thread_local HeatIntegralSettings cached{-1.0, 0, 0, 0.0};
  thread_local std::vector<quad::Node1> nodes;
  if (cached.U != s.U || cached.panels != s.panels || cached.order != s.order) {
    nodes = quad::composite_nodes(-s.U, s.U, {}, s.panels, s.order);
    cached = s;
  }
  return nodes;
}

double symbol_norm(const Symbol& b) { return b.norm(); }

double normalized(double value, double volume, double log_gaussian, double lip) {
  if (value == 0.0) return 0.0;
  return std::abs(value) * volume * std::exp(-log_gaussian) / lip;
}

}  // namespace

HeatIntegral heat_time_integral(const Context& ctx, int i, int j, const Vec& x, const Vec& y,
                                const HeatIntegralSettings& settings) {
  const HeatKernel& heat = ctx.heat();
  const double d = ctx.distance(x, y);
  if (d <= 1e-6) throw OrbitDiagonal("integrated kernel needs d(x, y) > 1e-6");
  const double d2 = d * d;
  const double big_n = heat.homogeneous_dimension();
  const auto& nodes = u_nodes(settings);

  HeatIntegral out;
  double tail_c = 0.0;
  const std::size_t tail_start = nodes.size() - static_cast<std::size_t>(2 * settings.order);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double u = nodes[k].x;
    const double t = d2 * std::exp(u);
    const double jac = nodes[k].w * d * std::exp(0.5 * u);
    const double a = heat.Aij(t, x, y, i, j);
    out.value += jac * a;
    out.l1 += jac * std::abs(a);
    if (k >= tail_start) tail_c = std::max(tail_c, std::abs(a) * std::pow(t, 1.0 + 0.5 * big_n));
  }
  // |A_t| <= C t^{-1 - N/2} beyond the last node, so the remaining
  // integral of |A| t^{-1/2} is at most C T^{-(1+N)/2} / ((1+N)/2).
  const double T = d2 * std::exp(settings.U);
  out.tail_bound = tail_c * std::pow(T, -0.5 * (1.0 + big_n)) / (0.5 * (1.0 + big_n));
  if (out.tail_bound > settings.rel_tol * out.l1) {
    throw QuadratureFailure("heat-time integral tail bound exceeds tolerance");
  }
  return out;
}

KernelProbe theta(const Context& ctx, const Symbol& b, double s, int i, int j, const Vec& x, const Vec& y) {
  if (!(s > 0.0)) throw DomainError("scale must be positive");
  KernelProbe p;
  p.x = x;
  p.y = y;
  p.scale = s;
  const double db = b(x) - b(y);
  p.value = db == 0.0 ? 0.0 : s * db * ctx.heat().Aij(s * s, x, y, i, j);
  p.distance = ctx.distance(x, y);
  p.volume = ctx.measure().volume_max(x, y, s);
  const double log_g = -kGaussC * p.distance * p.distance / (s * s);
  p.gaussian = std::exp(log_g);
  p.lip = symbol_norm(b);
  p.ratio = normalized(p.value, p.volume, log_g, p.lip);
  return p;
}

KernelProbe integrated_kernel(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& y,
                              const HeatIntegralSettings& settings) {
  KernelProbe p;
  p.x = x;
  p.y = y;
  p.integrated = true;
  p.distance = ctx.distance(x, y);
  if (p.distance <= 1e-6) throw OrbitDiagonal("integrated kernel needs d(x, y) > 1e-6");
  p.scale = p.distance;
  const double db = b(x) - b(y);
  p.value = db == 0.0 ? 0.0 : db * heat_time_integral(ctx, i, j, x, y, settings).value;
  p.volume = ctx.measure().volume_max(x, y, p.distance);
  p.lip = symbol_norm(b);
  p.ratio = normalized(p.value, p.volume, 0.0, p.lip);
  return p;
}

double regularity_probe(const Context& ctx, const Symbol& b, int i, int j, const Vec& x, const Vec& x2,
                        const Vec& y, ProbeMode mode, double s, int moved, const HeatIntegralSettings& settings) {
  const double lip = symbol_norm(b);
  auto at = [&](const Vec& p) {
    const Vec& a = moved == 0 ? p : x;
    const Vec& c = moved == 0 ? y : p;
    return mode == ProbeMode::Scale ? theta(ctx, b, s, i, j, a, c).value
                                    : integrated_kernel(ctx, b, i, j, a, c, settings).value;
  };
  // moved == 1 compares (x, y) with (x, x2).
  const Vec& base = moved == 0 ? x : y;
  const double shift = (base - x2).norm();
  const double d = ctx.distance(x, y);
  if (mode == ProbeMode::Scale) {
    if (!(s > 0.0)) throw DomainError("scale must be positive");
    if (shift > s) throw PreconditionViolated("scale regularity needs |x - x'| <= s");
    if (shift == 0.0) return 0.0;
    const double diff = at(base) - at(x2);
    if (diff == 0.0) return 0.0;
    const double volume = ctx.measure().volume_max(x, y, s);
    return std::abs(diff) * volume * std::exp(kGaussC * d * d / (s * s)) / (lip * shift / s);
  }
  if (shift > d / 4.0) throw PreconditionViolated("kernel regularity needs |x - x'| <= d(x, y) / 4");
  if (shift == 0.0) return 0.0;
  const double diff = at(base) - at(x2);
  if (diff == 0.0) return 0.0;
  const double volume = ctx.measure().volume_max(x, y, d);
  return std::abs(diff) * volume / (lip * shift / d);
}

BasicIntegralReport heat_parameter_integral_check(const Context& ctx, const Vec& z, const Vec& y, double delta) {
  BasicIntegralReport rep;
  rep.r = ctx.distance(z, y);
  rep.delta = delta;
  if (!(rep.r > 0.0)) throw OrbitDiagonal("basic integrals need d(z, y) > 0");
  if (!(delta > 0.0) || delta > rep.r / 4.0) throw PreconditionViolated("need 0 < delta <= r / 4");
  const double r = rep.r;
  const double U = 30.0;
  const double u_delta = 2.0 * std::log(delta / r);
  const double breaks[] = {u_delta};
  const auto nodes = quad::composite_nodes(-U, U, breaks, 256, 8);
  double global = 0.0;
  double first = 0.0;
  double second = 0.0;
  for (const auto& node : nodes) {
    const double t = r * r * std::exp(node.x);
    const double dt = node.w * t;  // dt = t du
    const double g = std::exp(-kGaussC * r * r / t);
    if (g == 0.0) continue;
    const double v = ctx.measure().volume_max(z, y, std::sqrt(t));
    const double base = g / v * dt;
    global += std::pow(t, -1.5) * base;
    if (node.x < u_delta) {
      first += std::pow(t, -1.5) * base;
    } else {
      second += std::pow(t, -2.0) * base;
    }
  }
  const double vr = ctx.measure().volume_max(z, y, r);
  rep.global_lhs = r * global;
  rep.global_ratio = rep.global_lhs * vr;
  rep.perturbative_lhs = first + delta * second;
  rep.perturbative_ratio = rep.perturbative_lhs * r * r * vr / delta;
  return rep;
}

}  // namespace dunkl
