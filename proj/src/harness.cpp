#include "dunkl/harness.hpp"

#include "dunkl/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

namespace dunkl {
namespace {

using Nodes = std::vector<quad::Node2>;

// z in C cap B(x*, radius) with the omega weight; the caller sums over the
// chamber images sigma_rho z.
Nodes chamber_neighbourhood(const Context& ctx, const Vec& rep, double radius, int n) {
  return ctx.measure().ball_nodes(rep, radius, n, true);
}

double interval_mass(double k, double a, double b) {
  auto F = [k](double x) { return std::copysign(std::pow(std::abs(x), 2.0 * k + 1.0), x) / (2.0 * k + 1.0); };
  return std::pow(2.0, k) * (F(b) - F(a));
}

}  // namespace

HarnessSettings HarnessSettings::refined() const {
  HarnessSettings s = *this;
  s.s_per_decade *= 2;
  s.spatial_nodes *= 2;
  s.inner_nodes *= 2;
  return s;
}

Vec chamber_direction(const ChamberAtlas& atlas) {
  const int n = atlas.spec().dim;
  Vec v = Vec::Zero(n);
  for (const Vec& alpha : atlas.positive_roots()) v += alpha;
  if (v.norm() == 0.0) return unit_vec(n, 0);
  return v / v.norm();
}

std::vector<Ball> standard_balls(const ChamberAtlas& atlas, const std::vector<double>& radii) {
  const Vec v = chamber_direction(atlas);
  const double dv = wall_distance(atlas.spec(), v);
  const Vec zero = Vec::Zero(atlas.spec().dim);
  std::vector<Ball> out;
  for (double r : radii) {
    if (!std::isfinite(dv)) {
      out.push_back({zero, r, "deep"});
      continue;
    }
    out.push_back({v * (3.0 * r / dv), r, "deep"});
    out.push_back({v * (0.5 * r / dv), r, "wall-adjacent"});
    out.push_back({zero, r, "wall-centered"});
  }
  return out;
}

std::vector<ScaleNode> log_scale_grid(double lo, double hi, int per_decade) {
  const int n = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade - 1e-9)));
  const double h = std::log(hi / lo) / n;
  std::vector<ScaleNode> out;
  for (int k = 0; k <= n; ++k) {
    out.push_back({lo * std::exp(k * h), (k == 0 || k == n) ? 0.5 * h : h});
  }
  return out;
}

double carleson_integral(const Context& ctx, const Ball& ball, const std::function<double(const Vec&, double)>& F,
                         const HarnessSettings& settings) {
  const Nodes nodes = ctx.measure().ball_nodes(ball.center, ball.r, settings.spatial_nodes);
  double mass = 0.0;
  for (const auto& node : nodes) mass += node.w;
  double total = 0.0;
  for (const auto& sc : log_scale_grid(ball.r * std::pow(10.0, -settings.s_decades), ball.r, settings.s_per_decade)) {
    double inner = 0.0;
    for (const auto& node : nodes) {
      const double v = F(node.x, sc.s);
      inner += node.w * v * v;
    }
    total += sc.w * inner;
  }
  return total / mass;
}

WallLayerReport wall_layer_measure_check(const Context& ctx, const Ball& ball, const std::vector<double>& lambdas,
                                         int nodes_per_axis) {
  WallLayerReport rep;
  rep.ball = ball;
  rep.lambdas = lambdas;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
    const double level = std::numbers::sqrt2 * lambda * ball.r;
    std::vector<quad::Line> extra;
    for (const Vec& alpha : ctx.atlas().positive_roots()) {
      const double a2 = ctx.dim() > 1 ? alpha[1] : 0.0;
      extra.push_back({alpha[0], a2, level});
      extra.push_back({alpha[0], a2, -level});
    }
    double inside = 0.0;
    double mass = 0.0;
    for (const auto& node : ctx.measure().ball_nodes(ball.center, ball.r, nodes_per_axis, false, extra)) {
      mass += node.w;
      if (wall_distance(ctx.spec(), node.x) <= lambda * ball.r) inside += node.w;
    }
    rep.ratios.push_back(inside / mass);
  }
  if (lambdas.size() >= 2) rep.slope = quad::loglog_slope(rep.lambdas, rep.ratios);
  return rep;
}

double wall_layer_carleson(const Context& ctx, const Ball& ball, const HarnessSettings& settings) {
  return carleson_integral(
      ctx, ball, [&](const Vec& x, double s) { return wall_layer(ctx.spec(), s, x); }, settings);
}

double gaussian_average(const Context& ctx, double s, const Field& F, const Vec& x, const HarnessSettings& settings) {
  if (!(s > 0.0)) throw DomainError("scale must be positive");
  const Vec rep = ctx.atlas().chamber_of(x).rep;
  const double vx = ctx.measure().ball_volume(x, s);
  double sum = 0.0;
  for (const auto& node : chamber_neighbourhood(ctx, rep, settings.truncation * s, settings.inner_nodes)) {
    double fsum = 0.0;
    for (int rho = 0; rho < ctx.atlas().order(); ++rho) fsum += F(ctx.group().apply(rho, node.x));
    if (fsum == 0.0) continue;
    const double v = std::max(vx, ctx.measure().ball_volume(node.x, s));
    sum += node.w * std::exp(-kGaussC * (rep - node.x).squaredNorm() / (s * s)) / v * fsum;
  }
  return sum;
}

double theta_indicator(const Context& ctx, const Symbol& b, double s, int i, int j, int tau, const Vec& x,
                       const HarnessSettings& settings, bool adjoint) {
  const HeatKernel& heat = ctx.heat();
  const Vec rep = ctx.atlas().chamber_of(x).rep;
  const double bx = b(x);
  const double t = s * s;
  double sum = 0.0;
  for (const auto& node : chamber_neighbourhood(ctx, rep, settings.truncation * s, settings.inner_nodes)) {
    const Vec y = ctx.group().apply(tau, node.x);
    const double db = bx - b(y);
    if (db == 0.0) continue;
    // theta_s(y, x) = s (b(y) - b(x)) A(y, x); A is evaluated in the swapped order.
    const double a = adjoint ? -heat.Aij(t, y, x, i, j) : heat.Aij(t, x, y, i, j);
    sum += node.w * s * db * a;
  }
  return sum;
}

CarlesonReport component_testing(const Context& ctx, const Symbol& b, int tau, const std::vector<Ball>& balls,
                                 int i, int j, const HarnessSettings& settings) {
  CarlesonReport rep;
  rep.quantity = "component_testing";
  rep.balls = balls;
  rep.settings = settings;
  const double lip = b.norm();
  rep.normalization = lip > 0.0 ? lip * lip : 1.0;
  for (const Ball& ball : balls) {
    const double v = carleson_integral(
        ctx, ball, [&](const Vec& x, double s) { return theta_indicator(ctx, b, s, i, j, tau, x, settings); },
        settings);
    if (!std::isfinite(v)) throw QuadratureFailure("component testing integral is not finite");
    rep.values.push_back(v / rep.normalization);
    rep.sup = std::max(rep.sup, rep.values.back());
  }
  return rep;
}

int TensorGrid::size() const {
  int n = 1;
  for (const auto& axis : nodes) n *= static_cast<int>(axis.size());
  return n;
}

Vec TensorGrid::point(int flat) const {
  const int dim = static_cast<int>(nodes.size());
  Vec x(dim);
  for (int k = dim - 1; k >= 0; --k) {
    const int n = static_cast<int>(nodes[k].size());
    x[k] = nodes[k][flat % n];
    flat /= n;
  }
  return x;
}

TensorGrid tensor_grid(const Context& ctx, double L, int per_axis, double offset) {
  const std::vector<double> kappa = ctx.spec().coordinate_kappa();
  TensorGrid g;
  const double h = 2.0 * L / per_axis;
  for (double k : kappa) {
    std::vector<double> x;
    std::vector<double> w;
    for (int a = 0; a < per_axis; ++a) {
      const double lo = -L + (a + offset) * h;
      x.push_back(lo + 0.5 * h);
      w.push_back(interval_mass(k, lo, lo + h));
    }
    g.nodes.push_back(std::move(x));
    g.weights.push_back(std::move(w));
  }
  return g;
}

double vertical_square_function(const Context& ctx, const TensorGrid& grid, const std::vector<double>& f, int l,
                                const SquareFunctionSettings& settings) {
  const HeatKernel& heat = ctx.heat();
  const int dim = static_cast<int>(grid.nodes.size());
  if (dim > 2) throw Unsupported("vertical square function grids support N <= 2");
  const int n0 = static_cast<int>(grid.nodes[0].size());
  const int n1 = dim == 2 ? static_cast<int>(grid.nodes[1].size()) : 1;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(f.data(), n0, n1);
  Eigen::MatrixXd W(n0, n1);
  for (int a = 0; a < n0; ++a) {
    for (int c = 0; c < n1; ++c) W(a, c) = grid.weights[0][a] * (dim == 2 ? grid.weights[1][c] : 1.0);
  }
  const double f2 = (W.array() * F.array().square()).sum();
  if (f2 == 0.0) return 0.0;

  auto axis_matrix = [&](int k, double t, bool derivative) {
    const auto& x = grid.nodes[k];
    const auto& w = grid.weights[k];
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        const double gap = std::abs(x[a]) - std::abs(x[c]);
        if (gap * gap > 160.0 * t) continue;  // below e^{-40} of the peak
        double v = w[c] * heat.h1(k, t, x[a], x[c]);
        if (derivative) v *= std::sqrt(t) * (x[c] - x[a]) / (2.0 * t);
        M(a, c) = v;
      }
    }
    return M;
  };

  double total = 0.0;
  for (const auto& sc : log_scale_grid(settings.s_lo, settings.s_hi, settings.per_decade)) {
    const double t = sc.s * sc.s;
    Eigen::MatrixXd U = axis_matrix(0, t, l == 0) * F;
    if (dim == 2) U = U * axis_matrix(1, t, l == 1).transpose();
    total += sc.w * (W.array() * U.array().square()).sum();
  }
  return total / f2;
}

double gradient_apply(const Context& ctx, const Field& g, double s, int l, const Vec& x,
                      const HarnessSettings& settings) {
  const HeatKernel& heat = ctx.heat();
  const Vec rep = ctx.atlas().chamber_of(x).rep;
  const double t = s * s;
  double sum = 0.0;
  for (const auto& node : chamber_neighbourhood(ctx, rep, settings.truncation * s, settings.inner_nodes)) {
    for (int rho = 0; rho < ctx.atlas().order(); ++rho) {
      const Vec y = ctx.group().apply(rho, node.x);
      const double gy = g(y);
      if (gy == 0.0) continue;
      sum += node.w * s * (y[l] - x[l]) / (2.0 * t) * heat.eval(t, x, y) * gy;
    }
  }
  return sum;
}

CarlesonReport gradient_carleson(const Context& ctx, const Field& g, double g_sup, const std::vector<Ball>& balls,
                                 int l, const HarnessSettings& settings) {
  CarlesonReport rep;
  rep.quantity = "gradient_carleson";
  rep.balls = balls;
  rep.settings = settings;
  rep.normalization = g_sup > 0.0 ? g_sup * g_sup : 1.0;
  for (const Ball& ball : balls) {
    const double v = carleson_integral(
        ctx, ball, [&](const Vec& x, double s) { return gradient_apply(ctx, g, s, l, x, settings); }, settings);
    rep.values.push_back(v / rep.normalization);
    rep.sup = std::max(rep.sup, rep.values.back());
  }
  return rep;
}

double gradient_far_field(const Context& ctx, const Field& g, const Vec& x, double r, double s, int l,
                          const HarnessSettings& settings) {
  const HeatKernel& heat = ctx.heat();
  const Vec rep = ctx.atlas().chamber_of(x).rep;
  const double t = s * s;
  const double outer = r + settings.truncation * s;
  const int n = settings.inner_nodes;
  Nodes nodes;
  if (ctx.dim() == 1) {
    for (double sign : {-1.0, 1.0}) {
      for (const auto& q : quad::composite_nodes(r, outer, {}, 1, n)) {
        const Vec z = make_vec({rep[0] + sign * q.x});
        if (ctx.atlas().in_closed_chamber(z)) nodes.push_back({z, q.w * ctx.measure().weight(z)});
      }
    }
  } else if (ctx.dim() == 2) {
    const auto radial = quad::composite_nodes(r, outer, {}, 1, n);
    const auto angular = quad::composite_nodes(0.0, 2.0 * std::numbers::pi, {}, 8, n / 2);
    for (const auto& q : radial) {
      for (const auto& a : angular) {
        const Vec z = rep + q.x * make_vec({std::cos(a.x), std::sin(a.x)});
        if (ctx.atlas().in_closed_chamber(z)) nodes.push_back({z, q.w * a.w * q.x * ctx.measure().weight(z)});
      }
    }
  } else {
    throw Unsupported("far-field quadrature supports N <= 2");
  }
  double sum = 0.0;
  for (const auto& node : nodes) {
    for (int rho = 0; rho < ctx.atlas().order(); ++rho) {
      const Vec y = ctx.group().apply(rho, node.x);
      sum += node.w * s * (y[l] - x[l]) / (2.0 * t) * heat.eval(t, x, y) * g(y);
    }
  }
  return std::abs(sum);
}

double Bump::operator()(const Vec& y) const {
  const double q = (y - center).squaredNorm() / (radius * radius);
  if (q >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

Vec Bump::gradient(const Vec& y) const {
  const double q = (y - center).squaredNorm() / (radius * radius);
  if (q >= 1.0) return Vec::Zero(y.size());
  const double v = std::exp(1.0 - 1.0 / (1.0 - q));
  return v * (-1.0 / ((1.0 - q) * (1.0 - q))) * 2.0 * (y - center) / (radius * radius);
}

CommutatorResidual commutator_identity(const Context& ctx, const Symbol& b, double s, int i, int j, const Bump& phi,
                                       const Vec& x, int nodes_per_axis) {
  if (!b.gradient) throw DomainError("commutator identity needs a symbol with a gradient");
  const HeatKernel& heat = ctx.heat();
  const int n = ctx.dim();
  // Every reflected copy of the support lies in the ball of radius |c| + rho.
  const double R = phi.center.norm() + phi.radius;
  const Vec lo = Vec::Constant(n, -R);
  const Vec hi = Vec::Constant(n, R);
  const Field f = [&](const Vec& y) { return phi(y); };
  const auto grad = [&](const Vec& y) { return phi.gradient(y); };
  const Vec ej = unit_vec(n, j);
  const double t = s * s;
  const double bx = b(x);

  double theta_phi = 0.0;
  double ti_tj = 0.0;     // T_i H (T_j phi)(x)
  double ti_btj = 0.0;    // T_i H (b T_j phi)(x)
  double ti_dbphi = 0.0;  // T_i H ((d_j b) phi)(x)
  for (const auto& node : ctx.measure().box_nodes(lo, hi, nodes_per_axis)) {
    const Vec& y = node.x;
    const double py = phi(y);
    const double tj = dunkl_apply_exact(ctx.spec(), f, grad, ej, y);
    const auto fac = heat.factors(t, x, y);
    const double ti_kernel = (y[i] - x[i]) / (2.0 * t) * fac.h;
    const double by = b(y);
    theta_phi += node.w * s * (bx - by) * heat.Aij_from(fac, t, x, y, i, j) * py;
    ti_tj += node.w * ti_kernel * tj;
    ti_btj += node.w * ti_kernel * by * tj;
    ti_dbphi += node.w * ti_kernel * b.gradient(y)[j] * py;
  }
  CommutatorResidual out;
  out.theta_phi = theta_phi;
  out.commutator = s * (bx * ti_tj - ti_btj);
  out.correction = s * ti_dbphi;
  out.residual = out.theta_phi - out.commutator + out.correction;
  out.scale = std::abs(out.theta_phi) + std::abs(out.commutator) + std::abs(out.correction);
  return out;
}

}  // namespace dunkl
