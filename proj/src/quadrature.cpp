#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace dunkl::quad {
namespace {

Rule compute_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  return rule;
}

std::vector<double> cut_points(double lo, double hi, std::span<const double> breakpoints) {
  std::vector<double> cuts{lo};
  const double tol = 1e-13 * std::max(1.0, std::abs(hi - lo));
  for (double b : breakpoints) {
    if (b > lo + tol && b < hi - tol) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [tol](double a, double b) { return std::abs(a - b) <= tol; }),
             cuts.end());
  return cuts;
}

void append_rule(std::vector<Node1>& out, double a, double b, int order) {
  const Rule& rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int k = 0; k < order; ++k) out.push_back({mid + half * rule.nodes[k], half * rule.weights[k]});
}

// Solutions of |p0 + tau d - center|^2 = r^2 for the line a.x = c.
void line_circle_x1(const Line& line, const Vec& center, double r, std::vector<double>& out) {
  const double norm2 = line.a1 * line.a1 + line.a2 * line.a2;
  if (norm2 == 0.0) return;
  const double inv = 1.0 / std::sqrt(norm2);
  const double p1 = line.c * line.a1 / norm2 - center[0];
  const double p2 = line.c * line.a2 / norm2 - center[1];
  const double d1 = -line.a2 * inv;
  const double d2 = line.a1 * inv;
  const double bq = d1 * p1 + d2 * p2;
  const double cq = p1 * p1 + p2 * p2 - r * r;
  const double disc = bq * bq - cq;
  if (disc < 0.0) return;
  const double s = std::sqrt(disc);
  for (double tau : {-bq - s, -bq + s}) out.push_back(center[0] + p1 + tau * d1);
}

void pairwise_x1(std::span<const Line> lines, std::vector<double>& out) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].a2 == 0.0 && lines[i].a1 != 0.0) out.push_back(lines[i].c / lines[i].a1);
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double det = lines[i].a1 * lines[j].a2 - lines[i].a2 * lines[j].a1;
      if (std::abs(det) < 1e-14) continue;
      out.push_back((lines[i].c * lines[j].a2 - lines[j].c * lines[i].a2) / det);
    }
  }
}

void inner_breaks(std::span<const Line> lines, double x1, std::vector<double>& out) {
  out.clear();
  for (const Line& line : lines) {
    if (line.a2 != 0.0) out.push_back((line.c - line.a1 * x1) / line.a2);
  }
}

int min_per_piece(int total) { return std::max(4, total / 16); }

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(compute_gauss_legendre(n));
  return *slot;
}

std::vector<Node1> composite_nodes(double lo, double hi, std::span<const double> breakpoints,
                                   int panels, int order) {
  std::vector<Node1> out;
  if (!(hi > lo)) return out;
  const auto cuts = cut_points(lo, hi, breakpoints);
  out.reserve((cuts.size() - 1) * panels * order);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double width = (cuts[p + 1] - cuts[p]) / panels;
    for (int k = 0; k < panels; ++k) {
      append_rule(out, cuts[p] + k * width, cuts[p] + (k + 1) * width, order);
    }
  }
  return out;
}

std::vector<Node1> distributed_nodes(double lo, double hi, std::span<const double> breakpoints,
                                     int total, int min_nodes) {
  std::vector<Node1> out;
  if (!(hi > lo)) return out;
  const auto cuts = cut_points(lo, hi, breakpoints);
  const double length = hi - lo;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double frac = (cuts[p + 1] - cuts[p]) / length;
    const int n = std::max(min_nodes, static_cast<int>(std::lround(total * frac)));
    append_rule(out, cuts[p], cuts[p + 1], n);
  }
  return out;
}

std::vector<double> graded_breakpoints(double center, double width, int levels) {
  std::vector<double> out;
  double w = width;
  for (int k = 0; k < levels; ++k) {
    w *= 0.5;
    out.push_back(center - w);
    out.push_back(center + w);
  }
  return out;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> breakpoints, int panels, int order) {
  double sum = 0.0;
  for (const auto& node : composite_nodes(lo, hi, breakpoints, panels, order)) sum += node.w * f(node.x);
  return sum;
}

std::vector<Node2> disc_nodes(const Vec& center, double r, std::span<const Line> lines,
                              std::span<const HalfPlane> constraints, int nodes_per_axis) {
  std::vector<Line> all(lines.begin(), lines.end());
  for (const auto& h : constraints) all.push_back({h.a1, h.a2, 0.0});

  std::vector<double> outer_breaks;
  for (const Line& line : all) line_circle_x1(line, center, r, outer_breaks);
  pairwise_x1(all, outer_breaks);

  // Outer variable x1 = c1 + r sin(theta): the chord length r cos(theta) is
  // smooth in theta, so the square-root behaviour at the rim disappears.
  std::vector<double> theta_breaks;
  for (double b : outer_breaks) {
    const double u = (b - center[0]) / r;
    if (u > -1.0 && u < 1.0) theta_breaks.push_back(std::asin(u));
  }
  const double half_pi = 0.5 * std::numbers::pi;
  const int minimum = min_per_piece(nodes_per_axis);
  const auto thetas = distributed_nodes(-half_pi, half_pi, theta_breaks, nodes_per_axis, minimum);

  std::vector<Node2> out;
  std::vector<double> breaks;
  for (const auto& th : thetas) {
    const Node1 o{center[0] + r * std::sin(th.x), th.w * r * std::cos(th.x)};
    const double h = r * std::cos(th.x);
    double a = center[1] - h;
    double b = center[1] + h;
    bool empty = false;
    for (const auto& c : constraints) {
      if (c.a2 > 0.0) {
        a = std::max(a, -c.a1 * o.x / c.a2);
      } else if (c.a2 < 0.0) {
        b = std::min(b, -c.a1 * o.x / c.a2);
      } else if (c.a1 * o.x < 0.0) {
        empty = true;
      }
    }
    if (empty || !(b > a)) continue;
    inner_breaks(all, o.x, breaks);
    const int n_inner =
        std::max(minimum, static_cast<int>(std::lround(nodes_per_axis * (b - a) / (2.0 * r))));
    for (const auto& in : distributed_nodes(a, b, breaks, n_inner, minimum)) {
      out.push_back({make_vec({o.x, in.x}), o.w * in.w});
    }
  }
  return out;
}

std::vector<Node2> box_nodes(const Vec& lo, const Vec& hi, std::span<const Line> lines,
                             int nodes_per_axis) {
  std::vector<double> outer_breaks;
  pairwise_x1(lines, outer_breaks);
  for (const Line& line : lines) {
    if (line.a1 == 0.0) continue;
    for (double x2 : {lo[1], hi[1]}) outer_breaks.push_back((line.c - line.a2 * x2) / line.a1);
  }
  const int minimum = min_per_piece(nodes_per_axis);
  const auto outer = distributed_nodes(lo[0], hi[0], outer_breaks, nodes_per_axis, minimum);
  std::vector<Node2> out;
  std::vector<double> breaks;
  for (const auto& o : outer) {
    inner_breaks(lines, o.x, breaks);
    for (const auto& in : distributed_nodes(lo[1], hi[1], breaks, nodes_per_axis, minimum)) {
      out.push_back({make_vec({o.x, in.x}), o.w * in.w});
    }
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace dunkl::quad
