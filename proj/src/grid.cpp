#include "dunkl/grid.hpp"

#include <cmath>
#include <limits>

namespace dunkl {

Grid box_grid(const Context& ctx, double L, int per_axis, double margin, double offset) {
  if (!(L > 0.0) || per_axis < 1) throw DomainError("grid needs L > 0 and at least one node per axis");
  Grid g;
  g.dim = ctx.dim();
  g.L = L;
  g.per_axis = per_axis;
  g.margin = margin;
  g.offset = offset;
  const double h = 2.0 * L / per_axis;
  long total = 1;
  for (int k = 0; k < g.dim; ++k) total *= per_axis;
  std::vector<int> idx(g.dim, 0);
  for (long n = 0; n < total; ++n) {
    long rest = n;
    for (int k = g.dim - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rest % per_axis);
      rest /= per_axis;
    }
    Vec x(g.dim);
    Vec lo(g.dim);
    Vec hi(g.dim);
    for (int k = 0; k < g.dim; ++k) {
      x[k] = -L + (idx[k] + 0.5 + offset) * h;
      lo[k] = x[k] - 0.5 * h;
      hi[k] = x[k] + 0.5 * h;
    }
    if (margin > 0.0 && wall_distance(ctx.spec(), x) < margin) continue;
    g.nodes.push_back(x);
    g.weights.push_back(ctx.measure().box_mass(lo, hi));
  }
  return g;
}

Grid chamber_grid(const Context& ctx, double L, int per_axis, double margin) {
  const Grid full = box_grid(ctx, L, per_axis, margin);
  Grid g = full;
  g.nodes.clear();
  g.weights.clear();
  for (int a = 0; a < full.size(); ++a) {
    if (ctx.atlas().in_chamber(0, full.nodes[a])) {
      g.nodes.push_back(full.nodes[a]);
      g.weights.push_back(full.weights[a]);
    }
  }
  return g;
}

Grid orbit_grid(const ChamberAtlas& atlas, const Grid& chamber) {
  Grid g = chamber;
  g.nodes.clear();
  g.weights.clear();
  for (int a = 0; a < chamber.size(); ++a) {
    for (int rho = 0; rho < atlas.order(); ++rho) {
      g.nodes.push_back(atlas.group().apply(rho, chamber.nodes[a]));
      g.weights.push_back(chamber.weights[a]);
    }
  }
  return g;
}

double grid_norm(const std::vector<double>& weights, const std::vector<double>& values, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) sum += weights[k] * std::pow(std::abs(values[k]), p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace dunkl
