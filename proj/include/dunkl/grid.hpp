#pragma once

#include "dunkl/context.hpp"

#include <vector>

namespace dunkl {

/// Nodes with omega-quadrature weights. Built from uniform midpoint cells of
/// [-L, L]^N; each node carries the omega mass of its cell.
struct Grid {
  int dim = 1;
  double L = 0.0;
  int per_axis = 0;
  double margin = 0.0;
  double offset = 0.0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Tensor midpoint grid on [-L, L]^N, dropping nodes within `margin` of a wall.
/// An optional offset (fraction of the cell width) shifts every node.
Grid box_grid(const Context& ctx, double L, int per_axis, double margin = 1e-3, double offset = 0.0);

/// Nodes of box_grid lying in the open fundamental chamber.
Grid chamber_grid(const Context& ctx, double L, int per_axis, double margin = 1e-3);

/// Union of the images sigma_rho x_a of a chamber grid, ordered a * M + rho,
/// with the weight of x_a (omega is G-invariant).
Grid orbit_grid(const ChamberAtlas& atlas, const Grid& chamber);

/// Weighted discrete L^p norm; p = infinity gives the max norm.
double grid_norm(const std::vector<double>& weights, const std::vector<double>& values, double p);

}  // namespace dunkl
