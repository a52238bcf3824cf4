#pragma once

#include "dunkl/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace dunkl::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule. Rules are computed once per n and cached
/// (thread-safe, immutable after first use).
const Rule& gauss_legendre(int n);

/// Node/weight pair produced by a composite rule.
struct Node1 {
  double x;
  double w;
};

/// Composite Gauss-Legendre nodes on [lo, hi], with the interval first split at
/// every breakpoint strictly inside it, then each piece split into `panels`
/// equal panels carrying an `order`-point rule.
std::vector<Node1> composite_nodes(double lo, double hi, std::span<const double> breakpoints,
                                   int panels, int order);

/// Distributes roughly `total` nodes over the pieces of [lo, hi] cut at the
/// given breakpoints, proportionally to piece length with at least
/// `min_per_piece` per piece. One Gauss-Legendre rule per piece.
std::vector<Node1> distributed_nodes(double lo, double hi, std::span<const double> breakpoints,
                                     int total, int min_per_piece);

/// Breakpoints center +- width * 2^-k, k = 1..levels: a geometric mesh that
/// resolves algebraic singularities |x - center|^a.
std::vector<double> graded_breakpoints(double center, double width, int levels);

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> breakpoints, int panels, int order);

/// Straight line {x in R^2 : a . x = c}.
struct Line {
  double a1;
  double a2;
  double c;
};

/// Half-plane {x : a . x >= 0} through the origin.
struct HalfPlane {
  double a1;
  double a2;
};

struct Node2 {
  Vec x;
  double w;
};

/// Tensor Gauss-Legendre nodes covering the disc B(center, r) intersected
/// with the given half-planes. The integrand is allowed to be non-smooth
/// across the supplied lines: both quadrature directions are split wherever a
/// line (or a pairwise line intersection, or a line/circle intersection) would
/// otherwise fall inside a panel, so each cell sees a smooth integrand.
std::vector<Node2> disc_nodes(const Vec& center, double r, std::span<const Line> lines,
                              std::span<const HalfPlane> constraints, int nodes_per_axis);

/// Same construction for an axis-aligned box [lo, hi].
std::vector<Node2> box_nodes(const Vec& lo, const Vec& hi, std::span<const Line> lines,
                             int nodes_per_axis);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace dunkl::quad
