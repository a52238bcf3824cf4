#include "dunkl/measure.hpp"

#include "dunkl/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace dunkl {
namespace {

// Antiderivative of |u|^{2k}.
double power_antiderivative(double u, double k) {
  const double p = 2.0 * k + 1.0;
  return std::copysign(std::pow(std::abs(u), p) / p, u);
}

std::uint64_t hash_point(const Vec& x, double r) {
  std::uint64_t h = std::bit_cast<std::uint64_t>(r);
  for (Eigen::Index k = 0; k < x.size(); ++k) h = mix64(h ^ std::bit_cast<std::uint64_t>(x[k]));
  return h;
}

}  // namespace

Measure::Measure(const ChamberAtlas& atlas, MeasureSettings settings)
    : atlas_(atlas), settings_(settings) {
  const auto type = atlas_.spec().type;
  if (type == GroupType::SignProduct || type == GroupType::Trivial) {
    product_ = true;
    coord_kappa_ = atlas_.spec().coordinate_kappa();
  }
}

double Measure::weight(const Vec& x) const {
  if (product_) {
    double w = 1.0;
    for (int i = 0; i < dim(); ++i) {
      if (coord_kappa_[i] != 0.0) w *= std::pow(2.0 * x[i] * x[i], coord_kappa_[i]);
    }
    return w;
  }
  double w = 1.0;
  const auto& s = spec();
  for (std::size_t a = 0; a < s.roots.size(); ++a) {
    if (s.kappa[a] != 0.0) w *= std::pow(std::abs(x.dot(s.roots[a])), s.kappa[a]);
  }
  return w;
}

double Measure::product_interval_mass(int axis, double a, double b) const {
  const double k = coord_kappa_[axis];
  if (k == 0.0) return b - a;
  return std::pow(2.0, k) * (power_antiderivative(b, k) - power_antiderivative(a, k));
}

VolumeEstimate Measure::ball(const Vec& x, double r) const {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (product_ && dim() <= 2) return product_ball(x, r, false);
  if (dim() <= 2) return quadrature_ball(x, r, false);
  return monte_carlo_ball(x, r, false);
}

VolumeEstimate Measure::chamber_ball(const Vec& x, double r) const {
  if (!(r > 0.0)) throw DomainError("ball radius must be positive");
  if (product_ && dim() <= 2) return product_ball(x, r, true);
  if (dim() <= 2) return quadrature_ball(x, r, true);
  return monte_carlo_ball(x, r, true);
}

// Closed form in 1D. In 2D the outer variable is x1 = c1 + r sin(theta), which
// removes the square-root endpoint behaviour, and the inner integral is exact.
VolumeEstimate Measure::product_ball(const Vec& c, double r, bool chamber_only) const {
  const bool clip = chamber_only && spec().type == GroupType::SignProduct;
  if (dim() == 1) {
    const double lo = clip ? std::max(0.0, c[0] - r) : c[0] - r;
    const double hi = c[0] + r;
    if (!(hi > lo)) return {0.0, 0.0, "closed-form"};
    return {product_interval_mass(0, lo, hi), 0.0, "closed-form"};
  }

  const double half_pi = 0.5 * std::numbers::pi;
  double theta_lo = -half_pi;
  const double theta_hi = half_pi;
  std::vector<double> breaks;
  if (std::abs(c[0]) < r) {
    const double t0 = std::asin(-c[0] / r);
    breaks.push_back(t0);
    if (clip) theta_lo = t0;
  } else if (clip && c[0] + r <= 0.0) {
    return {0.0, 0.0, "gauss-legendre+exact"};
  }
  if (std::abs(c[1]) < r) {
    const double t1 = std::asin(std::sqrt(1.0 - (c[1] / r) * (c[1] / r)));
    breaks.push_back(t1);
    breaks.push_back(-t1);
  }

  auto estimate = [&](int total) {
    const auto outer = quad::distributed_nodes(theta_lo, theta_hi, breaks, total, std::max(8, total / 8));
    double sum = 0.0;
    for (const auto& node : outer) {
      const double st = std::sin(node.x);
      const double ct = std::cos(node.x);
      const double x1 = c[0] + r * st;
      const double h = r * ct;
      double lo = c[1] - h;
      const double hi = c[1] + h;
      if (clip) lo = std::max(lo, 0.0);
      if (!(hi > lo)) continue;
      const double w1 = coord_kappa_[0] == 0.0 ? 1.0 : std::pow(2.0 * x1 * x1, coord_kappa_[0]);
      sum += node.w * r * ct * w1 * product_interval_mass(1, lo, hi);
    }
    return sum;
  };
  const double fine = estimate(settings_.nodes_per_axis);
  const double coarse = estimate(settings_.nodes_per_axis / 2);
  VolumeEstimate out{fine, std::abs(fine - coarse), "gauss-legendre+exact"};
  if (out.error > settings_.quad_tol * std::abs(fine) + 1e-300) {
    throw QuadratureFailure("ball volume error indicator above tolerance");
  }
  return out;
}

VolumeEstimate Measure::quadrature_ball(const Vec& c, double r, bool chamber_only) const {
  auto estimate = [&](int n) {
    double sum = 0.0;
    for (const auto& node : ball_nodes(c, r, n, chamber_only)) sum += node.w;
    return sum;
  };
  const double fine = estimate(settings_.nodes_per_axis);
  const double coarse = estimate(settings_.nodes_per_axis / 2);
  VolumeEstimate out{fine, std::abs(fine - coarse), "gauss-legendre"};
  if (out.error > settings_.quad_tol * std::abs(fine) + 1e-300) {
    throw QuadratureFailure("ball volume error indicator above tolerance");
  }
  return out;
}

VolumeEstimate Measure::monte_carlo_ball(const Vec& c, double r, bool chamber_only) const {
  const int n = dim();
  const int per_axis = n == 3 ? 4 : 3;
  int cells = 1;
  for (int k = 0; k < n; ++k) cells *= per_axis;
  const int per_cell = std::max(2, (settings_.mc_samples + cells - 1) / cells);
  const double cell_width = 2.0 * r / per_axis;
  const double cell_volume = std::pow(cell_width, n);
  Stream stream(settings_.seed, hash_point(c, r) ^ (chamber_only ? 1u : 0u));

  double total = 0.0;
  double variance = 0.0;
  std::vector<int> digit(n, 0);
  Vec y(n);
  for (int cell = 0; cell < cells; ++cell) {
    int code = cell;
    for (int k = 0; k < n; ++k) {
      digit[k] = code % per_axis;
      code /= per_axis;
    }
    double s1 = 0.0;
    double s2 = 0.0;
    for (int k = 0; k < per_cell; ++k) {
      for (int a = 0; a < n; ++a) y[a] = c[a] - r + (digit[a] + stream.uniform()) * cell_width;
      double f = 0.0;
      if ((y - c).squaredNorm() < r * r && (!chamber_only || atlas_.in_closed_chamber(y))) f = weight(y);
      s1 += f;
      s2 += f * f;
    }
    const double mean = s1 / per_cell;
    const double var = std::max(0.0, s2 / per_cell - mean * mean) / (per_cell - 1);
    total += cell_volume * mean;
    variance += cell_volume * cell_volume * var;
  }
  VolumeEstimate out{total, std::sqrt(variance), "stratified-mc"};
  if (out.error > settings_.mc_tol * std::abs(total) + 1e-300) {
    throw QuadratureFailure("Monte Carlo standard error above tolerance");
  }
  return out;
}

double Measure::ball_volume_model(const Vec& x, double r) const {
  double value = std::pow(r, dim());
  const auto& s = spec();
  for (std::size_t a = 0; a < s.roots.size(); ++a) {
    if (s.kappa[a] != 0.0) value *= std::pow(std::abs(x.dot(s.roots[a])) + r, s.kappa[a]);
  }
  return value;
}

double Measure::volume_max(const Vec& x, const Vec& y, double r) const {
  return std::max(ball_volume(x, r), ball_volume(y, r));
}

double Measure::chamber_volume_max(const Vec& x, const Vec& y, double r) const {
  return std::max(chamber_ball(x, r).value, chamber_ball(y, r).value);
}

double Measure::orbit_ball_volume(const Vec& x, double r) const {
  const Vec rep = atlas_.chamber_of(x).rep;
  return atlas_.order() * chamber_ball(rep, r).value;
}

double Measure::box_mass(const Vec& lo, const Vec& hi) const {
  if (product_) {
    double m = 1.0;
    for (int i = 0; i < dim(); ++i) m *= product_interval_mass(i, lo[i], hi[i]);
    return m;
  }
  double sum = 0.0;
  for (const auto& node : box_nodes(lo, hi, 24)) sum += node.w;
  return sum;
}

std::vector<quad::Line> Measure::wall_lines() const {
  std::vector<quad::Line> lines;
  const auto& s = spec();
  if (dim() == 1) {
    if (!s.roots.empty()) lines.push_back({1.0, 0.0, 0.0});
    return lines;
  }
  for (std::size_t a = 0; a < s.roots.size(); a += 2) lines.push_back({s.roots[a][0], s.roots[a][1], 0.0});
  return lines;
}

std::vector<quad::Node2> Measure::ball_nodes(const Vec& c, double r, int nodes_per_axis, bool chamber_only,
                                             std::span<const quad::Line> extra) const {
  std::vector<quad::Line> lines = wall_lines();
  lines.insert(lines.end(), extra.begin(), extra.end());
  std::vector<quad::Node2> out;
  if (dim() == 1) {
    double lo = c[0] - r;
    if (chamber_only && !spec().roots.empty()) lo = std::max(lo, 0.0);
    std::vector<double> breaks;
    for (const auto& l : lines) breaks.push_back(l.c / l.a1);
    for (const auto& n : quad::distributed_nodes(lo, c[0] + r, breaks, nodes_per_axis,
                                                 std::max(4, nodes_per_axis / 16))) {
      Vec x = make_vec({n.x});
      out.push_back({x, n.w * weight(x)});
    }
    return out;
  }
  if (dim() != 2) throw Unsupported("ball quadrature nodes are available for N <= 2");
  std::vector<quad::HalfPlane> constraints;
  if (chamber_only) {
    for (const Vec& alpha : atlas_.positive_roots()) constraints.push_back({alpha[0], alpha[1]});
  }
  out = quad::disc_nodes(c, r, lines, constraints, nodes_per_axis);
  for (auto& node : out) node.w *= weight(node.x);
  return out;
}

std::vector<quad::Node2> Measure::box_nodes(const Vec& lo, const Vec& hi, int nodes_per_axis,
                                            std::span<const quad::Line> extra) const {
  std::vector<quad::Line> lines = wall_lines();
  lines.insert(lines.end(), extra.begin(), extra.end());
  std::vector<quad::Node2> out;
  if (dim() == 1) {
    std::vector<double> breaks;
    for (const auto& l : lines) breaks.push_back(l.c / l.a1);
    for (const auto& n : quad::distributed_nodes(lo[0], hi[0], breaks, nodes_per_axis,
                                                 std::max(4, nodes_per_axis / 16))) {
      Vec x = make_vec({n.x});
      out.push_back({x, n.w * weight(x)});
    }
    return out;
  }
  if (dim() != 2) throw Unsupported("box quadrature nodes are available for N <= 2");
  out = quad::box_nodes(lo, hi, lines, nodes_per_axis);
  for (auto& node : out) node.w *= weight(node.x);
  return out;
}

}  // namespace dunkl
