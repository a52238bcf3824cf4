#pragma once

#include "dunkl/geometry.hpp"
#include "dunkl/quadrature.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dunkl {

struct MeasureSettings {
  int nodes_per_axis = 128;
  int mc_samples = 200000;
  std::uint64_t seed = 20240611;
  double quad_tol = 1e-4;
  double mc_tol = 1e-2;
};

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // error indicator (quadrature) or standard error (MC)
  std::string estimator;
};

/// Dunkl measure w(x) dx for a root system, with ball-volume estimators.
class Measure {
 public:
  explicit Measure(const ChamberAtlas& atlas, MeasureSettings settings = {});

  const RootSystemSpec& spec() const { return atlas_.spec(); }
  const ChamberAtlas& atlas() const { return atlas_; }
  const MeasureSettings& settings() const { return settings_; }
  int dim() const { return spec().dim; }
  double homogeneous_dimension() const { return spec().homogeneous_dimension(); }

  double weight(const Vec& x) const;

  VolumeEstimate ball(const Vec& x, double r) const;
  double ball_volume(const Vec& x, double r) const { return ball(x, r).value; }
  double ball_volume_model(const Vec& x, double r) const;
  /// V(x, y, r)
  double volume_max(const Vec& x, const Vec& y, double r) const;

  /// omega(B(x, r) cap C), x in the closed chamber.
  VolumeEstimate chamber_ball(const Vec& x, double r) const;
  double chamber_volume_max(const Vec& x, const Vec& y, double r) const;

  /// omega of the orbit ball {y : d(x, y) < r}.
  double orbit_ball_volume(const Vec& x, double r) const;

  /// omega of the axis-aligned box [lo, hi].
  double box_mass(const Vec& lo, const Vec& hi) const;

  /// Quadrature nodes for integrals over B(c, r) (optionally intersected with
  /// the fundamental chamber) against d omega: the returned weights already
  /// include w(x). Lines in `extra` mark additional discontinuities of the
  /// integrand (in 1D, a Line {a1, *, c} is the point c / a1). N <= 2 only.
  std::vector<quad::Node2> ball_nodes(const Vec& c, double r, int nodes_per_axis,
                                      bool chamber_only = false,
                                      std::span<const quad::Line> extra = {}) const;

  /// Same for an axis-aligned box.
  std::vector<quad::Node2> box_nodes(const Vec& lo, const Vec& hi, int nodes_per_axis,
                                     std::span<const quad::Line> extra = {}) const;

  /// Wall lines <alpha, x> = 0, one per root pair (N = 2), or the origin (N = 1).
  std::vector<quad::Line> wall_lines() const;

 private:
  VolumeEstimate product_ball(const Vec& x, double r, bool chamber_only) const;
  VolumeEstimate quadrature_ball(const Vec& x, double r, bool chamber_only) const;
  VolumeEstimate monte_carlo_ball(const Vec& x, double r, bool chamber_only) const;
  double product_interval_mass(int axis, double a, double b) const;

  ChamberAtlas atlas_;
  MeasureSettings settings_;
  std::vector<double> coord_kappa_;  // only for product weights
  bool product_ = false;
};

}  // namespace dunkl
