#pragma once

#include "dunkl/geometry.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/measure.hpp"

#include <optional>

namespace dunkl {

/// Gaussian exponent c used in every e^{-c d^2 / s^2} normalization.
inline constexpr double kGaussC = 1.0 / 16.0;

/// Everything that depends only on the root system: group, chamber atlas,
/// measure and, for Z_2^N, the heat kernel. Immutable after construction.
class Context {
 public:
  explicit Context(const RootSystemSpec& spec, MeasureSettings settings = {});

  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const RootSystemSpec& spec() const { return atlas_.spec(); }
  const ReflectionGroup& group() const { return atlas_.group(); }
  const ChamberAtlas& atlas() const { return atlas_; }
  const Measure& measure() const { return measure_; }
  int dim() const { return spec().dim; }
  bool has_heat() const { return heat_.has_value(); }
  /// Throws Unsupported for groups other than Z_2^N.
  const HeatKernel& heat() const;

  double distance(const Vec& x, const Vec& y) const { return orbit_distance(group(), x, y); }

 private:
  ChamberAtlas atlas_;
  Measure measure_;
  std::optional<HeatKernel> heat_;
};

}  // namespace dunkl
