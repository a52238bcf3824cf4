#pragma once

#include "dunkl/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dunkl {

/// Coefficient b of the commutator.
struct Symbol {
  std::string id;
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> gradient;  // may be empty
  std::optional<double> declared_lipd;     // empty: not in Lip_d
  bool invariant = true;
  double euclidean_lip = 0.0;  // Euclidean Lipschitz constant (normalization for non-invariant controls)

  double operator()(const Vec& x) const { return eval(x); }
  /// Lip_d seminorm if declared, otherwise the Euclidean constant.
  double norm() const { return declared_lipd.value_or(euclidean_lip); }
};

struct SymbolParams {
  std::vector<double> c;  // smooth_invariant coefficients
  Vec x0;                 // orbit_dist base point (default 0)
  double constant = 1.0;
};

/// smooth_invariant, orbit_dist, coordinate_noninvariant, constant.
Symbol builtin_symbol(const std::string& name, const SymbolParams& params, const ReflectionGroup& group);

/// lambda * b, with the same structure.
Symbol scaled_symbol(const Symbol& b, double lambda);

struct SeminormSettings {
  double box = 5.0;
  int pairs = 100000;
  std::uint64_t seed = 7;
  double near_noise = 1e-3;
};

struct SeminormEstimate {
  double value = 0.0;
  bool infinite = false;      // same-orbit violation found
  double max_violation = 0.0; // largest |b(x) - b(sigma x)|
};

SeminormEstimate lipd_seminorm(const Symbol& b, const ReflectionGroup& group, const SeminormSettings& settings = {});

/// Radial mollification at scale eps with a G-invariant shell rule
/// (16 directions x 8 radii; the shell degenerates to {+1, -1} in 1D).
Symbol mollify(const Symbol& b, double eps, const RootSystemSpec& spec);

/// The shell/radius rule used by mollify: offsets u_k and weights summing to 1.
struct MollifierRule {
  std::vector<Vec> offsets;  // unit-scale offsets (|u| < 1)
  std::vector<double> weights;
};
MollifierRule mollifier_rule(const RootSystemSpec& spec);

}  // namespace dunkl
