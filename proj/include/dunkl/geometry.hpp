#pragma once

#include "dunkl/types.hpp"

#include <string>
#include <vector>

namespace dunkl {

enum class GroupType { Trivial, SignProduct, Dihedral };

/// Root system with multiplicities. Roots are normalized to squared length 2
/// and both alpha and -alpha are stored; kappa[k] belongs to roots[k].
struct RootSystemSpec {
  int dim = 1;
  GroupType type = GroupType::SignProduct;
  int m = 0;  // dihedral order parameter, 0 otherwise
  std::vector<Vec> roots;
  std::vector<double> kappa;

  /// Z_2^N with per-coordinate multiplicities.
  static RootSystemSpec sign_product(std::vector<double> coordinate_kappa);
  /// I_2(m). kappa has one entry, or two (even-indexed lines, odd-indexed
  /// lines) when m is even.
  static RootSystemSpec dihedral(int m, std::vector<double> kappa);
  /// No roots at all: the Euclidean case on R^N.
  static RootSystemSpec trivial(int dim);
  /// "z2", "z2xz2", "b2", "i2_6", plus "trivial1" / "trivial2".
  static RootSystemSpec preset(const std::string& name, const std::vector<double>& kappa);
  /// {"dimension": N, "type": "Z2^N" | "I2(m)" | "trivial", "kappa": [...]}
  static RootSystemSpec from_json_text(const std::string& text);

  /// Throws InvalidRootSystem when normalization, closure under reflections
  /// or invariance of kappa fails.
  void validate() const;

  double kappa_sum() const;  // sum over all roots
  double homogeneous_dimension() const { return dim + kappa_sum(); }
  bool zero_kappa() const;
  /// Per-coordinate multiplicities; only for SignProduct (Unsupported otherwise).
  std::vector<double> coordinate_kappa() const;
  std::string name() const;
};

/// x - <x,alpha> alpha for |alpha|^2 = 2.
Vec reflect(const Vec& alpha, const Vec& x);

struct ReflectionGroup {
  int dim = 1;
  std::vector<Mat> elements;  // elements[0] is the identity
  bool full_sign_group = false;

  int order() const { return static_cast<int>(elements.size()); }
  Vec apply(int rho, const Vec& x) const { return elements[rho] * x; }
  Vec apply_inverse(int rho, const Vec& x) const { return elements[rho].transpose() * x; }
};

ReflectionGroup build_group(const RootSystemSpec& spec, int cap = 1024);

double orbit_distance(const ReflectionGroup& group, const Vec& x, const Vec& y);

struct ChamberIndex {
  int rho;
  Vec rep;
};

class ChamberAtlas {
 public:
  ChamberAtlas(const RootSystemSpec& spec, ReflectionGroup group);

  const RootSystemSpec& spec() const { return spec_; }
  const ReflectionGroup& group() const { return group_; }
  int order() const { return group_.order(); }
  /// Roots with <alpha, v> > 0 for a fixed generic v; the fundamental chamber
  /// is where all of them are nonnegative.
  const std::vector<Vec>& positive_roots() const { return positive_; }
  /// Positive system of the chamber sigma_tau C.
  const std::vector<Vec>& positive_roots(int tau) const { return positive_by_chamber_[tau]; }

  bool in_closed_chamber(const Vec& x, double tol = 0.0) const;
  bool in_chamber(int tau, const Vec& x) const;  // interior of Omega_tau

  /// Smallest rho with sigma_rho^{-1} x in the closed chamber. In strict mode
  /// points within `wall_tol` of a wall raise OnWall.
  ChamberIndex chamber_of(const Vec& x, bool strict = false, double wall_tol = 1e-12) const;

 private:
  RootSystemSpec spec_;
  ReflectionGroup group_;
  std::vector<Vec> positive_;
  std::vector<std::vector<Vec>> positive_by_chamber_;
};

double wall_distance(const RootSystemSpec& spec, const Vec& x);

/// m_s(x) = min{1, s / dist(x, walls)}, equal to 1 on walls.
double wall_layer(const RootSystemSpec& spec, double s, const Vec& x);

/// Quintic smoothstep on [1,2]: 0 below 1, 1 above 2.
double smoothstep(double u);
double smoothstep_derivative(double u);

double chamber_cutoff(const ChamberAtlas& atlas, int tau, double s, const Vec& x);
double chamber_indicator(const ChamberAtlas& atlas, int tau, const Vec& x);

}  // namespace dunkl
