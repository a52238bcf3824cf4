#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dunkl {

/// Sup of F over [0,1]^dim x (discrete picks). Random probes, then compass
/// search plus seeded basin hops from the best `starts` probes. Done once on
/// the first half of the sample and once on all of it, so that `drift`
/// measures the effect of doubling the sample.
using ProbeFn = std::function<double(const std::vector<double>& u, const std::vector<int>& pick)>;

struct SupSearchSettings {
  int probes = 20000;
  int starts = 32;
  int hops = 8;
  std::uint64_t seed = 1;
};

struct SupStudy {
  double half = 0.0;
  double full = 0.0;
  std::vector<double> argmax;  // u at the full-sample sup
  std::vector<int> argmax_pick;
  bool finite = true;
  long evaluations = 0;

  double drift() const;  // |full - half| / full
};

SupStudy sup_study(const ProbeFn& F, int dim, const std::vector<int>& pick_range, const SupSearchSettings& settings);

}  // namespace dunkl
