#include "dunkl/sup_search.hpp"

#include "dunkl/rng.hpp"

#include <algorithm>
#include <cmath>

namespace dunkl {
namespace {

struct Probe {
  std::vector<double> u;
  std::vector<int> pick;
  double value = -1.0;
};

void compass(const ProbeFn& F, Probe& p, double step, long& evals) {
  for (int iter = 0; iter < 400 && step > 1e-3; ++iter) {
    bool improved = false;
    for (std::size_t d = 0; d < p.u.size() && !improved; ++d) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> v = p.u;
        v[d] = std::clamp(v[d] + sign * step, 0.0, 1.0);
        if (v[d] == p.u[d]) continue;
        const double f = F(v, p.pick);
        ++evals;
        if (std::isfinite(f) && f > p.value) {
          p.u = std::move(v);
          p.value = f;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
}

// Best pick at the start point, compass search, then basin hops.
Probe refine(const ProbeFn& F, Probe p, const std::vector<int>& pick_range, int hops, Stream& st, long& evals) {
  std::vector<int> pick(pick_range.size(), 0);
  for (;;) {
    const double f = F(p.u, pick);
    ++evals;
    if (std::isfinite(f) && f > p.value) {
      p.value = f;
      p.pick = pick;
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == pick_range[k]) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  compass(F, p, 0.1, evals);
  for (int hop = 0; hop < hops; ++hop) {
    Probe q = p;
    for (double& v : q.u) v = std::clamp(v + 0.05 * st.normal(), 0.0, 1.0);
    q.value = F(q.u, q.pick);
    ++evals;
    if (!std::isfinite(q.value)) continue;
    compass(F, q, 0.02, evals);
    if (q.value > p.value) p = q;
  }
  return p;
}

}  // namespace

double SupStudy::drift() const { return full > 0.0 ? std::abs(full - half) / full : 0.0; }

SupStudy sup_study(const ProbeFn& F, int dim, const std::vector<int>& pick_range, const SupSearchSettings& settings) {
  Stream st(settings.seed, 77);
  std::vector<Probe> probes(settings.probes);
  SupStudy out;
  for (Probe& p : probes) {
    p.u.resize(dim);
    for (double& v : p.u) v = st.uniform();
    for (int r : pick_range) p.pick.push_back(st.index(r));
    p.value = F(p.u, p.pick);
    ++out.evaluations;
    if (!std::isfinite(p.value)) out.finite = false;
  }
  auto best_of = [&](int count) {
    Stream hops(settings.seed, 78);
    std::vector<Probe> pool(probes.begin(), probes.begin() + count);
    const int k = std::min(settings.starts, count);
    std::partial_sort(pool.begin(), pool.begin() + k, pool.end(),
                      [](const Probe& a, const Probe& b) { return a.value > b.value; });
    Probe best;
    for (int q = 0; q < k; ++q) {
      Probe r = refine(F, pool[q], pick_range, settings.hops, hops, out.evaluations);
      if (r.value > best.value) best = std::move(r);
    }
    return best;
  };
  out.half = best_of(settings.probes / 2).value;
  Probe top = best_of(settings.probes);
  if (top.value < out.half) top.value = out.half;
  out.full = top.value;
  out.argmax = top.u;
  out.argmax_pick = top.pick;
  return out;
}

}  // namespace dunkl
