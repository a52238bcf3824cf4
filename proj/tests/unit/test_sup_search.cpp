#include "dunkl/sup_search.hpp"

#include <doctest.h>

#include <cmath>

using namespace dunkl;

TEST_CASE("sup search finds an interior peak and a boundary maximum") {
  // Peak 2 + pick at c, so the sup is 3 at (c, pick = 1).
  const std::vector<double> c{0.31, 0.77, 0.5};
  auto F = [&](const std::vector<double>& u, const std::vector<int>& pick) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) r2 += (u[k] - c[k]) * (u[k] - c[k]);
    return 2.0 + pick[0] - 4.0 * r2;
  };
  const SupStudy s = sup_study(F, 3, {2}, {.probes = 400, .starts = 4, .hops = 2, .seed = 3});
  CHECK(s.full == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(s.argmax_pick[0] == 1);
  CHECK(s.drift() <= 1e-5);
  CHECK(s.finite);

  auto G = [](const std::vector<double>& u, const std::vector<int>&) { return u[0] + 0.5 * u[1]; };
  CHECK(sup_study(G, 2, {}, {.probes = 100, .starts = 2, .hops = 0, .seed = 4}).full == doctest::Approx(1.5));
}

TEST_CASE("sup search flags non-finite samples and is deterministic") {
  auto F = [](const std::vector<double>& u, const std::vector<int>&) { return u[0] > 0.99 ? INFINITY : u[0]; };
  const SupStudy a = sup_study(F, 1, {}, {.probes = 2000, .starts = 3, .hops = 1, .seed = 9});
  const SupStudy b = sup_study(F, 1, {}, {.probes = 2000, .starts = 3, .hops = 1, .seed = 9});
  CHECK_FALSE(a.finite);
  CHECK(a.full == b.full);
  CHECK(a.evaluations == b.evaluations);
}
