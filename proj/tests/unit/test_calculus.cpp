#include <doctest.h>

#include "dunkl/calculus.hpp"
#include "dunkl/quadrature.hpp"

#include <cmath>

using namespace dunkl;

TEST_CASE("classical derivative when kappa = 0") {
  const auto spec = RootSystemSpec::sign_product({0.0, 0.0});
  const double v = dunkl_apply({}, spec, [](const Vec& x) { return x[0] * x[0]; }, unit_vec(2, 0), make_vec({3, 0.4}));
  CHECK(v == doctest::Approx(6.0).epsilon(1e-6));
  const double w = dunkl_apply_second({}, spec, [](const Vec& x) { return x[0] * x[1]; }, 0, 1, make_vec({0.7, 1.3}));
  CHECK(w == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("rank-one hand evaluations") {
  const auto spec = RootSystemSpec::sign_product({1.0});
  const Vec e = unit_vec(1, 0);
  CHECK(dunkl_apply({}, spec, [](const Vec& x) { return x[0]; }, e, make_vec({2.0})) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(dunkl_apply_second({}, spec, [](const Vec& x) { return x[0] * x[0]; }, 0, 0, make_vec({1.3})) ==
        doctest::Approx(6.0).epsilon(1e-6));
  // Even functions: the difference part vanishes.
  const auto even = [](const Vec& x) { return std::cos(x[0]); };
  CHECK(dunkl_apply({}, spec, even, e, make_vec({0.8})) == doctest::Approx(-std::sin(0.8)).epsilon(1e-9));
}

TEST_CASE("wall guard") {
  const auto spec = RootSystemSpec::sign_product({1.0});
  const auto f = [](const Vec& x) { return x[0]; };
  CHECK_THROWS_AS(dunkl_apply({}, spec, f, unit_vec(1, 0), make_vec({5e-5})), TooCloseToWall);
  CHECK_NOTHROW(dunkl_apply({}, spec, f, unit_vec(1, 0), make_vec({1.5e-4})));
  CHECK_THROWS_AS(dunkl_apply_second({}, spec, f, 0, 0, make_vec({1.5e-4})), TooCloseToWall);
}

TEST_CASE("dihedral oracle agrees with a direct evaluation of the definition") {
  const auto spec = RootSystemSpec::dihedral(3, {0.7});
  const auto f = [](const Vec& x) { return std::exp(0.3 * x[0] - 0.2 * x[1]) + x[0] * x[1] * x[1]; };
  const Vec x = make_vec({0.9, 0.35});
  const Vec xi = make_vec({0.6, 0.8});
  // Exact directional derivative.
  const double fx = f(x);
  double expected = 0.6 * (0.3 * std::exp(0.3 * x[0] - 0.2 * x[1]) + x[1] * x[1]) +
                    0.8 * (-0.2 * std::exp(0.3 * x[0] - 0.2 * x[1]) + 2 * x[0] * x[1]);
  for (std::size_t a = 0; a < spec.roots.size(); ++a) {
    const Vec& al = spec.roots[a];
    expected += 0.5 * spec.kappa[a] * al.dot(xi) * (fx - f(x - x.dot(al) * al)) / al.dot(x);
  }
  CHECK(dunkl_apply({}, spec, f, xi, x) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("oracle error is second order in the step") {
  const auto spec = RootSystemSpec::sign_product({0.6});
  const auto f = [](const Vec& x) { return std::sin(2 * x[0]) + x[0] * x[0] * x[0]; };
  const Vec x = make_vec({0.9});
  const double exact = 2 * std::cos(1.8) + 3 * 0.81 + 0.6 * (2 * f(x)) / 0.9;
  std::vector<double> h, err;
  for (double step : {4e-2, 2e-2, 1e-2, 5e-3}) {
    DunklOracleConfig cfg;
    cfg.h_rel = step;
    cfg.guard = 4;
    h.push_back(step);
    err.push_back(std::abs(dunkl_apply(cfg, spec, f, unit_vec(1, 0), x) - exact));
  }
  CHECK(quad::loglog_slope(h, err) >= 1.9);
}
