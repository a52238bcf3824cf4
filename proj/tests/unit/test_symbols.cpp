#include <doctest.h>

#include "dunkl/calculus.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/symbols.hpp"

#include <cmath>

using namespace dunkl;

TEST_CASE("builtin symbols") {
  const auto g = build_group(RootSystemSpec::preset("z2", {}));
  const auto c = builtin_symbol("constant", {.constant = 2.5}, g);
  CHECK(c(make_vec({1.0})) == 2.5);
  CHECK(lipd_seminorm(c, g, {.pairs = 2000}).value == 0.0);
  CHECK_THROWS_AS(builtin_symbol("nope", {}, g), UnknownSymbol);

  const auto od = builtin_symbol("orbit_dist", {}, g);
  CHECK(od(make_vec({-3.0})) == 3.0);
  const auto est = lipd_seminorm(od, g, {.pairs = 20000});
  CHECK_FALSE(est.infinite);
  CHECK(est.value <= 1.0 + 1e-12);
  CHECK(est.value >= 1.0 - 1e-9);

  const auto x1 = builtin_symbol("coordinate_noninvariant", {}, g);
  CHECK(x1(make_vec({1.0})) != x1(make_vec({-1.0})));
  const auto bad = lipd_seminorm(x1, g, {.pairs = 2000});
  CHECK(bad.infinite);
  CHECK(std::isinf(bad.value));
  CHECK_FALSE(x1.declared_lipd.has_value());
}

TEST_CASE("smooth invariant symbol seminorm approaches the derivative bound") {
  const auto g = build_group(RootSystemSpec::preset("z2xz2", {}));
  const auto b = builtin_symbol("smooth_invariant", {.c = {1.0, 0.0}}, g);
  CHECK(b.invariant);
  const auto est = lipd_seminorm(b, g, {.pairs = 50000});
  CHECK_FALSE(est.infinite);
  CHECK(est.value <= 1.0);
  CHECK(est.value >= 0.95);  // sup |phi'| over the box [-5, 5] is 5 / sqrt(26)
  // Lip_d implies the Euclidean bound.
  Stream s(4, 4);
  for (int k = 0; k < 1000; ++k) {
    const Vec x = make_vec({s.uniform(-5, 5), s.uniform(-5, 5)});
    const Vec y = make_vec({s.uniform(-5, 5), s.uniform(-5, 5)});
    CHECK(std::abs(b(x) - b(y)) <= *b.declared_lipd * (x - y).norm() * (1 + 1e-12));
  }
}

TEST_CASE("scaling is linear") {
  const auto g = build_group(RootSystemSpec::preset("z2xz2", {}));
  const auto b = builtin_symbol("smooth_invariant", {}, g);
  const auto b2 = scaled_symbol(b, 2.0);
  const Vec x = make_vec({0.3, -1.2});
  CHECK(b2(x) == 2.0 * b(x));
  CHECK(*b2.declared_lipd == 2.0 * *b.declared_lipd);
}

TEST_CASE("mollifier rule is G-invariant and normalized") {
  for (const char* name : {"z2", "z2xz2", "b2", "i2_6"}) {
    const auto spec = RootSystemSpec::preset(name, {});
    const auto g = build_group(spec);
    const auto rule = mollifier_rule(spec);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    for (const Mat& m : g.elements) {
      for (const Vec& u : rule.offsets) {
        const Vec v = m * u;
        bool found = false;
        for (const Vec& w : rule.offsets) found = found || (w - v).norm() < 1e-12;
        CHECK(found);
      }
    }
  }
  for (int n : {3, 4}) {
    const auto rule = mollifier_rule(RootSystemSpec::sign_product(std::vector<double>(n, 1.0)));
    CHECK(rule.offsets.size() == 16 * 8);
  }
}

TEST_CASE("mollification") {
  const auto spec = RootSystemSpec::preset("z2", {});
  const auto g = build_group(spec);
  const auto c = builtin_symbol("constant", {.constant = 4.0}, g);
  CHECK(mollify(c, 0.1, spec)(make_vec({0.3})) == doctest::Approx(4.0).epsilon(1e-14));

  const auto b = builtin_symbol("smooth_invariant", {}, g);
  const auto be = mollify(b, 0.2, spec);
  CHECK(be(make_vec({0.0})) > b(make_vec({0.0})));
  CHECK(be(make_vec({0.7})) == be(make_vec({-0.7})));

  const auto od = builtin_symbol("orbit_dist", {}, g);
  Stream s(8, 8);
  for (double eps : {0.1, 0.01, 0.001}) {
    const auto m = mollify(od, eps, spec);
    for (int k = 0; k < 200; ++k) {
      const Vec x = make_vec({s.uniform(-3, 3)});
      CHECK(std::abs(m(x) - od(x)) <= eps * (1 + 1e-12));
    }
  }
  // Gradient bound after mollification.
  const auto spec2 = RootSystemSpec::preset("z2xz2", {});
  const auto g2 = build_group(spec2);
  const auto b2 = mollify(builtin_symbol("smooth_invariant", {.c = {1.0, 0.5}}, g2), 0.3, spec2);
  for (int k = 0; k < 200; ++k) {
    const Vec x = make_vec({s.uniform(-3, 3), s.uniform(-3, 3)});
    CHECK(b2.gradient(x).norm() <= 1.5);
  }
}

TEST_CASE("product rule for invariant symbols") {
  const auto spec = RootSystemSpec::sign_product({0.8, 0.4});
  const auto g = build_group(spec);
  const auto b = builtin_symbol("smooth_invariant", {.c = {1.0, -0.5}}, g);
  const auto f = [](const Vec& x) { return std::exp(-(x[0] - 0.3) * (x[0] - 0.3) - 0.5 * x[1] * x[1]) * (1 + x[1]); };
  Stream s(12, 1);
  for (int k = 0; k < 300; ++k) {
    const Vec x = make_vec({s.uniform(0.05, 2.5) * (k % 2 ? 1 : -1), s.uniform(0.05, 2.5)});
    for (int j = 0; j < 2; ++j) {
      const auto lhs = dunkl_apply_detail({}, spec, [&](const Vec& z) { return b(z) * f(z); }, unit_vec(2, j), x);
      const auto tf = dunkl_apply_detail({}, spec, f, unit_vec(2, j), x);
      const double rhs = b.gradient(x)[j] * f(x) + b(x) * tf.value;
      const double scale = lhs.scale + std::abs(b.gradient(x)[j] * f(x)) + std::abs(b(x)) * tf.scale;
      CHECK(std::abs(lhs.value - rhs) <= 1e-5 * scale);
    }
  }
}
