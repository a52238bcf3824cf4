// Acceptance suite: one line per criterion. Usage: acceptance [criterion ...]
#include "dunkl/calculus.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/lifting.hpp"
#include "dunkl/operator_lab.hpp"
#include "dunkl/rng.hpp"
#include "dunkl/sup_search.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace dunkl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

Vec random_point(Stream& st, int n, double box) {
  Vec x(n);
  for (int k = 0; k < n; ++k) x[k] = st.uniform(-box, box);
  return x;
}

Vec random_unit(Stream& st, int n) {
  Vec u(n);
  for (int k = 0; k < n; ++k) u[k] = st.normal();
  return u / u.norm();
}

Vec random_chamber_point(const ChamberAtlas& atlas, Stream& st, double box) {
  for (;;) {
    const Vec x = atlas.chamber_of(random_point(st, atlas.spec().dim, box)).rep;
    if (wall_distance(atlas.spec(), x) > 1e-6) return x;
  }
}

// Direct orbit distance: min over the group, written out here.
double brute_distance(const ReflectionGroup& g, const Vec& x, const Vec& y) {
  double best = INFINITY;
  for (const Mat& m : g.elements) best = std::min(best, (x - m * y).norm());
  return best;
}

double gaussian(double t, const Vec& x, const Vec& y) {
  const double n = static_cast<double>(x.size());
  return std::pow(4 * std::numbers::pi * t, -n / 2) * std::exp(-(x - y).squaredNorm() / (4 * t));
}

double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13, int depth = 25) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, depth, tol);
}

// Sup over the first n and first 2n samples; drift = (sup2n - supn) / sup2n.
struct SupDrift {
  double half = 0.0;
  double full = 0.0;
  bool finite = true;
  void add(double v, bool first_half) {
    if (!std::isfinite(v)) finite = false;
    if (first_half) half = std::max(half, v);
    full = std::max(full, v);
  }
  double drift() const { return full > 0.0 ? (full - half) / full : 0.0; }
};

// ---------------------------------------------------------------------------

Outcome c01_chamber_identity() {
  double worst = 0.0;
  long pairs = 0;
  for (const char* name : {"z2", "z2xz2", "b2", "i2_6"}) {
    const Context ctx(RootSystemSpec::preset(name, {}));
    const auto& g = ctx.group();
    Stream st(101, 1);
    for (int n = 0; n < 10000; ++n) {
      const Vec x = random_chamber_point(ctx.atlas(), st, 5.0);
      const Vec y = random_chamber_point(ctx.atlas(), st, 5.0);
      const double e = (x - y).norm();
      for (int rho = 0; rho < g.order(); ++rho) {
        const Vec sx = g.apply(rho, x);
        for (int tau = 0; tau < g.order(); ++tau) {
          worst = std::max(worst, std::abs(brute_distance(g, sx, g.apply(tau, y)) - e));
        }
      }
      ++pairs;
    }
  }
  return {worst <= 1e-10, "max |d(s_r x, s_t y) - |x-y|| = " + sci(worst) + " (tol 1e-10) over " +
                              std::to_string(pairs) + " pairs x all (rho,tau)"};
}

Outcome c02_lifting_isometry() {
  double worst = 0.0;
  int functions = 0;
  for (const char* name : {"z2", "z2xz2", "b2", "i2_6"}) {
    const Context ctx(RootSystemSpec::preset(name, {1.0}));
    const int M = ctx.atlas().order();
    const Grid base = chamber_grid(ctx, 4.0, ctx.dim() == 1 ? 100 : 24);
    const Grid full = orbit_grid(ctx.atlas(), base);
    Stream st(202, 2);
    for (int n = 0; n < 100; ++n) {
      std::vector<double> f(full.size());
      for (double& v : f) v = st.normal() * std::exp(st.uniform(-3, 3));
      LiftedFunction F{base, Eigen::MatrixXd(base.size(), M)};
      for (int a = 0; a < base.size(); ++a) {
        for (int rho = 0; rho < M; ++rho) F.values(a, rho) = f[a * M + rho];
      }
      for (double p : std::vector<double>{1.0, 2.0, 4.0, INFINITY}) {
        const double ref = grid_norm(full.weights, f, p);
        worst = std::max(worst, std::abs(lifted_norm(F, p) - ref) / ref);
      }
      ++functions;
    }
  }
  return {worst <= 1e-13, "max relative |Uf|_p - |f|_p = " + sci(worst) + " (tol 1e-13), p in {1,2,4,inf}, " +
                              std::to_string(functions) + " functions"};
}

Outcome c03_first_derivative() {
  double worst = 0.0;
  int probes = 0;
  for (int n : {1, 2}) {
    for (double k : {0.0, 0.5, 1.0, 2.3}) {
      std::vector<double> kap(n, k);
      if (n == 2) kap[1] = 0.5 * k;
      const HeatKernel h(kap);
      const auto spec = RootSystemSpec::sign_product(kap);
      Stream st(303, static_cast<std::uint64_t>(10 * k + n));
      int done = 0;
      while (done < 1000) {
        const double t = st.log_uniform(0.05, 5.0);
        const Vec x = random_point(st, n, 3.0);
        const Vec y = random_point(st, n, 3.0);
        if (wall_distance(spec, x) < 0.05) continue;
        const int j = st.index(n);
        const auto o = dunkl_apply_detail({}, spec, [&](const Vec& z) { return h.eval(t, z, y); }, unit_vec(n, j), x);
        worst = std::max(worst, relative_error(h.Tj(t, x, y, j), o.value, o.scale));
        ++done;
      }
      probes += done;
    }
  }
  return {worst <= 1e-5, "max relative error T_j h vs difference oracle = " + sci(worst) + " (tol 1e-5) at " +
                             std::to_string(probes) + " probes"};
}

Outcome c04_second_derivative() {
  double worst = 0.0;
  int probes = 0;
  for (int n : {1, 2}) {
    for (double k : {0.0, 0.5, 1.0, 2.3}) {
      std::vector<double> kap(n, k);
      if (n == 2) kap[1] = 0.3;
      const HeatKernel h(kap);
      const auto spec = RootSystemSpec::sign_product(kap);
      const ReflectionGroup group = build_group(spec);
      Stream st(404, static_cast<std::uint64_t>(10 * k + n));
      int done = 0;
      while (done < 300) {
        const double t = st.log_uniform(0.1, 5.0);
        const Vec x = random_point(st, n, 3.0);
        const Vec y = random_point(st, n, 3.0);
        if (wall_distance(spec, x) < 0.1) continue;
        const int i = st.index(n);
        const int j = st.index(n);
        const auto o =
            dunkl_apply_second_detail({}, spec, [&](const Vec& z) { return h.eval(t, z, y); }, i, j, x);
        // Comparison size: the orbit envelope of h_t(., y) / t.
        double env = 0.0;
        for (const Mat& m : group.elements) env += std::abs(h.eval(t, m * x, y)) / t;
        worst = std::max(worst, relative_error(h.Aij(t, x, y, i, j), o.value, std::max(o.scale, env)));
        ++done;
      }
      probes += done;
    }
  }
  double gauss = 0.0;
  const HeatKernel flat({0.0, 0.0});
  Stream st(405, 0);
  for (int n = 0; n < 1000; ++n) {
    const double t = st.log_uniform(0.05, 5.0);
    const Vec x = random_point(st, 2, 3.0);
    const Vec y = random_point(st, 2, 3.0);
    const double g = gaussian(t, x, y);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double hess = ((y[i] - x[i]) * (y[j] - x[j]) / (4 * t * t) - (i == j ? 1 / (2 * t) : 0.0)) * g;
        gauss = std::max(gauss, std::abs(flat.Aij(t, x, y, i, j) - hess) / (g / t));
      }
    }
  }
  return {worst <= 1e-4 && gauss <= 1e-10, "max error A_ij vs second oracle relative to the orbit envelope = " + sci(worst) +
                                               " (tol 1e-4) at " + std::to_string(probes) +
                                               " probes; kappa=0 Hessian error " + sci(gauss) + " (tol 1e-10)"};
}

Outcome c05_semigroup() {
  double mass = 0.0;
  for (double k : {0.0, 0.5, 1.0, 2.3}) {
    const HeatKernel h({k});
    for (double t : {0.05, 0.5, 5.0}) {
      for (double x : {0.0, 0.4, -1.9, 3.5}) {
        auto f = [&](double y) { return h.h1(0, t, x, y) * std::pow(2 * y * y, k); };
        const double L = std::abs(x) + 40 * std::sqrt(t);
        const double ax = std::abs(x);
        double m = gk(f, -L, -ax) + gk(f, ax, L);
        if (ax > 0) m += gk(f, -ax, 0.0) + gk(f, 0.0, ax);
        mass = std::max(mass, std::abs(m - 1.0));
      }
    }
  }
  double semi = 0.0;
  for (double k : {0.5, 1.0, 2.3}) {
    const HeatKernel h({k});
    for (auto [t, s, x, y] : {std::tuple{0.3, 0.5, 0.4, -1.1}, {1.0, 2.0, 2.0, 1.5}, {0.2, 0.2, -0.8, -0.5},
                              {0.7, 0.1, 1.3, -1.2}}) {
      auto f = [&](double z) { return h.h1(0, t, x, z) * h.h1(0, s, z, y) * std::pow(2 * z * z, k); };
      const double lhs = gk(f, -30.0, 0.0) + gk(f, 0.0, 30.0);
      const double rhs = h.h1(0, t + s, x, y);
      semi = std::max(semi, std::abs(lhs - rhs) / rhs);
    }
  }
  double red = 0.0;
  const HeatKernel flat({0.0, 0.0});
  Stream st(505, 0);
  for (int n = 0; n < 2000; ++n) {
    const double t = st.log_uniform(0.01, 10);
    const Vec x = random_point(st, 2, 3.0);
    const Vec y = random_point(st, 2, 3.0);
    const double g = gaussian(t, x, y);
    red = std::max(red, std::abs(flat.eval(t, x, y) - g) / g);
  }
  return {mass <= 1e-6 && semi <= 1e-5 && red <= 1e-12,
          "mass error " + sci(mass) + " (tol 1e-6); semigroup error " + sci(semi) + " (tol 1e-5); Gaussian reduction " +
              sci(red) + " (tol 1e-12)"};
}

// Probe pairs mixing uniform, near-diagonal and near-reflected positions.
Vec partner(const Context& ctx, Stream& st, const Vec& x, double scale, double box) {
  const int n = ctx.dim();
  const int kind = st.index(3);
  if (kind == 0) return random_point(st, n, box);
  const Vec base = kind == 1 ? x : ctx.group().apply(1 + st.index(ctx.group().order() - 1), x);
  return base + scale * st.log_uniform(1e-2, 3.0) * random_unit(st, n);
}

Vec direction_from(const std::vector<double>& u, std::size_t at, int n) {
  if (n == 1) return make_vec({u[at] < 0.5 ? -1.0 : 1.0});
  const double phi = 2 * std::numbers::pi * u[at];
  return make_vec({std::cos(phi), std::sin(phi)});
}

std::string study_line(const char* name, const SupStudy& r) {
  return std::string(name) + " " + fmt("%.4g", r.full) + " (drift " + fmt("%.2f%%", 100 * r.drift()) + ")";
}

// u: [log s, x (n), d/s, direction of y, |move|/s, direction of move]; picks: i, j, base image.
Outcome c06_scale_kernels() {
  std::ostringstream os;
  bool ok = true;
  long evals = 0;
  for (auto kap : {std::vector<double>{1.0}, std::vector<double>{0.5, 1.0}}) {
    const Context ctx(RootSystemSpec::sign_product(kap));
    const int n = ctx.dim();
    const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
    struct Setup {
      double s;
      Vec x;
      Vec y;
      Vec move;
      int i;
      int j;
    };
    auto setup = [&](const std::vector<double>& u, const std::vector<int>& pk) {
      Setup p;
      p.s = 0.01 * std::pow(500.0, u[0]);
      p.x = Vec(n);
      for (int k = 0; k < n; ++k) p.x[k] = 8 * u[1 + k] - 4;
      p.y = ctx.group().apply(pk[2], p.x) + 6 * u[1 + n] * p.s * direction_from(u, 2 + n, n);
      p.move = (1 - 1e-9) * u[3 + n] * p.s * direction_from(u, 4 + n, n);
      p.i = pk[0];
      p.j = pk[1];
      return p;
    };
    const int dim = 5 + n;
    const std::vector<int> picks{n, n, ctx.group().order()};
    const SupStudy size = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          return theta(ctx, b, p.s, p.i, p.j, p.x, p.y).ratio;
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(606 + n)});
    const SupStudy regx = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          if (p.move.norm() == 0.0) return 0.0;
          return regularity_probe(ctx, b, p.i, p.j, p.x, p.x + p.move, p.y, ProbeMode::Scale, p.s, 0);
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(616 + n)});
    const SupStudy regy = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          if (p.move.norm() == 0.0) return 0.0;
          return regularity_probe(ctx, b, p.i, p.j, p.x, p.y + p.move, p.y, ProbeMode::Scale, p.s, 1);
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(626 + n)});
    for (const SupStudy* r : {&size, &regx, &regy}) {
      ok = ok && r->finite && r->drift() <= 0.05;
      evals += r->evaluations;
    }
    os << "N=" << n << ": " << study_line("size", size) << ", " << study_line("reg-x", regx) << ", "
       << study_line("reg-y", regy) << "; ";
  }
  os << "1e4 vs 2e4 random probes + local refinement (" << evals << " evaluations), drift tol 5%";
  return {ok, os.str()};
}

// u: [x (n), log distance to the base image, direction, |move|/(d/4), direction of move].
Outcome c07_integrated_kernels() {
  std::ostringstream os;
  bool ok = true;
  for (auto kap : {std::vector<double>{1.0}, std::vector<double>{0.5, 1.0}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Context ctx(RootSystemSpec::sign_product(kap));
    const int n = ctx.dim();
    const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
    struct Setup {
      Vec x;
      Vec y;
      Vec move;
      int i;
      int j;
      double d;
    };
    auto setup = [&](const std::vector<double>& u, const std::vector<int>& pk) {
      Setup p;
      p.x = Vec(n);
      for (int k = 0; k < n; ++k) p.x[k] = 8 * u[k] - 4;
      p.y = ctx.group().apply(pk[2], p.x) + std::pow(10.0, -3 + 4 * u[n]) * direction_from(u, n + 1, n);
      p.d = ctx.distance(p.x, p.y);
      p.move = (1 - 1e-9) * 0.25 * p.d * u[n + 2] * direction_from(u, n + 3, n);
      p.i = pk[0];
      p.j = pk[1];
      return p;
    };
    const int dim = 4 + n;
    const std::vector<int> picks{n, n, ctx.group().order()};
    const SupStudy size = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          if (p.d < 1e-3) return 0.0;
          return integrated_kernel(ctx, b, p.i, p.j, p.x, p.y).ratio;
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(707 + n)});
    const SupStudy regx = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          if (p.d < 1e-3 || p.move.norm() == 0.0) return 0.0;
          return regularity_probe(ctx, b, p.i, p.j, p.x, p.x + p.move, p.y, ProbeMode::Integrated, 0.0, 0);
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(717 + n)});
    const SupStudy regy = sup_study(
        [&](const auto& u, const auto& pk) {
          const Setup p = setup(u, pk);
          if (p.d < 1e-3 || p.move.norm() == 0.0) return 0.0;
          return regularity_probe(ctx, b, p.i, p.j, p.x, p.y + p.move, p.y, ProbeMode::Integrated, 0.0, 1);
        },
        dim, picks, {.seed = static_cast<std::uint64_t>(727 + n)});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double limit = n == 1 ? 300.0 : 1200.0;
    for (const SupStudy* r : {&size, &regx, &regy}) ok = ok && r->finite && r->drift() <= 0.05;
    ok = ok && secs < limit;
    os << "N=" << n << ": " << study_line("size", size) << ", " << study_line("reg-x", regx) << ", "
       << study_line("reg-y", regy) << ", " << fmt("%.0f s", secs) << " (limit " << fmt("%.0f s", limit) << "); ";
  }
  os << "1e4 vs 2e4 random probes + local refinement, drift tol 5%";
  return {ok, os.str()};
}

Outcome c08_homogeneity() {
  double worst = 0.0;
  bool zero = true;
  bool exact = true;
  for (auto kap : {std::vector<double>{1.0}, std::vector<double>{0.5, 1.0}}) {
    const Context ctx(RootSystemSpec::sign_product(kap));
    const int n = ctx.dim();
    const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
    const Symbol c = builtin_symbol("constant", {}, ctx.group());
    Stream st(808, n);
    for (double lambda : {2.0, -3.7}) {
      const Symbol lb = scaled_symbol(b, lambda);
      for (int k = 0; k < 200; ++k) {
        const Vec x = random_point(st, n, 3.0);
        const Vec y = random_point(st, n, 3.0);
        if (ctx.distance(x, y) < 1e-3) continue;
        const double s = st.log_uniform(0.05, 3.0);
        const int i = st.index(n);
        const int j = st.index(n);
        const double t1 = theta(ctx, b, s, i, j, x, y).value;
        const double t2 = theta(ctx, lb, s, i, j, x, y).value;
        const double amp = (std::abs(b.eval(x)) + std::abs(b.eval(y))) / std::abs(b.eval(x) - b.eval(y));
        if (t1 != 0.0) worst = std::max(worst, std::abs(t2 - lambda * t1) / (std::abs(lambda * t1) * amp));
        if (lambda == 2.0) exact = exact && t2 == 2.0 * t1;
        if (k % 10 == 0) {
          const double k1 = integrated_kernel(ctx, b, i, j, x, y).value;
          const double k2 = integrated_kernel(ctx, lb, i, j, x, y).value;
          if (k1 != 0.0) worst = std::max(worst, std::abs(k2 - lambda * k1) / (std::abs(lambda * k1) * amp));
          if (lambda == 2.0) exact = exact && k2 == 2.0 * k1;
          zero = zero && theta(ctx, c, s, i, j, x, y).value == 0.0 && integrated_kernel(ctx, c, i, j, x, y).value == 0.0;
        }
      }
      const Grid g = box_grid(ctx, 4.0, n == 1 ? 40 : 12);
      const GridOperator op = assemble(ctx, b, 0, n - 1, 1e-3, 1e3, g);
      const GridOperator op2 = assemble(ctx, lb, 0, n - 1, 1e-3, 1e3, g);
      for (int a = 0; a < g.size(); ++a) {
        const double ba = b.eval(g.nodes[a]);
        for (int q = 0; q < g.size(); ++q) {
          const double m = op.matrix(a, q);
          if (m == 0.0) continue;
          const double bq = b.eval(g.nodes[q]);
          const double amp = (std::abs(ba) + std::abs(bq)) / std::abs(ba - bq);
          worst = std::max(worst, std::abs(op2.matrix(a, q) - lambda * m) / (std::abs(lambda * m) * amp));
        }
      }
      if (lambda == 2.0) exact = exact && op2.matrix == 2.0 * op.matrix;
      zero = zero && assemble(ctx, c, 0, n - 1, 1e-3, 1e3, g).matrix.cwiseAbs().maxCoeff() == 0.0;
    }
  }
  // Deviation is measured against the rounding size of lambda*b(x) - lambda*b(y), i.e. the
  // unreduced products |lambda| (|b(x)| + |b(y)|) times the kernel factor.
  return {worst <= 1e-14 && zero && exact,
          "max deviation from linearity relative to rounding size (theta, K, GridOperator) = " + sci(worst) +
              " (tol 1e-14); lambda=2 bitwise: " + (exact ? "yes" : "no") +
              "; constant symbol gives exact zeros: " + (zero ? "yes" : "no")};
}

Outcome c09_wall_layer() {
  const Context z2(RootSystemSpec::sign_product({1.0}));
  const std::vector<double> lambdas{1e-3, 1e-2, 0.05, 0.2, 0.5};
  const auto rep = wall_layer_measure_check(z2, {make_vec({0.0}), 1.0, "wall-centered"}, lambdas);
  double closed = 0.0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    closed = std::max(closed, std::abs(rep.ratios[k] - std::pow(lambdas[k], 3.0)) / std::pow(lambdas[k], 3.0));
  }
  bool ok = std::abs(rep.slope - 3.0) <= 0.02 && closed <= 1e-8;
  std::ostringstream os;
  os << "slope " << fmt("%.5f", rep.slope) << " (3.00 +- 0.02), closed-form error " << sci(closed) << "; Carleson:";
  for (auto kap : {std::vector<double>{1.0}, std::vector<double>{0.5, 1.0}}) {
    const Context ctx(RootSystemSpec::sign_product(kap));
    double sup = 0.0;
    double drift = 0.0;
    HarnessSettings s;
    s.s_per_decade = 32;
    s.spatial_nodes = 24;
    for (const Ball& ball : standard_balls(ctx.atlas())) {
      const double v = wall_layer_carleson(ctx, ball, s);
      const double w = wall_layer_carleson(ctx, ball, s.refined());
      ok = ok && std::isfinite(v) && std::isfinite(w);
      sup = std::max(sup, w);
      drift = std::max(drift, std::abs(v - w) / w);
    }
    ok = ok && drift <= 0.05;
    os << " N=" << ctx.dim() << " sup " << fmt("%.4g", sup) << " drift " << fmt("%.2f%%", 100 * drift);
  }
  return {ok, os.str() + " (tol 5%)"};
}

Outcome c10_square_function() {
  SquareFunctionSettings cfg;
  double worst = 0.0;
  double high = 1.0;
  int trials = 0;
  Stream st(1010, 0);
  for (double k : {0.0, 1.0, 2.3}) {
    const Context ctx(RootSystemSpec::sign_product({k}));
    const TensorGrid g = tensor_grid(ctx, 8.0, 400);
    std::vector<double> f(g.size());
    for (int n = 0; n < 8; ++n) {
      const double c = st.uniform(-3, 3);
      const double w = st.log_uniform(0.3, 1.5);
      const double freq = n < 4 ? st.uniform(0.0, 2.0) : st.uniform(4.0, 8.0);
      for (int a = 0; a < g.size(); ++a) {
        const double x = g.point(a)[0];
        f[a] = std::exp(-(x - c) * (x - c) / (w * w)) * std::cos(freq * x);
      }
      const double r = vertical_square_function(ctx, g, f, 0, cfg);
      worst = std::max(worst, r);
      if (freq >= 4.0) high = std::min(high, r / 0.25);
      ++trials;
    }
  }
  const Context ctx2(RootSystemSpec::sign_product({0.5, 1.0}));
  const TensorGrid g2 = tensor_grid(ctx2, 6.0, 60, 0.3);
  std::vector<double> f2(g2.size());
  for (int n = 0; n < 3; ++n) {
    const Vec c = random_point(st, 2, 2.0);
    const Vec xi = st.uniform(0.5, 3.0) * random_unit(st, 2);
    for (int a = 0; a < g2.size(); ++a) {
      const Vec x = g2.point(a);
      f2[a] = std::exp(-(x - c).squaredNorm()) * std::cos(xi.dot(x));
    }
    const double r = vertical_square_function(ctx2, g2, f2, 0, cfg) + vertical_square_function(ctx2, g2, f2, 1, cfg);
    worst = std::max(worst, r);
    ++trials;
  }
  return {worst <= 0.2625 && high >= 0.9, "max ratio " + fmt("%.5f", worst) + " (tol 0.2625) over " +
                                              std::to_string(trials) + " trials; high-frequency ratio/0.25 >= " +
                                              fmt("%.4f", high) + " (tol 0.90)"};
}

Outcome c11_component_testing() {
  const Context ctx(RootSystemSpec::sign_product({1.0}));
  const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
  const auto balls = standard_balls(ctx.atlas());
  HarnessSettings s;
  s.s_per_decade = 32;
  s.spatial_nodes = 24;
  s.inner_nodes = 48;
  bool ok = true;
  std::ostringstream os;
  for (int tau = 0; tau < ctx.atlas().order(); ++tau) {
    const auto rep = component_testing(ctx, b, tau, balls, 0, 0, s);
    const auto fine = component_testing(ctx, b, tau, balls, 0, 0, s.refined());
    const double drift = std::abs(rep.sup - fine.sup) / fine.sup;
    ok = ok && std::isfinite(fine.sup) && drift <= 0.05;
    os << "tau=" << tau << " sup " << fmt("%.6g", fine.sup) << " drift " << fmt("%.3g%%", 100 * drift) << "; ";
  }
  // Adjoint: integrate theta_s(y, x) over chamber tau directly (adaptive Gauss-Kronrod in
  // the chamber coordinate) and compare with -Theta_{s,b} chi_tau(x); b is real.
  const double k = ctx.spec().coordinate_kappa()[0];
  double adj = 0.0;
  HarnessSettings fine_inner = s;
  fine_inner.inner_nodes = 256;
  Stream st(1111, 0);
  for (int n = 0; n < 60; ++n) {
    const Vec x = random_point(st, 1, 4.0);
    const double sc = st.log_uniform(0.02, 3.0);
    const int tau = n % 2;
    const Vec dir = ctx.group().apply(tau, ctx.atlas().chamber_of(make_vec({1.0})).rep);
    auto integrand = [&](double u) {
      const Vec y = make_vec({u * dir[0]});
      const double th = sc * (b(y) - b(x)) * ctx.heat().Aij(sc * sc, y, x, 0, 0);
      return th * std::pow(2.0, k) * std::pow(u, 2 * k);
    };
    auto magnitude = [&](double u) { return std::abs(integrand(u)); };
    const double cut = std::abs(x[0]);
    const double top = cut + 20 * sc;
    // Panels of width ~s on each side of the chamber coordinate |x|.
    double lhs = 0.0;
    double mass = 0.0;
    for (auto [lo, hi] : {std::pair{0.0, cut}, std::pair{cut, top}}) {
      const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / sc)));
      for (int q = 0; q < panels; ++q) {
        const double a = lo + (hi - lo) * q / panels;
        const double c = lo + (hi - lo) * (q + 1) / panels;
        lhs += gk(integrand, a, c, 1e-12, 10);
        mass += gk(magnitude, a, c, 1e-8, 10);
      }
    }
    const double rhs = -theta_indicator(ctx, b, sc, 0, 0, tau, x, fine_inner);
    const double via_flag = theta_indicator(ctx, b, sc, 0, 0, tau, x, fine_inner, true);
    const double size = std::max(std::abs(lhs), mass);
    adj = std::max({adj, std::abs(lhs - rhs) / size, std::abs(lhs - via_flag) / size});
  }
  ok = ok && adj <= 1e-6;
  os << "adjoint identity error " << sci(adj) << " (tol 1e-6); drift tol 5%";
  return {ok, os.str()};
}

Outcome c12_pairing() {
  bool ok = true;
  std::ostringstream os;
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  const std::vector<double> R{1e1, 1e2, 1e3, 1e4};
  for (auto kap : {std::vector<double>{1.0}, std::vector<double>{0.5, 0.5}}) {
    const Context ctx(RootSystemSpec::sign_product(kap));
    const int n = ctx.dim();
    const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
    const Grid g = box_grid(ctx, 5.0, n == 1 ? 64 : 48);
    Stream st(1212, n);
    double worst = 0.0;
    int pairs = 0;
    int monotone = 0;
    while (pairs < 12) {
      const Bump f{random_point(st, n, 3.5), st.uniform(0.5, 1.0)};
      const Bump h{random_point(st, n, 3.5), st.uniform(0.5, 1.0)};
      if (ctx.distance(f.center, h.center) - f.radius - h.radius < 0.3) continue;
      const int i = pairs % n;
      const int j = (pairs / 2) % n;
      const PairingReport rep = pairing_convergence(ctx, b, i, j, f, h, g, eps, R, 0.3);
      worst = std::max(worst, rep.relative_final);
      monotone += rep.monotone ? 1 : 0;
      ok = ok && rep.monotone && rep.relative_final <= 1e-4;
      ++pairs;
    }
    os << "N=" << n << ": " << monotone << "/" << pairs << " monotone, worst final gap " << sci(worst) << "; ";
  }
  return {ok, os.str() + "tol 1e-4 relative"};
}

Outcome c13_ladder() {
  const Context ctx(RootSystemSpec::sign_product({1.0}));
  const Symbol b = builtin_symbol("smooth_invariant", {}, ctx.group());
  const Grid g = box_grid(ctx, 5.0, 64);
  const OperatorLadder ladder(ctx, b, 0, 0, g, default_ladder_eps(), default_ladder_R());
  const TrialSet trials = make_trials(ctx.atlas(), g, 13);
  double norm[4][4];
  double lp[2][4][4];
  double top = 0.0;
  for (int e = 0; e < 4; ++e) {
    for (int r = 0; r < 4; ++r) {
      const GridOperator op = ladder.rung(e, r);
      norm[e][r] = l2_norm(op) / op.lip;
      top = std::max(top, norm[e][r]);
      lp[0][e][r] = lp_ratio(op, 1.5, trials).normalized;
      lp[1][e][r] = lp_ratio(op, 3.0, trials).normalized;
    }
  }
  std::vector<double> gaps;
  for (int k = 0; k + 1 < 4; ++k) gaps.push_back(std::abs(norm[k + 1][k + 1] - norm[k][k]));
  const bool flat = std::isfinite(top) && gaps.back() <= 0.2 * gaps.front();
  // Uniform-bound estimate: sup over the sub-ladder eps >= eps_k, R <= R_k.
  bool stable = true;
  std::ostringstream os;
  os << "sup l2/|b| " << fmt("%.4f", top) << ", diagonal gaps " << sci(gaps[0]) << " " << sci(gaps[1]) << " "
     << sci(gaps[2]) << " (last <= 20% of first); ";
  for (int q = 0; q < 2; ++q) {
    double sub = 0.0;
    double all = 0.0;
    double lo = INFINITY;
    for (int e = 0; e < 4; ++e) {
      for (int r = 0; r < 4; ++r) {
        all = std::max(all, lp[q][e][r]);
        lo = std::min(lo, lp[q][e][r]);
        if (e < 3 && r < 3) sub = std::max(sub, lp[q][e][r]);
      }
    }
    const double change = (all - sub) / all;
    stable = stable && std::isfinite(all) && change <= 0.10;
    os << "p=" << (q == 0 ? "1.5" : "3") << " sup " << fmt("%.4f", all) << " (3x3 sub-ladder " << fmt("%.4f", sub)
       << ", change " << fmt("%.2f%%", 100 * change) << ", per-rung range " << fmt("%.3f", lo) << ".."
       << fmt("%.3f", all) << "); ";
  }
  os << "tol 10%";
  return {flat && stable, os.str()};
}

Outcome c14_negative_control() {
  std::ostringstream os;
  const Context ctx(RootSystemSpec::sign_product({1.0}));
  const Symbol x1 = builtin_symbol("coordinate_noninvariant", {}, ctx.group());
  const Symbol inv = builtin_symbol("smooth_invariant", {}, ctx.group());
  const bool flag = lipd_seminorm(x1, ctx.group()).infinite && !lipd_seminorm(inv, ctx.group()).infinite;
  os << "infinity flag " << (flag ? "raised" : "missing") << "; ";

  // K-ratio near the reflected diagonal y -> -x versus the invariant-symbol constant.
  Stream st(1414, 0);
  double inv_const = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const Vec x = random_point(st, 1, 4.0);
    const Vec y = partner(ctx, st, x, 0.5, 4.0);
    if (ctx.distance(x, y) < 1e-3) continue;
    inv_const = std::max(inv_const, integrated_kernel(ctx, inv, 0, 0, x, y).ratio);
  }
  double near = 0.0;
  for (double x : {0.5, 1.0, 2.0, 3.5}) {
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
      near = std::max(near, integrated_kernel(ctx, x1, 0, 0, make_vec({x}), make_vec({-x + d})).ratio);
    }
  }
  const Context ctx2(RootSystemSpec::sign_product({1.0, 1.0}));
  const Symbol x1b = builtin_symbol("coordinate_noninvariant", {}, ctx2.group());
  for (double d : {1e-1, 1e-2, 1e-3}) {
    const Vec x = make_vec({1.0, 0.7});
    const Vec y = make_vec({-1.0 + 0.6 * d, 0.7 + 0.8 * d});
    near = std::max(near, integrated_kernel(ctx2, x1b, 0, 1, x, y).ratio);
  }
  const bool blowup = near >= 10.0 * inv_const;
  os << "non-invariant K-ratio near reflected diagonals " << fmt("%.4g", near) << " vs invariant constant "
     << fmt("%.4g", inv_const) << " (need >= 10x: " << (blowup ? "yes" : "no") << "); ";

  // Grid refinement at fixed truncation, offset grids so that y = -x is never a node pair.
  double drift_x1 = 0.0;
  double drift_inv = 0.0;
  {
    double first_x1 = 0.0;
    double first_inv = 0.0;
    for (int n : {64, 128, 256}) {
      const Grid g = box_grid(ctx, 5.0, n, 1e-3, 0.25);
      const double a = l2_norm(assemble(ctx, x1, 0, 0, 1e-4, 1e4, g)) / x1.euclidean_lip;
      const GridOperator opi = assemble(ctx, inv, 0, 0, 1e-4, 1e4, g);
      const double c = l2_norm(opi) / opi.lip;
      if (n == 64) {
        first_x1 = a;
        first_inv = c;
      }
      drift_x1 = a / first_x1;
      drift_inv = std::abs(c - first_inv) / first_inv;
    }
  }
  // Same in 2D for the mixed component, 12^2 -> 48^2 nodes.
  double drift2_x1 = 0.0;
  double drift2_inv = 0.0;
  {
    const Symbol inv2 = builtin_symbol("smooth_invariant", {}, ctx2.group());
    double first_x1 = 0.0;
    double first_inv = 0.0;
    for (int n : {12, 24, 48}) {
      const Grid g = box_grid(ctx2, 5.0, n, 1e-3, 0.25);
      const double a = l2_norm(assemble(ctx2, x1b, 0, 1, 1e-4, 1e4, g)) / x1b.euclidean_lip;
      const GridOperator opi = assemble(ctx2, inv2, 0, 1, 1e-4, 1e4, g);
      const double c = l2_norm(opi) / opi.lip;
      if (n == 12) {
        first_x1 = a;
        first_inv = c;
      }
      drift2_x1 = a / first_x1;
      drift2_inv = c / first_inv;
    }
  }
  const bool grows = std::max(drift_x1, drift2_x1) >= 3.0 && drift_inv <= 0.10;
  os << "l2 growth 64->256 nodes (N=1): x_1 " << fmt("%.3fx", drift_x1) << ", invariant change "
     << fmt("%.2f%%", 100 * drift_inv) << " (tol 10%); 12^2->48^2 (N=2, mixed): x_1 " << fmt("%.3fx", drift2_x1)
     << ", invariant " << fmt("%.3fx", drift2_inv) << "; need >= 3x";
  return {flag && blowup && grows, os.str()};
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "chamber representative identity", c01_chamber_identity},
    {2, "lifting isometry", c02_lifting_isometry},
    {3, "first-derivative identity", c03_first_derivative},
    {4, "second-derivative structure formula", c04_second_derivative},
    {5, "heat semigroup sanity", c05_semigroup},
    {6, "scale-kernel bounds", c06_scale_kernels},
    {7, "integrated-kernel CZ bounds", c07_integrated_kernels},
    {8, "homogeneity gates", c08_homogeneity},
    {9, "wall-layer slope", c09_wall_layer},
    {10, "vertical square function", c10_square_function},
    {11, "component Carleson testing", c11_component_testing},
    {12, "associated kernel on separated supports", c12_pairing},
    {13, "uniform truncation bound", c13_ladder},
    {14, "negative control", c14_negative_control},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int k = 1; k < argc; ++k) wanted.push_back(std::atoi(argv[k]));
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("C%02d %s  %s | %s [%.1f s]\n", c.id, out.pass ? "PASS" : "FAIL", c.title, out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
