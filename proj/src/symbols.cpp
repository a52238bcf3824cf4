#include "dunkl/symbols.hpp"

#include "dunkl/quadrature.hpp"
#include "dunkl/rng.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace dunkl {
namespace {

std::vector<Vec> sign_patterns(const Vec& v) {
  const int n = static_cast<int>(v.size());
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec u = v;
    for (int k = 0; k < n; ++k) {
      if (mask & (1 << k)) u[k] = -u[k];
    }
    out.push_back(u);
  }
  return out;
}

std::vector<Vec> shell_directions(const RootSystemSpec& spec) {
  const int n = spec.dim;
  std::vector<Vec> dirs;
  if (n == 1) return {make_vec({1.0}), make_vec({-1.0})};
  if (n == 2) {
    int count = 16;
    if (spec.type == GroupType::Dihedral) count = ((16 + spec.m - 1) / spec.m) * spec.m;
    for (int j = 0; j < count; ++j) {
      const double phi = (2.0 * j + 1.0) * std::numbers::pi / count;
      dirs.push_back(make_vec({std::cos(phi), std::sin(phi)}));
    }
    return dirs;
  }
  if (n == 3) {
    for (const Vec& u : sign_patterns(make_vec({1.0, 1.0, 1.0}) / std::sqrt(3.0))) dirs.push_back(u);
    for (const Vec& u : sign_patterns(make_vec({1.0, 2.0, 3.0}) / std::sqrt(14.0))) dirs.push_back(u);
    return dirs;
  }
  return sign_patterns(make_vec({0.5, 0.5, 0.5, 0.5}));
}

}  // namespace

Symbol builtin_symbol(const std::string& name, const SymbolParams& params, const ReflectionGroup& group) {
  const int n = group.dim;
  Symbol b;
  b.id = name;
  if (name == "smooth_invariant") {
    std::vector<double> c = params.c.empty() ? std::vector<double>(n, 1.0) : params.c;
    if (static_cast<int>(c.size()) != n) throw UnknownSymbol("smooth_invariant needs one coefficient per axis");
    double lip = 0.0;
    for (double ci : c) lip += std::abs(ci);
    b.eval = [c](const Vec& x) {
      double v = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * std::sqrt(1.0 + x[i] * x[i]);
      return v;
    };
    b.gradient = [c](const Vec& x) {
      Vec g(x.size());
      for (std::size_t i = 0; i < c.size(); ++i) g[i] = c[i] * x[i] / std::sqrt(1.0 + x[i] * x[i]);
      return g;
    };
    // Invariant under coordinate sign changes only.
    b.invariant = group.full_sign_group || group.order() == 1;
    if (b.invariant) b.declared_lipd = lip;
    b.euclidean_lip = lip;
    return b;
  }
  if (name == "orbit_dist") {
    const Vec x0 = params.x0.size() == n ? params.x0 : Vec(Vec::Zero(n));
    auto g = std::make_shared<const ReflectionGroup>(group);
    b.eval = [g, x0](const Vec& x) { return orbit_distance(*g, x, x0); };
    b.declared_lipd = 1.0;
    b.euclidean_lip = 1.0;
    return b;
  }
  if (name == "coordinate_noninvariant") {
    b.eval = [](const Vec& x) { return x[0]; };
    b.gradient = [n](const Vec&) { return unit_vec(n, 0); };
    b.invariant = group.order() == 1;
    if (b.invariant) b.declared_lipd = 1.0;
    b.euclidean_lip = 1.0;
    return b;
  }
  if (name == "constant") {
    const double c = params.constant;
    b.eval = [c](const Vec&) { return c; };
    b.gradient = [n](const Vec&) { return Vec(Vec::Zero(n)); };
    b.declared_lipd = 0.0;
    b.euclidean_lip = 0.0;
    return b;
  }
  throw UnknownSymbol("unknown symbol '" + name + "'");
}

Symbol scaled_symbol(const Symbol& b, double lambda) {
  Symbol s = b;
  s.id = b.id + "*" + std::to_string(lambda);
  auto base = std::make_shared<Symbol>(b);
  s.eval = [base, lambda](const Vec& x) { return lambda * base->eval(x); };
  if (b.gradient) s.gradient = [base, lambda](const Vec& x) { return Vec(lambda * base->gradient(x)); };
  if (b.declared_lipd) s.declared_lipd = std::abs(lambda) * *b.declared_lipd;
  s.euclidean_lip = std::abs(lambda) * b.euclidean_lip;
  return s;
}

SeminormEstimate lipd_seminorm(const Symbol& b, const ReflectionGroup& group, const SeminormSettings& settings) {
  const int n = group.dim;
  Stream stream(settings.seed, 0x5eed);
  SeminormEstimate out;
  Vec x(n);
  Vec y(n);
  for (int k = 0; k < settings.pairs; ++k) {
    for (int a = 0; a < n; ++a) x[a] = stream.uniform(-settings.box, settings.box);
    const int rho = stream.index(group.order());
    const Vec sx = group.apply(rho, x);
    // Same-orbit scan.
    const double diff0 = std::abs(b(x) - b(sx));
    out.max_violation = std::max(out.max_violation, diff0);
    if (diff0 > 1e-8) out.infinite = true;
    if (k % 2 == 0) {
      for (int a = 0; a < n; ++a) y[a] = stream.uniform(-settings.box, settings.box);
    } else {
      const double scale = settings.near_noise * stream.log_uniform(1e-3, 1.0);
      for (int a = 0; a < n; ++a) y[a] = sx[a] + scale * stream.uniform(-1.0, 1.0);
    }
    const double d = orbit_distance(group, x, y);
    if (d <= 1e-8) continue;
    out.value = std::max(out.value, std::abs(b(x) - b(y)) / d);
  }
  if (out.infinite) out.value = INFINITY;
  return out;
}

MollifierRule mollifier_rule(const RootSystemSpec& spec) {
  const int n = spec.dim;
  const auto dirs = shell_directions(spec);
  const auto& gl = quad::gauss_legendre(8);
  MollifierRule rule;
  std::vector<double> radial;
  double total = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double r = 0.5 * (gl.nodes[k] + 1.0);
    const double w = 0.5 * gl.weights[k] * std::pow(r, n - 1) * std::exp(-1.0 / (1.0 - r * r));
    for (const Vec& u : dirs) {
      rule.offsets.push_back(r * u);
      rule.weights.push_back(w);
      total += w;
    }
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

Symbol mollify(const Symbol& b, double eps, const RootSystemSpec& spec) {
  if (!(eps > 0.0)) throw DomainError("mollification scale must be positive");
  auto rule = std::make_shared<const MollifierRule>(mollifier_rule(spec));
  auto base = std::make_shared<Symbol>(b);
  Symbol out = b;
  out.id = b.id + "~" + std::to_string(eps);
  out.eval = [rule, base, eps](const Vec& x) {
    double v = 0.0;
    for (std::size_t k = 0; k < rule->offsets.size(); ++k) v += rule->weights[k] * base->eval(x + eps * rule->offsets[k]);
    return v;
  };
  if (b.gradient) {
    out.gradient = [rule, base, eps](const Vec& x) {
      Vec g = Vec::Zero(x.size());
      for (std::size_t k = 0; k < rule->offsets.size(); ++k) g += rule->weights[k] * base->gradient(x + eps * rule->offsets[k]);
      return g;
    };
  } else {
    out.gradient = nullptr;
  }
  return out;
}

}  // namespace dunkl
