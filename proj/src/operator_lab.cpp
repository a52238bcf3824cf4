#include "dunkl/operator_lab.hpp"

#include "dunkl/linalg.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace dunkl {
namespace {

bool close_edge(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

void check_size(const Grid& grid) {
  if (grid.size() > kMaxGridNodes) {
    throw GridTooLarge("grid has " + std::to_string(grid.size()) + " nodes, limit " + std::to_string(kMaxGridNodes));
  }
  if (grid.size() == 0) throw DomainError("empty grid");
}

int edge_index(const std::vector<double>& edges, double v) {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (close_edge(edges[k], v)) return static_cast<int>(k);
  }
  throw DomainError("time edge not found in rule");
}

// Per-axis coordinate tables: every grid built from midpoint cells (or
// their reflections) has few distinct coordinates per axis, so the heat
// factors h1(t, u_p, u_q) are tabulated once per time node.
struct AxisIndex {
  std::vector<std::vector<double>> coords;  // per axis, sorted
  std::vector<std::array<int, kMaxDim>> of;  // per node
};

AxisIndex axis_index(const Grid& grid) {
  AxisIndex ax;
  ax.coords.resize(grid.dim);
  for (int k = 0; k < grid.dim; ++k) {
    auto& c = ax.coords[k];
    for (const Vec& x : grid.nodes) c.push_back(x[k]);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  ax.of.resize(grid.nodes.size());
  for (std::size_t a = 0; a < grid.nodes.size(); ++a) {
    for (int k = 0; k < grid.dim; ++k) {
      const auto& c = ax.coords[k];
      ax.of[a][k] = static_cast<int>(std::lower_bound(c.begin(), c.end(), grid.nodes[a][k]) - c.begin());
    }
  }
  return ax;
}

// I[s](a, c) = sum over time nodes in output slot s of w_t A_t^{ij}(x_a, x_c).
std::vector<RowMatrix> time_integrals(const Context& ctx, int i, int j, const Grid& grid, const TimeRule& rule,
                                      const std::vector<int>& slot_of_segment, int slots) {
  const HeatKernel& heat = ctx.heat();
  const int n = grid.size();
  const int dim = grid.dim;
  if (i < 0 || j < 0 || i >= dim || j >= dim) throw DomainError("derivative index out of range");
  const AxisIndex ax = axis_index(grid);
  const bool diag = i == j;
  const double kappa_i = heat.kappa()[i];

  std::vector<RowMatrix> out(slots, RowMatrix::Zero(n, n));
  std::vector<std::vector<double>> F(dim);
  std::vector<double> G;
  RowMatrix P(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      const Vec& x = grid.nodes[a];
      const Vec& y = grid.nodes[c];
      P(a, c) = (y[i] - x[i]) * (y[j] - x[j]);
    }
  }

  auto table = [&](int k, double t, double sign, std::vector<double>& T) {
    const auto& u = ax.coords[k];
    const int m = static_cast<int>(u.size());
    T.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int p = 0; p < m; ++p) {
      for (int q = p; q < m; ++q) {
        // h1(t, s u_p, u_q) is symmetric in (p, q) for both signs.
        const double v = heat.h1(k, t, sign * u[p], u[q]);
        T[p * m + q] = v;
        T[q * m + p] = v;
      }
    }
  };

  for (std::size_t node = 0; node < rule.t.size(); ++node) {
    const int slot = slot_of_segment[rule.segment[node]];
    if (slot < 0) continue;
    const double t = rule.t[node];
    const double w = rule.w[node];
    for (int k = 0; k < dim; ++k) table(k, t, 1.0, F[k]);
    const bool reflected = diag && kappa_i != 0.0;
    if (reflected) table(i, t, -1.0, G);
    const double alpha = w / (4.0 * t * t);
    const double beta = w / (2.0 * t);
    const double gamma = w * kappa_i / t;
    RowMatrix& acc = out[slot];
    for (int a = 0; a < n; ++a) {
      const auto& ia = ax.of[a];
      double* row = acc.data() + static_cast<std::size_t>(a) * n;
      const double* prow = P.data() + static_cast<std::size_t>(a) * n;
      for (int c = 0; c < n; ++c) {
        const auto& ic = ax.of[c];
        double f = 1.0;
        double rest = 1.0;  // product over k != i
        for (int k = 0; k < dim; ++k) {
          const int m = static_cast<int>(ax.coords[k].size());
          const double v = F[k][ia[k] * m + ic[k]];
          f *= v;
          if (k != i) rest *= v;
        }
        double value = alpha * prow[c] * f;
        if (diag) {
          value -= beta * f;
          if (reflected) {
            const int m = static_cast<int>(ax.coords[i].size());
            value -= gamma * G[ia[i] * m + ic[i]] * rest;
          }
        }
        row[c] += value;
      }
    }
  }
  for (const RowMatrix& m : out) {
    if (!m.allFinite()) throw QuadratureFailure("non-finite truncated time integral");
  }
  return out;
}

void fill_operator(GridOperator& op, const RowMatrix& integrals, const std::vector<double>& bv) {
  const int n = op.grid.size();
  op.matrix = RowMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      if (a == c) continue;
      const double db = bv[a] - bv[c];
      if (db == 0.0) continue;
      op.matrix(a, c) = op.grid.weights[c] * db * integrals(a, c);
    }
  }
}

std::vector<double> symbol_values(const Symbol& b, const Grid& grid) {
  std::vector<double> v(grid.nodes.size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = b(grid.nodes[a]);
  return v;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double weighted_norm(const std::vector<double>& w, const std::vector<double>& v, double p) {
  return std::pow(linalg::weighted_pow_sum(w.data(), v.data(), v.size(), p), 1.0 / p);
}

}  // namespace

TimeRule time_rule(double eps, double R, const std::vector<double>& extra_edges, const TimeRuleSettings& settings) {
  if (!(eps > 0.0) || !(R > eps)) throw DomainError("time window needs 0 < eps < R");
  TimeRule rule;
  std::vector<double> edges{eps, R};
  for (double e : extra_edges) {
    if (e > eps && e < R) edges.push_back(e);
  }
  for (int k = static_cast<int>(std::floor(std::log10(eps))); k <= static_cast<int>(std::ceil(std::log10(R))); ++k) {
    const double d = std::pow(10.0, k);
    if (d > eps && d < R) edges.push_back(d);
  }
  std::sort(edges.begin(), edges.end());
  for (double e : edges) {
    if (rule.edges.empty() || !close_edge(rule.edges.back(), e)) rule.edges.push_back(e);
  }
  const double decade = std::numbers::ln10;
  for (std::size_t s = 0; s + 1 < rule.edges.size(); ++s) {
    const double lo = std::log(rule.edges[s]);
    const double hi = std::log(rule.edges[s + 1]);
    const int panels = std::max(1, static_cast<int>(std::ceil(settings.panels_per_decade * (hi - lo) / decade - 1e-9)));
    for (const auto& node : quad::composite_nodes(lo, hi, {}, panels, settings.order)) {
      const double t = std::exp(node.x);
      rule.t.push_back(t);
      rule.w.push_back(node.w * std::sqrt(t));
      rule.segment.push_back(static_cast<int>(s));
    }
  }
  return rule;
}

std::vector<double> GridOperator::apply(const std::vector<double>& f) const {
  if (static_cast<int>(f.size()) != size()) throw DomainError("function size does not match the grid");
  std::vector<double> out(f.size());
  linalg::matvec(matrix.data(), f.size(), f.size(), f.data(), out.data());
  return out;
}

GridOperator assemble(const Context& ctx, const Symbol& b, int i, int j, double eps, double R, const Grid& grid,
                      const TimeRuleSettings& settings) {
  check_size(grid);
  const TimeRule rule = time_rule(eps, R, {}, settings);
  const std::vector<int> slots(rule.edges.size() - 1, 0);
  const auto integrals = time_integrals(ctx, i, j, grid, rule, slots, 1);
  GridOperator op;
  op.grid = grid;
  op.eps = eps;
  op.R = R;
  op.i = i;
  op.j = j;
  op.symbol = b.id;
  op.lip = b.norm();
  fill_operator(op, integrals[0], symbol_values(b, grid));
  return op;
}

OperatorLadder::OperatorLadder(const Context& ctx, const Symbol& b, int i, int j, const Grid& grid,
                               std::vector<double> eps, std::vector<double> R, const TimeRuleSettings& settings)
    : grid_(grid), eps_(std::move(eps)), R_(std::move(R)), i_(i), j_(j), symbol_(b.id), lip_(b.norm()) {
  check_size(grid_);
  if (eps_.empty() || R_.empty()) throw DomainError("ladder needs at least one eps and one R");
  const double lo = *std::min_element(eps_.begin(), eps_.end());
  const double hi = *std::max_element(R_.begin(), R_.end());
  if (*std::max_element(eps_.begin(), eps_.end()) >= *std::min_element(R_.begin(), R_.end())) {
    throw DomainError("every ladder eps must lie below every R");
  }
  std::vector<double> extra(eps_);
  extra.insert(extra.end(), R_.begin(), R_.end());
  const TimeRule rule = time_rule(lo, hi, extra, settings);
  edges_ = rule.edges;
  const int nseg = static_cast<int>(edges_.size()) - 1;
  std::vector<int> slots(nseg);
  for (int s = 0; s < nseg; ++s) slots[s] = s;
  segments_ = time_integrals(ctx, i, j, grid_, rule, slots, nseg);
  b_values_ = symbol_values(b, grid_);
}

GridOperator OperatorLadder::rung(int e, int r) const {
  const int lo = edge_index(edges_, eps_.at(e));
  const int hi = edge_index(edges_, R_.at(r));
  RowMatrix sum = segments_[lo];
  for (int s = lo + 1; s < hi; ++s) sum += segments_[s];
  GridOperator op;
  op.grid = grid_;
  op.eps = eps_[e];
  op.R = R_[r];
  op.i = i_;
  op.j = j_;
  op.symbol = symbol_;
  op.lip = lip_;
  fill_operator(op, sum, b_values_);
  return op;
}

std::vector<double> default_ladder_eps() { return {1e-1, 1e-2, 1e-3, 1e-4}; }
std::vector<double> default_ladder_R() { return {1e1, 1e2, 1e3, 1e4}; }

namespace {

RowMatrix symmetrized(const GridOperator& op) {
  const int n = op.size();
  RowMatrix B(n, n);
  for (int a = 0; a < n; ++a) {
    const double sa = std::sqrt(op.grid.weights[a]);
    for (int c = 0; c < n; ++c) B(a, c) = sa * op.matrix(a, c) / std::sqrt(op.grid.weights[c]);
  }
  return B;
}

}  // namespace

double l2_norm(const GridOperator& op, const NormSettings& settings) {
  const RowMatrix B = symmetrized(op);
  const std::size_t n = static_cast<std::size_t>(B.rows());
  if (B.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  Stream st(settings.seed, 0x6e6f726dULL);
  std::vector<double> v(n);
  std::vector<double> u(n);
  std::vector<double> z(n);
  for (double& x : v) x = st.normal();
  double nv = std::sqrt(linalg::dot(v.data(), v.data(), n));
  for (double& x : v) x /= nv;
  double sigma = -1.0;
  for (int it = 0; it < settings.max_iterations; ++it) {
    linalg::matvec(B.data(), n, n, v.data(), u.data());
    linalg::matvec_transpose(B.data(), n, n, u.data(), z.data());
    const double next = std::sqrt(linalg::dot(u.data(), u.data(), n));
    const double nz = std::sqrt(linalg::dot(z.data(), z.data(), n));
    if (nz == 0.0) return next;
    for (std::size_t k = 0; k < n; ++k) v[k] = z[k] / nz;
    if (std::abs(next - sigma) <= settings.tol * next) return next;
    sigma = next;
  }
  throw NoConvergence("power iteration did not reach tolerance in " + std::to_string(settings.max_iterations) +
                      " iterations");
}

double skew_defect(const GridOperator& op) {
  const RowMatrix B = symmetrized(op);
  const double scale = B.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (B + B.transpose()).cwiseAbs().maxCoeff() / scale;
}

TrialSet make_trials(const ChamberAtlas& atlas, const Grid& grid, std::uint64_t seed, int count) {
  TrialSet set;
  Stream st(seed, 0x747269616cULL);
  const int dim = grid.dim;
  const double reach = 0.8 * grid.L;
  for (int k = 0; k < count; ++k) {
    std::vector<double> f(grid.nodes.size());
    const int kind = k % 3;
    if (kind < 2) {
      Vec c(dim);
      for (int m = 0; m < dim; ++m) c[m] = st.uniform(-reach, reach);
      const double width = kind == 0 ? st.log_uniform(0.1, 2.0) : st.log_uniform(0.3, 3.0);
      Vec xi = Vec::Zero(dim);
      double phase = 0.0;
      if (kind == 1) {
        for (int m = 0; m < dim; ++m) xi[m] = st.normal();
        xi *= st.uniform(0.5, 8.0) / xi.norm();
        phase = st.uniform(0.0, 2.0 * std::numbers::pi);
      }
      const double amp = st.uniform() < 0.5 ? -1.0 : 1.0;
      for (std::size_t a = 0; a < f.size(); ++a) {
        const Vec& x = grid.nodes[a];
        const double g = std::exp(-(x - c).squaredNorm() / (2.0 * width * width));
        f[a] = amp * g * (kind == 1 ? std::cos(xi.dot(x) + phase) : 1.0);
      }
      set.kinds.push_back(kind == 0 ? "gaussian" : "modulated");
    } else {
      const int tau = st.index(atlas.order());
      for (std::size_t a = 0; a < f.size(); ++a) {
        double v = 1.0;
        for (const Vec& alpha : atlas.positive_roots(tau)) {
          v *= std_normal_cdf(alpha.dot(grid.nodes[a]) / (std::numbers::sqrt2 * 0.05));
        }
        f[a] = v;
      }
      set.kinds.push_back("chamber");
    }
    set.values.push_back(std::move(f));
  }
  return set;
}

LpReport lp_ratio(const GridOperator& op, double p, const TrialSet& trials) {
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("lp_ratio needs 1 < p < infinity");
  LpReport rep;
  rep.p = p;
  for (std::size_t k = 0; k < trials.values.size(); ++k) {
    const auto& f = trials.values[k];
    const double nf = weighted_norm(op.grid.weights, f, p);
    if (!(nf > 0.0)) continue;
    ++rep.trials;
    const double ratio = weighted_norm(op.grid.weights, op.apply(f), p) / nf;
    if (ratio > rep.sup || rep.argmax < 0) {
      rep.sup = ratio;
      rep.argmax = static_cast<int>(k);
    }
  }
  if (rep.sup == 0.0) {
    rep.normalized = 0.0;
  } else {
    rep.normalized = op.lip > 0.0 ? rep.sup / op.lip : INFINITY;
  }
  return rep;
}

PairingReport pairing_convergence(const Context& ctx, const Symbol& b, int i, int j, const Bump& f, const Bump& g,
                                  const Grid& grid, const std::vector<double>& eps, const std::vector<double>& R,
                                  double min_separation) {
  if (eps.empty() || eps.size() != R.size()) throw DomainError("pairing ladder needs matching eps and R lists");
  PairingReport rep;
  rep.eps = eps;
  rep.R = R;
  rep.separation = std::max(0.0, ctx.distance(f.center, g.center) - f.radius - g.radius);
  if (rep.separation < min_separation) {
    throw SupportsNotSeparated("bump supports are " + std::to_string(rep.separation) + " apart, need " +
                               std::to_string(min_separation));
  }
  std::vector<int> fs;
  std::vector<int> gs;
  for (int a = 0; a < grid.size(); ++a) {
    if (f(grid.nodes[a]) != 0.0) fs.push_back(a);
    if (g(grid.nodes[a]) != 0.0) gs.push_back(a);
  }
  std::vector<double> extra(eps);
  extra.insert(extra.end(), R.begin(), R.end());
  const TimeRule rule = time_rule(*std::min_element(eps.begin(), eps.end()), *std::max_element(R.begin(), R.end()),
                                  extra);
  const int nseg = static_cast<int>(rule.edges.size()) - 1;
  std::vector<std::pair<int, int>> span(eps.size());
  for (std::size_t k = 0; k < eps.size(); ++k) span[k] = {edge_index(rule.edges, eps[k]), edge_index(rule.edges, R[k])};

  const HeatKernel& heat = ctx.heat();
  rep.truncated.assign(eps.size(), 0.0);
  std::vector<double> seg(nseg);
  for (int a : gs) {
    const Vec& x = grid.nodes[a];
    const double ga = g(x) * grid.weights[a];
    for (int c : fs) {
      const Vec& y = grid.nodes[c];
      const double db = b(x) - b(y);
      if (db == 0.0) continue;
      const double weight = ga * f(y) * grid.weights[c];
      ++rep.support_pairs;
      rep.kernel += weight * integrated_kernel(ctx, b, i, j, x, y).value;
      std::fill(seg.begin(), seg.end(), 0.0);
      for (std::size_t n = 0; n < rule.t.size(); ++n) seg[rule.segment[n]] += rule.w[n] * heat.Aij(rule.t[n], x, y, i, j);
      for (std::size_t k = 0; k < eps.size(); ++k) {
        double s = 0.0;
        for (int m = span[k].first; m < span[k].second; ++m) s += seg[m];
        rep.truncated[k] += weight * db * s;
      }
    }
  }
  for (double v : rep.truncated) rep.gaps.push_back(std::abs(v - rep.kernel));
  for (std::size_t k = 2; k < rep.gaps.size(); ++k) {
    if (rep.gaps[k] > rep.gaps[k - 1]) rep.monotone = false;
  }
  rep.relative_final = rep.gaps.back() / (std::abs(rep.kernel) + 1e-12);
  return rep;
}

LiftedFunction LiftedOperator::apply(const LiftedFunction& F) const {
  const int n = base.size();
  if (F.values.rows() != n || F.order() != order) throw DomainError("lifted function does not match the operator");
  LiftedFunction out;
  out.base = base;
  out.values = Eigen::MatrixXd::Zero(n, order);
  for (int rho = 0; rho < order; ++rho) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    for (int tau = 0; tau < order; ++tau) col += block(rho, tau) * F.values.col(tau);
    out.values.col(rho) = col;
  }
  return out;
}

LiftedOperator lifted_operator(const GridOperator& op, const ChamberAtlas& atlas) {
  const int n = op.size();
  const int M = atlas.order();
  using Key = std::vector<long long>;
  auto key = [](const Vec& x) {
    Key k(x.size());
    for (int m = 0; m < x.size(); ++m) k[m] = std::llround(x[m] * 1e9);
    return k;
  };
  LiftedOperator out;
  out.order = M;
  out.base = op.grid;
  out.base.nodes.clear();
  out.base.weights.clear();
  std::map<Key, int> base_of;
  std::vector<ChamberIndex> where;
  where.reserve(n);
  for (int a = 0; a < n; ++a) where.push_back(atlas.chamber_of(op.grid.nodes[a]));
  for (int a = 0; a < n; ++a) {
    if (where[a].rho != 0) continue;
    base_of[key(where[a].rep)] = out.base.size();
    out.base.nodes.push_back(op.grid.nodes[a]);
    out.base.weights.push_back(op.grid.weights[a]);
  }
  out.index.assign(out.base.size(), std::vector<int>(M, -1));
  for (int a = 0; a < n; ++a) {
    const auto it = base_of.find(key(where[a].rep));
    if (it == base_of.end()) throw GridNotSymmetric("node without a chamber representative on the grid");
    int& slot = out.index[it->second][where[a].rho];
    if (slot >= 0) throw GridNotSymmetric("two nodes share an orbit position");
    slot = a;
  }
  for (const auto& row : out.index) {
    for (int v : row) {
      if (v < 0) throw GridNotSymmetric("grid is not closed under the group");
    }
  }
  const int nb = out.base.size();
  out.blocks.assign(static_cast<std::size_t>(M) * M, RowMatrix::Zero(nb, nb));
  for (int rho = 0; rho < M; ++rho) {
    for (int tau = 0; tau < M; ++tau) {
      RowMatrix& blk = out.blocks[rho * M + tau];
      for (int a = 0; a < nb; ++a) {
        for (int c = 0; c < nb; ++c) blk(a, c) = op.matrix(out.index[a][rho], out.index[c][tau]);
      }
    }
  }
  return out;
}

double lifted_truncated_entry(const Context& ctx, const Symbol& b, int i, int j, double eps, double R, int rho,
                              int tau, const Vec& x, const Vec& y, double weight_y, const TimeRuleSettings& settings) {
  const Vec xr = ctx.group().apply(rho, x);
  const Vec yr = ctx.group().apply(tau, y);
  if ((xr - yr).norm() == 0.0) return 0.0;
  const double db = b(xr) - b(yr);
  if (db == 0.0) return 0.0;
  const TimeRule rule = time_rule(eps, R, {}, settings);
  const HeatKernel& heat = ctx.heat();
  double sum = 0.0;
  for (std::size_t n = 0; n < rule.t.size(); ++n) sum += rule.w[n] * heat.Aij(rule.t[n], xr, yr, i, j);
  return weight_y * db * sum;
}

void save_operator(const GridOperator& op, const std::string& prefix) {
  nlohmann::json h;
  h["format"] = "dunkl-grid-operator";
  h["version"] = 1;
  h["eps"] = op.eps;
  h["R"] = op.R;
  h["i"] = op.i;
  h["j"] = op.j;
  h["symbol"] = op.symbol;
  h["lip"] = op.lip;
  h["grid"] = {{"dim", op.grid.dim},        {"L", op.grid.L},           {"per_axis", op.grid.per_axis},
               {"margin", op.grid.margin},  {"offset", op.grid.offset}, {"size", op.grid.size()}};
  nlohmann::json nodes = nlohmann::json::array();
  for (const Vec& x : op.grid.nodes) nodes.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  h["nodes"] = nodes;
  h["weights"] = op.grid.weights;
  std::ofstream js(prefix + ".json");
  if (!js) throw Error("cannot write " + prefix + ".json");
  js << h.dump(2) << "\n";

  std::ofstream csv(prefix + ".csv");
  if (!csv) throw Error("cannot write " + prefix + ".csv");
  const int n = op.size();
  for (int c = 0; c < n; ++c) csv << (c ? "," : "") << "c" << c;
  csv << "\n";
  char buf[32];
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", op.matrix(a, c));
      csv << (c ? "," : "") << buf;
    }
    csv << "\n";
  }
}

GridOperator load_operator(const std::string& prefix) {
  std::ifstream js(prefix + ".json");
  if (!js) throw Error("cannot read " + prefix + ".json");
  const nlohmann::json h = nlohmann::json::parse(js);
  if (h.value("format", "") != "dunkl-grid-operator") throw Error(prefix + ".json is not a grid operator header");
  GridOperator op;
  op.eps = h.at("eps");
  op.R = h.at("R");
  op.i = h.at("i");
  op.j = h.at("j");
  op.symbol = h.at("symbol");
  op.lip = h.at("lip");
  const auto& g = h.at("grid");
  op.grid.dim = g.at("dim");
  op.grid.L = g.at("L");
  op.grid.per_axis = g.at("per_axis");
  op.grid.margin = g.at("margin");
  op.grid.offset = g.at("offset");
  for (const auto& node : h.at("nodes")) {
    Vec x(op.grid.dim);
    for (int k = 0; k < op.grid.dim; ++k) x[k] = node.at(k);
    op.grid.nodes.push_back(x);
  }
  op.grid.weights = h.at("weights").get<std::vector<double>>();
  const int n = op.grid.size();

  std::ifstream csv(prefix + ".csv");
  if (!csv) throw Error("cannot read " + prefix + ".csv");
  std::string line;
  std::getline(csv, line);
  op.matrix = RowMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (!std::getline(csv, line)) throw Error(prefix + ".csv has too few rows");
    std::stringstream row(line);
    std::string cell;
    for (int c = 0; c < n; ++c) {
      if (!std::getline(row, cell, ',')) throw Error(prefix + ".csv has a short row");
      op.matrix(a, c) = std::strtod(cell.c_str(), nullptr);
    }
  }
  return op;
}

}  // namespace dunkl
