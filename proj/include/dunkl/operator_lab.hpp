#pragma once

#include "dunkl/grid.hpp"
#include "dunkl/harness.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/lifting.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace dunkl {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kMaxGridNodes = 4000;

/// Log-time quadrature for integrals of F(t) dt / sqrt(t) over [eps, R]:
/// composite Gauss-Legendre in u = ln t, cut at every decade and every
/// extra edge. `w` already contains the sqrt(t) Jacobian.
struct TimeRule {
  std::vector<double> t;
  std::vector<double> w;
  std::vector<int> segment;   // index into edges: node lies in [edges[k], edges[k+1]]
  std::vector<double> edges;  // increasing, edges.front() = eps, edges.back() = R
};

struct TimeRuleSettings {
  int panels_per_decade = 8;
  int order = 6;
};

TimeRule time_rule(double eps, double R, const std::vector<double>& extra_edges = {},
                   const TimeRuleSettings& settings = {});

/// Truncated commutator C_{eps,R} on a grid: (C f)(x_a) = sum_c matrix(a, c) f(x_c) with
/// matrix(a, c) = w_c (b(x_a) - b(x_c)) int_eps^R A_t^{ij}(x_a, x_c) dt / sqrt(t).
struct GridOperator {
  Grid grid;
  RowMatrix matrix;
  double eps = 0.0;
  double R = 0.0;
  int i = 0;
  int j = 0;
  std::string symbol;
  double lip = 0.0;  // symbol norm used for normalized ratios

  int size() const { return grid.size(); }
  std::vector<double> apply(const std::vector<double>& f) const;
};

/// Throws GridTooLarge above kMaxGridNodes nodes, QuadratureFailure on a
/// non-finite entry.
GridOperator assemble(const Context& ctx, const Symbol& b, int i, int j, double eps, double R, const Grid& grid,
                      const TimeRuleSettings& settings = {});

/// Every (eps, R) combination from one pass over the time nodes. Rungs are
/// summed on demand from per-segment matrices.
class OperatorLadder {
 public:
  OperatorLadder(const Context& ctx, const Symbol& b, int i, int j, const Grid& grid, std::vector<double> eps,
                 std::vector<double> R, const TimeRuleSettings& settings = {});

  const std::vector<double>& eps() const { return eps_; }
  const std::vector<double>& R() const { return R_; }
  GridOperator rung(int e, int r) const;

 private:
  Grid grid_;
  std::vector<double> eps_;
  std::vector<double> R_;
  std::vector<double> edges_;
  std::vector<RowMatrix> segments_;
  std::vector<double> b_values_;
  int i_ = 0;
  int j_ = 0;
  std::string symbol_;
  double lip_ = 0.0;
};

std::vector<double> default_ladder_eps();  // 1e-1 .. 1e-4
std::vector<double> default_ladder_R();    // 1e1 .. 1e4

struct NormSettings {
  double tol = 1e-8;
  int max_iterations = 10000;
  std::uint64_t seed = 1;
};

/// Largest singular value of W^{1/2} M W^{-1/2}, the L^2(omega) norm of the
/// discrete operator, by power iteration on B^T B.
double l2_norm(const GridOperator& op, const NormSettings& settings = {});

/// max |B + B^T| / max |B| for B = W^{1/2} M W^{-1/2}.
double skew_defect(const GridOperator& op);

struct TrialSet {
  std::vector<std::vector<double>> values;
  std::vector<std::string> kinds;
};

/// Seeded corpus: Gaussian bumps, modulated bumps (frequency <= 8) and chamber
/// indicators mollified at scale 0.05, in rotation.
TrialSet make_trials(const ChamberAtlas& atlas, const Grid& grid, std::uint64_t seed, int count = 240);

struct LpReport {
  double p = 2.0;
  double sup = 0.0;         // sup over trials of |Cf|_p / |f|_p
  double normalized = 0.0;  // sup / symbol norm
  int argmax = -1;
  int trials = 0;
};

/// Requires 1 < p < infinity.
LpReport lp_ratio(const GridOperator& op, double p, const TrialSet& trials);

struct PairingReport {
  std::vector<double> eps;
  std::vector<double> R;
  std::vector<double> truncated;  // <C_{eps,R} f, g> per rung
  double kernel = 0.0;            // sum sum K_b(x_a, x_c) f(x_c) g(x_a) w_a w_c
  std::vector<double> gaps;
  double separation = 0.0;        // orbit distance between the supports
  double relative_final = 0.0;    // gaps.back() / (|kernel| + 1e-12)
  bool monotone = true;           // gaps decrease after the first rung
  int support_pairs = 0;
};

/// Compares the truncated bilinear form with the kernel double sum along the
/// rungs (eps[k], R[k]). Throws SupportsNotSeparated when the orbit distance
/// of the supports is below min_separation.
PairingReport pairing_convergence(const Context& ctx, const Symbol& b, int i, int j, const Bump& f, const Bump& g,
                                  const Grid& grid, const std::vector<double>& eps, const std::vector<double>& R,
                                  double min_separation = 0.25);

/// M x M chamber blocks of a full-space operator on a G-symmetric grid.
struct LiftedOperator {
  Grid base;                                // chamber nodes
  int order = 1;                            // M
  std::vector<std::vector<int>> index;      // index[a][rho] = full node of sigma_rho x_a
  std::vector<RowMatrix> blocks;            // blocks[rho * M + tau]

  const RowMatrix& block(int rho, int tau) const { return blocks[rho * order + tau]; }
  LiftedFunction apply(const LiftedFunction& F) const;
};

/// Throws GridNotSymmetric when some image of a node is missing.
LiftedOperator lifted_operator(const GridOperator& op, const ChamberAtlas& atlas);

/// w_y (b(sigma_rho x) - b(sigma_tau y)) int_eps^R A_t(sigma_rho x, sigma_tau y) dt / sqrt(t), evaluated
/// pointwise from the chamber pair; the reference for the block entries.
double lifted_truncated_entry(const Context& ctx, const Symbol& b, int i, int j, double eps, double R, int rho,
                              int tau, const Vec& x, const Vec& y, double weight_y,
                              const TimeRuleSettings& settings = {});

/// JSON header (metadata, grid spec, nodes, weights) at prefix.json and the
/// matrix at prefix.csv.
void save_operator(const GridOperator& op, const std::string& prefix);
GridOperator load_operator(const std::string& prefix);

}  // namespace dunkl
