#include "dunkl/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <regex>

namespace dunkl {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<long long> matrix_key(const Mat& m) {
  std::vector<long long> key;
  key.reserve(m.size());
  for (Eigen::Index k = 0; k < m.size(); ++k) key.push_back(std::llround(m.data()[k] * 1e9));
  return key;
}

// Entries that are half-integers up to rounding are snapped, so sign groups
// come out exactly as +-1 / 0 matrices.
void snap(Mat& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    double& v = m.data()[k];
    const double h = std::round(2.0 * v) / 2.0;
    if (std::abs(v - h) < 1e-14) v = h;
  }
}

int find_root(const std::vector<Vec>& roots, const Vec& v, double tol) {
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if ((roots[k] - v).norm() <= tol) return static_cast<int>(k);
  }
  return -1;
}

Vec generic_direction(int dim) {
  Vec v(dim);
  double c = 1.0;
  for (int k = 0; k < dim; ++k) {
    v[k] = c;
    c *= 0.1;
  }
  return v;
}

}  // namespace

RootSystemSpec RootSystemSpec::sign_product(std::vector<double> coordinate_kappa) {
  RootSystemSpec spec;
  spec.dim = static_cast<int>(coordinate_kappa.size());
  spec.type = GroupType::SignProduct;
  if (spec.dim < 1 || spec.dim > kMaxDim) throw InvalidRootSystem("Z2^N needs 1 <= N <= 4");
  for (int i = 0; i < spec.dim; ++i) {
    if (!(coordinate_kappa[i] >= 0.0)) throw InvalidRootSystem("multiplicities must be >= 0");
    for (double sign : {1.0, -1.0}) {
      spec.roots.push_back(sign * kSqrt2 * unit_vec(spec.dim, i));
      spec.kappa.push_back(coordinate_kappa[i]);
    }
  }
  return spec;
}

RootSystemSpec RootSystemSpec::dihedral(int m, std::vector<double> kappa) {
  if (m < 1 || m > 8) throw InvalidRootSystem("I2(m) supported for 1 <= m <= 8");
  if (kappa.empty() || kappa.size() > 2) throw InvalidRootSystem("I2(m) takes one or two multiplicities");
  if (kappa.size() == 2 && m % 2 != 0) {
    throw InvalidRootSystem("two multiplicity classes only exist for even m");
  }
  for (double k : kappa) {
    if (!(k >= 0.0)) throw InvalidRootSystem("multiplicities must be >= 0");
  }
  RootSystemSpec spec;
  spec.dim = 2;
  spec.type = GroupType::Dihedral;
  spec.m = m;
  for (int k = 0; k < m; ++k) {
    const double phi = std::numbers::pi * k / m;
    const Vec alpha = make_vec({-kSqrt2 * std::sin(phi), kSqrt2 * std::cos(phi)});
    const double kap = kappa.size() == 2 ? kappa[k % 2] : kappa[0];
    spec.roots.push_back(alpha);
    spec.kappa.push_back(kap);
    spec.roots.push_back(-alpha);
    spec.kappa.push_back(kap);
  }
  return spec;
}

RootSystemSpec RootSystemSpec::trivial(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidRootSystem("dimension must be in 1..4");
  RootSystemSpec spec;
  spec.dim = dim;
  spec.type = GroupType::Trivial;
  return spec;
}

RootSystemSpec RootSystemSpec::preset(const std::string& name, const std::vector<double>& kappa) {
  auto pad = [&](std::size_t n, double fill) {
    std::vector<double> k = kappa;
    if (k.empty()) k.assign(n, fill);
    if (k.size() == 1 && n > 1) k.assign(n, k[0]);
    return k;
  };
  if (name == "z2") return sign_product(pad(1, 1.0));
  if (name == "z2xz2") return sign_product(pad(2, 1.0));
  if (name == "b2") return dihedral(4, kappa.empty() ? std::vector<double>{1.0} : kappa);
  if (name == "i2_6") return dihedral(6, kappa.empty() ? std::vector<double>{1.0} : kappa);
  if (name == "trivial1") return trivial(1);
  if (name == "trivial2") return trivial(2);
  throw InvalidRootSystem("unknown root system preset '" + name + "'");
}

RootSystemSpec RootSystemSpec::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidRootSystem(std::string("root system file: ") + e.what());
  }
  const int dim = j.value("dimension", 0);
  const std::string type = j.value("type", "");
  std::vector<double> kappa = j.value("kappa", std::vector<double>{});
  std::smatch match;
  if (type == "Z2^N") {
    if (kappa.size() == 1 && dim > 1) kappa.assign(dim, kappa[0]);
    if (static_cast<int>(kappa.size()) != dim) throw InvalidRootSystem("kappa length must equal dimension");
    return sign_product(kappa);
  }
  static const std::regex dihedral_re(R"(I2\((\d+)\))");
  if (std::regex_match(type, match, dihedral_re)) {
    if (dim != 2) throw InvalidRootSystem("dihedral systems live in dimension 2");
    return dihedral(std::stoi(match[1]), kappa);
  }
  if (type == "trivial") return trivial(dim);
  throw InvalidRootSystem("unknown root system type '" + type + "'");
}

void RootSystemSpec::validate() const {
  if (roots.size() != kappa.size()) throw InvalidRootSystem("one multiplicity per root required");
  for (std::size_t a = 0; a < roots.size(); ++a) {
    if (roots[a].size() != dim) throw InvalidRootSystem("root dimension mismatch");
    if (std::abs(roots[a].squaredNorm() - 2.0) > 1e-12) throw InvalidRootSystem("roots must have squared length 2");
    if (!(kappa[a] >= 0.0)) throw InvalidRootSystem("multiplicities must be >= 0");
    const int neg = find_root(roots, -roots[a], 1e-9);
    if (neg < 0 || kappa[neg] != kappa[a]) throw InvalidRootSystem("root system not closed under negation");
    for (std::size_t b = 0; b < roots.size(); ++b) {
      const int image = find_root(roots, reflect(roots[a], roots[b]), 1e-9);
      if (image < 0) throw InvalidRootSystem("reflection maps a root outside the system");
      if (std::abs(kappa[image] - kappa[b]) > 1e-14) throw InvalidRootSystem("multiplicity not G-invariant");
    }
  }
}

double RootSystemSpec::kappa_sum() const {
  double s = 0.0;
  for (double k : kappa) s += k;
  return s;
}

bool RootSystemSpec::zero_kappa() const {
  return std::all_of(kappa.begin(), kappa.end(), [](double k) { return k == 0.0; });
}

std::vector<double> RootSystemSpec::coordinate_kappa() const {
  if (type == GroupType::Trivial) return std::vector<double>(dim, 0.0);
  if (type != GroupType::SignProduct) throw Unsupported("heat kernels are only available for Z2^N");
  std::vector<double> out(dim);
  for (int i = 0; i < dim; ++i) out[i] = kappa[2 * i];
  return out;
}

std::string RootSystemSpec::name() const {
  switch (type) {
    case GroupType::Trivial:
      return "trivial(" + std::to_string(dim) + ")";
    case GroupType::SignProduct:
      return "Z2^" + std::to_string(dim);
    case GroupType::Dihedral:
      return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

Vec reflect(const Vec& alpha, const Vec& x) { return x - x.dot(alpha) * alpha; }

ReflectionGroup build_group(const RootSystemSpec& spec, int cap) {
  const int n = spec.dim;
  std::vector<Mat> generators;
  for (const Vec& alpha : spec.roots) {
    Mat g = Mat::Identity(n, n) - alpha * alpha.transpose();
    snap(g);
    generators.push_back(g);
  }

  std::map<std::vector<long long>, Mat> seen;
  std::vector<Mat> frontier{Mat::Identity(n, n)};
  seen.emplace(matrix_key(frontier[0]), frontier[0]);
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const Mat& g : frontier) {
      for (const Mat& r : generators) {
        Mat h = r * g;
        snap(h);
        auto [it, inserted] = seen.emplace(matrix_key(h), h);
        if (!inserted) continue;
        if (static_cast<int>(seen.size()) > cap) {
          throw GroupTooLarge("group closure exceeded " + std::to_string(cap) + " elements");
        }
        next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }

  ReflectionGroup group;
  group.dim = n;
  group.elements.push_back(Mat::Identity(n, n));
  const auto identity_key = matrix_key(group.elements[0]);
  // std::map iterates in lexicographic key order.
  for (const auto& [key, g] : seen) {
    if (key == identity_key) continue;
    if ((g * g.transpose() - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidRootSystem("non-orthogonal group element");
    }
    group.elements.push_back(g);
  }
  group.full_sign_group =
      spec.type == GroupType::SignProduct && group.order() == (1 << n);
  return group;
}

double orbit_distance(const ReflectionGroup& group, const Vec& x, const Vec& y) {
  if (group.full_sign_group) return (x.cwiseAbs() - y.cwiseAbs()).norm();
  double best = std::numeric_limits<double>::infinity();
  for (const Mat& g : group.elements) best = std::min(best, (x - g * y).squaredNorm());
  return std::sqrt(best);
}

ChamberAtlas::ChamberAtlas(const RootSystemSpec& spec, ReflectionGroup group)
    : spec_(spec), group_(std::move(group)) {
  const Vec v = generic_direction(spec_.dim);
  for (const Vec& alpha : spec_.roots) {
    const double p = alpha.dot(v);
    if (std::abs(p) < 1e-9) throw InvalidRootSystem("generic direction lies on a wall");
    if (p > 0.0) positive_.push_back(alpha);
  }
  for (const Mat& g : group_.elements) {
    std::vector<Vec> pos;
    for (const Vec& alpha : positive_) pos.push_back(g * alpha);
    positive_by_chamber_.push_back(std::move(pos));
  }
}

bool ChamberAtlas::in_closed_chamber(const Vec& x, double tol) const {
  for (const Vec& alpha : positive_) {
    if (x.dot(alpha) < -tol) return false;
  }
  return true;
}

bool ChamberAtlas::in_chamber(int tau, const Vec& x) const {
  for (const Vec& alpha : positive_by_chamber_[tau]) {
    if (x.dot(alpha) <= 0.0) return false;
  }
  return true;
}

ChamberIndex ChamberAtlas::chamber_of(const Vec& x, bool strict, double wall_tol) const {
  if (strict && wall_distance(spec_, x) <= wall_tol) throw OnWall("point lies on a reflecting wall");
  const double tol = 1e-13 * std::max(1.0, x.norm());
  for (int rho = 0; rho < group_.order(); ++rho) {
    Vec rep = group_.apply_inverse(rho, x);
    if (in_closed_chamber(rep, tol)) return {rho, std::move(rep)};
  }
  throw InvalidRootSystem("no chamber contains the point; atlas is inconsistent");
}

double wall_distance(const RootSystemSpec& spec, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& alpha : spec.roots) best = std::min(best, std::abs(x.dot(alpha)) / kSqrt2);
  return best;
}

double wall_layer(const RootSystemSpec& spec, double s, const Vec& x) {
  const double delta = wall_distance(spec, x);
  if (delta == 0.0) return 1.0;
  return std::min(1.0, s / delta);
}

double smoothstep(double u) {
  if (u <= 1.0) return 0.0;
  if (u >= 2.0) return 1.0;
  const double v = u - 1.0;
  return v * v * v * (10.0 + v * (-15.0 + 6.0 * v));
}

double smoothstep_derivative(double u) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  const double v = u - 1.0;
  return 30.0 * v * v * (1.0 - v) * (1.0 - v);
}

double chamber_cutoff(const ChamberAtlas& atlas, int tau, double s, const Vec& x) {
  double value = 1.0;
  for (const Vec& alpha : atlas.positive_roots(tau)) {
    value *= smoothstep(x.dot(alpha) / (kSqrt2 * s));
    if (value == 0.0) break;
  }
  return value;
}

double chamber_indicator(const ChamberAtlas& atlas, int tau, const Vec& x) {
  return atlas.chamber_of(x).rho == tau ? 1.0 : 0.0;
}

}  // namespace dunkl
