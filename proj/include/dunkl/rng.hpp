#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dunkl {

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the k-th draw depends only on (seed, stream, k), so
/// samples can be generated in any order or split across threads and still
/// come out identical.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t at(std::uint64_t k) const { return mix64(key_ ^ mix64(k)); }
  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform in [0, 1), 53 bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Log-uniform in [lo, hi].
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  double normal() {
    // Box-Muller, one output per pair; simple and order-independent.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  int index(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  void seek(std::uint64_t k) { counter_ = k; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dunkl
