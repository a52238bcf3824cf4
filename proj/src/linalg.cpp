#include "dunkl/linalg.hpp"

#include "dunkl/types.hpp"

#include <atomic>
#include <cmath>

namespace dunkl::linalg {
namespace {

Backend detect() { return avx2_available() ? Backend::Avx2 : Backend::Scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(); }

void set_backend(Backend backend) {
  if (backend == Backend::Avx2 && !avx2_available()) throw Unsupported("AVX2/FMA not available on this CPU");
  current().store(backend);
}

std::string backend_name(Backend backend) { return backend == Backend::Avx2 ? "avx2" : "scalar"; }

void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  if (active_backend() == Backend::Avx2) return avx2::matvec(A, n, m, x, y);
  scalar::matvec(A, n, m, x, y);
}

void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  if (active_backend() == Backend::Avx2) return avx2::matvec_transpose(A, n, m, x, y);
  scalar::matvec_transpose(A, n, m, x, y);
}

double dot(const double* a, const double* b, std::size_t n) {
  return active_backend() == Backend::Avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p) {
  return active_backend() == Backend::Avx2 ? avx2::weighted_pow_sum(w, v, n, p) : scalar::weighted_pow_sum(w, v, n, p);
}

double max_abs(const double* v, std::size_t n) {
  return active_backend() == Backend::Avx2 ? avx2::max_abs(v, n) : scalar::max_abs(v, n);
}

namespace scalar {

void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  for (std::size_t a = 0; a < n; ++a) y[a] = dot(A + a * m, x, m);
}

void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  for (std::size_t c = 0; c < m; ++c) y[c] = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double xa = x[a];
    const double* row = A + a * m;
    for (std::size_t c = 0; c < m; ++c) y[c] += xa * row[c];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p) {
  double s = 0.0;
  if (p == 1.0) {
    for (std::size_t k = 0; k < n; ++k) s += w[k] * std::abs(v[k]);
  } else if (p == 2.0) {
    for (std::size_t k = 0; k < n; ++k) s += w[k] * v[k] * v[k];
  } else {
    for (std::size_t k = 0; k < n; ++k) s += w[k] * std::pow(std::abs(v[k]), p);
  }
  return s;
}

double max_abs(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(v[k]));
  return m;
}

}  // namespace scalar
}  // namespace dunkl::linalg
