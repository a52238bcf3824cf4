// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.
#include "dunkl/linalg.hpp"

#include <immintrin.h>

#include <cmath>

namespace dunkl::linalg::avx2 {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  for (std::size_t a = 0; a < n; ++a) y[a] = dot(A + a * m, x, m);
}

void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y) {
  for (std::size_t c = 0; c < m; ++c) y[c] = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const __m256d xa = _mm256_set1_pd(x[a]);
    const double* row = A + a * m;
    std::size_t c = 0;
    for (; c + 4 <= m; c += 4) {
      _mm256_storeu_pd(y + c, _mm256_fmadd_pd(xa, _mm256_loadu_pd(row + c), _mm256_loadu_pd(y + c)));
    }
    for (; c < m; ++c) y[c] += x[a] * row[c];
  }
}

double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p) {
  if (p != 1.0 && p != 2.0) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += w[k] * std::pow(std::abs(v[k]), p);
    return s;
  }
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vv = _mm256_loadu_pd(v + k);
    const __m256d term = p == 1.0 ? _mm256_and_pd(vv, kAbsMask) : _mm256_mul_pd(vv, vv);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), term, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += w[k] * (p == 1.0 ? std::abs(v[k]) : v[k] * v[k]);
  return s;
}

double max_abs(const double* v, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) m = _mm256_max_pd(m, _mm256_and_pd(_mm256_loadu_pd(v + k), kAbsMask));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; k < n; ++k) out = std::max(out, std::abs(v[k]));
  return out;
}

}  // namespace dunkl::linalg::avx2
