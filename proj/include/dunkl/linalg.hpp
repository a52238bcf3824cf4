#pragma once

#include <cstddef>
#include <string>

namespace dunkl::linalg {

/// Dense kernels with a scalar and an AVX2/FMA implementation. The backend is
/// picked once at startup from the CPU flags and may be overridden for tests.
enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool avx2_available();
/// Throws Unsupported when AVX2 is requested on a CPU without it.
void set_backend(Backend backend);
std::string backend_name(Backend backend);

/// y = A x, A row-major n x m.
void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
/// y = A^T x, A row-major n x m.
void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
double dot(const double* a, const double* b, std::size_t n);
/// sum_k w_k |v_k|^p; p = 1 and p = 2 are vectorized, other p use pow.
double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p);
double max_abs(const double* v, std::size_t n);

namespace scalar {
void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
double dot(const double* a, const double* b, std::size_t n);
double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p);
double max_abs(const double* v, std::size_t n);
}  // namespace scalar

namespace avx2 {
void matvec(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
void matvec_transpose(const double* A, std::size_t n, std::size_t m, const double* x, double* y);
double dot(const double* a, const double* b, std::size_t n);
double weighted_pow_sum(const double* w, const double* v, std::size_t n, double p);
double max_abs(const double* v, std::size_t n);
}  // namespace avx2

}  // namespace dunkl::linalg
