#pragma once

namespace dunkl::bessel {

/// Kummer M(a, b, x) by its power series, x >= 0, a >= 0, b > 0. All terms
/// are positive so there is no cancellation; intended for x <~ 60.
double kummer_series(double a, double b, double x);

/// sqrt(2 pi z) * e^{-z} * (I_{nu1}(z) + sign * I_{nu2}(z)) from the large-z
/// expansion, z >~ 20. The two series are merged term by term so that the
/// difference (sign = -1) keeps full relative accuracy.
double scaled_bessel_combination(double nu1, double nu2, double sign, double z);

}  // namespace dunkl::bessel
