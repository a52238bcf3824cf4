#include "dunkl/bessel.hpp"

#include <cmath>

namespace dunkl::bessel {

double kummer_series(double a, double b, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) / (b + k) * x / (k + 1);
    sum += term;
    if (term <= 1e-17 * sum && k > x) break;
  }
  return sum;
}

double scaled_bessel_combination(double nu1, double nu2, double sign, double z) {
  const double m1 = 4.0 * nu1 * nu1;
  const double m2 = 4.0 * nu2 * nu2;
  double a1 = 1.0;
  double a2 = 1.0;
  double zk = 1.0;
  double sum = 1.0 + sign;
  double last = std::abs(sum) + 1.0;
  for (int k = 1; k < 80; ++k) {
    const double odd = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    a1 *= (m1 - odd) / (8.0 * k);
    a2 *= (m2 - odd) / (8.0 * k);
    zk *= -z;
    const double term = (a1 + sign * a2) / zk;
    if (std::abs(term) > last && k > 2) break;  // asymptotic series started to diverge
    sum += term;
    last = std::abs(term);
    if (last <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace dunkl::bessel
