#include "magnonbath/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

namespace magnonbath::specfun {

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) throw DomainError("bessel_j: order must be 0 or 1");
  if (!std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
  // J0 is even, J1 odd; boost expects x >= 0 for best accuracy.
  const double v = boost::math::cyl_bessel_j(order, std::abs(x));
  return (order == 1 && x < 0.0) ? -v : v;
}

namespace {

struct KePair {
  double k, e;
};

// Arithmetic-geometric mean evaluation, valid for m < 1:
//   K = pi / (2 agm(1, sqrt(1-m)))
//   E = K (1 - sum_n 2^(n-1) c_n^2),  c_0 = sqrt(m), c_n = (a_n-1 - b_n-1)/2.
KePair agm_ke(double m) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double csum = 0.5 * m;  // 2^(-1) c_0^2
  double pow2 = 0.5;
  // Stop at a gap of ~10 ulps: the next term would add 2^n (a-b)^2 / 4 <
  // 1e-29, while iterating into the 1-ulp stall lets the doubling weight
  // amplify rounding noise instead.
  for (int n = 0; n < 64 && a - b > 1e-15 * a; ++n) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    csum += pow2 * c * c;
  }
  const double k = std::numbers::pi / (2.0 * a);
  return {k, k * (1.0 - csum)};
}

}  // namespace

std::complex<double> elliptic_k(double m) {
  if (!std::isfinite(m)) throw DomainError("elliptic_k: non-finite parameter");
  if (m == 1.0) throw SingularityError("elliptic_k: logarithmic singularity at m = 1");
  if (m < 1.0) return {agm_ke(m).k, 0.0};
  const double rm = 1.0 / m;
  const double rs = 1.0 / std::sqrt(m);
  return {rs * agm_ke(rm).k, -rs * agm_ke(1.0 - rm).k};
}

std::complex<double> elliptic_e(double m) {
  if (!std::isfinite(m)) throw DomainError("elliptic_e: non-finite parameter");
  if (m == 1.0) return {1.0, 0.0};
  if (m < 1.0) return {agm_ke(m).e, 0.0};
  const double rm = 1.0 / m;
  const double s = std::sqrt(m);
  const KePair lower{agm_ke(rm)};
  const KePair upper{agm_ke(1.0 - rm)};
  return {s * lower.e - (m - 1.0) / s * lower.k, s * upper.e - upper.k / s};
}

}  // namespace magnonbath::specfun
