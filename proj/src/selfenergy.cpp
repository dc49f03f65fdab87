#include "magnonbath/selfenergy.hpp"

#include <cmath>
#include <numbers>

#include "magnonbath/specfun.hpp"
#include "magnonbath/zone.hpp"

namespace magnonbath::selfenergy {

namespace {

constexpr double kPi = std::numbers::pi;

void check_guard(const ModelParams& p, double eps) {
  const SpectrumBounds b = spectrum_bounds(p);
  const double guard = guard_band(p);
  if (std::abs(eps - b.omega_min) < guard || std::abs(eps - b.omega_max) < guard)
    throw SingularityError("sigma: eps within guard band of a band edge");
  if (p.d == 2 && std::abs(eps - b.h_tilde) < guard)
    throw SingularityError("sigma: eps within guard band of the band centre");
}

}  // namespace

std::complex<double> sigma_1d(const ModelParams& p, double eps) {
  p.validate();
  if (p.d != 1) throw DomainError("sigma_1d requires d = 1");
  check_guard(p, eps);
  const double a = 4.0 * p.J * p.S;  // band half-width
  const double x = eps - spectrum_bounds(p).h_tilde;
  const double gj = p.g * p.g / p.J;
  if (std::abs(x) > a) {
    const double r = (x - a) / (x + a);  // > 0 on both sides of the band
    return {gj * (1.0 - std::sqrt(r)), 0.0};
  }
  return {gj, -gj * (a - x) / std::sqrt(a * a - x * x)};
}

std::complex<double> sigma_2d(const ModelParams& p, double eps) {
  p.validate();
  if (p.d != 2) throw DomainError("sigma_2d requires d = 2");
  check_guard(p, eps);
  const double a = 8.0 * p.J * p.S;
  const double x = eps - spectrum_bounds(p).h_tilde;
  const double g2 = p.g * p.g;
  const double c = g2 / (2.0 * kPi * p.S * p.J * p.J);
  using specfun::elliptic_e;
  using specfun::elliptic_k;
  if (std::abs(x) > a) {
    const double m = (a * a) / (x * x);
    const double re = c * (0.5 * kPi * a - x * elliptic_e(m).real() +
                           (x - a) * elliptic_k(m).real());
    return {re, 0.0};
  }
  const double mt = (x * x) / (a * a);
  const double sx = (x > 0.0) ? 1.0 : -1.0;
  const double re = 2.0 * g2 / p.J -
                    4.0 * g2 / (kPi * p.J) * sx * elliptic_e(mt).real() +
                    c * (a * sx - std::abs(x)) * elliptic_k(mt).real();
  const double im = g2 / (2.0 * kPi * p.J) * (x / (p.J * p.S)) *
                        elliptic_k(1.0 - mt).real() -
                    4.0 * g2 / (kPi * p.J) * elliptic_e(1.0 - mt).real();
  return {re, im};
}

std::complex<double> sigma_exact(const ModelParams& p, double eps) {
  if (p.d == 1) return sigma_1d(p, eps);
  if (p.d == 2) return sigma_2d(p, eps);
  throw DomainError("sigma_exact: no closed form for d = 3");
}

std::complex<double> sigma_numeric(const ModelParams& p, double eps, double nu) {
  p.validate();
  if (!(nu > 0.0)) throw DomainError("sigma_numeric: nu must be positive");
  const std::complex<double> z{eps, nu};
  zone::Options opt;
  // The resolvent pole sits on the surface Omega_k = eps.
  opt.cosine_sum_breaks = {(spectrum_bounds(p).h_tilde - eps) /
                           (4.0 * p.J * p.S)};
  return zone::coupling_average(
      p, [&](double omega) { return 1.0 / (z - omega); }, opt);
}

}  // namespace magnonbath::selfenergy
