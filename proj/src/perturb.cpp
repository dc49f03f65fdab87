#include "magnonbath/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "magnonbath/quadrature.hpp"
#include "magnonbath/selfenergy.hpp"
#include "magnonbath/specfun.hpp"
#include "magnonbath/zone.hpp"

namespace magnonbath::perturb {

namespace {

constexpr double kPi = std::numbers::pi;

double occupation(double omega, double temperature) {
  return 1.0 / std::expm1(omega / temperature);
}

void require_gapped(const ModelParams& p) {
  if (spectrum_bounds(p).omega_min <= 0.0)
    throw DomainError(
        "finite temperature requires a gapped magnon band (Omega_min > 0)");
}

void check_temperature(const ThermalParams& tp) {
  if (!(tp.temperature >= 0.0))
    throw DomainError("temperature must be nonnegative");
}

// Zero-point part of Psi: each axis integrates to (J0 + i J1)(4JSt) exactly.
std::complex<double> zero_point_psi(const ModelParams& p,
                                    const SpectrumBounds& b, double t) {
  const double z = 4.0 * p.J * p.S * t;
  const std::complex<double> axis{specfun::bessel_j(0, z),
                                  specfun::bessel_j(1, z)};
  std::complex<double> prod{1.0, 0.0};
  for (int i = 0; i < p.d; ++i) prod *= axis;
  return std::ldexp(p.g * p.g * p.S, p.d + 1) *
         std::exp(std::complex<double>(0.0, (p.omega0 - b.h_tilde) * t)) *
         prod;
}

// sin(x)/x, and (sin x - x cos x)/x^3 by series below |x| = 0.5 where the
// closed form cancels.
double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double sinc3(double x) {
  if (std::abs(x) >= 0.5) return (std::sin(x) - x * std::cos(x)) / (x * x * x);
  const double x2 = x * x;  // sum_n (-1)^n (2n+2) x^{2n} / (2n+3)!
  return 1.0 / 3.0 +
         x2 * (-1.0 / 30.0 +
               x2 * (1.0 / 840.0 +
                     x2 * (-1.0 / 45360.0 + x2 * (1.0 / 3991680.0))));
}

// Prefix integrals of {Psi0, s Psi0(s)} over one grid cell of the zero-point
// part, fused so both moments come from a single adaptive pass.
quad::Pair2 cell_integral(const ModelParams& p, double abs_floor, double t0,
                          double t1) {
  const SpectrumBounds b = spectrum_bounds(p);
  auto f = [&](double s) {
    const std::complex<double> v = zero_point_psi(p, b, s);
    return quad::Pair2{v, s * v};
  };
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = abs_floor;
  opt.max_segments = 64;
  return quad::integrate(f, t0, t1, {}, opt).value;
}

// int_0^t e^{i alpha s} ds = t E0(alpha t) and int_0^t s e^{i alpha s} ds =
// t^2 G(alpha t), in forms that stay fully accurate through alpha = 0.
std::complex<double> moment_e0(double x) {
  const double half = sinc(0.5 * x);
  return {sinc(x), 0.5 * x * half * half};
}

std::complex<double> moment_g(double x) {
  const double half = sinc(0.5 * x);
  return {sinc(x) - 0.5 * half * half, x * sinc3(x)};
}

}  // namespace

double spin_wave_ratio(const ModelParams& p, const ThermalParams& tp) {
  p.validate();
  check_temperature(tp);
  if (tp.temperature == 0.0) return 0.0;
  require_gapped(p);
  return occupation(spectrum_bounds(p).omega_min, tp.temperature) /
         (2.0 * p.S);
}

std::complex<double> correlation_psi(const ModelParams& p,
                                     const ThermalParams& tp, double t) {
  p.validate();
  check_temperature(tp);
  const SpectrumBounds b = spectrum_bounds(p);
  std::complex<double> psi = zero_point_psi(p, b, t);
  if (tp.temperature > 0.0) {
    require_gapped(p);
    const double z = 4.0 * p.J * p.S * t;
    zone::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-11 * std::ldexp(p.g * p.g * p.S, p.d + 1);
    opt.min_panels =
        static_cast<std::size_t>(std::ceil(std::abs(z) / 2.0)) + 2;
    psi += zone::coupling_average(
        p,
        [&](double omega) {
          return occupation(omega, tp.temperature) *
                 std::exp(std::complex<double>(0.0, (p.omega0 - omega) * t));
        },
        opt);
  }
  return psi;
}

WeakRates::WeakRates(const ModelParams& p, ThermalParams tp)
    : p_(p), tp_(tp) {
  p_.validate();
  check_temperature(tp_);
  if (tp_.temperature > 0.0) require_gapped(p_);
  const SpectrumBounds b = spectrum_bounds(p_);
  // One cell spans at most ~1.5 rad of the fastest e^{i(omega0 - Omega)t}
  // phase, so a single 15-point rule per cell is already accurate.
  const double freq = std::max({std::abs(p_.omega0 - b.omega_min),
                                std::abs(p_.omega0 - b.omega_max), 1e-12});
  dt_ = 1.5 / freq;
  abs_floor_ = 1e-13 * std::ldexp(p_.g * p_.g * p_.S, p_.d + 1) *
               std::min(dt_, 1.0);
  zero_.p0.assign(1, {});
  zero_.p1.assign(1, {});
  inhom_.y.assign(1, 0.0);
  inhom_.x.assign(1, 0.0);
}

void WeakRates::extend_locked(double t) const {
  const std::size_t need =
      static_cast<std::size_t>(std::ceil(t / dt_)) + 1;
  if (need > 5'000'000)
    throw ConvergenceError("weak-rates prefix table would exceed 5e6 cells");
  while (zero_.p0.size() < need + 1) {
    const std::size_t i = zero_.p0.size() - 1;
    const quad::Pair2 cell =
        cell_integral(p_, abs_floor_, i * dt_, (i + 1) * dt_);
    zero_.p0.push_back(zero_.p0.back() + cell.a);
    zero_.p1.push_back(zero_.p1.back() + cell.b);
  }
}

// Occupation moments {int_0^t Psi_occ, int_0^t s Psi_occ}: closed in time
// per mode.  In 1d the zone integral is a midpoint sum over a fixed k grid
// (periodic analytic integrand, so the error decays exponentially once the
// grid resolves the e^{i alpha t} phase; eight nodes per radian of total
// phase keep it at rounding level).  Higher d falls back to one fused
// adaptive zone pass per call.
std::pair<std::complex<double>, std::complex<double>>
WeakRates::occupation_locked(double t) const {
  if (p_.d == 1) {
    if (t > modes_.t_valid) {
      const double horizon = std::max(2.0 * t, 32.0 / (p_.J * p_.S));
      const auto m = static_cast<std::size_t>(
          std::ceil(32.0 * p_.J * p_.S * horizon / 1024.0) * 1024.0);
      modes_.alpha.resize(m);
      modes_.weight.resize(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double k = kPi * (static_cast<double>(j) + 0.5) / m;
        const std::span<const double> kk{&k, 1};
        const double omega = dispersion(p_, kk);
        modes_.alpha[j] = p_.omega0 - omega;
        modes_.weight[j] =
            coupling_sq(p_, kk) * occupation(omega, tp_.temperature) / m;
      }
      modes_.t_valid = static_cast<double>(m) / (32.0 * p_.J * p_.S);
    }
    std::complex<double> m0{}, m1{};
    for (std::size_t j = 0; j < modes_.alpha.size(); ++j) {
      const double x = modes_.alpha[j] * t;
      m0 += modes_.weight[j] * moment_e0(x);
      m1 += modes_.weight[j] * moment_g(x);
    }
    return {t * m0, t * t * m1};
  }
  zone::Options zopt;
  zopt.rel_tol = 1e-10;
  zopt.abs_tol = abs_floor_;
  zopt.min_panels =
      static_cast<std::size_t>(std::ceil(2.0 * kPi * p_.J * p_.S * t)) + 2;
  const quad::Pair2 occ = zone::coupling_average(
      p_,
      [&](double omega) {
        const double x = (p_.omega0 - omega) * t;
        const double n = occupation(omega, tp_.temperature);
        return quad::Pair2{n * moment_e0(x), n * moment_g(x)};
      },
      zopt);
  return {t * occ.a, t * t * occ.b};
}

std::pair<std::complex<double>, std::complex<double>>
WeakRates::moments_locked(bool with_occupation, double t) const {
  const std::size_t i = std::min<std::size_t>(
      static_cast<std::size_t>(t / dt_), zero_.p0.size() - 1);
  const double t0 = static_cast<double>(i) * dt_;
  std::complex<double> m0 = zero_.p0[i], m1 = zero_.p1[i];
  if (t > t0) {
    const quad::Pair2 part = cell_integral(p_, abs_floor_, t0, t);
    m0 += part.a;
    m1 += part.b;
  }
  if (with_occupation && tp_.temperature > 0.0) {
    const auto [o0, o1] = occupation_locked(t);
    m0 += o0;
    m1 += o1;
  }
  return {m0, m1};
}

WeakRates::Cumulative WeakRates::cumulative_locked(double t) const {
  // int_0^t kappa = 2 [t Re P0 - Re P1] (integration order swapped once),
  // likewise for xi with the imaginary parts.
  Cumulative c;
  const auto [w0, w1] = moments_locked(true, t);
  c.kappa_int = 2.0 * (t * w0.real() - w1.real());
  c.xi_int = 2.0 * (t * w0.imag() - w1.imag());
  if (tp_.temperature > 0.0) {
    const auto [c0, c1] = moments_locked(false, t);
    c.kappa0_int = 2.0 * (t * c0.real() - c1.real());
    c.xi0_int = 2.0 * (t * c0.imag() - c1.imag());
  } else {
    c.kappa0_int = c.kappa_int;
    c.xi0_int = c.xi_int;
  }
  return c;
}

double WeakRates::x_of_locked(double t) const {
  const Cumulative c = cumulative_locked(t);
  return 2.0 * c.kappa_int - c.kappa0_int;
}

// inhom(t) = int_0^t (kappa - kappa0)(tau) e^{X(tau) - X(t)} dtau, advanced
// cell by cell as y[i] = inhom(i dt) (a bounded population, so the recursion
// y[i+1] = y[i] e^{x[i] - x[i+1]} + cell never overflows even though e^X
// alone would).  Each cell is one 15-point pass: the integrand is smooth on
// the cell scale by the choice of dt.
double WeakRates::inhom_locked(double t, double x_t) const {
  // One fused node: kappa - kappa0 and X(tau) share the same moments.
  auto node = [&](double tau, double x_ref) {
    const auto [c0, c1] = moments_locked(false, tau);
    const auto [o0, o1] = occupation_locked(tau);
    const double x =
        2.0 * (tau * (c0 + 2.0 * o0).real() - (c1 + 2.0 * o1).real());
    return 2.0 * o0.real() * std::exp(x - x_ref);
  };
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-13 * std::min(dt_, 1.0);
  opt.max_segments = 64;
  const auto cells = static_cast<std::size_t>(t / dt_);
  while (inhom_.y.size() < cells + 1) {
    const std::size_t i = inhom_.y.size() - 1;
    const double x1 = x_of_locked((i + 1) * dt_);
    auto f = [&](double tau) { return node(tau, x1); };
    const double cell =
        quad::integrate(f, i * dt_, (i + 1) * dt_, {}, opt).value;
    inhom_.y.push_back(inhom_.y.back() * std::exp(inhom_.x.back() - x1) +
                       cell);
    inhom_.x.push_back(x1);
  }
  const double t0 = static_cast<double>(cells) * dt_;
  double tail = 0.0;
  if (t > t0) {
    auto f = [&](double tau) { return node(tau, x_t); };
    tail = quad::integrate(f, t0, t, {}, opt).value;
  }
  return inhom_.y[cells] * std::exp(inhom_.x[cells] - x_t) + tail;
}

RateSample WeakRates::rates(double t) const {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(t);
  const auto [m0, m1] = moments_locked(true, t);
  (void)m1;
  return {t, 2.0 * m0.real(), 2.0 * m0.imag(), false};
}

RateSample WeakRates::rates_zero_temperature(double t) const {
  if (tp_.temperature <= 0.0) return rates(t);
  if (t < 0.0) throw DomainError("time must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(t);
  const auto [m0, m1] = moments_locked(false, t);
  (void)m1;
  return {t, 2.0 * m0.real(), 2.0 * m0.imag(), false};
}

double WeakRates::kappa_integral(double t) const {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(t);
  return cumulative_locked(t).kappa_int;
}

double WeakRates::xi_integral(double t) const {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(t);
  return cumulative_locked(t).xi_int;
}

DensityMatrix2 WeakRates::evolve(const DensityMatrix2& rho0, double t) const {
  if (t < 0.0) throw DomainError("time must be nonnegative");
  if (rho0.rho11 < -1e-9 || rho0.rho11 > 1.0 + 1e-9 ||
      std::norm(rho0.rho12) > rho0.rho11 * rho0.rho22() + 1e-9)
    throw DomainError("rho0 is not a valid two-level density matrix");
  std::lock_guard<std::mutex> lock(mu_);
  extend_locked(t);
  const Cumulative c = cumulative_locked(t);
  const double x_t = 2.0 * c.kappa_int - c.kappa0_int;
  const double inhom =
      tp_.temperature > 0.0 ? inhom_locked(t, x_t) : 0.0;
  DensityMatrix2 out;
  out.rho11 = std::exp(-x_t) * rho0.rho11 + inhom;
  const double phase = -p_.omega0 * t - 0.5 * (2.0 * c.xi_int - c.xi0_int);
  out.rho12 = rho0.rho12 * std::exp(std::complex<double>(-0.5 * x_t, phase));
  return out;
}

RateSample weak_rates(const ModelParams& p, const ThermalParams& tp,
                      double t) {
  return WeakRates(p, tp).rates(t);
}

DensityMatrix2 weak_evolve(const ModelParams& p, const ThermalParams& tp,
                           const DensityMatrix2& rho0, double t) {
  return WeakRates(p, tp).evolve(rho0, t);
}

MarkovLimits markov_limits(const ModelParams& p) {
  p.validate();
  MarkovLimits out;
  if (p.d == 3) {
    const std::complex<double> s = selfenergy::sigma_numeric(p, p.omega0);
    out.kappa = std::max(0.0, -2.0 * s.imag());
    out.xi = 2.0 * s.real();
    return out;
  }
  const SpectrumBounds b = spectrum_bounds(p);
  const double a = b.half_width();
  const double x = p.omega0 - b.h_tilde;
  const double gj = p.g * p.g / p.J;
  const double edge = selfenergy::guard_band(p);
  if (p.d == 1) {
    if (std::abs(x + a) <= edge) {
      // Lower band edge: inverse-root density of states, both limits blow up.
      out.kappa_divergent = out.xi_divergent = true;
      return out;
    }
    if (std::abs(x) < a) {
      out.kappa = 2.0 * gj * std::sqrt((a - x) / (a + x));
      out.xi = 2.0 * gj;
    } else {
      out.kappa = 0.0;
      out.xi = 2.0 * gj * (1.0 - std::sqrt((x - a) / (x + a)));
    }
    return out;
  }
  // d == 2: the logarithmic van Hove points need their one-sided limits.
  if (std::abs(x + a) <= edge) {
    out.kappa = 4.0 * gj;  // step edge of the constant density of states
    out.xi_divergent = true;
    return out;
  }
  if (std::abs(x - a) <= edge) {
    out.kappa = 0.0;
    out.xi = 4.0 * gj * (1.0 - 2.0 / kPi);
    return out;
  }
  if (std::abs(x) <= edge) {
    out.kappa = 8.0 * gj / kPi;  // band centre, both one-sided limits agree
    out.xi = 4.0 * gj;
    return out;
  }
  const std::complex<double> s = selfenergy::sigma_2d(p, p.omega0);
  out.kappa = std::max(0.0, -2.0 * s.imag());
  out.xi = 2.0 * s.real();
  return out;
}

ShortTimeCoefficients short_time(const ModelParams& p,
                                 const ThermalParams& tp) {
  p.validate();
  check_temperature(tp);
  ShortTimeCoefficients out;
  // Zone average of coupling_sq is 2^{d+1} g^2 S exactly; the occupation
  // moment needs quadrature.
  double occ = 0.0;
  if (tp.temperature > 0.0) {
    require_gapped(p);
    zone::Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-13 * std::ldexp(p.g * p.g * p.S, p.d + 1);
    opt.min_panels = 4;
    occ = zone::coupling_average(
        p, [&](double omega) { return occupation(omega, tp.temperature); },
        opt);
  }
  out.Gamma = std::ldexp(p.g * p.g * p.S, p.d) + occ;
  out.Delta = 0.5 * occ;
  out.tau_D = 1.0 / std::sqrt(out.Gamma);
  return out;
}

}  // namespace magnonbath::perturb
