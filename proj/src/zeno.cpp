#include "magnonbath/zeno.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "magnonbath/perturb.hpp"
#include "magnonbath/quadrature.hpp"
#include "magnonbath/zone.hpp"

namespace magnonbath::zeno {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormFloor = 1e-300;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double survival_norm(const dynamics::ExactDynamics& dyn, double tau) {
  if (!(tau > 0.0)) throw DomainError("measurement interval must be positive");
  // Quadrature noise can push |phi|^2 a few 1e-12 above 1; survival is a
  // probability and the effective rate is nonnegative, so clip.
  return std::min(1.0, std::norm(dyn.amplitude(tau)));
}

}  // namespace

double survival(const dynamics::ExactDynamics& dyn, double tau, int n_meas) {
  if (n_meas < 1) throw DomainError("need at least one measurement");
  const double nrm = survival_norm(dyn, tau);
  if (nrm <= 0.0) return 0.0;
  return std::exp(static_cast<double>(n_meas) * std::log(nrm));
}

double survival(const ModelParams& p, double tau, int n_meas) {
  return survival(dynamics::ExactDynamics(p), tau, n_meas);
}

EffectiveRate effective_rate(const dynamics::ExactDynamics& dyn, double tau) {
  const double nrm = survival_norm(dyn, tau);
  EffectiveRate out;
  out.saturated = nrm < kNormFloor;
  out.value = -std::log(std::max(nrm, kNormFloor)) / tau;
  return out;
}

EffectiveRate effective_rate(const ModelParams& p, double tau) {
  return effective_rate(dynamics::ExactDynamics(p), tau);
}

double weak_effective_rate(const ModelParams& p, double tau) {
  p.validate();
  if (!(tau > 0.0)) throw DomainError("measurement interval must be positive");
  const SpectrumBounds b = spectrum_bounds(p);
  const double four_js = 4.0 * p.J * p.S;
  const double x = p.omega0 - b.h_tilde;
  // Sinc zeros sit at omega0 - Omega = 2 pi m / tau.
  const double m_span = (std::abs(x) + four_js * p.d) * tau / (2.0 * kPi);
  if (m_span < 400.0) {
    zone::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-13 * std::ldexp(p.g * p.g * p.S, p.d + 1) * tau;
    const long m_max = static_cast<long>(std::ceil(m_span)) + 1;
    for (long m = -m_max; m <= m_max; ++m)
      opt.cosine_sum_breaks.push_back((2.0 * kPi * m / tau - x) / four_js);
    return zone::coupling_average(
        p,
        [&](double omega) {
          const double s = sinc(0.5 * (p.omega0 - omega) * tau);
          return tau * s * s;
        },
        opt);
  }
  // Dense-zero regime: same value as (2/tau) int_0^tau (tau - s) Re Psi(s) ds
  // with the closed zero-point correlation function.
  auto f = [&](double s) {
    return (tau - s) * perturb::correlation_psi(p, {}, s).real();
  };
  const double freq =
      std::max({std::abs(p.omega0 - b.omega_min),
                std::abs(p.omega0 - b.omega_max), 1e-12});
  const std::size_t panels = static_cast<std::size_t>(
      std::max(8.0, std::ceil(tau * freq / 3.0)));
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-13 * std::ldexp(p.g * p.g * p.S, p.d + 1) * tau * tau;
  opt.max_segments = panels + 20000;
  return 2.0 / tau *
         quad::integrate(f, 0.0, tau,
                         quad::uniform_breakpoints(0.0, tau, panels), opt)
             .value;
}

std::optional<double> crossover_tau(const ModelParams& p) {
  const perturb::MarkovLimits mk = perturb::markov_limits(p);
  if (mk.kappa_divergent || mk.kappa <= 0.0) return std::nullopt;
  const double tau_limit = 1e4 / p.J;
  double lo = 1e-4 / p.J;
  while (weak_effective_rate(p, lo) >= mk.kappa) {
    lo /= 4.0;
    if (lo < 1e-12 / p.J) return std::nullopt;
  }
  double hi = lo;
  bool bracketed = false;
  while (hi < tau_limit) {
    const double next = hi * 1.3;
    if (weak_effective_rate(p, next) >= mk.kappa) {
      lo = hi;
      hi = next;
      bracketed = true;
      break;
    }
    hi = next;
  }
  if (!bracketed) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (weak_effective_rate(p, mid) >= mk.kappa ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace magnonbath::zeno
