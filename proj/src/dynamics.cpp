#include "magnonbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnonbath/quadrature.hpp"
#include "magnonbath/selfenergy.hpp"
#include "magnonbath/specfun.hpp"

namespace magnonbath::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

using quad::Pair2;

}  // namespace

ExactDynamics::ExactDynamics(const ModelParams& p) : p_(p) {
  p_.validate();
  if (p_.d == 3) throw DomainError("ExactDynamics: exact reduction needs d in {1, 2}");
  bounds_ = spectrum_bounds(p_);
  if (p_.g == 0.0) {
    trivial_ = true;
    states_ = {{p_.omega0, 1.0}};
    return;
  }
  states_ = spectral::find_bound_states(p_);

  // Fixed breakpoints of the theta-substituted continuum integrand,
  // eps(theta) = h_tilde - H cos(theta):  the band centre (d = 2 only) and
  // the quasiparticle ridge eps - omega0 - Re Sigma(eps) = 0, whose
  // Lorentzian width |Im Sigma| can be far below any panel scale.
  const double H = bounds_.half_width();
  if (p_.d == 2) theta_splits_.push_back(0.5 * kPi);
  std::vector<double> ridge;
  if (p_.d == 1) {
    const double er = p_.omega0 + p_.g * p_.g / p_.J;
    if (bounds_.contains(er)) ridge.push_back(er);
  } else {
    // Sample each half-band and bisect every sign change of the shift
    // function (Re Sigma is smooth away from the centre).
    auto shift = [&](double e) {
      return e - p_.omega0 - selfenergy::sigma_2d(p_, e).real();
    };
    const double guard = 64.0 * selfenergy::guard_band(p_);
    const double limits[3] = {bounds_.omega_min + guard, bounds_.h_tilde,
                              bounds_.omega_max - guard};
    for (int half = 0; half < 2; ++half) {
      const double lo = (half == 0) ? limits[0] : limits[1] + guard;
      const double hi = (half == 0) ? limits[1] - guard : limits[2];
      const int n = 64;
      double prev = shift(lo);
      for (int i = 1; i <= n; ++i) {
        const double e = lo + (hi - lo) * i / n;
        const double cur = shift(e);
        if (prev < 0.0 && cur >= 0.0) {
          double a = e - (hi - lo) / n, b = e;
          for (int it = 0; it < 80 && b - a > 1e-14 * (1.0 + std::abs(b)); ++it) {
            const double m = 0.5 * (a + b);
            (shift(m) < 0.0 ? a : b) = m;
          }
          ridge.push_back(0.5 * (a + b));
        }
        prev = cur;
      }
    }
  }
  for (double er : ridge) {
    const double margin = 2.0 * selfenergy::guard_band(p_);
    if (er < bounds_.omega_min + margin || er > bounds_.omega_max - margin)
      continue;
    if (p_.d == 2 && std::abs(er - bounds_.h_tilde) < margin) continue;
    const double width = std::abs(selfenergy::sigma_exact(p_, er).imag());
    for (double off : {0.0, -1.0, 1.0, -4.0, 4.0, -16.0, 16.0}) {
      const double e = er + off * width;
      if (e > bounds_.omega_min && e < bounds_.omega_max)
        theta_splits_.push_back(std::acos((bounds_.h_tilde - e) / H));
    }
  }
  std::sort(theta_splits_.begin(), theta_splits_.end());
}

// A(eps(theta)) * deps/dtheta, written directly in theta so the band-edge
// square-root factors cancel analytically.
namespace {

double spectral_weight_theta_1d(const ModelParams& p, const SpectrumBounds& b,
                                double theta, double& eps_out) {
  const double H = b.half_width();
  const double ct = std::cos(theta), st = std::sin(theta);
  const double eps = b.h_tilde - H * ct;
  eps_out = eps;
  const double gj = p.g * p.g / p.J;
  const double im_ratio = gj * (1.0 + ct) / st;  // -Im Sigma
  const double dr = eps - p.omega0 - gj;
  const double denom = dr * dr + im_ratio * im_ratio;
  return 2.0 * gj * (1.0 + ct) * H / denom;
}

double spectral_weight_theta_2d(const ModelParams& p, const SpectrumBounds& b,
                                double theta, double& eps_out) {
  const double H = b.half_width();
  const double ct = std::cos(theta), st = std::sin(theta);
  const double eps = b.h_tilde - H * ct;
  eps_out = eps;
  const double x = -H * ct;
  const double g2 = p.g * p.g;
  const double mt = ct * ct;
  const double sx = (x > 0.0) ? 1.0 : -1.0;
  const double c = g2 / (2.0 * kPi * p.S * p.J * p.J);
  const double re = 2.0 * g2 / p.J -
                    4.0 * g2 / (kPi * p.J) * sx * specfun::elliptic_e(mt).real() +
                    c * (H * sx - std::abs(x)) * specfun::elliptic_k(mt).real();
  // K(1 - mt) through its logarithmic form once 1 - mt rounds to 1.
  const double k1m = (mt < 1e-14) ? 0.5 * std::log(16.0 / mt)
                                  : specfun::elliptic_k(1.0 - mt).real();
  const double e1m = specfun::elliptic_e(1.0 - mt).real();
  const double im = g2 / (2.0 * kPi * p.J) * (x / (p.J * p.S)) * k1m -
                    4.0 * g2 / (kPi * p.J) * e1m;
  const double dr = eps - p.omega0 - re;
  const double denom = dr * dr + im * im;
  return -2.0 * im * H * st / denom;
}

}  // namespace

// Fused quadrature pass: the zeroth and first spectral moments of the
// continuum share every expensive factor of the integrand.
namespace {

struct ContinuumKernel {
  const ModelParams& p;
  const SpectrumBounds& b;
  double t;

  Pair2 operator()(double theta) const {
    double eps = 0.0;
    const double w = (p.d == 1) ? spectral_weight_theta_1d(p, b, theta, eps)
                                : spectral_weight_theta_2d(p, b, theta, eps);
    const std::complex<double> ph =
        w / (2.0 * kPi) * std::exp(std::complex<double>(0.0, -eps * t));
    return {ph, eps * ph};
  }
};

}  // namespace

AmplitudeSample ExactDynamics::sample(double t) const {
  if (!(t >= 0.0)) throw DomainError("amplitude: t must be >= 0");
  if (trivial_) {
    const std::complex<double> phi = std::exp(-kI * p_.omega0 * t);
    return {t, phi, -kI * p_.omega0 * phi};
  }
  std::complex<double> phi{0.0, 0.0}, dphi{0.0, 0.0};
  for (const auto& s : states_) {
    const std::complex<double> term = s.weight * std::exp(-kI * s.energy * t);
    phi += term;
    dphi += -kI * s.energy * term;
  }
  const double H = bounds_.half_width();
  std::vector<double> splits = theta_splits_;
  const std::size_t n_osc =
      std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(4.0 * t * H)));
  auto osc = quad::uniform_breakpoints(0.0, kPi, n_osc);
  splits.insert(splits.end(), osc.begin(), osc.end());
  quad::Options opt;
  opt.abs_tol = 1e-10;
  opt.rel_tol = 1e-9;
  opt.max_segments = n_osc + 20000;
  auto res = quad::integrate(ContinuumKernel{p_, bounds_, t}, 0.0, kPi,
                             std::move(splits), opt);
  phi += res.value.a;
  dphi += -kI * res.value.b;
  return {t, phi, dphi};
}

std::complex<double> ExactDynamics::amplitude(double t) const {
  return sample(t).phi;
}

RateSample ExactDynamics::rates(double t) const {
  const AmplitudeSample s = sample(t);
  RateSample out;
  out.t = t;
  if (std::abs(s.phi) < 1e-12) {
    out.singular = true;
    return out;
  }
  const std::complex<double> ratio = s.dphi_dt / s.phi;
  out.kappa = -2.0 * ratio.real();
  out.xi = -2.0 * ratio.imag() - 2.0 * p_.omega0;
  return out;
}

DensityMatrix2 ExactDynamics::evolve(std::complex<double> alpha_plus,
                                     std::complex<double> alpha_minus,
                                     double t) const {
  const double norm = std::norm(alpha_plus) + std::norm(alpha_minus);
  if (std::abs(norm - 1.0) > 1e-12)
    throw DomainError("evolve: initial amplitudes must be normalised");
  const std::complex<double> phi = amplitude(t);
  DensityMatrix2 rho;
  rho.rho11 = std::norm(alpha_plus) * std::norm(phi);
  rho.rho12 = std::conj(alpha_minus) * alpha_plus * phi;
  return rho;
}

AmplitudeSample amplitude(const ModelParams& p, double t) {
  return ExactDynamics(p).sample(t);
}

RateSample rates(const ModelParams& p, double t) {
  return ExactDynamics(p).rates(t);
}

DensityMatrix2 evolve_density(const ModelParams& p,
                              std::complex<double> alpha_plus,
                              std::complex<double> alpha_minus, double t) {
  return ExactDynamics(p).evolve(alpha_plus, alpha_minus, t);
}

double Asymptotics::phi_sq(double t) const {
  if (states.empty()) return 0.0;
  if (states.size() == 1) return states[0].weight * states[0].weight;
  const double w12 = states[0].weight * states[1].weight;
  return w12 * (d_factor + 2.0 * std::cos(frequency * t));
}

double Asymptotics::kappa(double t) const {
  if (states.size() < 2) return 0.0;
  return 2.0 * frequency * std::sin(frequency * t) /
         (d_factor + 2.0 * std::cos(frequency * t));
}

double Asymptotics::xi_limit() const {
  if (states.size() != 1) return 0.0;
  return 2.0 * (states[0].energy - omega0);
}

Asymptotics asymptotics(const ModelParams& p) {
  Asymptotics a;
  a.omega0 = p.omega0;
  a.states = spectral::find_bound_states(p);
  if (a.states.size() == 2) {
    a.frequency = a.states[1].energy - a.states[0].energy;
    const double b1 = 1.0 / a.states[0].weight;
    const double b2 = 1.0 / a.states[1].weight;
    a.d_factor = b1 / b2 + b2 / b1;
  }
  return a;
}

ResidualReport master_equation_residual(const ModelParams& p,
                                        const std::vector<double>& t_grid,
                                        double phi_floor) {
  if (t_grid.size() < 2 || t_grid.front() != 0.0)
    throw DomainError("master_equation_residual: grid must start at 0");
  ExactDynamics dyn(p);
  // Generic initial superposition so both matrix elements are exercised.
  const std::complex<double> a_plus = std::sqrt(0.7);
  const std::complex<double> a_minus = std::sqrt(0.3);

  ResidualReport report;
  double rho11 = std::norm(a_plus);
  std::complex<double> rho12 = std::conj(a_minus) * a_plus;

  const double h_target = 1e-3 / p.J;
  bool interval_flagged = false;

  auto rhs = [&](double kappa, double xi, double r11,
                 std::complex<double> r12) {
    return std::pair{-kappa * r11,
                     (-kI * (p.omega0 + 0.5 * xi) - 0.5 * kappa) * r12};
  };

  // Rate lookup that records amplitude floor crossings.
  auto rate_at = [&](double t) {
    const AmplitudeSample s = dyn.sample(t);
    if (std::abs(s.phi) < phi_floor) interval_flagged = true;
    const std::complex<double> ratio = (std::abs(s.phi) > 0.0)
                                           ? s.dphi_dt / s.phi
                                           : std::complex<double>{0.0, 0.0};
    return std::pair{-2.0 * ratio.real(),
                     -2.0 * ratio.imag() - 2.0 * p.omega0};
  };

  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    interval_flagged = false;
    double t = t_grid[i];
    const double t_end = t_grid[i + 1];
    while (t < t_end - 1e-14) {
      double h = std::min(h_target, t_end - t);
      auto [k1k, k1x] = rate_at(t);
      // Stiff spikes near amplitude zeros: halve until kappa * h is tame.
      while (std::abs(k1k) * h > 0.25 && h > 1e-7) h *= 0.5;
      auto [k2k, k2x] = rate_at(t + 0.5 * h);
      auto [k4k, k4x] = rate_at(t + h);
      auto s1 = rhs(k1k, k1x, rho11, rho12);
      auto s2 = rhs(k2k, k2x, rho11 + 0.5 * h * s1.first,
                    rho12 + 0.5 * h * s1.second);
      auto s3 = rhs(k2k, k2x, rho11 + 0.5 * h * s2.first,
                    rho12 + 0.5 * h * s2.second);
      auto s4 = rhs(k4k, k4x, rho11 + h * s3.first, rho12 + h * s3.second);
      rho11 += h / 6.0 * (s1.first + 2.0 * s2.first + 2.0 * s3.first + s4.first);
      rho12 += h / 6.0 *
               (s1.second + 2.0 * s2.second + 2.0 * s3.second + s4.second);
      t += h;
    }
    if (interval_flagged) {
      report.flagged.emplace_back(t_grid[i], t_end);
      continue;
    }
    const DensityMatrix2 exact = dyn.evolve(a_plus, a_minus, t_end);
    report.residual = std::max(report.residual,
                               std::abs(rho11 - exact.rho11));
    report.residual = std::max(report.residual,
                               std::abs(rho12 - exact.rho12));
  }
  return report;
}

CriticalField critical_field(ModelParams p, const std::vector<double>& h_grid,
                             double t_wait) {
  if (h_grid.size() < 3)
    throw DomainError("critical_field: need at least three grid points");
  CriticalField out;
  auto rho11_at = [&](double h) {
    p.h = h;
    return std::norm(ExactDynamics(p).amplitude(t_wait));
  };
  for (double h : h_grid) out.profile.emplace_back(h, rho11_at(h));

  std::size_t imin = 0;
  for (std::size_t i = 1; i < out.profile.size(); ++i)
    if (out.profile[i].second < out.profile[imin].second) imin = i;
  if (imin == 0 || imin + 1 == out.profile.size()) return out;  // monotone edge

  double lo = out.profile[imin - 1].first;
  double hi = out.profile[imin + 1].first;
  for (int it = 0; it < 60 && hi - lo > 1e-10 * (1.0 + std::abs(hi)); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (rho11_at(m1) < rho11_at(m2))
      hi = m2;
    else
      lo = m1;
  }
  out.h_cri = 0.5 * (lo + hi);
  return out;
}

}  // namespace magnonbath::dynamics
