#include "magnonbath/spectral.hpp"

#include <cmath>
#include <numbers>

#include "magnonbath/selfenergy.hpp"
#include "magnonbath/specfun.hpp"

namespace magnonbath::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

// Level-shift function whose roots are the bound states.  Evaluates the
// closed-form Re Sigma directly (no guard band: the root finder itself
// controls how close to the edges it steps).
double root_fn(const ModelParams& p, double eps) {
  const SpectrumBounds b = spectrum_bounds(p);
  const double x = eps - b.h_tilde;
  if (p.d == 1) {
    const double a = 4.0 * p.J * p.S;
    const double r = (x - a) / (x + a);
    return eps - p.omega0 - p.g * p.g / p.J * (1.0 - std::sqrt(r));
  }
  const double a = 8.0 * p.J * p.S;
  const double m = (a * a) / (x * x);
  const double c = p.g * p.g / (2.0 * kPi * p.S * p.J * p.J);
  const double re = c * (0.5 * kPi * a - x * specfun::elliptic_e(m).real() +
                         (x - a) * specfun::elliptic_k(m).real());
  return eps - p.omega0 - re;
}

// Bisection refined by the secant step; f is strictly increasing on the
// bracket with f(lo) < 0 < f(hi).
double solve_increasing(const ModelParams& p, double lo, double hi) {
  double flo = root_fn(p, lo);
  double fhi = root_fn(p, hi);
  for (int it = 0; it < 200 && hi - lo > 4e-16 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    if (it % 2 == 1 && fhi != flo) {
      // Secant step, kept only if it lands safely inside the bracket.
      const double s = lo - flo * (hi - lo) / (fhi - flo);
      if (s > lo + 0.1 * (hi - lo) && s < hi - 0.1 * (hi - lo)) mid = s;
    }
    const double fm = root_fn(p, mid);
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double spectral_density(const ModelParams& p, double eps) {
  const SpectrumBounds b = spectrum_bounds(p);
  if (!b.contains(eps)) throw DomainError("spectral_density: eps outside the open band");
  if (p.g == 0.0) {
    if (eps == p.omega0)
      throw SingularityError("spectral_density: delta peak at omega0 when g = 0");
    return 0.0;
  }
  const std::complex<double> s = selfenergy::sigma_exact(p, eps);
  const double dr = eps - p.omega0 - s.real();
  return -2.0 * s.imag() / (dr * dr + s.imag() * s.imag());
}

double weight_b(const ModelParams& p, double eps) {
  p.validate();
  const SpectrumBounds b = spectrum_bounds(p);
  const double x = eps - b.h_tilde;
  if (p.d == 1) {
    const double a = 4.0 * p.J * p.S;
    if (std::abs(x) <= a) throw DomainError("weight_b: eps inside the band");
    const double r = std::sqrt((x - a) / (x + a));
    return 1.0 + 4.0 * p.S * p.g * p.g * r / (x * x - a * a);
  }
  if (p.d == 2) {
    const double a = 8.0 * p.J * p.S;
    if (std::abs(x) <= a) throw DomainError("weight_b: eps inside the band");
    const double m = (a * a) / (x * x);
    const double c = p.g * p.g / (2.0 * kPi * p.S * p.J * p.J);
    return 1.0 + c * (x * specfun::elliptic_e(m).real() / (x + a) -
                      (x - a) * specfun::elliptic_k(m).real() / x);
  }
  throw DomainError("weight_b: closed form only for d in {1, 2}");
}

std::vector<BoundState> find_bound_states(const ModelParams& p) {
  p.validate();
  if (p.d == 3) throw DomainError("find_bound_states: d = 3 has no closed Re Sigma");
  if (p.g == 0.0) return {{p.omega0, 1.0}};

  const SpectrumBounds b = spectrum_bounds(p);
  const double scale = std::abs(p.omega0) + p.g * p.g / p.J + 4.0 * p.J * p.eta() * p.S;
  std::vector<BoundState> states;

  // Below the band: Re Sigma -> -inf at the edge, so the shift function is
  // positive there; march the far end outward until it goes negative.
  {
    // The edge offset stays above rounding resolution of omega_min itself.
    const double eps_edge = std::max(1e-13 * (1.0 + std::abs(b.omega_min)), 1e-13);
    double hi = b.omega_min - eps_edge;
    if (root_fn(p, hi) > 0.0) {
      double off = 2.0 * scale;
      double lo = b.omega_min - off;
      for (int it = 0; it < 60 && root_fn(p, lo) >= 0.0; ++it) {
        off *= 2.0;
        lo = b.omega_min - off;
      }
      const double e = solve_increasing(p, lo, hi);
      const double w = 1.0 / weight_b(p, e);
      if (w >= 1e-12) states.push_back({e, w});
    }
    // else: the root is squeezed closer to the edge than resolution; its
    // weight is < 1e-12 and it is dropped.
  }

  // Above the band: a root exists iff the shift function is negative at the
  // edge, i.e. omega0 > omega_max - Re Sigma(omega_max^+).
  {
    const double eps_edge = std::max(1e-13 * (1.0 + std::abs(b.omega_max)), 1e-13);
    double lo = b.omega_max + eps_edge;
    if (root_fn(p, lo) < 0.0) {
      double off = 2.0 * scale;
      double hi = b.omega_max + off;
      for (int it = 0; it < 60 && root_fn(p, hi) <= 0.0; ++it) {
        off *= 2.0;
        hi = b.omega_max + off;
      }
      const double e = solve_increasing(p, lo, hi);
      const double w = 1.0 / weight_b(p, e);
      if (w >= 1e-12) states.push_back({e, w});
    }
  }

  return states;
}

}  // namespace magnonbath::spectral
