// zeno.hpp — repeated-measurement dynamics: survival probability, effective
// decay rate, and the Zeno / inverse-Zeno crossover time.
#pragma once

#include <optional>

#include "magnonbath/dynamics.hpp"
#include "magnonbath/model.hpp"

namespace magnonbath::zeno {

// Survival probability after n_meas projective measurements spaced tau:
// P = |phi(tau)|^{2 n}.
double survival(const dynamics::ExactDynamics& dyn, double tau, int n_meas);
double survival(const ModelParams& p, double tau, int n_meas);

// kappa_eff(tau) = -(1/tau) ln |phi(tau)|^2, always >= 0.  When |phi(tau)|^2
// underflows the log is clamped and the sample flagged.
struct EffectiveRate {
  double value = 0.0;
  bool saturated = false;
};
EffectiveRate effective_rate(const dynamics::ExactDynamics& dyn, double tau);
EffectiveRate effective_rate(const ModelParams& p, double tau);

// Weak-coupling effective rate: the zone average of
//   tau coupling_sq(k) sinc^2((omega0 - Omega_k) tau / 2),
// equal to (1/tau) int_0^tau kappa_weak(t) dt (same double integral,
// order swapped).  Quadrature splits at the sinc zeros; once those grow
// dense the integral is evaluated in the time domain instead.
double weak_effective_rate(const ModelParams& p, double tau);

// Smallest tau with weak_effective_rate(tau) = kappa_mark: measurements
// slower than tau* accelerate the decay (inverse Zeno).  No crossover when
// kappa_mark = 0 (always inverse Zeno) or none is found by tau = 1e4 / J.
std::optional<double> crossover_tau(const ModelParams& p);

}  // namespace magnonbath::zeno
