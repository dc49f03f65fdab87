// selfenergy.hpp — retarded level self-energy: closed forms (1d, 2d) and zone quadrature.
#pragma once

#include <complex>

#include "magnonbath/model.hpp"

namespace magnonbath::selfenergy {

// Half-width of the guard band around non-removable singular points
// (band edges; additionally the band centre h_tilde for d = 2).
inline double guard_band(const ModelParams& p) { return 1e-9 * p.J; }

// Closed-form Sigma_ret(eps + i0+) for d = 1.  Im <= 0 everywhere; Re is
// constant g^2/J inside the band and diverges at the lower edge from outside.
std::complex<double> sigma_1d(const ModelParams& p, double eps);

// Closed-form Sigma_ret(eps + i0+) for d = 2 built from complete elliptic
// integrals.  Finite at the upper edge; log-divergent below the lower edge;
// eps = h_tilde is a guard-banded singular point of the expression (the
// one-sided limits exist: Re -> 2 g^2/J, Im -> -4 g^2 / (pi J)).
std::complex<double> sigma_2d(const ModelParams& p, double eps);

// Dispatch to the closed form matching p.d (1 or 2 only).
std::complex<double> sigma_exact(const ModelParams& p, double eps);

// Direct Brillouin-zone quadrature of coupling_sq / (eps - Omega_k + i nu)
// for any d in 1..3.  Relative error target 1e-7 at fixed nu > 0.
std::complex<double> sigma_numeric(const ModelParams& p, double eps, double nu = 1e-3);

}  // namespace magnonbath::selfenergy
