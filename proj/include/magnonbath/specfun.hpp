// specfun.hpp — Bessel J0/J1 and complete elliptic integrals in the parameter convention.
#pragma once

#include <complex>

#include "magnonbath/errors.hpp"

namespace magnonbath::specfun {

// J_n(x) for n in {0, 1}.  Absolute error <= 1e-12 over |x| <= 1e3.
double bessel_j(int order, double x);

// Complete elliptic integrals K(m) and E(m) as functions of the *parameter*
// m = k^2 (not the modulus k).  Real for m <= 1.  For m > 1 the retarded
// branch (Im z < 0) is returned via
//   K(z) = z^(-1/2) [K(1/z) - i K(1 - 1/z)]
//   E(z) = sqrt(z) E(1/z) - (z-1)/sqrt(z) K(1/z)
//          + i [sqrt(z) E(1 - 1/z) - K(1 - 1/z)/sqrt(z)]
// K diverges logarithmically at m = 1 (SingularityError); E(1) = 1 is fine.
std::complex<double> elliptic_k(double m);
std::complex<double> elliptic_e(double m);

}  // namespace magnonbath::specfun
