// model.hpp — lattice model data: magnon dispersion, impurity coupling, band bounds.
#pragma once

#include <span>

#include "magnonbath/errors.hpp"

namespace magnonbath {

// Parameters of the hypercubic lattice and the two-level impurity coupled to
// it.  Energies share one unit (hbar = 1), times are inverse energies.
// Nearest-neighbour range, unit lattice constant, coordination eta = 2d.
struct ModelParams {
  int d = 1;             // lattice dimension, 1..3
  double J = 1.0;        // exchange energy, > 0
  double g = 1.0;        // impurity coupling, >= 0
  double h = 0.0;        // uniform field offset, >= 0
  double omega0 = 1.0;   // impurity level spacing, > 0
  double S = 1.0;        // site spin length, positive half-integer
  double gamma_z = 1.0;  // axial anisotropy, >= 1

  int eta() const { return 2 * d; }
  void validate() const;  // throws DomainError on out-of-domain values
};

// Continuum band [omega_min, omega_max] and its centre h_tilde.
struct SpectrumBounds {
  double omega_min = 0.0;
  double omega_max = 0.0;
  double h_tilde = 0.0;

  double half_width() const { return 0.5 * (omega_max - omega_min); }
  bool contains(double eps) const { return eps > omega_min && eps < omega_max; }
};

// Geometric structure factor (1/eta) sum_delta exp(i k.delta); real on the
// hypercubic lattice.  k must have exactly p.d components in [-pi, pi].
double structure_factor(const ModelParams& p, std::span<const double> k);

// Mode energy Omega_k = h - 2 J eta S (structure_factor - gamma_z).
double dispersion(const ModelParams& p, std::span<const double> k);

// Mode-density-normalised coupling N |g_k|^2 = 2^(2d+1) g^2 S prod cos^2(k_i/2).
double coupling_sq(const ModelParams& p, std::span<const double> k);

SpectrumBounds spectrum_bounds(const ModelParams& p);

}  // namespace magnonbath
