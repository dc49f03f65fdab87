// dynamics.hpp — exact reduced dynamics: amplitude, rates, density matrix, critical field.
#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "magnonbath/model.hpp"
#include "magnonbath/spectral.hpp"

namespace magnonbath::dynamics {

// phi and its analytic time derivative at one instant; phi(0) = 1.
struct AmplitudeSample {
  double t = 0.0;
  std::complex<double> phi{1.0, 0.0};
  std::complex<double> dphi_dt{0.0, 0.0};
};

struct RateSample {
  double t = 0.0;
  double kappa = 0.0;    // instantaneous decay rate -2 Re(phi'/phi)
  double xi = 0.0;       // frequency shift -2 Im(phi'/phi) - 2 omega0
  bool singular = false; // |phi(t)| < 1e-12: rates unreliable at this sample
};

// Two-level density matrix in the {excited, ground} basis; rho22 = 1 - rho11.
struct DensityMatrix2 {
  double rho11 = 0.0;
  std::complex<double> rho12{0.0, 0.0};
  double rho22() const { return 1.0 - rho11; }
};

// Long-time form of |phi|^2 and the rates once only the pole contributions
// survive.  With two poles the beat frequency is energy[1] - energy[0].
struct Asymptotics {
  std::vector<spectral::BoundState> states;
  double omega0 = 0.0;
  double frequency = 0.0;  // 0 with fewer than two poles
  double d_factor = 0.0;   // B1/B2 + B2/B1 (two poles)

  double phi_sq(double t) const;
  double kappa(double t) const;
  double xi_limit() const;  // single pole: 2 (energy - omega0)
};

// Precomputed exact dynamics for one (params, omega0) pair: bound states,
// quadrature breakpoints and the continuum integrand are set up once.
class ExactDynamics {
 public:
  explicit ExactDynamics(const ModelParams& p);

  // phi and dphi/dt from one quadrature pass (the derivative integrand is
  // analytic, not a finite difference).
  AmplitudeSample sample(double t) const;
  std::complex<double> amplitude(double t) const;
  RateSample rates(double t) const;
  DensityMatrix2 evolve(std::complex<double> alpha_plus,
                        std::complex<double> alpha_minus, double t) const;

  const std::vector<spectral::BoundState>& bound_states() const { return states_; }
  const ModelParams& params() const { return p_; }

 private:
  ModelParams p_;
  SpectrumBounds bounds_;
  std::vector<spectral::BoundState> states_;
  std::vector<double> theta_splits_;  // fixed integrand breakpoints in theta
  bool trivial_ = false;              // g == 0: phi = exp(-i omega0 t)
};

// One-shot conveniences (each builds an ExactDynamics internally).
AmplitudeSample amplitude(const ModelParams& p, double t);
RateSample rates(const ModelParams& p, double t);
DensityMatrix2 evolve_density(const ModelParams& p,
                              std::complex<double> alpha_plus,
                              std::complex<double> alpha_minus, double t);

Asymptotics asymptotics(const ModelParams& p);

// Integrates the time-local master equation with the exact rates and compares
// against the closed-form evolution on the grid.  Grid subintervals where
// |phi| drops below phi_floor are flagged and excluded from the sup-norm.
struct ResidualReport {
  double residual = 0.0;
  std::vector<std::pair<double, double>> flagged;
};
ResidualReport master_equation_residual(const ModelParams& p,
                                        const std::vector<double>& t_grid,
                                        double phi_floor = 1e-4);

// Scans rho11(t_wait) over the field grid; the interior minimiser (refined by
// ternary search between its grid neighbours) estimates the critical field.
// A monotone profile yields no critical point.
struct CriticalField {
  std::optional<double> h_cri;
  std::vector<std::pair<double, double>> profile;  // (h, rho11(t_wait))
};
CriticalField critical_field(ModelParams p, const std::vector<double>& h_grid,
                             double t_wait);

}  // namespace magnonbath::dynamics
