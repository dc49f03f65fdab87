// perturb.hpp — second-order (weak-coupling) dynamics at T >= 0: correlation
// function, cumulative rates, Markov and short-time limits, thermal evolution.
#pragma once

#include <complex>
#include <mutex>
#include <utility>
#include <vector>

#include "magnonbath/dynamics.hpp"
#include "magnonbath/model.hpp"

namespace magnonbath::perturb {

using dynamics::DensityMatrix2;
using dynamics::RateSample;

struct ThermalParams {
  double temperature = 0.0;  // k_B = 1; zero selects the closed T = 0 forms
};

// n(Omega_min) / (2S): thermal magnon occupation against the spin length.
// The dilute-magnon picture holds while this stays below ~0.1 (callers warn
// above that).  T > 0 with a gapless band (Omega_min <= 0) is rejected.
double spin_wave_ratio(const ModelParams& p, const ThermalParams& tp);

// Bath correlation function: the zone average of
//   coupling_sq(k) (n(Omega_k) + 1) exp(i (omega0 - Omega_k) t).
// The zero-point part factorizes into a Bessel product per axis,
//   2^{d+1} g^2 S e^{i(omega0 - h_tilde) t} [J0(4JSt) + i J1(4JSt)]^d;
// only the occupation part needs quadrature.
std::complex<double> correlation_psi(const ModelParams& p,
                                     const ThermalParams& tp, double t);

// Cumulative second-order rates
//   kappa(t) = 2 int_0^t Re Psi,   xi(t) = 2 int_0^t Im Psi
// and the closed-form master-equation solutions they feed.  One instance
// caches prefix integrals of Psi and s Psi(s) on a uniform grid, extended on
// demand, so rate samples, running integrals and density-matrix evolution
// reuse the same tables.  Safe for concurrent use.
class WeakRates {
 public:
  explicit WeakRates(const ModelParams& p, ThermalParams tp = {});

  RateSample rates(double t) const;                   // thermal kappa, xi
  RateSample rates_zero_temperature(double t) const;  // kappa0, xi0
  double kappa_integral(double t) const;              // int_0^t kappa
  double xi_integral(double t) const;

  // rho11(t) = e^{-X} rho11(0) + int_0^t (kappa - kappa0) e^{X(tau) - X(t)},
  // rho12(t) = rho12(0) exp(-i omega0 t - (i/2) int (2 xi - xi0) - X/2),
  // with X = int_0^t (2 kappa - kappa0); at T = 0 the occupation terms drop
  // and this is plain decay under kappa with phase omega0 + xi/2.
  DensityMatrix2 evolve(const DensityMatrix2& rho0, double t) const;

  const ModelParams& params() const { return p_; }
  const ThermalParams& thermal() const { return tp_; }

 private:
  struct Table {
    std::vector<std::complex<double>> p0;  // int_0^{i dt} Psi0(s) ds
    std::vector<std::complex<double>> p1;  // int_0^{i dt} s Psi0(s) ds
  };
  // d = 1 occupation part as a fixed midpoint mode grid: time integrals are
  // then closed per mode.  Valid (to rounding) while t <= t_valid; rebuilt
  // denser on demand.
  struct OccModes {
    std::vector<double> alpha;   // omega0 - Omega_k at the nodes
    std::vector<double> weight;  // coupling_sq(k) n(Omega_k) / M
    double t_valid = -1.0;
  };
  // Inhomogeneous rho11 term at the cell boundaries: y[i] = inhom(i dt),
  // x[i] = X(i dt), advanced cell by cell so evolution sweeps are O(1) deep.
  struct Checkpoints {
    std::vector<double> y, x;
  };
  struct Cumulative {
    double kappa_int = 0.0, xi_int = 0.0;    // thermal
    double kappa0_int = 0.0, xi0_int = 0.0;  // zero temperature
  };

  void extend_locked(double t) const;
  std::pair<std::complex<double>, std::complex<double>> occupation_locked(
      double t) const;
  std::pair<std::complex<double>, std::complex<double>> moments_locked(
      bool with_occupation, double t) const;
  Cumulative cumulative_locked(double t) const;
  double x_of_locked(double t) const;
  double inhom_locked(double t, double x_t) const;

  ModelParams p_;
  ThermalParams tp_;
  double dt_ = 0.0;
  double abs_floor_ = 0.0;  // absolute tolerance for one cell integral
  mutable std::mutex mu_;
  mutable Table zero_;      // zero-point prefix integrals (exact Bessel form)
  mutable OccModes modes_;  // occupation modes, d = 1 and T > 0 only
  mutable Checkpoints inhom_;
};

RateSample weak_rates(const ModelParams& p, const ThermalParams& tp, double t);
DensityMatrix2 weak_evolve(const ModelParams& p, const ThermalParams& tp,
                           const DensityMatrix2& rho0, double t);

// Long-time (Markov) limits of the cumulative rates: the golden-rule value
// kappa = -2 Im Sigma(omega0 + i0+) and level shift xi = 2 Re Sigma.  At the
// 1d lower band edge both diverge (inverse-root density of states); at the
// 2d lower edge kappa stays finite, exactly 4 g^2 / J, while xi diverges
// logarithmically.  d = 3 is evaluated from the regularized resolvent.
struct MarkovLimits {
  double kappa = 0.0;
  double xi = 0.0;
  bool kappa_divergent = false;
  bool xi_divergent = false;
};
MarkovLimits markov_limits(const ModelParams& p);

// Gaussian short-time law: rho11 relaxes toward Delta/Gamma with envelope
// exp(-2 Gamma t^2), coherences decay as exp(-Gamma t^2).
struct ShortTimeCoefficients {
  double Gamma = 0.0;  // (1/2) zone average of coupling_sq (2n + 1)
  double Delta = 0.0;  // (1/2) zone average of coupling_sq n
  double tau_D = 0.0;  // sqrt(2) / sqrt(2 Gamma)
};
ShortTimeCoefficients short_time(const ModelParams& p,
                                 const ThermalParams& tp = {});

}  // namespace magnonbath::perturb
