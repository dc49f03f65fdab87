// oracle.hpp — finite-lattice diagonalization: the brute-force reference for
// every continuum result.
#pragma once

#include <complex>
#include <vector>

#include "magnonbath/model.hpp"

namespace magnonbath::oracle {

struct OracleSpec {
  int n_modes = 64;  // sites per dimension; N^d modes plus the impurity level
};

// Single-excitation Hamiltonian in the {impurity, k-mode} basis: an
// arrowhead matrix with (0,0) = omega0, (j,j) = Omega_{k_j} and border
// (0,j) = coupling[j] = sqrt(coupling_sq(k_j) / N^d) on the periodic grid
// k_j = -pi + 2 pi j / N per axis.
struct Arrowhead {
  double omega0 = 0.0;
  std::vector<double> level;
  std::vector<double> coupling;
};
Arrowhead build_hamiltonian(const ModelParams& p, const OracleSpec& spec);

// One eigenvalue of the coupled subspace with its impurity overlap
// |<e|v>|^2.  Weights over all lines sum to 1.
struct SpectralLine {
  double energy = 0.0;
  double weight = 0.0;
};

// Eigendecomposition restricted to the subspace the impurity couples to:
// degenerate levels merge into one effective mode (b^2-weighted), then each
// gap of the secular function lambda - omega0 - sum b^2/(lambda - d) holds
// exactly one root, found by bisection (never touching the poles) plus a
// guarded Newton polish.  Dark combinations carry zero weight and are
// omitted.  O(M^2) for M distinct levels.
std::vector<SpectralLine> solve_arrowhead(const Arrowhead& h);

// Decomposes once, then evaluates phi_N(t) = sum_i w_i e^{-i lambda_i t}
// for any number of times.
class FiniteLattice {
 public:
  FiniteLattice(const ModelParams& p, const OracleSpec& spec);

  std::complex<double> amplitude(double t) const;
  std::vector<double> energies() const;
  std::vector<double> weights() const;
  const std::vector<SpectralLine>& lines() const { return lines_; }

 private:
  std::vector<SpectralLine> lines_;
};

std::complex<double> amplitude_finite(const ModelParams& p,
                                      const OracleSpec& spec, double t);

}  // namespace magnonbath::oracle
