// spectral.hpp — continuum spectral density, discrete bound states and weights.
#pragma once

#include <vector>

#include "magnonbath/model.hpp"

namespace magnonbath::spectral {

struct BoundState {
  double energy = 0.0;
  double weight = 0.0;  // pole residue 1 / B(energy), in (0, 1]
};

// A(eps) = -2 Im Sigma / ((eps - omega0 - Re Sigma)^2 + (Im Sigma)^2),
// eps strictly inside the open band.  Non-negative; zero when g = 0.
double spectral_density(const ModelParams& p, double eps);

// B(eps) = 1 - d Re Sigma / d eps in closed form, eps strictly outside the
// band (where B > 1).  Pole weights are 1 / B(root).
double weight_b(const ModelParams& p, double eps);

// Real roots of eps - omega0 - Re Sigma(eps) = 0 outside the band, ascending.
// Re Sigma diverges below the lower edge, so one root always exists there;
// a second root above the band appears iff
//   omega0 > omega_max - Re Sigma(omega_max + i0+)
// (for d = 1 the edge value is g^2/J).  Degenerate cases:
//   g = 0           -> the uncoupled level: single state {omega0, 1};
//   root closer to an edge than machine resolution (weight < 1e-12)
//                   -> dropped; its spectral weight lives in the continuum.
std::vector<BoundState> find_bound_states(const ModelParams& p);

}  // namespace magnonbath::spectral
