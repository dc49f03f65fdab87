#include "magnonbath/model.hpp"

#include <cmath>
#include <numbers>

namespace magnonbath {

namespace {

void check_wavevector(const ModelParams& p, std::span<const double> k) {
  if (static_cast<int>(k.size()) != p.d)
    throw DomainError("wavevector must have exactly d components");
  for (double ki : k)
    if (!(std::abs(ki) <= std::numbers::pi))
      throw DomainError("wavevector component outside [-pi, pi]");
}

}  // namespace

void ModelParams::validate() const {
  if (d < 1 || d > 3) throw DomainError("d must be 1, 2 or 3");
  if (!(J > 0.0)) throw DomainError("J must be positive");
  if (!(g >= 0.0)) throw DomainError("g must be non-negative");
  if (!(h >= 0.0)) throw DomainError("h must be non-negative");
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be positive");
  if (!(gamma_z >= 1.0)) throw DomainError("gamma_z must be >= 1");
  const double two_s = 2.0 * S;
  if (!(S > 0.0) || std::abs(two_s - std::round(two_s)) > 1e-9)
    throw DomainError("S must be a positive half-integer");
}

double structure_factor(const ModelParams& p, std::span<const double> k) {
  check_wavevector(p, k);
  double sum = 0.0;
  for (double ki : k) sum += std::cos(ki);
  // The 2d neighbour phases pair into 2 cos(k_i); eta = 2d cancels the 2.
  return sum / p.d;
}

double dispersion(const ModelParams& p, std::span<const double> k) {
  return p.h - 2.0 * p.J * p.eta() * p.S * (structure_factor(p, k) - p.gamma_z);
}

double coupling_sq(const ModelParams& p, std::span<const double> k) {
  check_wavevector(p, k);
  double w = std::ldexp(p.g * p.g * p.S, 2 * p.d + 1);
  for (double ki : k) {
    const double c = std::cos(0.5 * ki);
    w *= c * c;
  }
  return w;
}

SpectrumBounds spectrum_bounds(const ModelParams& p) {
  const double half = 2.0 * p.J * p.eta() * p.S;
  return {p.h + half * (p.gamma_z - 1.0), p.h + half * (p.gamma_z + 1.0),
          p.h + half * p.gamma_z};
}

}  // namespace magnonbath
