#include "magnonbath/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>

namespace magnonbath::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

struct Group {
  double energy_b2 = 0.0;  // sum b^2 Omega
  double energy_plain = 0.0;
  double b2 = 0.0;
  std::size_t count = 0;
  double start = 0.0;

  double energy() const {
    return b2 > 0.0 ? energy_b2 / b2
                    : energy_plain / static_cast<double>(count);
  }
};

}  // namespace

Arrowhead build_hamiltonian(const ModelParams& p, const OracleSpec& spec) {
  p.validate();
  if (spec.n_modes < 1) throw DomainError("n_modes must be at least 1");
  const std::size_t n = static_cast<std::size_t>(spec.n_modes);
  std::size_t total = 1;
  for (int i = 0; i < p.d; ++i) {
    if (total > 50'000'000 / n) throw DomainError("oracle lattice too large");
    total *= n;
  }
  std::vector<double> axis(n);
  for (std::size_t j = 0; j < n; ++j)
    axis[j] = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
  Arrowhead h;
  h.omega0 = p.omega0;
  h.level.resize(total);
  h.coupling.resize(total);
  std::array<double, 3> k{};
  const double norm = static_cast<double>(total);
  for (std::size_t m = 0; m < total; ++m) {
    std::size_t r = m;
    for (int i = 0; i < p.d; ++i) {
      k[static_cast<std::size_t>(i)] = axis[r % n];
      r /= n;
    }
    const std::span<const double> kk(k.data(), static_cast<std::size_t>(p.d));
    h.level[m] = dispersion(p, kk);
    h.coupling[m] = std::sqrt(coupling_sq(p, kk) / norm);
  }
  return h;
}

std::vector<SpectralLine> solve_arrowhead(const Arrowhead& h) {
  const std::size_t n = h.level.size();
  if (h.coupling.size() != n)
    throw DomainError("level and coupling arrays must match");
  double scale = std::max(1.0, std::abs(h.omega0));
  for (double lvl : h.level) scale = std::max(scale, std::abs(lvl));
  const double merge_tol = 1e-12 * scale;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h.level[a] < h.level[b];
  });

  std::vector<Group> groups;
  for (std::size_t idx : order) {
    const double lvl = h.level[idx];
    const double c2 = h.coupling[idx] * h.coupling[idx];
    if (groups.empty() || lvl - groups.back().start > merge_tol) {
      groups.push_back({0.0, 0.0, 0.0, 0, lvl});
    }
    Group& gr = groups.back();
    gr.energy_b2 += c2 * lvl;
    gr.energy_plain += lvl;
    gr.b2 += c2;
    gr.count += 1;
  }

  double b2_max = 0.0;
  for (const Group& gr : groups) b2_max = std::max(b2_max, gr.b2);
  // Dark below either floor: relatively negligible couplings, or couplings at
  // rounding-noise size (e.g. cos(pi/2) modes), whose eigenvalue shift
  // b^2 / gap is unrepresentable and would corrupt the weight formula.
  const double b2_floor =
      std::max(1e-30 * b2_max, 1e-28 * scale * scale);
  std::vector<double> d, b2;
  for (const Group& gr : groups) {
    if (gr.b2 > b2_floor) {
      d.push_back(gr.energy());
      b2.push_back(gr.b2);
    }
  }
  if (d.empty()) return {{h.omega0, 1.0}};

  const std::size_t m = d.size();
  auto fval = [&](double x) {
    double s = x - h.omega0;
    for (std::size_t j = 0; j < m; ++j) s -= b2[j] / (x - d[j]);
    return s;
  };
  auto fder = [&](double x) {
    double s = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double r = x - d[j];
      s += b2[j] / (r * r);
    }
    return s;
  };

  double b_norm = 0.0;
  for (double v : b2) b_norm += v;
  b_norm = std::sqrt(b_norm);
  // Weyl bound: all eigenvalues lie within ||b|| of the diagonal range.
  double outer_lo = std::min(d.front(), h.omega0) - b_norm - 1e-6 * scale;
  for (int i = 0; i < 60 && fval(outer_lo) >= 0.0; ++i)
    outer_lo -= b_norm + scale;
  double outer_hi = std::max(d.back(), h.omega0) + b_norm + 1e-6 * scale;
  for (int i = 0; i < 60 && fval(outer_hi) <= 0.0; ++i)
    outer_hi += b_norm + scale;

  std::vector<SpectralLine> lines;
  lines.reserve(m + 1);
  for (std::size_t gap = 0; gap <= m; ++gap) {
    // f runs from -inf (or f(outer_lo) < 0) up to +inf across each gap, so
    // midpoint bisection keeps a valid bracket without touching the poles.
    double lo = (gap == 0) ? outer_lo : d[gap - 1];
    double hi = (gap == m) ? outer_hi : d[gap];
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      x = 0.5 * (lo + hi);
      if (x <= lo || x >= hi) break;  // interval pinched to adjacent doubles
      (fval(x) < 0.0 ? lo : hi) = x;
      if (hi - lo <= 4e-16 * (1.0 + std::abs(x))) break;
    }
    for (int it = 0; it < 3; ++it) {
      const double step = fval(x) / fder(x);
      const double next = x - step;
      if (!(next > lo && next < hi)) break;
      x = next;
    }
    lines.push_back({x, 1.0 / fder(x)});
  }
  return lines;
}

FiniteLattice::FiniteLattice(const ModelParams& p, const OracleSpec& spec)
    : lines_(solve_arrowhead(build_hamiltonian(p, spec))) {}

std::complex<double> FiniteLattice::amplitude(double t) const {
  std::complex<double> phi{0.0, 0.0};
  for (const SpectralLine& ln : lines_)
    phi += ln.weight * std::exp(std::complex<double>(0.0, -ln.energy * t));
  return phi;
}

std::vector<double> FiniteLattice::energies() const {
  std::vector<double> out(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) out[i] = lines_[i].energy;
  return out;
}

std::vector<double> FiniteLattice::weights() const {
  std::vector<double> out(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) out[i] = lines_[i].weight;
  return out;
}

std::complex<double> amplitude_finite(const ModelParams& p,
                                      const OracleSpec& spec, double t) {
  return FiniteLattice(p, spec).amplitude(t);
}

}  // namespace magnonbath::oracle
