// zone.hpp — iterated adaptive quadrature of coupling-weighted kernels over the Brillouin zone.
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <type_traits>
#include <vector>

#include "magnonbath/model.hpp"
#include "magnonbath/quadrature.hpp"

namespace magnonbath::zone {

struct Options {
  double rel_tol = 1e-9;   // outer-axis target; inner axes run 3x tighter
  double abs_tol = 0.0;
  std::size_t max_segments = 4000;  // per axis
  // Kernel features at known values of the cosine sum C (Omega = h_tilde -
  // 4JS C): each axis is pre-split where the feature surface crosses it.
  std::vector<double> cosine_sum_breaks;
  std::size_t min_panels = 1;  // uniform oscillation seeds per axis
};

namespace detail {

template <typename K>
struct Iterated {
  const ModelParams& p;
  K& kernel;  // kernel(Omega_k) -> double or complex
  const Options& opt;
  double four_js, h_tilde;

  using T = std::invoke_result_t<K&, double>;

  T axis(int level, double cos_sum) const {
    const bool inner = (level == p.d - 1);
    auto f = [&](double k) -> T {
      const double ck = std::cos(k);
      const double w = 0.5 * (1.0 + ck);  // cos^2(k/2)
      if (inner) return w * kernel(h_tilde - four_js * (cos_sum + ck));
      return w * axis(level + 1, cos_sum + ck);
    };
    constexpr double kPi = std::numbers::pi;
    std::vector<double> splits =
        quad::uniform_breakpoints(0.0, kPi, opt.min_panels);
    const int depth = p.d - 1 - level;
    for (double cstar : opt.cosine_sum_breaks) {
      if (inner) {
        const double c = cstar - cos_sum;
        if (std::abs(c) < 1.0) splits.push_back(std::acos(c));
      } else {
        // Where the feature surface enters/leaves the deeper axes.
        for (double lim : {cstar - cos_sum - depth, cstar - cos_sum + depth})
          if (std::abs(lim) < 1.0) splits.push_back(std::acos(lim));
      }
    }
    quad::Options q;
    q.rel_tol = inner ? opt.rel_tol / 3.0 : opt.rel_tol;
    q.abs_tol = opt.abs_tol;
    q.max_segments = opt.max_segments;
    return quad::integrate(f, 0.0, kPi, std::move(splits), q).value / kPi;
  }
};

}  // namespace detail

// Zone average sum_k (N |g_k|^2) kernel(Omega_k) / N in the continuum limit,
// i.e. (2 pi)^-d times the zone integral of coupling_sq(k) kernel(Omega_k);
// evaluated on [0, pi]^d since every factor is even per component.
template <typename K>
auto coupling_average(const ModelParams& p, K&& kernel, const Options& opt = {})
    -> std::invoke_result_t<K&, double> {
  const SpectrumBounds b = spectrum_bounds(p);
  detail::Iterated<std::remove_reference_t<K>> it{
      p, kernel, opt, 4.0 * p.J * p.S, b.h_tilde};
  return std::ldexp(p.g * p.g * p.S, 2 * p.d + 1) * it.axis(0, 0.0);
}

}  // namespace magnonbath::zone
