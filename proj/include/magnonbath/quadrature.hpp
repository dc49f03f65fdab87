// quadrature.hpp — globally adaptive Gauss-Kronrod 7/15 integration.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace magnonbath::quad {

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  std::size_t max_segments = 100000;  // total refinement budget
};

template <typename T>
struct Result {
  T value{};
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = false;
};

// Two complex accumulators advanced through one quadrature pass, for fused
// integrands that share their expensive factors.
struct Pair2 {
  std::complex<double> a{}, b{};
  Pair2& operator+=(const Pair2& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  Pair2& operator-=(const Pair2& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend Pair2 operator+(Pair2 x, const Pair2& y) { return x += y; }
  friend Pair2 operator-(Pair2 x, const Pair2& y) { return x -= y; }
  friend Pair2 operator*(Pair2 x, double s) {
    x.a *= s;
    x.b *= s;
    return x;
  }
  friend Pair2 operator*(double s, Pair2 x) { return x * s; }
  friend Pair2 operator/(Pair2 x, double s) {
    x.a /= s;
    x.b /= s;
    return x;
  }
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (positive abscissae).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double abs_norm(double v) { return std::abs(v); }
inline double abs_norm(const std::complex<double>& v) { return std::abs(v); }
inline double abs_norm(const Pair2& v) {
  return std::max(std::abs(v.a), std::abs(v.b));
}

template <typename F, typename T>
void gk15(F& f, double a, double b, T& value, double& error) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  T fc = f(c);
  T kron = kWgk[7] * fc;
  T gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = hw * kXgk[i];
    T sum = f(c - dx) + f(c + dx);
    kron += kWgk[i] * sum;
    if (i % 2 == 1) gauss += kWg[i / 2] * sum;
  }
  value = kron * hw;
  error = abs_norm((kron - gauss) * hw);
}

template <typename T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Integrates f over [a, b].  The interval is pre-split at the supplied
// breakpoints (values outside (a, b) are ignored), then the segment with the
// largest error estimate is bisected until the global estimate satisfies
// max(abs_tol, rel_tol * |I|) or the budget runs out.
template <typename F>
auto integrate(F&& f, double a, double b, std::vector<double> breakpoints = {},
               const Options& opt = {}) -> Result<decltype(f(a))> {
  using T = decltype(f(a));
  Result<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());

  std::priority_queue<detail::Segment<T>> heap;
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = breakpoints[i], hi = breakpoints[i + 1];
    if (hi <= a || lo >= b) continue;
    detail::Segment<T> s{std::max(lo, a), std::min(hi, b), T{}, 0.0};
    detail::gk15(f, s.a, s.b, s.value, s.error);
    out.evaluations += 15;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  const double span = b - a;
  while (heap.size() < opt.max_segments) {
    if (total_err <= std::max(opt.abs_tol, opt.rel_tol * detail::abs_norm(total)))
      break;
    detail::Segment<T> worst = heap.top();
    // A segment squeezed to rounding width cannot be refined further.
    if (worst.b - worst.a < 1e-15 * span) break;
    heap.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      detail::Segment<T> s{lo, hi, T{}, 0.0};
      detail::gk15(f, s.a, s.b, s.value, s.error);
      out.evaluations += 15;
      total += s.value;
      total_err += s.error;
      heap.push(s);
    }
  }

  out.value = total;
  out.error = total_err;
  out.converged =
      total_err <= std::max(opt.abs_tol, opt.rel_tol * detail::abs_norm(total));
  return out;
}

// Evenly spaced interior breakpoints giving n segments across [a, b].
inline std::vector<double> uniform_breakpoints(double a, double b, std::size_t n) {
  std::vector<double> pts;
  pts.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t i = 1; i < n; ++i)
    pts.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
  return pts;
}

}  // namespace magnonbath::quad
