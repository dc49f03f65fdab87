// test_model.cpp — dispersion, coupling and band-bound behavior.

#include <doctest.h>

#include <array>
#include <cmath>
#include <span>

#include "magnonbath/model.hpp"
#include "oracles.hpp"

using namespace magnonbath;

namespace {

ModelParams chain_params() {
  ModelParams p;
  p.d = 1;
  p.J = 0.5;
  p.g = 1.0;
  p.h = 8.0;
  p.omega0 = 2.0;
  return p;
}

}  // namespace

TEST_CASE("band bounds and centre for the reference chain") {
  const SpectrumBounds b = spectrum_bounds(chain_params());
  CHECK(b.h_tilde == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(b.omega_min == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(b.omega_max == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(b.half_width() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.contains(10.0));
  CHECK(!b.contains(8.0));  // edges excluded
  CHECK(!b.contains(12.5));
}

TEST_CASE("dispersion spans exactly the advertised band") {
  for (int d = 1; d <= 3; ++d) {
    ModelParams p;
    p.d = d;
    p.J = 0.8;
    p.h = 1.3;
    p.S = 0.5;
    p.gamma_z = 1.2;
    const SpectrumBounds b = spectrum_bounds(p);

    std::array<double, 3> k{};
    std::span<const double> kk{k.data(), static_cast<std::size_t>(d)};
    CHECK(dispersion(p, kk) == doctest::Approx(b.omega_min).epsilon(1e-14));
    for (int ax = 0; ax < d; ++ax) k[ax] = testref::kPi;
    CHECK(dispersion(p, kk) == doctest::Approx(b.omega_max).epsilon(1e-14));

    double lo = 1e300, hi = -1e300;
    const int n = 31;
    const auto cells = static_cast<long long>(std::pow(n, d) + 0.5);
    for (long long r = 0; r < cells; ++r) {
      long long q = r;
      for (int ax = 0; ax < d; ++ax) {
        k[ax] = -testref::kPi + 2.0 * testref::kPi * (q % n) / (n - 1.0);
        q /= n;
      }
      const double w = dispersion(p, kk);
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
    CHECK(lo >= b.omega_min - 1e-12);
    CHECK(hi <= b.omega_max + 1e-12);
  }
}

TEST_CASE("structure factor is 1 at the zone centre and bounded by 1") {
  ModelParams p;
  p.d = 2;
  std::array<double, 2> k{0.0, 0.0};
  CHECK(structure_factor(p, k) == doctest::Approx(1.0).epsilon(1e-15));
  k = {2.1, -0.7};
  const double s = structure_factor(p, k);
  CHECK(s <= 1.0);
  CHECK(s >= -1.0);
}

TEST_CASE("coupling peaks at the zone centre and vanishes at the corner") {
  for (int d = 1; d <= 3; ++d) {
    ModelParams p;
    p.d = d;
    p.g = 0.7;
    p.S = 2.0;
    std::array<double, 3> k{};
    std::span<const double> kk{k.data(), static_cast<std::size_t>(d)};
    CHECK(coupling_sq(p, kk) ==
          doctest::Approx(std::ldexp(p.g * p.g * p.S, 2 * d + 1)).epsilon(1e-14));
    for (int ax = 0; ax < d; ++ax) k[ax] = testref::kPi;
    CHECK(coupling_sq(p, kk) == doctest::Approx(0.0).epsilon(1e-30));
  }
}

TEST_CASE("zone-averaged coupling equals 2^(d+1) g^2 S") {
  for (int d = 1; d <= 3; ++d) {
    ModelParams p;
    p.d = d;
    p.J = 0.6;
    p.g = 1.1;
    p.h = 0.4;
    p.S = 1.0;
    const double got =
        testref::zone_average_ref(p, [](double) { return 1.0; }, 40);
    CHECK(got == doctest::Approx(std::ldexp(p.g * p.g * p.S, d + 1)).epsilon(1e-12));
  }
}

TEST_CASE("parameter validation rejects out-of-domain values") {
  ModelParams p = chain_params();
  CHECK_NOTHROW(p.validate());
  p.d = 4;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.J = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.g = -0.1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.h = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.omega0 = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.S = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = chain_params();
  p.gamma_z = 0.99;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("coordination number follows the dimension") {
  ModelParams p;
  for (int d = 1; d <= 3; ++d) {
    p.d = d;
    CHECK(p.eta() == 2 * d);
  }
}
