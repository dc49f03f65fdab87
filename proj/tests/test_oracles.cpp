// test_oracles.cpp — the reference implementations are themselves checked
// against frozen constants and closed 2x2 eigensystems before anything else
// trusts them.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "dense_oracle.hpp"
#include "oracles.hpp"

using namespace magnonbath;

TEST_CASE("trapezoid Bessel integral reproduces frozen table values") {
  CHECK(testref::bessel_j_ref(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(testref::bessel_j_ref(0, 1.0) ==
        doctest::Approx(0.7651976865579666).epsilon(1e-13));
  CHECK(testref::bessel_j_ref(1, 1.0) ==
        doctest::Approx(0.4400505857449335).epsilon(1e-13));
  CHECK(testref::bessel_j_ref(0, 10.0) ==
        doctest::Approx(-0.2459357644513483).epsilon(1e-12));
  CHECK(testref::bessel_j_ref(1, 10.0) ==
        doctest::Approx(0.04347274616886144).epsilon(1e-12));
  CHECK(std::abs(testref::bessel_j_ref(0, testref::kJ0FirstZero)) < 1e-13);
}

TEST_CASE("Simpson rule integrates sine exactly enough") {
  const double v = testref::simpson([](double x) { return std::sin(x); }, 0.0,
                                    testref::kPi, 512);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("zone average of the bare coupling hits the closed value") {
  for (int d = 1; d <= 3; ++d) {
    ModelParams p;
    p.d = d;
    p.J = 0.7;
    p.g = 0.9;
    p.h = 2.0;
    p.S = 1.5;
    const double expect = std::ldexp(p.g * p.g * p.S, d + 1);
    const double got =
        testref::zone_average_ref(p, [](double) { return 1.0; }, 48);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("lattice resolvent sum is retarded and stable under refinement") {
  ModelParams p;
  p.d = 1;
  p.J = 0.5;
  p.g = 1.0;
  p.h = 8.0;
  const double eps = 10.0;  // band centre
  const auto coarse = testref::lattice_sigma_ref(p, eps, 1e-2, 8192);
  const auto fine = testref::lattice_sigma_ref(p, eps, 1e-2, 16384);
  CHECK(coarse.imag() < 0.0);
  CHECK(std::abs(coarse - fine) < 1e-10);
}

TEST_CASE("dense eigensolver matches the closed 2x2 eigensystem") {
  oracle::Arrowhead arrow;
  arrow.omega0 = 1.0;
  arrow.level = {3.0};
  arrow.coupling = {0.5};
  const auto lines = testref::dense_arrowhead(arrow);
  REQUIRE(lines.energy.size() == 2);
  const double disc = std::sqrt(4.0 + 4.0 * 0.25);  // (w0-d)^2 + 4 b^2
  CHECK(lines.energy[0] == doctest::Approx(2.0 - 0.5 * disc).epsilon(1e-14));
  CHECK(lines.energy[1] == doctest::Approx(2.0 + 0.5 * disc).epsilon(1e-14));
  // Impurity weight of the lower state: (1 + (d - w0)/disc)/2.
  CHECK(lines.weight[0] == doctest::Approx(0.5 * (1.0 + 2.0 / disc)).epsilon(1e-13));
  CHECK(lines.weight[1] == doctest::Approx(0.5 * (1.0 - 2.0 / disc)).epsilon(1e-13));
  CHECK(std::abs(testref::lines_amplitude(lines, 0.0) - 1.0) < 1e-14);
}
