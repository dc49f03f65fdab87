// test_oracle.cpp — finite-lattice reference model: arrowhead build and solve.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "dense_oracle.hpp"
#include "magnonbath/oracle.hpp"

using namespace magnonbath;

namespace {

ModelParams chain_params(double omega0) {
  ModelParams p;
  p.d = 1;
  p.J = 0.5;
  p.g = 1.0;
  p.h = 8.0;
  p.omega0 = omega0;
  return p;
}

}  // namespace

TEST_CASE("single-mode chain produces the trivial 2x2 system") {
  const ModelParams p = chain_params(2.0);
  const auto arrow = oracle::build_hamiltonian(p, {1});
  REQUIRE(arrow.level.size() == 1);
  CHECK(arrow.omega0 == doctest::Approx(2.0));
  // k = -pi: top of the band, where the geometric factor kills the coupling
  // up to the rounding of cos(pi/2).
  CHECK(arrow.level[0] == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(std::abs(arrow.coupling[0]) < 1e-15);

  const auto lines = oracle::solve_arrowhead(arrow);
  REQUIRE(lines.size() == 1);  // the noise-level coupling is dark
  CHECK(lines[0].energy == doctest::Approx(2.0));
  CHECK(lines[0].weight == doctest::Approx(1.0));
}

TEST_CASE("two-mode chain matches the closed 2x2 eigensystem") {
  const ModelParams p = chain_params(2.0);
  const auto arrow = oracle::build_hamiltonian(p, {2});
  REQUIRE(arrow.level.size() == 2);
  // Modes k = -pi (decoupled) and k = 0, where N|g_k|^2 = 8 g^2 S.
  const double b = 2.0 * p.g * std::sqrt(p.S);
  const auto lines = oracle::solve_arrowhead(arrow);
  REQUIRE(lines.size() == 2);
  const double mid = 0.5 * (2.0 + 8.0);
  const double disc = std::sqrt((8.0 - 2.0) * (8.0 - 2.0) + 4.0 * b * b);
  CHECK(lines[0].energy == doctest::Approx(mid - 0.5 * disc).epsilon(1e-12));
  CHECK(lines[1].energy == doctest::Approx(mid + 0.5 * disc).epsilon(1e-12));
  CHECK(lines[0].weight + lines[1].weight == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("secular solve reproduces dense diagonalisation") {
  ModelParams plane;
  plane.d = 2;
  plane.J = 0.5;
  plane.g = 1.0;
  plane.h = 2.0;
  plane.omega0 = 5.0;
  struct Case {
    ModelParams p;
    int n;
  };
  for (const auto& [p, n] : {Case{chain_params(2.0), 64},
                             Case{chain_params(12.0), 97},
                             Case{plane, 10}}) {
    const auto arrow = oracle::build_hamiltonian(p, {n});
    const auto lines = oracle::solve_arrowhead(arrow);
    auto dense = testref::dense_arrowhead(arrow);

    const double scale = std::abs(arrow.omega0) + 20.0;
    std::vector<std::pair<double, double>> kept;
    for (std::size_t j = 0; j < dense.energy.size(); ++j)
      if (dense.weight[j] > 1e-12) kept.emplace_back(dense.energy[j], dense.weight[j]);
    REQUIRE(kept.size() == lines.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      CHECK(std::abs(lines[j].energy - kept[j].first) < 1e-10 * scale);
      CHECK(std::abs(lines[j].weight - kept[j].second) < 1e-9);
    }
  }
}

TEST_CASE("finite-lattice amplitude is unitary and matches the dense model") {
  const ModelParams p = chain_params(2.0);
  const oracle::FiniteLattice lattice(p, {64});

  double total = 0.0;
  for (double w : lattice.weights()) {
    CHECK(w >= 0.0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto dense = testref::dense_arrowhead(oracle::build_hamiltonian(p, {64}));
  for (double t = 0.0; t <= 10.0; t += 0.5) {
    const auto phi = lattice.amplitude(t);
    CHECK(std::abs(phi) <= 1.0 + 1e-12);
    CHECK(std::abs(phi - testref::lines_amplitude(dense, t)) < 1e-10);
  }
  CHECK(std::abs(oracle::amplitude_finite(p, {64}, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("eigenvalues are sorted and respect the spectral envelope") {
  const ModelParams p = chain_params(12.0);
  const oracle::FiniteLattice lattice(p, {256});
  const auto& e = lattice.energies();
  REQUIRE(!e.empty());
  CHECK(std::is_sorted(e.begin(), e.end()));
  // All levels within the Weyl bracket of the arrowhead entries.
  CHECK(e.front() > 8.0 - 4.0);   // far below the band floor is impossible
  CHECK(e.back() < 12.0 + 8.0);   // and far above the ceiling likewise
}

TEST_CASE("invalid mode counts are rejected") {
  CHECK_THROWS_AS(oracle::build_hamiltonian(chain_params(2.0), {0}),
                  DomainError);
}
