// test_zeno.cpp — repeated-measurement survival, effective rates, and the
// measurement-interval crossover.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "magnonbath/perturb.hpp"
#include "magnonbath/zeno.hpp"

using namespace magnonbath;

namespace {

// Weak-coupling chain with the resonance two units below the band centre.
ModelParams weak_chain() {
  ModelParams p;
  p.d = 1;
  p.J = 1.0;
  p.g = 0.1;
  p.h = 1.0;
  p.omega0 = 3.0;
  return p;
}

}  // namespace

TEST_CASE("survival is a power of the one-interval probability") {
  const ModelParams p = weak_chain();
  const dynamics::ExactDynamics dyn(p);
  const double nrm = std::norm(dyn.amplitude(0.7));
  CHECK(zeno::survival(dyn, 0.7, 1) == doctest::Approx(nrm).epsilon(1e-13));
  CHECK(zeno::survival(dyn, 0.7, 5) ==
        doctest::Approx(std::pow(nrm, 5)).epsilon(1e-12));

  const auto rate = zeno::effective_rate(dyn, 0.7);
  CHECK(rate.value == doctest::Approx(-std::log(nrm) / 0.7).epsilon(1e-12));
  CHECK(!rate.saturated);

  CHECK_THROWS_AS(zeno::survival(dyn, 0.0, 3), DomainError);
  CHECK_THROWS_AS(zeno::survival(dyn, 0.7, 0), DomainError);
  CHECK_THROWS_AS(zeno::effective_rate(dyn, -1.0), DomainError);
}

TEST_CASE("frequent measurements freeze the decay at the quadratic slope") {
  // kappa_eff(tau) -> tau * (zone average of coupling_sq) as tau -> 0.
  const double tau = 1e-2;
  {
    const ModelParams p = weak_chain();
    const double slope = std::ldexp(p.g * p.g * p.S, p.d + 1);
    CHECK(zeno::effective_rate(p, tau).value / tau ==
          doctest::Approx(slope).epsilon(0.01));
    CHECK(zeno::weak_effective_rate(p, tau) / tau ==
          doctest::Approx(slope).epsilon(0.01));
  }
  {
    ModelParams p;
    p.d = 2;
    p.J = 0.5;
    p.g = 1.0;
    p.h = 2.0;
    p.omega0 = 5.0;
    const double slope = std::ldexp(p.g * p.g * p.S, p.d + 1);
    CHECK(zeno::weak_effective_rate(p, tau) / tau ==
          doctest::Approx(slope).epsilon(0.01));
  }
}

TEST_CASE("averaged weak rate equals the running rate integral") {
  const ModelParams p = weak_chain();
  const perturb::WeakRates wr(p);
  // Sparse sinc zeros: frequency-domain evaluation.
  for (double tau : {0.3, 5.0}) {
    CHECK(std::abs(tau * zeno::weak_effective_rate(p, tau) -
                   wr.kappa_integral(tau)) < 1e-7);
  }
  // Dense zeros ((|x| + 4JSd) tau well past 800 pi): time-domain branch.
  const double tau = 450.0;
  CHECK(std::abs(tau * zeno::weak_effective_rate(p, tau) -
                 wr.kappa_integral(tau)) < 1e-5);
  CHECK(zeno::weak_effective_rate(p, tau) >= 0.0);
  CHECK(zeno::weak_effective_rate(p, 600.0) >= 0.0);
}

TEST_CASE("crossover separates frozen from accelerated decay") {
  const ModelParams p = weak_chain();
  const auto tau_star = zeno::crossover_tau(p);
  REQUIRE(tau_star.has_value());
  CHECK(*tau_star > 1.2);
  CHECK(*tau_star < 1.4);
  CHECK(*tau_star == doctest::Approx(1.30899785937).epsilon(1e-6));

  const auto mk = perturb::markov_limits(p);
  CHECK(std::abs(zeno::weak_effective_rate(p, *tau_star) - mk.kappa) < 1e-8);
  CHECK(zeno::weak_effective_rate(p, 0.5) < mk.kappa);   // Zeno side
  CHECK(zeno::weak_effective_rate(p, 1.6) > mk.kappa);   // inverse Zeno side
}

TEST_CASE("no crossover at the band edge or outside the band") {
  ModelParams edge = weak_chain();
  edge.h = 3.0;  // omega0 at the lower band edge: divergent Markov rate
  CHECK(!zeno::crossover_tau(edge).has_value());

  ModelParams outside = weak_chain();
  outside.omega0 = 10.0;  // above the band: kappa_mark = 0, always inverse
  CHECK(!zeno::crossover_tau(outside).has_value());
}
