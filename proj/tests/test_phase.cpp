#include <cmath>
#include <random>

#include "doctest.h"

#include "helisol/phase.hpp"
#include "test_util.hpp"

using namespace helisol;
using testutil::uniform_in;

namespace {

// The soliton curvature in the exact arrangement displayed by the source
// derivation of the (tau', mu') rates — an independent transcription the
// library's factored implementation must agree with.
PhaseDerivatives displayed_rates(const PhasePoint& p, double h) {
  const double tau = p.tau, mu = p.mu;
  const double h2 = h * h;
  const double r2 = tau * tau + mu * mu;
  const double common = (1.0 + r2) * (h2 + r2);
  const double dtau =
      1.0 + (2.0 * (tau * tau + h2 * (1.0 + mu * mu)) * tau * mu +
             (h2 - 1.0) * (1.0 + mu * mu) * mu * mu) /
                common;
  const double dmu = -(2.0 * (tau * tau + h2 * (1.0 + mu * mu)) * tau * tau +
                       (h2 - 1.0) * (1.0 + mu * mu) * tau * mu) /
                     common;
  return {dtau, dmu, 0.0};
}

}  // namespace

TEST_SUITE("phase") {
  TEST_CASE("auxiliary quantities at hand-computed states") {
    SUBCASE("tau=0, mu=1, h=2") {
      const AuxQuantities aux = aux_quantities({0.0, 1.0}, SolitonParams{2.0});
      CHECK(aux.phi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
      CHECK(aux.phi_prime == 0.0);
      CHECK(aux.a == 0.0);
      CHECK(aux.b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
      CHECK(aux.c == 0.0);
      CHECK(aux.rho == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("tau=1, mu=-1, h=1") {
      const AuxQuantities aux = aux_quantities({1.0, -1.0}, SolitonParams{1.0});
      const double s3 = std::sqrt(3.0);
      CHECK(aux.phi == doctest::Approx(s3).epsilon(1e-15));
      CHECK(aux.phi_prime == doctest::Approx(1.0 / s3).epsilon(1e-15));
      CHECK(aux.a == doctest::Approx(-1.0 / s3).epsilon(1e-15));
      CHECK(aux.b == doctest::Approx(2.0 / s3).epsilon(1e-15));
      CHECK(aux.c == doctest::Approx(-1.0 / s3).epsilon(1e-15));
      CHECK(aux.rho == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("unit pitch collapses the curvature to 2 tau / (1 + r^2)") {
    std::mt19937_64 rng(21);
    const SolitonParams params{1.0};
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const PhasePoint p{uniform_in(rng, -3.0, 3.0), uniform_in(rng, -3.0, 3.0)};
      const double expected = 2.0 * p.tau / (1.0 + p.r_squared());
      worst = std::max(worst, std::abs(rotator_curvature(p, params) - expected));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("soliton identity holds over a wide random phase range") {
    std::mt19937_64 rng(22);
    double worst = 0.0;
    for (double h : {0.5, 1.0, 2.0, 5.0}) {
      const SolitonParams params{h};
      for (int i = 0; i < 10000; ++i) {
        const PhasePoint p{uniform_in(rng, -50.0, 50.0), uniform_in(rng, -50.0, 50.0)};
        const double k = rotator_curvature(p, params);
        worst = std::max(worst,
                         std::abs(closed_form_H(p, params, k) - rotator_target_H(p, params)));
      }
    }
    CHECK(worst <= 1e-10);
  }

  TEST_CASE("phase rates match an independent transcription of the system") {
    std::mt19937_64 rng(23);
    const RotatorLaw law;
    double worst = 0.0;
    for (double h : {0.5, 1.0, 2.0, 5.0}) {
      const SolitonParams params{h};
      for (int i = 0; i < 2000; ++i) {
        const PhasePoint p{uniform_in(rng, -5.0, 5.0), uniform_in(rng, -5.0, 5.0)};
        const PhaseDerivatives got = phase_rhs(p, params, law);
        const PhaseDerivatives expected = displayed_rates(p, h);
        worst = std::max({worst, std::abs(got.dtau - expected.dtau),
                          std::abs(got.dmu - expected.dmu)});
        CHECK(got.dtheta == rotator_curvature(p, params));
      }
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("prescribed-curvature inversion round-trips") {
    std::mt19937_64 rng(24);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const PhasePoint p{uniform_in(rng, -3.0, 3.0), uniform_in(rng, -3.0, 3.0)};
      const SolitonParams params{uniform_in(rng, 0.3, 3.0)};
      const double k_in = uniform_in(rng, -10.0, 10.0);
      const double target = closed_form_H(p, params, k_in);
      const double k_out =
          prescribed_curvature([target](double, double) { return target; }, p, params);
      worst = std::max(worst, std::abs(k_out - k_in));
    }
    CHECK(worst <= 1e-9);
  }

  TEST_CASE("curvature law objects expose their behavior") {
    const RotatorLaw rotator;
    CHECK(rotator.name() == "rotator");
    const PhasePoint p{0.7, -0.4};
    const SolitonParams params{2.0};
    CHECK(rotator.curvature(p, params) == rotator_curvature(p, params));

    const double target = closed_form_H(p, params, 1.25);
    const PrescribedHLaw prescribed([target](double, double) { return target; }, "flat-target");
    CHECK(prescribed.name() == "flat-target");
    CHECK(prescribed.curvature(p, params) == doctest::Approx(1.25).epsilon(1e-12));
  }
}
