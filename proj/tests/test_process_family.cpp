#include <cmath>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "levy2d/errors.hpp"
#include "levy2d/process_family.hpp"
#include "levy2d/stable_constants.hpp"
#include "levy2d/symbol.hpp"

using namespace levy2d;

namespace {
const State kOrigin = State::Zero();
}

TEST_CASE("Brownian family: exact envelopes, finite second moment") {
  const auto f = make_brownian(1.0);
  validate_family(f);
  for (const double rho : {0.01, 1.0, 7.0}) {
    CHECK(radial_symbol_profile(f, EnvelopeSelector::SupOverX, rho) ==
          doctest::Approx(0.5 * rho * rho));
    CHECK(radial_symbol_profile(f, EnvelopeSelector::InfOverX, rho) ==
          doctest::Approx(0.5 * rho * rho));
  }
  CHECK(second_moment_classifier(f, EnvelopeSelector::SupOverX).value ==
        SecondMomentClass::Finite);
  const auto cert = quasi_unimodality_certificate(f.triplet, f.state_samples);
  CHECK(cert.holds);
}

TEST_CASE("stable family: closed form symbol and infinite second moment") {
  const auto f = make_stable(1.0, 0.5);
  validate_family(f);
  CHECK(radial_symbol_profile(f, EnvelopeSelector::SupOverX, 1.0) ==
        doctest::Approx(stable_symbol_scale(1.0, 0.5)).epsilon(1e-12));
  const auto sm = second_moment_classifier(f, EnvelopeSelector::InfOverX);
  CHECK(sm.value == SecondMomentClass::Infinite);
  CHECK(sm.fit.exponent_a == doctest::Approx(1.0).epsilon(0.01));
  const auto cert = quasi_unimodality_certificate(f.triplet, f.state_samples);
  CHECK(cert.holds);
  CHECK(cert.source == "declared");
}

TEST_CASE("stable-like family: envelopes realize the order range") {
  const auto f = make_stable_like(1.2, 1.8, 1.0, 1.0);
  const double rho = 1e-4;
  // below rho = 1 the symbol decreases in the order, so the envelopes sit
  // at the order bounds
  CHECK(radial_symbol_profile(f, EnvelopeSelector::SupOverX, rho) ==
        doctest::Approx(stable_symbol_scale(1.2, 1.0) * std::pow(rho, 1.2))
            .epsilon(1e-12));
  CHECK(radial_symbol_profile(f, EnvelopeSelector::InfOverX, rho) ==
        doctest::Approx(stable_symbol_scale(1.8, 1.0) * std::pow(rho, 1.8))
            .epsilon(1e-12));
  validate_family(f);
}

TEST_CASE("grid mode tightens toward the true envelope") {
  LevyTriplet2D t;
  t.diffusion = [](const State& x) {
    const double s = std::sin(x.norm());
    return 2.0 * (1.0 + s * s);
  };
  ProcessFamily base;
  base.kind = "radial_density";
  base.triplet = t;
  const auto f =
      with_grid(base, State(-2.0, -2.0), State(2.0, 2.0), 33);
  const double sup = radial_symbol_profile(f, EnvelopeSelector::SupOverX, 1.0);
  const double inf = radial_symbol_profile(f, EnvelopeSelector::InfOverX, 1.0);
  CHECK(sup > 1.999);
  CHECK(sup <= 2.0);
  CHECK(inf >= 1.0);
  CHECK(inf < sup);
}

TEST_CASE("cumulative tail envelope scales with the density") {
  ProcessFamily f;
  f.kind = "radial_density";
  f.triplet.jump_density.density = [](const State& x, double u) {
    return (1.0 + std::min(x.norm(), 1.0)) * std::pow(u, -4.0);
  };
  f.triplet.jump_density.support_floor = 1.0;
  f.state_samples = {kOrigin, State(5.0, 0.0)};
  const double at_origin = cumulative_tail(f.triplet, kOrigin, 3.0);
  CHECK(cumulative_tail_integral(f, EnvelopeSelector::SupOverX, 3.0) ==
        doctest::Approx(2.0 * at_origin).epsilon(1e-12));
  CHECK(cumulative_tail_integral(f, EnvelopeSelector::InfOverX, 3.0) ==
        doctest::Approx(at_origin).epsilon(1e-12));

  const std::vector<double> grid = {1.5, 2.0, 4.0, 8.0};
  const auto prof = envelope_tail_profiles(f, EnvelopeSelector::SupOverX, grid);
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(prof.cumulative[i] ==
          doctest::Approx(2.0 * cumulative_tail(f.triplet, kOrigin, grid[i]))
              .epsilon(1e-10));
    CHECK(prof.ball[i] ==
          doctest::Approx(2.0 * ball_tail(f.triplet, kOrigin, grid[i]))
              .epsilon(1e-10));
  }
}

TEST_CASE("second moment growth classes") {
  // truncated second moment ~ ln^3: infinite through the log branch
  const auto grow = second_moment_classifier(make_regvar(-4.0, 2.0),
                                             EnvelopeSelector::InfOverX);
  CHECK(grow.value == SecondMomentClass::Infinite);
  CHECK(grow.fit.exponent_a == doctest::Approx(0.0).epsilon(0.05));

  // convergent second moment: flat fit
  RadialDensity thin;
  thin.density = [](const State&, double u) { return std::pow(u, -5.0); };
  thin.support_floor = 1.0;
  thin.decreasing_beyond = 1.0;
  CHECK(second_moment_classifier(make_radial_family(thin, 0.0),
                                 EnvelopeSelector::SupOverX)
            .value == SecondMomentClass::Finite);

  // slowly saturating second moment stays finite
  CHECK(second_moment_classifier(make_regvar(-4.0, -2.0),
                                 EnvelopeSelector::SupOverX)
            .value == SecondMomentClass::Finite);
}

TEST_CASE("monotone tail certificates") {
  // analytic turning point of ln^2(u) u^{-2.5} is exp(2/2.5)
  const auto r = make_regvar(-2.5, 2.0, 1.0, 1.01);
  const auto cert = quasi_unimodality_certificate(r.triplet, r.state_samples);
  CHECK(cert.holds);
  CHECK(cert.source == "declared");
  CHECK(cert.u0 == doctest::Approx(std::exp(0.8)));

  RadialDensity wavy;
  wavy.density = [](const State&, double u) {
    return (2.0 + std::sin(u)) * std::pow(u, -4.0);
  };
  wavy.support_floor = 1.0;
  CHECK(!quasi_unimodality_certificate(make_radial_family(wavy, 0.0).triplet,
                                       {kOrigin})
             .holds);

  RadialDensity plain;
  plain.density = [](const State&, double u) { return std::pow(u, -4.0); };
  plain.support_floor = 1.0;
  const auto sampled = quasi_unimodality_certificate(
      make_radial_family(plain, 0.0).triplet, {kOrigin});
  CHECK(sampled.holds);
  CHECK(sampled.source == "sampled");
  CHECK(sampled.u0 <= 1.01);
}

TEST_CASE("subordinated family is symbol-only") {
  const auto f = make_subordinated(0.25, 0.75, 1.0);
  validate_family(f);
  // q = (rho^2/2)^alpha: below the fixed point of the base symbol the sup
  // sits at the lower order, above it at the upper order
  const double lo_rho = 0.1, hi_rho = 10.0;
  CHECK(radial_symbol_profile(f, EnvelopeSelector::SupOverX, lo_rho) ==
        doctest::Approx(std::pow(0.5 * lo_rho * lo_rho, 0.25)));
  CHECK(radial_symbol_profile(f, EnvelopeSelector::InfOverX, lo_rho) ==
        doctest::Approx(std::pow(0.5 * lo_rho * lo_rho, 0.75)));
  CHECK(radial_symbol_profile(f, EnvelopeSelector::SupOverX, hi_rho) ==
        doctest::Approx(std::pow(0.5 * hi_rho * hi_rho, 0.75)));
  CHECK_THROWS_AS(cumulative_tail_integral(f, EnvelopeSelector::SupOverX, 2.0),
                  ModelError);
  CHECK(second_moment_classifier(f, EnvelopeSelector::InfOverX).value ==
        SecondMomentClass::Indeterminate);
}

TEST_CASE("family validation failures") {
  ProcessFamily bare;
  bare.kind = "radial_density";
  CHECK_THROWS_AS(radial_symbol_profile(bare, EnvelopeSelector::SupOverX, 1.0),
                  ModelError);

  auto wrong = make_stable(1.0, 1.0);
  wrong.symbol_override = [](const State&, double rho) {
    return 1.2 * stable_symbol_scale(1.0, 1.0) * rho;
  };
  CHECK_THROWS_AS(validate_family(wrong), ModelError);

  auto out_of_range = make_stable_like(1.2, 1.8, 1.0, 1.0);
  out_of_range.alpha->upper = 1.5;  // samples now leave the declared range
  CHECK_THROWS_AS(validate_family(out_of_range), ModelError);
}
