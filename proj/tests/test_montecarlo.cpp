#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "levy2d/errors.hpp"
#include "levy2d/occupation.hpp"
#include "levy2d/process_family.hpp"
#include "levy2d/simulate.hpp"
#include "levy2d/stable_constants.hpp"

using namespace levy2d;

namespace {

// empirical-vs-reference Kolmogorov distance for radial samples
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::fabs((i + 1) / n - f));
    d = std::max(d, std::fabs(f - i / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                              static_cast<double>(j) / b.size()));
  }
  return d;
}

ProcessFamily frozen_point() {
  ProcessFamily f;
  f.kind = "radial_density";
  f.state_samples = {State::Zero()};
  return f;
}

ProcessFamily single_ring(double radius, double mass) {
  ProcessFamily f = frozen_point();
  f.triplet.finite_part = FinitePart{radius, {Ring{radius, mass}}};
  return f;
}

}  // namespace

TEST_CASE("probe grids are geometric and validation guards the config") {
  SimConfig cfg = make_sim_config(1.0, 100.0, 9, 50, 7);
  CHECK(cfg.probe_times.size() == 9);
  CHECK(cfg.probe_times.front() == doctest::Approx(1.0));
  CHECK(cfg.probe_times.back() == doctest::Approx(100.0));
  CHECK(cfg.probe_times[4] == doctest::Approx(10.0));
  CHECK(cfg.horizon == doctest::Approx(100.0));
  CHECK(cfg.step == doctest::Approx(0.01));
  CHECK_NOTHROW(validate_sim_config(cfg, true));

  SimConfig bad = cfg;
  bad.small_jump_cutoff = 1.0;
  CHECK_THROWS_AS(validate_sim_config(bad, false), ConfigError);
  bad = cfg;
  bad.probe_times.clear();
  CHECK_THROWS_AS(validate_sim_config(bad, false), ConfigError);
  bad = cfg;
  bad.probe_times.push_back(101.0);
  CHECK_THROWS_AS(validate_sim_config(bad, false), ConfigError);
  bad = cfg;
  bad.step = 0.2;
  CHECK_NOTHROW(validate_sim_config(bad, false));
  CHECK_THROWS_AS(validate_sim_config(bad, true), ConfigError);
  bad = cfg;
  bad.path_count = 0;
  CHECK_THROWS_AS(validate_sim_config(bad, false), ConfigError);
}

TEST_CASE("the frozen sampler carries the right rates, fold, and atoms") {
  const double eps = 0.25;
  ProcessFamily cauchy = make_stable(1.0, 1.0);
  JumpMixture mix = build_jump_mixture(cauchy.triplet, State::Zero(), eps);
  // density 0.5 u^-3: rate 2pi * 0.5 / eps, fold pi eps / 2 per coordinate
  CHECK(mix.continuous_rate == doctest::Approx(M_PI / eps).epsilon(1e-8));
  CHECK(mix.rate == doctest::Approx(mix.continuous_rate));
  CHECK(mix.gaussian_variance == doctest::Approx(M_PI * eps / 2.0).epsilon(1e-8));
  CHECK(mix.atoms.empty());

  // the radius law inverts the pure-power tail exactly: u = eps / v
  for (double v : {0.9, 0.5, 0.1, 0.01, 1e-4})
    CHECK(mix.sample_radius(v) == doctest::Approx(eps / v).epsilon(1e-6));

  ProcessFamily ringed = single_ring(3.0, 2.0);
  ringed.triplet.jump_density = cauchy.triplet.jump_density;
  ringed.triplet.finite_part->rings.push_back(Ring{0.1, 5.0});
  JumpMixture rm = build_jump_mixture(ringed.triplet, State::Zero(), eps);
  REQUIRE(rm.atoms.size() == 1);  // the 0.1 ring folds instead of jumping
  CHECK(rm.atoms[0].radius == doctest::Approx(3.0));
  CHECK(rm.atoms[0].mass == doctest::Approx(2.0));
  CHECK(rm.rate == doctest::Approx(rm.continuous_rate + 2.0));
  CHECK(rm.gaussian_variance ==
        doctest::Approx(M_PI * eps / 2.0 + 0.5 * 0.1 * 0.1 * 5.0).epsilon(1e-8));

  JumpMixture bm =
      build_jump_mixture(make_brownian(1.7).triplet, State::Zero(), eps);
  CHECK(bm.continuous_rate == 0.0);
  CHECK(bm.rate == 0.0);
  CHECK(bm.radii.empty());
  CHECK(bm.gaussian_variance == doctest::Approx(1.7));
}

TEST_CASE("doubling the density scale doubles the jump intensity") {
  const double eps = 0.25;
  JumpMixture m1 =
      build_jump_mixture(make_stable(1.5, 1.0).triplet, State::Zero(), eps);
  JumpMixture m2 =
      build_jump_mixture(make_stable(1.5, 2.0).triplet, State::Zero(), eps);
  CHECK(m2.rate == doctest::Approx(2.0 * m1.rate).epsilon(1e-8));
  CHECK(m2.continuous_rate ==
        doctest::Approx(2.0 * m1.continuous_rate).epsilon(1e-8));
  CHECK(m2.gaussian_variance ==
        doctest::Approx(2.0 * m1.gaussian_variance).epsilon(1e-8));
}

TEST_CASE("a non-integrable tail reports a cutoff error") {
  LevyTriplet2D t;
  t.jump_density.density = [](const State&, double u) {
    return std::pow(u, -2.0);
  };
  CHECK_THROWS_WITH_AS(build_jump_mixture(t, State::Zero(), 0.25),
                       doctest::Contains("small_jump_cutoff"), ModelError);
}

TEST_CASE("diffusion paths have Gaussian marginals with variance t") {
  SimConfig cfg = make_sim_config(1.0, 4.0, 2, 2000, 91);
  const JumpMixture mix =
      build_jump_mixture(make_brownian(1.0).triplet, State::Zero(), 0.25);
  double s1[2] = {0, 0}, s2[2] = {0, 0};
  for (int i = 0; i < cfg.path_count; ++i) {
    const auto path = simulate_levy_path(mix, cfg, i);
    for (int k = 0; k < 2; ++k) {
      s1[k] += path[k].x() + path[k].y();
      s2[k] += path[k].squaredNorm();
    }
  }
  const double n = 2.0 * cfg.path_count;  // coordinates pool
  for (int k = 0; k < 2; ++k) {
    const double t = cfg.probe_times[k];
    const double mean = s1[k] / n;
    const double var = s2[k] / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 * std::sqrt(t / n));
    CHECK(std::fabs(var - t) < 3.0 * t * std::sqrt(2.0 / n));
  }
}

TEST_CASE("paths replay bit-identically per (seed, path_index)") {
  SimConfig cfg = make_sim_config(1.0, 10.0, 4, 10, 1234);
  const JumpMixture mix =
      build_jump_mixture(make_stable(1.0, 1.0).triplet, State::Zero(), 0.25);
  const auto a = simulate_levy_path(mix, cfg, 3);
  const auto b = simulate_levy_path(mix, cfg, 3);
  const auto c = simulate_levy_path(mix, cfg, 4);
  REQUIRE(a.size() == b.size());
  bool identical = true, differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    identical = identical && a[k].x() == b[k].x() && a[k].y() == b[k].y();
    differs = differs || a[k].x() != c[k].x();
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("pure-atom paths sit at the origin exactly when no jump fired") {
  // single ring, rate 2: P(path(1) = 0) = exp(-2); mean squared
  // displacement = rate * t * radius^2
  ProcessFamily f = single_ring(3.0, 2.0);
  SimConfig cfg;
  cfg.horizon = 1.0;
  cfg.probe_times = {1.0};
  cfg.path_count = 3000;
  cfg.seed = 555;
  cfg.probe_radius = 1e-3;
  const JumpMixture mix =
      build_jump_mixture(f.triplet, State::Zero(), cfg.small_jump_cutoff);
  CHECK(mix.gaussian_variance == 0.0);
  int still = 0;
  double msd = 0.0;
  for (int i = 0; i < cfg.path_count; ++i) {
    const auto path = simulate_levy_path(mix, cfg, i);
    if (path[0].norm() == 0.0) ++still;
    msd += path[0].squaredNorm();
  }
  const double p0 = static_cast<double>(still) / cfg.path_count;
  CHECK(std::fabs(p0 - std::exp(-2.0)) < 0.02);
  CHECK(std::fabs(msd / cfg.path_count - 18.0) < 2.2);
}

TEST_CASE("the heavy-tailed fixture matches its closed-form radial law") {
  // symbol pi rho: the position at time t has radial cdf
  // 1 - s / sqrt(s^2 + u^2) with s = pi t
  SimConfig cfg;
  cfg.horizon = 1.0;
  cfg.probe_times = {1.0};
  cfg.path_count = 4000;
  cfg.seed = 2718;
  cfg.small_jump_cutoff = 0.05;
  const JumpMixture mix = build_jump_mixture(make_stable(1.0, 1.0).triplet,
                                             State::Zero(), 0.05);
  std::vector<double> radii;
  radii.reserve(cfg.path_count);
  for (int i = 0; i < cfg.path_count; ++i)
    radii.push_back(simulate_levy_path(mix, cfg, i)[0].norm());
  const double s = M_PI;
  const double d = ks_distance(radii, [s](double u) {
    return 1.0 - s / std::sqrt(s * s + u * u);
  });
  CHECK(d < 0.045);
}

TEST_CASE("halving the cutoff moves the estimate less than 3 joint sigmas") {
  ProcessFamily cauchy = make_stable(1.0, 1.0);
  SimConfig cfg = make_sim_config(1.0, 10.0, 4, 1500, 31);
  cfg.small_jump_cutoff = 0.2;
  const OccupationEstimate coarse = estimate_ball_probability(cauchy, cfg);
  cfg.small_jump_cutoff = 0.1;
  const OccupationEstimate fine = estimate_ball_probability(cauchy, cfg);
  for (std::size_t k = 0; k < coarse.times.size(); ++k) {
    const double joint = std::sqrt(coarse.std_err[k] * coarse.std_err[k] +
                                   fine.std_err[k] * fine.std_err[k]);
    CHECK(std::fabs(coarse.p_hat[k] - fine.p_hat[k]) < 3.0 * joint);
  }
}

TEST_CASE("frozen-state scheme reduces to the exact one at constant fields") {
  SimConfig cfg = make_sim_config(1.0, 2.0, 2, 1200, 77);
  ProcessFamily varying = make_stable_like(1.3, 1.3, 1.0, 1.0);
  std::vector<double> frozen;
  for (int i = 0; i < cfg.path_count; ++i)
    frozen.push_back(simulate_stable_like_path(varying, cfg, i)[0].norm());

  SimConfig cfg2 = cfg;
  cfg2.seed = 78;  // independent draws for the two-sample comparison
  const JumpMixture mix = build_jump_mixture(make_stable(1.3, 1.0).triplet,
                                             State::Zero(), cfg.small_jump_cutoff);
  std::vector<double> exact;
  for (int i = 0; i < cfg2.path_count; ++i)
    exact.push_back(simulate_levy_path(mix, cfg2, i)[0].norm());

  CHECK(ks_two_sample(frozen, exact) < 0.08);
}

TEST_CASE("state-modulated order produces finite wandering paths") {
  ProcessFamily f = make_stable_like(1.2, 1.5, 1.0, 1.0);
  SimConfig cfg = make_sim_config(0.5, 1.0, 2, 30, 5);
  double spread = 0.0;
  for (int i = 0; i < cfg.path_count; ++i) {
    const auto path = simulate_stable_like_path(f, cfg, i);
    REQUIRE(path.size() == 2);
    for (const auto& p : path) {
      REQUIRE(std::isfinite(p.x()));
      REQUIRE(std::isfinite(p.y()));
    }
    spread += path[1].norm();
  }
  CHECK(spread > 0.0);
}

TEST_CASE("ball probabilities are deterministic across thread schedules") {
  ProcessFamily bm = make_brownian(1.0);
  SimConfig cfg = make_sim_config(1.0, 10.0, 10, 300, 42);
  const OccupationEstimate a = estimate_ball_probability(bm, cfg);
  const OccupationEstimate b = estimate_ball_probability(bm, cfg);
  setenv("LEVY2D_THREADS", "3", 1);
  const OccupationEstimate c = estimate_ball_probability(bm, cfg);
  setenv("LEVY2D_THREADS", "1", 1);
  const OccupationEstimate d = estimate_ball_probability(bm, cfg);
  unsetenv("LEVY2D_THREADS");
  for (std::size_t k = 0; k < a.p_hat.size(); ++k) {
    CHECK(a.p_hat[k] == b.p_hat[k]);
    CHECK(a.p_hat[k] == c.p_hat[k]);
    CHECK(a.p_hat[k] == d.p_hat[k]);
  }
}

TEST_CASE("the degenerate family never leaves the probe ball") {
  ProcessFamily f = frozen_point();
  SimConfig cfg = make_sim_config(1.0, 10.0, 8, 100, 9);
  const OccupationEstimate est = estimate_ball_probability(f, cfg);
  for (double p : est.p_hat) CHECK(p == 1.0);
  for (double se : est.std_err) CHECK(se == 0.0);
}

TEST_CASE("families without a sampleable structure are rejected") {
  SimConfig cfg = make_sim_config(1.0, 10.0, 8, 50, 9);
  CHECK_THROWS_AS(estimate_ball_probability(make_subordinated(0.5, 0.9), cfg),
                  ModelError);
  ProcessFamily grid = with_grid(make_brownian(1.0), State(-1.0, -1.0),
                                 State(1.0, 1.0), 3);
  CHECK_THROWS_AS(estimate_ball_probability(grid, cfg), ModelError);
}

TEST_CASE("diffusion ball probabilities track the Gaussian closed form") {
  ProcessFamily bm = make_brownian(1.0);
  SimConfig cfg = make_sim_config(5.0, 40.0, 4, 4000, 1001);
  const OccupationEstimate est = estimate_ball_probability(bm, cfg);
  for (std::size_t k = 0; k < est.times.size(); ++k) {
    const double oracle = 1.0 - std::exp(-1.0 / (2.0 * est.times[k]));
    CHECK(std::fabs(est.p_hat[k] - oracle) < 3.0 * est.std_err[k] + 2e-3);
  }
}

TEST_CASE("exponent fit recovers exact power laws and applies its window") {
  OccupationEstimate est;
  est.path_count = 1000000;
  est.probe_radius = 1.0;
  for (int i = 0; i < 16; ++i) {
    const double t = std::pow(10.0, 2.0 * i / 15.0);
    est.times.push_back(t);
    est.p_hat.push_back(0.04 * std::pow(t, -1.5));
    est.std_err.push_back(1e-5);
  }
  ReturnExponentFit fit = fit_return_exponent(est);
  CHECK(fit.kappa == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(fit.used_probes == 16);
  CHECK(fit.verdict == EmpiricalVerdict::TransientConsistent);
  CHECK(fit.half_width > 0.0);

  for (auto& p : est.p_hat) p = 0.04;  // flat: kappa 0
  for (std::size_t i = 0; i < est.times.size(); ++i)
    est.p_hat[i] = 0.04 * std::pow(est.times[i], -0.5);
  fit = fit_return_exponent(est);
  CHECK(fit.kappa == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fit.verdict == EmpiricalVerdict::RecurrentConsistent);

  for (std::size_t i = 0; i < est.times.size(); ++i)
    est.p_hat[i] = 0.04 / est.times[i];
  fit = fit_return_exponent(est);
  CHECK(fit.kappa == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.verdict == EmpiricalVerdict::Borderline);

  // entries outside the window drop out of the fit
  est.p_hat[0] = 0.2;
  est.p_hat[1] = 1e-9;
  fit = fit_return_exponent(est);
  CHECK(fit.used_probes == 14);

  OccupationEstimate thin = est;
  thin.times.resize(7);
  thin.p_hat.resize(7);
  thin.std_err.resize(7);
  CHECK_THROWS_WITH_AS(fit_return_exponent(thin),
                       doctest::Contains("at least 8"), ModelError);
}

TEST_CASE("simulated exponents separate heavy tails from diffusion") {
  ProcessFamily cauchy = make_stable(1.0, 1.0);
  SimConfig cfg = make_sim_config(1.05, 5.2, 12, 3000, 8080);
  ReturnExponentFit heavy =
      fit_return_exponent(estimate_ball_probability(cauchy, cfg));
  CHECK(heavy.kappa > 1.55);
  CHECK(heavy.kappa < 2.45);
  CHECK(heavy.verdict == EmpiricalVerdict::TransientConsistent);

  ProcessFamily bm = make_brownian(1.0);
  SimConfig bcfg = make_sim_config(10.0, 300.0, 12, 4000, 9090);
  ReturnExponentFit crit =
      fit_return_exponent(estimate_ball_probability(bm, bcfg));
  CHECK(crit.kappa > 0.85);
  CHECK(crit.kappa < 1.15);
  CHECK(crit.verdict == EmpiricalVerdict::Borderline);
}
