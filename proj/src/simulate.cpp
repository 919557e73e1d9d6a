#include "levy2d/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy2d/errors.hpp"
#include "levy2d/quadrature.hpp"
#include "levy2d/stable_constants.hpp"
#include "levy2d/tail_functionals.hpp"

namespace levy2d {

namespace {

constexpr int kTableCells = 1024;
constexpr double kTailFraction = 1e-10;  // table reaches this tail ratio

double checked_ball_tail(const LevyTriplet2D& t, const State& x, double u) {
  double v;
  try {
    v = ball_tail(t, x, u);
  } catch (const QuadratureError&) {
    throw ModelError(
        "jump intensity beyond the cutoff did not converge numerically; "
        "increase small_jump_cutoff");
  }
  if (!std::isfinite(v))
    throw ModelError(
        "jump intensity beyond the cutoff is not finite; increase "
        "small_jump_cutoff");
  return v;
}

}  // namespace

SimConfig make_sim_config(double t_lo, double t_hi, int probe_count,
                          int path_count, std::uint64_t seed,
                          double probe_radius, double small_jump_cutoff) {
  if (!(t_lo > 0.0 && t_lo < t_hi))
    throw ConfigError("probe grid needs 0 < t_lo < t_hi");
  if (probe_count < 2) throw ConfigError("probe grid needs at least 2 times");
  SimConfig cfg;
  cfg.horizon = t_hi;
  cfg.step = t_lo / 100.0;
  cfg.small_jump_cutoff = small_jump_cutoff;
  cfg.path_count = path_count;
  cfg.seed = seed;
  cfg.probe_radius = probe_radius;
  cfg.probe_times.reserve(probe_count);
  const double ratio = std::log(t_hi / t_lo) / (probe_count - 1);
  for (int i = 0; i < probe_count; ++i)
    cfg.probe_times.push_back(t_lo * std::exp(ratio * i));
  cfg.probe_times.back() = t_hi;
  return cfg;
}

void validate_sim_config(const SimConfig& cfg, bool state_dependent) {
  if (!(cfg.small_jump_cutoff > 0.0 && cfg.small_jump_cutoff < 1.0))
    throw ConfigError("small_jump_cutoff must lie in (0, 1)");
  if (cfg.path_count <= 0) throw ConfigError("path_count must be positive");
  if (!(cfg.probe_radius > 0.0))
    throw ConfigError("probe_radius must be positive");
  if (cfg.probe_times.empty()) throw ConfigError("probe_times is empty");
  double prev = 0.0;
  for (double t : cfg.probe_times) {
    if (!(t > prev)) throw ConfigError("probe_times must be ascending and positive");
    prev = t;
  }
  if (!(cfg.probe_times.back() <= cfg.horizon))
    throw ConfigError("probe_times must not exceed the horizon");
  if (state_dependent) {
    if (!(cfg.step > 0.0)) throw ConfigError("frozen-state scheme needs a positive step");
    if (cfg.step > cfg.probe_times.front() / 10.0)
      throw ConfigError("step must be at most a tenth of the first probe time");
  }
}

double JumpMixture::sample_radius(double v) const {
  const double tau = v * continuous_rate;
  if (radii.empty()) throw ModelError("no continuous jump component to sample");
  // tails descend; find the first entry at or below tau
  auto it = std::lower_bound(tails.begin(), tails.end(), tau,
                             [](double a, double b) { return a > b; });
  if (it == tails.begin()) return radii.front();
  if (it == tails.end()) return radii.back();
  const std::size_t j = static_cast<std::size_t>(it - tails.begin());
  const double t_hi = tails[j - 1], t_lo = tails[j];
  if (!(t_hi > t_lo)) return radii[j];
  const double w = (std::log(tau) - std::log(t_hi)) / (std::log(t_lo) - std::log(t_hi));
  return radii[j - 1] * std::exp(w * std::log(radii[j] / radii[j - 1]));
}

JumpMixture build_jump_mixture(const LevyTriplet2D& t, const State& x,
                               double cutoff) {
  if (!(cutoff > 0.0)) throw ConfigError("cutoff must be positive");
  JumpMixture mix;
  mix.cutoff = cutoff;
  mix.gaussian_variance = t.c(x) + 0.5 * truncated_second_moment(t, x, cutoff);

  LevyTriplet2D continuous = t;
  continuous.finite_part.reset();
  if (!continuous.jump_density.is_zero()) {
    mix.continuous_rate = checked_ball_tail(continuous, x, cutoff);
    if (mix.continuous_rate > 0.0) {
      // extend the table until the tail is negligible next to the rate
      double hi = cutoff;
      for (int k = 0; k < 10; ++k) {
        hi *= 10.0;
        if (checked_ball_tail(continuous, x, hi) <=
            mix.continuous_rate * kTailFraction)
          break;
      }
      std::vector<double> grid(kTableCells + 1);
      const double ratio = std::log(hi / cutoff) / kTableCells;
      for (int i = 0; i <= kTableCells; ++i)
        grid[i] = cutoff * std::exp(ratio * i);
      TailGridProfiles prof = tail_profiles(continuous, x, grid);
      mix.radii = std::move(grid);
      mix.tails = std::move(prof.ball);
      mix.tails.front() = mix.continuous_rate;
      // enforce monotone descent against quadrature jitter, then trim
      // anything at or below zero (compactly supported densities)
      for (std::size_t i = 1; i < mix.tails.size(); ++i)
        mix.tails[i] = std::min(mix.tails[i], mix.tails[i - 1]);
      std::size_t last = mix.tails.size();
      while (last > 1 && !(mix.tails[last - 1] > 0.0)) --last;
      mix.tails.resize(last);
      mix.radii.resize(last);
    }
  }

  if (t.finite_part) {
    for (const Ring& ring : t.finite_part->rings) {
      if (ring.radius > cutoff && ring.mass > 0.0)
        mix.atoms.push_back({ring.radius, ring.mass});
    }
  }
  mix.rate = mix.continuous_rate;
  for (const auto& a : mix.atoms) mix.rate += a.mass;
  return mix;
}

void advance_exact(PhiloxRng& g, const JumpMixture& mix, double dt,
                   State& pos) {
  if (mix.gaussian_variance > 0.0) {
    double z0, z1;
    g.gaussian_pair(z0, z1);
    const double sd = std::sqrt(mix.gaussian_variance * dt);
    pos.x() += sd * z0;
    pos.y() += sd * z1;
  }
  if (mix.continuous_rate > 0.0) {
    const std::uint64_t n = poisson_count(g, mix.continuous_rate * dt);
    for (std::uint64_t j = 0; j < n; ++j) {
      const double u = mix.sample_radius(g.next_open());
      const double a = 2.0 * M_PI * g.next_unit();
      pos.x() += u * std::cos(a);
      pos.y() += u * std::sin(a);
    }
  }
  for (const auto& atom : mix.atoms) {
    const std::uint64_t n = poisson_count(g, atom.mass * dt);
    for (std::uint64_t j = 0; j < n; ++j) {
      const double a = 2.0 * M_PI * g.next_unit();
      pos.x() += atom.radius * std::cos(a);
      pos.y() += atom.radius * std::sin(a);
    }
  }
}

std::vector<State> simulate_levy_path(const JumpMixture& mix,
                                      const SimConfig& cfg,
                                      std::uint64_t path_index) {
  PhiloxRng g(cfg.seed, path_index);
  State pos = State::Zero();
  std::vector<State> out;
  out.reserve(cfg.probe_times.size());
  double prev = 0.0;
  for (double t : cfg.probe_times) {
    advance_exact(g, mix, t - prev, pos);
    prev = t;
    out.push_back(pos);
  }
  return out;
}

std::vector<State> simulate_levy_path(const LevyTriplet2D& t,
                                      const SimConfig& cfg,
                                      std::uint64_t path_index) {
  validate_sim_config(cfg, false);
  const JumpMixture mix =
      build_jump_mixture(t, State::Zero(), cfg.small_jump_cutoff);
  return simulate_levy_path(mix, cfg, path_index);
}

std::vector<State> simulate_stable_like_path(const ProcessFamily& f,
                                             const SimConfig& cfg,
                                             std::uint64_t path_index) {
  if (!f.alpha || !f.beta || f.symbol_only)
    throw ModelError(
        "frozen-state scheme needs a family with order and scale fields");
  validate_sim_config(cfg, true);
  const double eps = cfg.small_jump_cutoff;
  PhiloxRng g(cfg.seed, path_index);
  State pos = State::Zero();
  std::vector<State> out;
  out.reserve(cfg.probe_times.size());
  double prev = 0.0;
  for (double t : cfg.probe_times) {
    double remaining = t - prev;
    prev = t;
    while (remaining > 0.0) {
      const double h = std::min(cfg.step, remaining);
      remaining -= h;
      const double a = f.alpha->value(pos);
      const double b = f.beta->value(pos);
      const double coeff = b * stable_density_coefficient(a);
      const double rate = 2.0 * M_PI * coeff * std::pow(eps, -a) / a;
      const double var = M_PI * coeff * std::pow(eps, 2.0 - a) / (2.0 - a);
      double z0, z1;
      g.gaussian_pair(z0, z1);
      const double sd = std::sqrt(var * h);
      pos.x() += sd * z0;
      pos.y() += sd * z1;
      const std::uint64_t n = poisson_count(g, rate * h);
      for (std::uint64_t j = 0; j < n; ++j) {
        const double u = eps * std::pow(g.next_open(), -1.0 / a);
        const double ang = 2.0 * M_PI * g.next_unit();
        pos.x() += u * std::cos(ang);
        pos.y() += u * std::sin(ang);
      }
    }
    out.push_back(pos);
  }
  return out;
}

}  // namespace levy2d
