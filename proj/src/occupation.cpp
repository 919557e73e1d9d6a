#include "levy2d/occupation.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "levy2d/errors.hpp"

namespace levy2d {

const char* to_string(EmpiricalVerdict v) {
  switch (v) {
    case EmpiricalVerdict::RecurrentConsistent:
      return "recurrent_consistent";
    case EmpiricalVerdict::TransientConsistent:
      return "transient_consistent";
    default:
      return "borderline";
  }
}

int thread_count() {
  if (const char* s = std::getenv("LEVY2D_THREADS")) {
    const long n = std::strtol(s, nullptr, 10);
    if (n >= 1) return static_cast<int>(n);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

State sample_state(const ProcessFamily& f) {
  return f.state_samples.empty() ? State(State::Zero()) : f.state_samples.front();
}

}  // namespace

OccupationEstimate estimate_ball_probability(const ProcessFamily& f,
                                             const SimConfig& cfg) {
  if (f.symbol_only)
    throw ModelError("family provides only a symbol; nothing to sample");
  const bool frozen = f.state_mode != StateMode::Constant;
  if (frozen && !(f.alpha && f.beta))
    throw ModelError(
        "state-dependent simulation needs a parametric family with order "
        "and scale fields");
  validate_sim_config(cfg, frozen);

  JumpMixture mix;
  if (!frozen)
    mix = build_jump_mixture(f.triplet, sample_state(f), cfg.small_jump_cutoff);

  const int probes = static_cast<int>(cfg.probe_times.size());
  const int paths = cfg.path_count;
  int workers = thread_count();
  if (workers > paths) workers = paths;

  auto count_range = [&](std::uint64_t lo, std::uint64_t hi,
                         std::vector<std::uint64_t>& counts) {
    counts.assign(probes, 0);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const std::vector<State> path =
          frozen ? simulate_stable_like_path(f, cfg, i)
                 : simulate_levy_path(mix, cfg, i);
      for (int k = 0; k < probes; ++k)
        if (path[k].norm() < cfg.probe_radius) ++counts[k];
    }
  };

  std::vector<std::vector<std::uint64_t>> partial(workers);
  if (workers == 1) {
    count_range(0, paths, partial[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = (paths + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = w * chunk;
      const std::uint64_t hi =
          std::min<std::uint64_t>(paths, lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        try {
          count_range(lo, hi, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  OccupationEstimate est;
  est.times = cfg.probe_times;
  est.path_count = paths;
  est.probe_radius = cfg.probe_radius;
  est.p_hat.resize(probes);
  est.std_err.resize(probes);
  for (int k = 0; k < probes; ++k) {
    std::uint64_t total = 0;
    for (const auto& counts : partial) total += counts.empty() ? 0 : counts[k];
    const double p = static_cast<double>(total) / paths;
    est.p_hat[k] = p;
    est.std_err[k] = std::sqrt(p * (1.0 - p) / paths);
  }
  return est;
}

ReturnExponentFit fit_return_exponent(const OccupationEstimate& est,
                                      double band) {
  if (est.path_count <= 0 || est.times.size() != est.p_hat.size())
    throw ConfigError("return-exponent fit needs a populated estimate");
  const double floor = 5.0 / est.path_count;
  const double ceiling = 0.05;

  double sw = 0.0, sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys, ws;
  for (std::size_t i = 0; i < est.times.size(); ++i) {
    const double p = est.p_hat[i];
    if (!(p > floor) || p > ceiling) continue;
    const double w = est.path_count * p / (1.0 - p);
    xs.push_back(std::log(est.times[i]));
    ys.push_back(std::log(p));
    ws.push_back(w);
    sw += w;
    sx += w * xs.back();
    sy += w * ys.back();
  }
  if (xs.size() < 8) {
    std::ostringstream msg;
    msg << "return-exponent fit needs at least 8 usable probe times, got "
        << xs.size() << " with p_hat in (" << floor << ", " << ceiling << "]";
    throw ModelError(msg.str());
  }
  const double xb = sx / sw, yb = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += ws[i] * (xs[i] - xb) * (xs[i] - xb);
    sxy += ws[i] * (xs[i] - xb) * (ys[i] - yb);
  }
  if (!(sxx > 0.0)) throw ModelError("probe times are degenerate for the fit");

  ReturnExponentFit fit;
  fit.kappa = -sxy / sxx;
  fit.half_width = 1.96 / std::sqrt(sxx);
  fit.used_probes = static_cast<int>(xs.size());
  if (fit.kappa < 1.0 - band)
    fit.verdict = EmpiricalVerdict::RecurrentConsistent;
  else if (fit.kappa > 1.0 + band)
    fit.verdict = EmpiricalVerdict::TransientConsistent;
  else
    fit.verdict = EmpiricalVerdict::Borderline;
  std::ostringstream note;
  note << "weighted log-log fit on " << fit.used_probes << " of "
       << est.times.size() << " probes, p_hat window (" << floor << ", "
       << ceiling << "], verdict band 1 +/- " << band;
  fit.note = note.str();
  return fit;
}

}  // namespace levy2d
