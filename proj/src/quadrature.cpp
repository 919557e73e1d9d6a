#include "levy2d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "levy2d/bessel.hpp"
#include "levy2d/errors.hpp"

namespace levy2d {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1];
// the Gauss nodes sit at the odd indices.
const double kXgk[8] = {0.991455371120813, 0.949107912342759,
                        0.864864423359769, 0.741531185599394,
                        0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979,
                        0.104790010322250, 0.140653259715525,
                        0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b, value, err;
};

Panel gk15(const Integrand& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  double kron = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    fv[i] = f(c - dx);
    fv[14 - i] = f(c + dx);
    kron += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) gauss += kWg[(i - 1) / 2] * (fv[i] + fv[14 - i]);
  }
  evals += 15;
  // Error estimate rescaled by the mean absolute deviation, so panels where
  // the two rules agree by accident (step edges) still report real error.
  const double mean = 0.5 * kron;
  double resasc = kWgk[7] * std::fabs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));
  resasc *= h;
  kron *= h;
  gauss *= h;
  if (!std::isfinite(kron))
    throw QuadratureError("non-finite integrand sample", 0.0);
  double err = std::fabs(kron - gauss);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 100.0 * 2.2e-16 * resasc);
  return {a, b, kron, err};
}

constexpr int kMaxPanels = 4096;

QuadResult integrate_seeded(const Integrand& f,
                            const std::vector<std::pair<double, double>>& seed,
                            double rel_tol, double abs_tol) {
  QuadResult out;
  std::multimap<double, Panel, std::greater<double>> queue;
  double total = 0.0;
  double live_err = 0.0;    // error on panels that can still be refined
  double frozen_err = 0.0;  // error stuck at the width floor
  int n = 0;

  try {
    for (const auto& [a, b] : seed) {
      if (!(b > a)) continue;
      Panel p = gk15(f, a, b, out.evaluations);
      total += p.value;
      live_err += p.err;
      queue.emplace(p.err, p);
      ++n;
    }
    while (live_err > std::max({abs_tol, rel_tol * std::fabs(total), 1e-304})) {
      if (queue.empty() || n >= kMaxPanels)
        throw QuadratureError("quadrature failed to converge", total);
      auto it = queue.begin();
      Panel p = it->second;
      queue.erase(it);
      if (p.b - p.a <= 1e-15 * (std::fabs(p.a) + std::fabs(p.b) + 1e-30)) {
        live_err -= p.err;
        frozen_err += p.err;
        continue;
      }
      total -= p.value;
      live_err -= p.err;
      const double mid = 0.5 * (p.a + p.b);
      Panel l = gk15(f, p.a, mid, out.evaluations);
      Panel r = gk15(f, mid, p.b, out.evaluations);
      total += l.value + r.value;
      live_err += l.err + r.err;
      queue.emplace(l.err, l);
      queue.emplace(r.err, r);
      ++n;
    }
  } catch (const QuadratureError& e) {
    throw QuadratureError(e.what(), total + e.partial());
  }
  out.value = total;
  out.abs_error = live_err + frozen_err;
  return out;
}

// Shared sweep for the two half-open engines. panel(k) yields the k-th
// integration interval; successive panels must tile outward toward the open
// end. Exits either when contributions fall below the tolerance or when the
// contraction ratio is stable enough to extrapolate the remainder.
QuadResult geometric_sweep(const Integrand& f,
                           const std::function<std::pair<double, double>(int)>& panel,
                           double rel_tol, const char* fail_msg,
                           const Cuts* cuts) {
  QuadResult out;
  double acc = 0.0, err = 0.0;
  double prev = 0.0;
  double last_ratio = 0.5;
  std::vector<double> ratios;
  int small_run = 0;

  for (int k = 0; k < 96; ++k) {
    const auto [lo, hi] = panel(k);
    QuadResult p;
    try {
      p = integrate(f, lo, hi, 0.2 * rel_tol, 0.05 * rel_tol * std::fabs(acc),
                    cuts);
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), acc + e.partial());
    }
    acc += p.value;
    err += p.abs_error;
    out.evaluations += p.evaluations;
    const double pv = std::fabs(p.value);

    if (k >= 1 && pv <= 0.15 * rel_tol * std::fabs(acc) + 1e-306) {
      if (++small_run >= 2) {
        const double r = std::clamp(last_ratio, 0.0, 0.95);
        const double rem = pv * r / (1.0 - r);
        acc += std::copysign(rem, p.value);
        err += rem;
        out.value = acc;
        out.abs_error = err;
        return out;
      }
    } else {
      small_run = 0;
    }

    if (prev != 0.0 && p.value != 0.0 &&
        std::signbit(p.value) == std::signbit(prev)) {
      const double r = pv / std::fabs(prev);
      ratios.push_back(r);
      last_ratio = r;
      const size_t m = ratios.size();
      if (m >= 4 && r <= 0.97) {
        double dr = 0.0;
        for (size_t j = m - 4; j + 1 < m; ++j)
          dr = std::max(dr, std::fabs(ratios[j + 1] - ratios[j]));
        if (dr <= 1e-4 * (1.0 - r)) {
          const double rem = pv * r / (1.0 - r);
          const double rem_err = rem * std::max(1e-6, 4.0 * dr / (1.0 - r));
          if (rem_err <= 5.0 * rel_tol * (std::fabs(acc) + rem)) {
            acc += std::copysign(rem, p.value);
            out.value = acc;
            out.abs_error = err + rem_err;
            return out;
          }
        }
      }
    } else {
      ratios.clear();
    }
    prev = p.value;
  }
  throw QuadratureError(fail_msg, acc);
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol,
                     double abs_tol, const Cuts* cuts) {
  if (!(b > a)) return {};
  std::vector<double> bounds{a};
  if (a > 0.0 && b / a > 32.0) {
    // pre-split long intervals geometrically so one panel never has to
    // straddle many decades
    double lo = a;
    while (lo * 4.0 < b) {
      lo *= 4.0;
      bounds.push_back(lo);
    }
  }
  if (cuts)
    for (double c : *cuts)
      if (c > a && c < b) bounds.push_back(c);
  bounds.push_back(b);
  std::sort(bounds.begin(), bounds.end());
  std::vector<std::pair<double, double>> seed;
  for (size_t i = 0; i + 1 < bounds.size(); ++i)
    seed.emplace_back(bounds[i], bounds[i + 1]);
  return integrate_seeded(f, seed, rel_tol, abs_tol);
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol,
                                 const Cuts* cuts) {
  if (!(a > 0.0)) throw ModelError("tail integral needs a positive start");
  return geometric_sweep(
      f, [a](int k) { return std::pair{a * std::ldexp(1.0, k), a * std::ldexp(1.0, k + 1)}; },
      rel_tol, "tail of integral is not contracting", cuts);
}

QuadResult integrate_from_zero(const Integrand& f, double b, double rel_tol,
                               const Cuts* cuts) {
  if (!(b > 0.0)) throw ModelError("origin integral needs a positive end");
  return geometric_sweep(
      f, [b](int k) { return std::pair{b * std::ldexp(1.0, -k - 1), b * std::ldexp(1.0, -k)}; },
      rel_tol, "integral does not converge near zero", cuts);
}

QuadResult integrate_bessel_tail(const Integrand& f, double a, double rho,
                                 double rel_tol, const Cuts* cuts) {
  if (!(rho > 0.0)) throw ModelError("oscillatory tail needs rho > 0");
  if (a < 0.0) a = 0.0;

  long k = 1;
  if (a * rho > M_PI)
    k = std::max(1L, static_cast<long>(std::floor(a * rho / M_PI - 0.25)));
  while (bessel_j0_zero(k) <= a * rho) ++k;

  QuadResult out;
  double acc = 0.0, err = 0.0, scale = 0.0;
  std::vector<double> sums;
  double lo = a;
  for (int j = 0; j < 72; ++j) {
    const double hi = bessel_j0_zero(k + j) / rho;
    if (hi <= lo) continue;
    QuadResult p;
    try {
      p = integrate(f, lo, hi, 0.1 * rel_tol, 0.02 * rel_tol * scale, cuts);
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), acc + e.partial());
    }
    acc += p.value;
    err += p.abs_error;
    out.evaluations += p.evaluations;
    scale = std::max(scale, std::fabs(p.value));
    sums.push_back(acc);
    lo = hi;
    if (j >= 8 && std::fabs(p.value) <= 0.02 * rel_tol * (std::fabs(acc) + scale))
      break;
  }

  // collapse the alternating partial sums by repeated averaging
  const size_t L = std::min<size_t>(sums.size(), 24);
  std::vector<double> t(sums.end() - L, sums.end());
  double prev_top = t.back();
  while (t.size() > 1) {
    prev_top = t[0];
    for (size_t i = 0; i + 1 < t.size(); ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
    t.pop_back();
  }
  out.value = t[0];
  out.abs_error = err + std::fabs(t[0] - prev_top) + 1e-16 * scale;
  return out;
}

}  // namespace levy2d
