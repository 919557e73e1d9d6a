#include "levy2d/tail_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "levy2d/errors.hpp"
#include "levy2d/quadrature.hpp"

namespace levy2d {
namespace {

double ring_ball_tail(const LevyTriplet2D& t, double u) {
  double s = 0.0;
  if (t.finite_part)
    for (const auto& r : t.finite_part->rings)
      if (r.radius >= u) s += r.mass;
  return s;
}

double ring_second_moment(const LevyTriplet2D& t, double rho) {
  double s = 0.0;
  if (t.finite_part)
    for (const auto& r : t.finite_part->rings)
      if (r.radius < rho) s += r.radius * r.radius * r.mass;
  return s;
}

// halfplane mass carried by rings at or beyond restrict_floor
double ring_halfplane(const LevyTriplet2D& t, double u, double restrict_floor) {
  double s = 0.0;
  if (t.finite_part)
    for (const auto& r : t.finite_part->rings) {
      if (r.radius < restrict_floor) continue;
      s += r.mass * std::acos(std::min(1.0, u / r.radius)) / M_PI;
    }
  return s;
}

// chord integral for the density part of a halfplane tail, with the radial
// support optionally restricted from below
double halfplane_density_part(const LevyTriplet2D& t, const State& x, double u,
                              double restrict_floor, double rel_tol) {
  const auto& n = t.jump_density;
  if (n.is_zero()) return 0.0;
  const double lo = std::max({u, n.support_floor, restrict_floor});
  auto f = [&](double r) {
    return r * n(x, r) * std::acos(std::min(1.0, u / r));
  };
  return 2.0 * integrate_to_infinity(f, lo, rel_tol, &n.interior_edges).value;
}

// Log-log local-cubic interpolation of the density part of the halfplane
// tail restricted outside the unit ball. Knots live at a = 10^(i/64) and are
// filled by exact chord quadrature on demand; the strip series then costs a
// table lookup per term instead of a fresh tail integral.
class RestrictedTailTable {
public:
  RestrictedTailTable(const LevyTriplet2D& t, const State& x) : t_(t), x_(x) {}

  double exact(double a) const {
    return halfplane_density_part(t_, x_, a, 1.0, 1e-10);
  }

  double operator()(double a) {
    if (t_.jump_density.is_zero()) return 0.0;
    const double pos = 64.0 * std::log10(a);
    const int k = static_cast<int>(std::floor(pos));
    double v[4];
    bool usable = true;
    for (int j = 0; j < 4; ++j) {
      v[j] = knot(k - 1 + j);
      usable = usable && std::isfinite(v[j]);
    }
    if (!usable) return exact(a);  // support edge: interpolation in ln fails
    const double s = pos - k;
    const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return std::exp(w0 * v[0] + w1 * v[1] + w2 * v[2] + w3 * v[3]);
  }

private:
  double knot(int i) {
    auto it = knots_.find(i);
    if (it != knots_.end()) return it->second;
    const double val = exact(std::pow(10.0, i / 64.0));
    const double lnv = val > 0.0 ? std::log(val) : -INFINITY;
    knots_.emplace(i, lnv);
    return lnv;
  }

  const LevyTriplet2D& t_;
  State x_;
  std::map<int, double> knots_;
};

}  // namespace

double ball_tail(const LevyTriplet2D& t, const State& x, double u) {
  if (!(u > 0.0)) throw ModelError("ball_tail needs u > 0");
  double total = ring_ball_tail(t, u);
  const auto& n = t.jump_density;
  if (!n.is_zero()) {
    const double lo = std::max(u, n.support_floor);
    total += 2.0 * M_PI *
             integrate_to_infinity([&](double r) { return r * n(x, r); }, lo,
                                   1e-10, &n.interior_edges)
                 .value;
  }
  return total;
}

double truncated_second_moment(const LevyTriplet2D& t, const State& x,
                               double rho) {
  if (!(rho > 0.0)) throw ModelError("truncated_second_moment needs rho > 0");
  double total = ring_second_moment(t, rho);
  const auto& n = t.jump_density;
  if (!n.is_zero() && n.support_floor < rho) {
    auto f = [&](double r) { return r * r * r * n(x, r); };
    total += 2.0 * M_PI *
             (n.support_floor > 0.0
                  ? integrate(f, n.support_floor, rho, 1e-10, 0.0,
                              &n.interior_edges)
                        .value
                  : integrate_from_zero(f, rho, 1e-10, &n.interior_edges)
                        .value);
  }
  return total;
}

double halfplane_tail(const LevyTriplet2D& t, const State& x, double u) {
  if (!(u > 0.0)) throw ModelError("halfplane_tail needs u > 0");
  return halfplane_density_part(t, x, u, 0.0, 1e-10) + ring_halfplane(t, u, 0.0);
}

double strip_mass(const LevyTriplet2D& t, const State& x, double rho,
                  double u) {
  if (!(rho > 0.0 && u > 0.0 && u < rho))
    throw ModelError("strip_mass needs 0 < u < rho");
  RestrictedTailTable table(t, x);
  auto n1 = [&](double a, bool exact) {
    const double dens = exact ? table.exact(a) : table(a);
    return dens + ring_halfplane(t, a, 1.0);
  };
  double acc = 0.0;
  const long cap = 2000000;
  for (long k = 0; k < cap; ++k) {
    const double a = 2.0 * k * rho + u;
    const double b = 2.0 * (k + 1) * rho - u;
    const bool lead = k < 4;  // keep the dominant strips interpolation-free
    const double na = n1(a, lead);
    acc += na - n1(b, lead);
    // all remaining strips lie inside the halfplane beyond the next edge,
    // so na bounds the truncation error from above
    if (na < 1e-11 * (acc + 1e-30)) return acc;
  }
  throw QuadratureError("strip series truncated before convergence", acc);
}

double cumulative_tail(const LevyTriplet2D& t, const State& x, double rho) {
  return 0.5 * rho * rho * ball_tail(t, x, rho) +
         0.5 * truncated_second_moment(t, x, rho);
}

TailGridProfiles tail_profiles(const LevyTriplet2D& t, const State& x,
                               const std::vector<double>& grid) {
  TailGridProfiles out;
  const size_t m = grid.size();
  out.ball.assign(m, 0.0);
  out.second_moment.assign(m, 0.0);
  if (m == 0) return out;
  if (!(grid.front() > 0.0)) throw ModelError("profile grid must be positive");
  for (size_t i = 0; i + 1 < m; ++i)
    if (!(grid[i] < grid[i + 1])) throw ModelError("profile grid must ascend");

  const auto& n = t.jump_density;
  auto rn = [&](double r) { return r * n(x, r); };
  auto r3n = [&](double r) { return r * r * r * n(x, r); };
  auto cell = [&](const Integrand& f, double lo, double hi) {
    lo = std::max(lo, n.support_floor);
    if (n.is_zero() || !(lo < hi)) return 0.0;
    return integrate(f, lo, hi, 1e-10, 0.0, &n.interior_edges).value;
  };
  auto ring_band = [&](double lo, double hi, bool second_moment) {
    double s = 0.0;
    if (t.finite_part)
      for (const auto& r : t.finite_part->rings)
        if (r.radius >= lo && r.radius < hi)
          s += second_moment ? r.radius * r.radius * r.mass : r.mass;
    return s;
  };

  out.ball[m - 1] = ball_tail(t, x, grid[m - 1]);
  for (size_t i = m - 1; i-- > 0;)
    out.ball[i] = out.ball[i + 1] + 2.0 * M_PI * cell(rn, grid[i], grid[i + 1]) +
                  ring_band(grid[i], grid[i + 1], false);

  out.second_moment[0] = truncated_second_moment(t, x, grid[0]);
  for (size_t i = 1; i < m; ++i)
    out.second_moment[i] = out.second_moment[i - 1] +
                           2.0 * M_PI * cell(r3n, grid[i - 1], grid[i]) +
                           ring_band(grid[i - 1], grid[i], true);
  return out;
}

}  // namespace levy2d
