#include "levy2d/asymptotic_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "levy2d/errors.hpp"

namespace levy2d {

GridSpec default_origin_grid() { return {1e-12, 1e-3, 96}; }
GridSpec default_infinity_grid() { return {1e3, 1e12, 96}; }

std::vector<double> expand_grid(const GridSpec& spec) {
  if (spec.points < 2 || !(spec.lo > 0.0) || !(spec.hi > spec.lo))
    throw ConfigError("grid needs 0 < lo < hi and at least two points");
  std::vector<double> g(spec.points);
  const double step = std::log(spec.hi / spec.lo) / (spec.points - 1);
  for (int i = 0; i < spec.points; ++i) g[i] = spec.lo * std::exp(step * i);
  g.front() = spec.lo;
  g.back() = spec.hi;
  return g;
}

namespace {

void check_abscissae(const std::vector<double>& rho, End end) {
  if (rho.size() < 16)
    throw ConfigError("asymptote fit needs at least 16 grid points");
  if (!(rho.front() > 0.0))
    throw ConfigError("asymptote fit needs positive abscissae");
  for (size_t i = 1; i < rho.size(); ++i)
    if (!(rho[i] > rho[i - 1]))
      throw ConfigError("asymptote fit grid must be increasing");
  if (rho.back() < 1e3 * rho.front())
    throw ConfigError("asymptote fit grid must span at least three decades");
  if (end == End::Origin ? rho.back() > 0.1 : rho.front() < 10.0)
    throw ConfigError("asymptote fit grid must keep |ln rho| >= ln 10");
}

}  // namespace

AsymptoticFit fit_asymptote(const std::vector<double>& abscissae,
                            const std::vector<double>& values, End end,
                            double residual_ceiling) {
  if (abscissae.size() != values.size())
    throw ConfigError("asymptote fit needs matching grids and values");
  check_abscissae(abscissae, end);

  const int n = static_cast<int>(abscissae.size());
  std::vector<double> lr(n), ll(n), lg(n);
  for (int i = 0; i < n; ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw ModelError("asymptote fit sampled a nonpositive profile value");
    lr[i] = std::log(abscissae[i]);
    ll[i] = std::log(end == End::Origin ? -lr[i] : lr[i]);
    lg[i] = std::log(values[i]);
  }

  const int m = (n + 1) / 2;
  Eigen::MatrixXd X(m, 3);
  Eigen::VectorXd y(m);
  for (int k = 0; k < m; ++k) {
    X(k, 0) = 1.0;
    X(k, 1) = lr[2 * k];
    X(k, 2) = ll[2 * k];
    y(k) = lg[2 * k];
  }
  const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);

  AsymptoticFit fit;
  fit.end = end;
  fit.grid = abscissae;
  fit.scale_C = std::exp(beta(0));
  fit.exponent_a = beta(1);
  fit.log_exponent_b = beta(2);
  double worst = 0.0;
  for (int i = 1; i < n; i += 2) {
    const double pred = beta(0) + beta(1) * lr[i] + beta(2) * ll[i];
    worst = std::max(worst, std::fabs(std::expm1(pred - lg[i])));
  }
  fit.residual = worst;
  fit.unreliable = worst > residual_ceiling;
  return fit;
}

AsymptoticFit fit_asymptote(const std::function<double(double)>& profile,
                            End end, const GridSpec& grid,
                            double residual_ceiling) {
  const std::vector<double> rho = expand_grid(grid);
  std::vector<double> g(rho.size());
  for (size_t i = 0; i < rho.size(); ++i) g[i] = profile(rho[i]);
  return fit_asymptote(rho, g, end, residual_ceiling);
}

IntegralDecision decide_integral(const AsymptoticFit& fit, IntegralForm form,
                                 double eps_a, double b_divergent_side,
                                 double b_convergent_side) {
  const bool origin = form == IntegralForm::OriginWeighted;
  if ((fit.end == End::Origin) != origin)
    throw ModelError("integral form does not match the fitted end");
  if (fit.unreliable) return IntegralDecision::Inconclusive;

  const double a = fit.exponent_a;
  const double b = fit.log_exponent_b;
  const double a_crit = origin ? 2.0 : 1.0;
  // away from the critical power the log factor cannot flip the outcome
  if (a > a_crit + eps_a)
    return origin ? IntegralDecision::Divergent : IntegralDecision::Convergent;
  if (a < a_crit - eps_a)
    return origin ? IntegralDecision::Convergent : IntegralDecision::Divergent;
  // at the critical power both forms reduce to int dt / t^b: the b <= 1
  // side diverges, the b > 1 side converges
  if (b <= b_divergent_side) return IntegralDecision::Divergent;
  if (b >= b_convergent_side) return IntegralDecision::Convergent;
  return IntegralDecision::Inconclusive;
}

const char* to_string(IntegralDecision d) {
  switch (d) {
    case IntegralDecision::Divergent: return "divergent";
    case IntegralDecision::Convergent: return "convergent";
    default: return "inconclusive";
  }
}

}  // namespace levy2d
