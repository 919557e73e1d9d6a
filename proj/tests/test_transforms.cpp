#include <Eigen/LU>
#include <cmath>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "levy2d/classify.hpp"
#include "levy2d/errors.hpp"
#include "levy2d/process_family.hpp"
#include "levy2d/stable_constants.hpp"
#include "levy2d/symbol.hpp"
#include "levy2d/tail_functionals.hpp"
#include "levy2d/transforms.hpp"

using namespace levy2d;

namespace {

const State kOrigin = State::Zero();

RadialDensity pure_power(double delta) {
  RadialDensity d;
  d.density = [delta](const State&, double u) { return std::pow(u, delta); };
  d.support_floor = 1.0;
  d.decreasing_beyond = 1.0;
  d.declared_tail = DeclaredTail{delta, 0.0};
  return d;
}

// stable(1.5) density multiplied by `factor` on the shell [2, 5)
ProcessFamily bumped_stable(double factor) {
  RadialDensity d = make_stable(1.5, 1.0).triplet.jump_density;
  auto n0 = d.density;
  d.density = [n0, factor](const State& x, double u) {
    return (u >= 2.0 && u < 5.0 ? factor : 1.0) * n0(x, u);
  };
  d.interior_edges = {2.0, 5.0};
  d.decreasing_beyond = 5.0;
  return make_radial_family(d);
}

}  // namespace

TEST_CASE("plane rotations are orthogonal with unit determinant") {
  const PlaneRotation r{0.7};
  const Eigen::Matrix2d m = r.matrix();
  CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((m.transpose() * m - Eigen::Matrix2d::Identity()).norm() <= 1e-14);
  const Eigen::Matrix2d back = PlaneRotation{2.0 * M_PI - 0.7}.matrix();
  CHECK((m.transpose() - back).norm() <= 1e-12);
}

TEST_CASE("rotation keeps a radial family in type and fixes its symbol") {
  const auto base = make_stable(1.5, 1.0);
  const auto res =
      linear_transform(base.triplet, PlaneRotation{1.1}.matrix());
  REQUIRE(res.in_type);
  const double scale = stable_symbol_scale(1.5, 1.0);
  const State x(0.3, -0.2);
  for (const double rho : {0.05, 1.0, 20.0}) {
    const double expect = scale * std::pow(rho, 1.5);
    CHECK(res.symbol(x, Eigen::Vector2d(rho, 0.0)) ==
          doctest::Approx(expect).epsilon(1e-4));
    CHECK(eval_symbol(res.triplet, x, rho) ==
          doctest::Approx(expect).epsilon(1e-4));
  }
  CHECK(res.triplet.jump_density.declared_tail->power ==
        doctest::Approx(-3.5));
}

TEST_CASE("a diagonal stretch leaves the radial type, evaluator only") {
  const auto brown = make_brownian(1.0);
  Eigen::Matrix2d m;
  m << 2.0, 0.0, 0.0, 1.0;
  const auto res = linear_transform(brown.triplet, m);
  CHECK(!res.in_type);
  for (const auto& xi :
       {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0),
        Eigen::Vector2d(0.3, -0.7)}) {
    const double expect = 0.5 * (4.0 * xi.x() * xi.x() + xi.y() * xi.y());
    CHECK(res.symbol(kOrigin, xi) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("conformal scaling pushes the ball tail as expected") {
  RadialDensity cauchy;
  cauchy.density = [](const State&, double u) { return std::pow(u, -3.0); };
  cauchy.decreasing_beyond = 0.0;
  cauchy.declared_tail = DeclaredTail{-3.0, 0.0};
  LevyTriplet2D t;
  t.jump_density = cauchy;

  const auto res = linear_transform(t, Eigen::Matrix2d(2.0 * Eigen::Matrix2d::Identity()));
  REQUIRE(res.in_type);
  for (const double u : {1.0, 3.0}) {
    CHECK(ball_tail(res.triplet, kOrigin, u) ==
          doctest::Approx(2.0 * ball_tail(t, kOrigin, u)).epsilon(1e-9));
  }
  // n = u^-3 integrates to the linear symbol 2*pi*rho, so the pushforward
  // by 2I doubles it.
  CHECK(res.symbol(kOrigin, Eigen::Vector2d(1.0, 0.0)) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-6));
  CHECK(eval_symbol(res.triplet, kOrigin, 1.0) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-6));
}

TEST_CASE("composition of transforms multiplies the matrices") {
  const auto brown = make_brownian(0.7);
  const Eigen::Matrix2d m1 = 1.5 * PlaneRotation{0.4}.matrix();
  const Eigen::Matrix2d m2 = 0.5 * PlaneRotation{-1.0}.matrix();
  const auto step1 = linear_transform(brown.triplet, m1);
  REQUIRE(step1.in_type);
  const auto step2 = linear_transform(step1.triplet, m2);
  const auto direct = linear_transform(brown.triplet, Eigen::Matrix2d(m2 * m1));
  const State x(0.1, 0.2);
  for (const auto& xi :
       {Eigen::Vector2d(0.7, -0.3), Eigen::Vector2d(3.0, 4.0)}) {
    CHECK(step2.symbol(x, xi) ==
          doctest::Approx(direct.symbol(x, xi)).epsilon(1e-12));
  }
}

TEST_CASE("singular matrices are rejected") {
  Eigen::Matrix2d m;
  m << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(linear_transform(make_brownian(1.0).triplet, m), ModelError);
}

TEST_CASE("zeroing the small jumps is a finite full-strength perturbation") {
  const auto fam_a = make_stable(1.5, 1.0);
  RadialDensity trimmed = fam_a.triplet.jump_density;
  trimmed.support_floor = 1.0;
  const auto fam_b = make_radial_family(trimmed);

  const auto rep = perturbation_equivalent(fam_a, fam_b, PlaneRotation{0.0});
  const double expect =
      2.0 * M_PI * stable_density_coefficient(1.5) * 2.0;  // int_0^1 u^-0.5
  CHECK(rep.distance == doctest::Approx(expect).epsilon(1e-6));
  CHECK(rep.constant_c == doctest::Approx(expect).epsilon(1e-6));
  CHECK(rep.diffusive_floor_gate == GateState::Holds);
  CHECK(rep.conclusion == EquivalenceConclusion::FullyEquivalent);
}

TEST_CASE("rotation-invariant coefficients make any rotation a zero perturbation") {
  const auto fam = make_stable_like(1.2, 1.8, 1.0, 1.0);
  const auto rep = perturbation_equivalent(fam, fam, PlaneRotation{1.234});
  CHECK(rep.distance == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.conclusion == EquivalenceConclusion::FullyEquivalent);
}

TEST_CASE("incomparable stable tails give an infinite distance") {
  const auto rep = perturbation_equivalent(
      make_stable(1.0, 1.0), make_stable(1.5, 1.0), PlaneRotation{0.0});
  CHECK(!std::isfinite(rep.distance));
  CHECK(rep.conclusion == EquivalenceConclusion::NotEstablished);
}

TEST_CASE("diffusive lower-bound gate fails or ties against large bumps") {
  const auto fam_a =
      with_grid(make_brownian(0.1), State(-1.0, -1.0), State(1.0, 1.0), 4);
  auto bump = [](double k) {
    RadialDensity d;
    d.density = [k](const State&, double u) {
      return u < 2.0 ? k * std::pow(u, -5.0) : 0.0;
    };
    d.support_floor = 1.0;
    d.interior_edges = {2.0};
    d.decreasing_beyond = 1.0;
    return make_radial_family(d, 0.1);
  };

  // distance = 2*pi*k int_1^2 u^-2 du = pi*k; the diffusive floor is
  // inf c / 2 = 0.05.
  const auto fails =
      perturbation_equivalent(fam_a, bump(10.0 / M_PI), PlaneRotation{0.0});
  CHECK(fails.distance == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(fails.diffusive_floor_gate == GateState::Fails);
  CHECK(fails.conclusion == EquivalenceConclusion::RecurrenceEquivalent);

  const auto tie =
      perturbation_equivalent(fam_a, bump(0.05 / M_PI), PlaneRotation{0.0});
  CHECK(tie.diffusive_floor_gate == GateState::Unknown);
  CHECK(tie.conclusion == EquivalenceConclusion::RecurrenceEquivalent);
}

TEST_CASE("perturbation distance is a pseudo-metric on sampled families") {
  const auto a = make_stable(1.5, 1.0);
  const auto b = bumped_stable(1.3);
  const auto c = bumped_stable(1.6);
  const PlaneRotation id{0.0};
  const double ab = perturbation_equivalent(a, b, id).distance;
  const double ba = perturbation_equivalent(b, a, id).distance;
  const double bc = perturbation_equivalent(b, c, id).distance;
  const double ac = perturbation_equivalent(a, c, id).distance;
  CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
  CHECK(ac <= ab + bc + 1e-9);
  CHECK(ab > 0.0);
}

TEST_CASE("tail domination on power densities, both modes") {
  const auto heavy = make_radial_family(pure_power(-3.0));
  const auto light = make_radial_family(pure_power(-4.0));
  for (const auto mode :
       {TailComparison::BallTail, TailComparison::HalfPlaneTail}) {
    const auto dom = tail_dominates(heavy, light, 1.0, mode);
    CHECK(dom.dominates);
    CHECK(dom.grid_lo == doctest::Approx(1.0));
    CHECK(dom.points_per_decade == 64);

    const auto fails = tail_dominates(light, heavy, 1.0, mode);
    CHECK(!fails.dominates);
    CHECK(fails.witness_u >= 1.0);
    CHECK(fails.witness_u <= 1.2);
  }
}

TEST_CASE("transience transfers up and recurrence transfers down") {
  const auto heavy = make_stable(1.0, 1.0);
  const auto light = make_stable(1.5, 1.0);
  const auto dom = tail_dominates(heavy, light, 1.0, TailComparison::BallTail);
  REQUIRE(dom.dominates);

  const auto src = classify_by_tails(light);
  REQUIRE(src.value == VerdictValue::Transient);
  const auto up = transfer_classification(
      src, dom, TransferDirection::TransienceToDominating, heavy);
  CHECK(up.value == VerdictValue::Transient);
  bool growth_gate = false;
  for (const auto& g : up.assumptions)
    if (g.name == "infinite-second-moment") {
      growth_gate = true;
      CHECK(g.holds);
    }
  CHECK(growth_gate);

  // A symbol-criterion source is not accepted for the transience direction.
  const auto cf_src = classify_chung_fuchs(light);
  REQUIRE(cf_src.value == VerdictValue::Transient);
  const auto refused = transfer_classification(
      cf_src, dom, TransferDirection::TransienceToDominating, heavy);
  CHECK(refused.value == VerdictValue::Inconclusive);

  const auto rec_a = make_regvar(-4.0, 0.0);
  const auto rec_b = make_regvar(-4.5, 0.0);
  const auto dom2 =
      tail_dominates(rec_a, rec_b, 3.0, TailComparison::BallTail);
  REQUIRE(dom2.dominates);
  const auto rec_src = classify_by_tails(rec_a);
  REQUIRE(rec_src.value == VerdictValue::Recurrent);
  const auto down = transfer_classification(
      rec_src, dom2, TransferDirection::RecurrenceToDominated, rec_a);
  CHECK(down.value == VerdictValue::Recurrent);

  const auto broken =
      tail_dominates(rec_b, rec_a, 3.0, TailComparison::BallTail);
  CHECK(!broken.dominates);
  const auto blocked = transfer_classification(
      rec_src, broken, TransferDirection::RecurrenceToDominated, rec_b);
  CHECK(blocked.value == VerdictValue::Inconclusive);

  const auto mismatched = transfer_classification(
      src, dom, TransferDirection::RecurrenceToDominated, heavy);
  CHECK(mismatched.value == VerdictValue::Inconclusive);
}

TEST_CASE("verdicts survive rotation and small-ball surgery") {
  const auto base = make_stable(1.5, 1.0);
  const auto rotated = make_radial_family(
      linear_transform(base.triplet, PlaneRotation{2.2}.matrix())
          .triplet.jump_density);
  CHECK(classify_by_tails(rotated).value == VerdictValue::Transient);

  RadialDensity carved = base.triplet.jump_density;
  auto n0 = carved.density;
  carved.density = [n0](const State& x, double u) {
    return (u < 0.5 ? 6.0 : 1.0) * n0(x, u);
  };
  carved.interior_edges = {0.5};
  carved.decreasing_beyond = 0.5;
  const auto surged = make_radial_family(carved);

  std::vector<Verdict> vs = {
      classify_chung_fuchs(surged), classify_by_tails(surged),
      classify_sufficient_p5(surged),
      classify_regvar(surged.triplet.jump_density)};
  const auto report = reconcile(vs);
  CHECK(!report.contradiction);
  CHECK(report.value == VerdictValue::Transient);

  const auto rep = perturbation_equivalent(base, surged, PlaneRotation{0.0});
  CHECK(std::isfinite(rep.distance));
  CHECK(rep.conclusion == EquivalenceConclusion::FullyEquivalent);
}
