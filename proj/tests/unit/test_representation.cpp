#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "greenball/fields.hpp"
#include "greenball/representation.hpp"
#include "greenball/rng.hpp"

using namespace greenball;

namespace {
const double kSqrt2 = 1.4142135623730951;
const double kSqrt3 = 1.7320508075688772;

TrigPolynomial two_mode_forcing() {
  TrigPolynomial f(3);
  Point w1(3);
  w1[0] = 1.0;
  w1[1] = kSqrt2;
  f.add_mode(1.0, w1, 0.0);
  f.add_mode(0.5, Point::unit(3, 0) * kSqrt3, 0.0);
  return f;
}

double loglog_slope(const std::vector<double>& h, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(h[i]);
    const double ly = std::log(v[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}
}  // namespace

TEST_CASE("averaging weight: validation, profile support, frozen integral") {
  CHECK_THROWS_AS(AveragingWeight::standard(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(AveragingWeight::standard(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(AveragingWeight::standard(0.0, 0.1), std::invalid_argument);

  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  CHECK(w.profile(0.05) == 0.0);
  CHECK(w.profile(0.1) == 0.0);
  CHECK(w.profile(0.9) == 0.0);
  CHECK(w.profile(0.95) == 0.0);
  CHECK(w.profile(0.5) > 0.0);
  CHECK(averaging_weight_integral(w) ==
        doctest::Approx(0.000495632949559601).epsilon(1e-10));
}

TEST_CASE("averaging test function is the weighted radial kernel") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  TestFunction psi = averaging_test_function(w, 3);
  CHECK(psi.symmetric);
  CHECK(psi.flat_inner);
  CHECK(psi.flat_outer);
  CHECK(psi.inner_radius == doctest::Approx(0.1));
  CHECK(psi.support_radius == doctest::Approx(0.9));
  Point y(3);
  y[0] = 0.5;
  CHECK(psi.profile(y) == doctest::Approx(w.profile(0.5) * 4.0).epsilon(1e-13));
  CHECK(psi.profile(Point::unit(3, 0) * 0.05) == 0.0);
}

TEST_CASE("interior evaluation reproduces harmonic functions") {
  RepresentationConfig cfg;
  ScalarField zero = ScalarField::constant(3, 0.0);
  ScalarField one = ScalarField::constant(3, 1.0);

  ScalarField quad;
  quad.dim = 3;
  quad.evaluate = [](const Point& y) { return y[0] * y[0] - y[1] * y[1]; };

  ScalarField lin;
  lin.dim = 3;
  lin.evaluate = [](const Point& y) { return y[2]; };

  const std::vector<Point> xs = {
      Point::zero(3), Point::unit(3, 0) * 0.3, Point::unit(3, 1) * 0.9};
  for (const Point& x : xs) {
    CHECK(eval_u_ball(one, zero, x, cfg) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(eval_u_ball(lin, zero, x, cfg) ==
          doctest::Approx(x[2]).epsilon(1e-6));
    const double want = x[0] * x[0] - x[1] * x[1];
    CHECK(std::abs(eval_u_ball(quad, zero, x, cfg) - want) < 1e-6);
  }

  // radius-r ball: linear reproduction still exact
  RepresentationConfig big;
  big.r = 2.0;
  Point x(3);
  x[0] = 0.3;
  ScalarField lin0;
  lin0.dim = 3;
  lin0.evaluate = [](const Point& y) { return y[0]; };
  CHECK(eval_u_ball(lin0, zero, x, big) == doctest::Approx(0.3).epsilon(1e-6));

  CHECK_THROWS_AS(eval_u_ball(one, zero, Point::unit(3, 0), cfg),
                  std::domain_error);
}

TEST_CASE("interior evaluation matches the trig oracle") {
  RepresentationConfig cfg;
  // single mode
  {
    TrigPolynomial f(3);
    f.add_mode(1.0, Point::unit(3, 0), 0.0);
    ScalarField u = exact_poisson_inverse(f).field();
    CHECK(eval_u_ball(u, f.field(), Point::zero(3), cfg) ==
          doctest::Approx(1.0).epsilon(1e-4));
  }
  // two modes, interior points
  {
    TrigPolynomial f = two_mode_forcing();
    ScalarField u = exact_poisson_inverse(f).field();
    Rng rng(5150);
    for (int k = 0; k < 3; ++k) {
      Point x = rng.next_in_ball(3, 0.5);
      const double got = eval_u_ball(u, f.field(), x, cfg);
      const double want = u.evaluate(x);
      CHECK(std::abs(got - want) <= 1e-4 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("gradient representation: exact cases and the trig oracle") {
  RepresentationConfig cfg;
  ScalarField zero = ScalarField::constant(3, 0.0);

  CHECK(std::abs(eval_grad_u(ScalarField::constant(3, 1.0), zero,
                             Point::zero(3), 1, cfg)) < 1e-10);

  ScalarField lin;
  lin.dim = 3;
  lin.evaluate = [](const Point& y) { return y[2]; };
  CHECK(eval_grad_u(lin, zero, Point::zero(3), 2, cfg) ==
        doctest::Approx(1.0).epsilon(1e-8));

  TrigPolynomial f(3);
  f.add_mode(1.0, Point::unit(3, 0), 0.0);
  ScalarField u = exact_poisson_inverse(f).field();
  Point x0(3);
  x0[0] = 0.2;
  const double got = eval_grad_u(u, f.field(), x0, 0, cfg);
  CHECK(std::abs(got - (-std::sin(0.2))) <= 1e-3);

  CHECK_THROWS_AS(eval_grad_u(u, f.field(), x0, 3, cfg),
                  std::invalid_argument);
}

TEST_CASE("surface limit functional: frozen values, rate, stability") {
  const std::vector<double> hs = {0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                  0.0078125};
  const std::vector<double> frozen = {0.485298434421,  0.241075078752,
                                      0.120345087954,  0.0601486172147,
                                      0.0300713217752, 0.0150352876587};
  std::vector<double> got;
  for (double h : hs) got.push_back(lemma_lim_surface(h, 0, 3, 6));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    CHECK(got[i] == doctest::Approx(frozen[i]).epsilon(1e-7));
    CHECK(got[i] >= 0.0);
  }
  // halving h halves the value
  CHECK(got[1] / got[0] > 0.4);
  CHECK(got[1] / got[0] < 0.6);
  // first-order decay
  CHECK(loglog_slope(std::vector<double>(hs.begin() + 1, hs.end()),
                     std::vector<double>(got.begin() + 1, got.end())) >= 0.9);
  // level refinement is settled
  CHECK(std::abs(lemma_lim_surface(0.25, 0, 3, 6) -
                 lemma_lim_surface(0.25, 0, 3, 8)) <= 1e-6);
  // invariance in the axis index (rotational symmetry)
  CHECK(lemma_lim_surface(0.25, 2, 3, 6) ==
        doctest::Approx(lemma_lim_surface(0.25, 0, 3, 6)).epsilon(1e-10));
  // other dimensions stay finite and positive
  CHECK(lemma_lim_surface(0.25, 0, 4, 5) > 0.0);
  CHECK_THROWS_AS(lemma_lim_surface(1.0, 0, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS(lemma_lim_surface(0.0, 0, 3, 6), std::invalid_argument);
}

TEST_CASE("volume limit functional: frozen values and sub-linear decay") {
  const std::vector<double> hs = {0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                  0.0078125};
  const std::vector<double> frozen = {0.229958854999276, 0.148357254772460,
                                      0.0908573828494726, 0.0537665061252292,
                                      0.0310519549204288, 0.0176103023688125};
  std::vector<double> got;
  for (double h : hs) got.push_back(lemma_lim_volume(h, 0, 3, 6));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    CHECK(got[i] == doctest::Approx(frozen[i]).epsilon(1e-6));
    CHECK(got[i] >= 0.0);
  }
  // strictly decreasing in h
  for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] < got[i - 1]);
  // the kernel-difference term integrates to h*log(1/h) near both
  // singularities, so the decay exponent settles visibly below 1
  const double slope =
      loglog_slope(std::vector<double>(hs.begin() + 1, hs.end()),
                   std::vector<double>(got.begin() + 1, got.end()));
  CHECK(slope > 0.74);
  CHECK(slope < 0.80);
  CHECK_THROWS_AS(lemma_lim_volume(0.5, 0, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS(lemma_lim_volume(-0.1, 0, 3, 6), std::invalid_argument);
}

TEST_CASE("averaging identity: residuals for exact pairs") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  ScalarField zero = ScalarField::constant(3, 0.0);

  CHECK(averaging_identity_residual(ScalarField::constant(3, 1.0), zero, w, 8,
                                    AveragingVariant::kSelfConsistent) <=
        1e-8);

  ScalarField lin;
  lin.dim = 3;
  lin.evaluate = [](const Point& y) { return y[0]; };
  CHECK(averaging_identity_residual(lin, zero, w, 8,
                                    AveragingVariant::kSelfConsistent) <=
        1e-8);

  TrigPolynomial f(3);
  f.add_mode(1.0, Point::unit(3, 0), 0.0);
  ScalarField u = exact_poisson_inverse(f).field();
  CHECK(averaging_identity_residual(u, f.field(), w, 8,
                                    AveragingVariant::kSelfConsistent) <=
        1e-8);
}

TEST_CASE("printed pairing misses the constant by the frozen gap") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  const double r = averaging_identity_residual(
      ScalarField::constant(3, 1.0), ScalarField::constant(3, 0.0), w, 8,
      AveragingVariant::kPrintedPairing);
  CHECK(r >= 0.1);
  CHECK(r == doctest::Approx(2.86107725002).epsilon(1e-9));
}

TEST_CASE("generalized recovery: constants and the smoothed trig pair") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);

  // constants: both sides are exactly the function value
  {
    std::vector<RecoveryRow> rows = generalized_recovery(
        ScalarField::constant(3, 1.0), ScalarField::constant(3, 0.0), w,
        {0.2, 0.05}, 6);
    REQUIRE(rows.size() == 2);
    for (const RecoveryRow& row : rows) {
      CHECK(row.u_eps_at_0 == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(row.rhs == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  // trig pair: the two sides agree and the left side is the attenuated value
  {
    TrigPolynomial f(3);
    f.add_mode(1.0, Point::unit(3, 0), 0.0);
    ScalarField u = exact_poisson_inverse(f).field();
    std::vector<RecoveryRow> rows =
        generalized_recovery(u, f.field(), w, {0.2}, 6);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0].u_eps_at_0 - rows[0].rhs) <= 1e-6);
    Mollifier m = Mollifier::make(3, 0.2);
    const double kappa = mode_attenuation(m, Point::unit(3, 0), 6);
    CHECK(rows[0].u_eps_at_0 == doctest::Approx(kappa).epsilon(1e-9));
  }
}

TEST_CASE("a measure-zero redefinition is invisible to recovery") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  TrigPolynomial f(3);
  f.add_mode(1.0, Point::unit(3, 0), 0.0);
  ScalarField u_clean = exact_poisson_inverse(f).field();

  ScalarField u_dirty = u_clean;
  const auto clean_eval = u_clean.evaluate;
  u_dirty.evaluate = [clean_eval](const Point& x) {
    if (x.norm() == 0.0) return 5.0;
    return clean_eval(x);
  };

  std::vector<RecoveryRow> a = generalized_recovery(u_clean, f.field(), w, {0.1}, 5);
  std::vector<RecoveryRow> b = generalized_recovery(u_dirty, f.field(), w, {0.1}, 5);
  CHECK(a[0].u_eps_at_0 == b[0].u_eps_at_0);
  CHECK(a[0].rhs == b[0].rhs);
}

TEST_CASE("recovery after translation returns the value at the new center") {
  AveragingWeight w = AveragingWeight::standard(1.0, 0.1);
  TrigPolynomial f(3);
  f.add_mode(1.0, Point::unit(3, 0), 0.0);
  ScalarField u = exact_poisson_inverse(f).field();
  Point x0(3);
  x0[1] = 2.0;
  x0[2] = -1.0;
  ScalarField ut = translate(u, x0);
  ScalarField ft = translate(f.field(), x0);
  std::vector<RecoveryRow> rows = generalized_recovery(ut, ft, w, {0.1}, 4);
  REQUIRE(rows.size() == 1);
  // u depends on x1 alone, so the translated center value is still u(0) = 1
  Mollifier m = Mollifier::make(3, 0.1);
  const double kappa = mode_attenuation(m, Point::unit(3, 0), 4);
  CHECK(rows[0].u_eps_at_0 == doctest::Approx(kappa * std::cos(x0[0])).epsilon(1e-7));
  CHECK(std::abs(rows[0].u_eps_at_0 - rows[0].rhs) <= 1e-4);
}

TEST_CASE("difference quotient defect: exactness, decay, displayed bound") {
  RepresentationConfig cfg;
  ScalarField zero = ScalarField::constant(3, 0.0);

  ScalarField lin;
  lin.dim = 3;
  lin.evaluate = [](const Point& y) { return y[2]; };
  const std::vector<Point> samples = {Point::zero(3), Point::unit(3, 0) * 1.5};
  for (double h : {0.25, 0.0625}) {
    CHECK(difference_quotient_defect(lin, zero, samples, 2, h, cfg) <= 1e-8);
  }

  TrigPolynomial f(3);
  f.add_mode(1.0, Point::unit(3, 0), 0.0);
  ScalarField u = exact_poisson_inverse(f).field();
  const double d4 = difference_quotient_defect(u, f.field(), samples, 0, 0.25, cfg);
  const double d8 = difference_quotient_defect(u, f.field(), samples, 0, 0.125, cfg);
  const double ratio = d8 / d4;
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.7);

  // the displayed bound: sup|u| * surface functional + sup|f| * volume
  // functional, plus slack for quadrature
  const double bound = 1.0 * lemma_lim_surface(0.125, 0, 3, 6) +
                       1.0 * lemma_lim_volume(0.125, 0, 3, 6) + 1e-5;
  CHECK(d8 <= bound);

  CHECK_THROWS_AS(difference_quotient_defect(u, f.field(), samples, 0, 1.5, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(difference_quotient_defect(u, f.field(), {}, 0, 0.25, cfg),
                  std::invalid_argument);
}
