#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "greenball/geometry.hpp"
#include "greenball/parallel.hpp"
#include "greenball/quadrature.hpp"
#include "greenball/rng.hpp"

using namespace greenball;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ball volumes match closed forms") {
  CHECK(ball_volume(3) == doctest::Approx(4.1887902047863909846).epsilon(1e-15));
  CHECK(ball_volume(4) == doctest::Approx(4.9348022005446793094).epsilon(1e-15));
  CHECK(ball_volume(5) == doctest::Approx(5.2637890139143245967).epsilon(1e-15));
  for (int n = 3; n <= 8; ++n) {
    CHECK(unit_sphere_measure(n) == doctest::Approx(n * ball_volume(n)).epsilon(1e-15));
  }
}

TEST_CASE("dimension guard rejects out-of-range n") {
  CHECK_THROWS_AS(require_dimension(2), std::invalid_argument);
  CHECK_THROWS_AS(require_dimension(9), std::invalid_argument);
  CHECK_NOTHROW(require_dimension(3));
  CHECK_NOTHROW(require_dimension(8));
}

TEST_CASE("point arithmetic") {
  Point a(3);
  a[0] = 1.0; a[1] = -2.0; a[2] = 0.5;
  Point b = Point::unit(3, 1);
  Point c = a + b * 2.0;
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(dot(a, b) == doctest::Approx(-2.0));
  CHECK(a.norm_sq() == doctest::Approx(5.25));
  CHECK(distance(a, a) == 0.0);
  Point d(4);
  CHECK_THROWS_AS((void)dot(a, d), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  const Rule1D& g3 = gauss_legendre(3);
  double s = 0.0;
  for (std::size_t i = 0; i < g3.nodes.size(); ++i) {
    const double x = 0.5 * (g3.nodes[i] + 1.0);  // map to [0,1]
    s += 0.5 * g3.weights[i] * x * x * x * x * x;
  }
  CHECK(s == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  Rule1D m = gauss_legendre_on(12, -1.0, 1.0);
  double e = 0.0;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    e += m.weights[i] * std::exp(m.nodes[i]);
  }
  CHECK(e == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("sphere rules are measure-exact at every level") {
  for (int n = 3; n <= 5; ++n) {
    for (int level : {1, 2, 4, 6, 8}) {
      SphereRule r = sphere_quadrature(n, Point::zero(n), 1.0, level);
      CHECK(rule_measure(r) ==
            doctest::Approx(unit_sphere_measure(n)).epsilon(1e-12));
    }
  }
  // scaled and shifted
  Point c(4);
  c[2] = 3.0;
  SphereRule r = sphere_quadrature(4, c, 2.5, 4);
  CHECK(rule_measure(r) ==
        doctest::Approx(unit_sphere_measure(4) * std::pow(2.5, 3)).epsilon(1e-12));
  for (const Point& y : r.nodes) {
    CHECK(distance(y, c) == doctest::Approx(2.5).epsilon(1e-13));
  }
}

TEST_CASE("sphere rules integrate even monomials exactly") {
  // closed forms over the unit sphere in R^3
  SphereRule s3 = sphere_quadrature(3, Point::zero(3), 1.0, 4);
  CHECK(integrate(s3, [](const Point& y) { return y[0] * y[0]; }) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
  CHECK(integrate(s3, [](const Point& y) { return std::pow(y[0], 6); }) ==
        doctest::Approx(4.0 * kPi / 7.0).epsilon(1e-13));
  CHECK(integrate(s3, [](const Point& y) {
          return y[0] * y[0] * y[1] * y[1];
        }) == doctest::Approx(4.0 * kPi / 15.0).epsilon(1e-13));
  // odd monomial vanishes
  CHECK(std::abs(integrate(s3, [](const Point& y) { return y[2]; })) < 1e-14);
  // R^4: each coordinate square integrates to measure / n
  SphereRule s4 = sphere_quadrature(4, Point::zero(4), 1.0, 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(integrate(s4, [i](const Point& y) { return y[i] * y[i]; }) ==
          doctest::Approx(unit_sphere_measure(4) / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("ball rules are measure-exact and handle radial weights") {
  for (int n = 3; n <= 5; ++n) {
    BallRule r = ball_quadrature(n, Point::zero(n), 1.0, 4);
    CHECK(rule_measure(r) == doctest::Approx(ball_volume(n)).epsilon(1e-12));
  }
  BallRule b3 = ball_quadrature(3, Point::zero(3), 1.0, 4);
  CHECK(integrate(b3, [](const Point& y) { return y.norm_sq(); }) ==
        doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-13));
}

TEST_CASE("singular ball rules reproduce weakly singular closed forms") {
  // integral over B(0,delta) of |y|^{1-n} equals n*alpha(n)*delta
  for (int n : {3, 4, 5}) {
    for (double delta : {0.25, 0.5, 0.9}) {
      BallRule r = singular_ball_quadrature(n, Point::zero(n), delta,
                                            Point::zero(n), 6);
      const double got = integrate(r, [n](const Point& y) {
        return std::pow(y.norm(), 1 - n);
      });
      CHECK(got == doctest::Approx(unit_sphere_measure(n) * delta).epsilon(1e-10));
    }
  }
  // ball centered at the singular point h*e1, radius delta + h
  {
    const double h = 0.1, delta = 0.5;
    Point p = Point::unit(3, 0) * h;
    BallRule r = singular_ball_quadrature(3, p, delta + h, p, 6);
    const double got = integrate(r, [&p](const Point& y) {
      const double d = distance(y, p);
      return 1.0 / (d * d);
    });
    CHECK(got ==
          doctest::Approx(unit_sphere_measure(3) * (delta + h)).epsilon(1e-10));
  }
  // mildly singular |y|^{2-n} over the unit ball, n = 3 -> 2 pi
  {
    BallRule r = singular_ball_quadrature(3, Point::zero(3), 1.0,
                                          Point::zero(3), 6);
    CHECK(integrate(r, [](const Point& y) { return 1.0 / y.norm(); }) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-10));
  }
  // off-center singularity inside a larger ball
  {
    Point p(3);
    p[0] = 0.3; p[1] = -0.2;
    BallRule r = singular_ball_quadrature(3, Point::zero(3), 1.0, p, 6);
    CHECK(rule_measure(r) == doctest::Approx(ball_volume(3)).epsilon(1e-9));
  }
  // rejects singular points on or outside the boundary
  CHECK_THROWS_AS(singular_ball_quadrature(3, Point::zero(3), 1.0,
                                           Point::unit(3, 0), 4),
                  std::domain_error);
}

TEST_CASE("peaked sphere rule stays measure-exact near the boundary") {
  Point toward = Point::unit(3, 0) * 0.9;
  SphereRule r = peaked_sphere_quadrature(3, 1.0, toward, 8);
  CHECK(rule_measure(r) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  for (const Point& y : r.nodes) {
    CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
  // agrees with the plain rule on a smooth integrand
  SphereRule plain = sphere_quadrature(3, Point::zero(3), 1.0, 8);
  auto f = [](const Point& y) { return std::cos(y[0] + 0.5 * y[1]); };
  CHECK(integrate(r, f) == doctest::Approx(integrate(plain, f)).epsilon(1e-9));
}

TEST_CASE("flat-edge panels and the panel ball rule") {
  std::vector<double> br = flat_edge_breakpoints(0.1, 0.9, true, true);
  REQUIRE(br.size() >= 4);
  CHECK(br.front() == doctest::Approx(0.1));
  CHECK(br.back() == doctest::Approx(0.9));
  for (std::size_t i = 0; i + 1 < br.size(); ++i) CHECK(br[i] < br[i + 1]);

  BallRule shell = panel_radial_ball_quadrature(3, Point::zero(3), br, 6);
  const double want = 4.0 / 3.0 * kPi * (std::pow(0.9, 3) - std::pow(0.1, 3));
  CHECK(rule_measure(shell) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("adaptive integration handles kinks, square roots, forced breaks") {
  CHECK(adaptive_integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0,
                           1e-12, 1e-15) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-11));
  CHECK(adaptive_integrate([](double x) { return std::abs(x - 1.0 / 3.0); },
                           0.0, 1.0, 1e-12, 1e-15) ==
        doctest::Approx(5.0 / 18.0).epsilon(1e-11));
  CHECK(adaptive_integrate([](double x) { return std::exp(x); }, -1.0, 1.0,
                           1e-13, 1e-15, {0.25}) ==
        doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("chunked reductions are independent of the thread budget") {
  BallRule r = ball_quadrature(3, Point::zero(3), 1.0, 8);
  auto f = [](const Point& y) { return std::cos(3.0 * y[0]) * y.norm_sq(); };
  const int saved = par::thread_budget();
  par::set_thread_budget(1);
  const double v1 = integrate(r, f);
  par::set_thread_budget(7);
  const double v7 = integrate(r, f);
  par::set_thread_budget(saved);
  CHECK(v1 == v7);  // bitwise equal by construction
}

TEST_CASE("deterministic rng") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7);
  for (int i = 0; i < 50; ++i) {
    const double d = c.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
  Point u = c.next_unit_vector(5);
  CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-14));
  Point inb = c.next_in_ball(4, 2.0);
  CHECK(inb.norm() <= 2.0);
  // moments of the normal generator are sane (fixed seed, no flakiness)
  Rng g(123);
  double mean = 0.0, var = 0.0;
  const int kN = 20000;
  for (int i = 0; i < kN; ++i) {
    const double z = g.next_normal();
    mean += z;
    var += z * z;
  }
  mean /= kN;
  var = var / kN - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(var - 1.0) < 0.03);
}
