#ifndef GREENBALL_QUADRATURE_HPP_
#define GREENBALL_QUADRATURE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "greenball/geometry.hpp"
#include "greenball/parallel.hpp"

namespace greenball {

/// Compensated accumulator (Neumaier's variant of Kahan summation).  All
/// quadrature reductions in the library go through this in a fixed order, so
/// results are bit-identical run to run and independent of the thread count.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// One-dimensional quadrature rule: nodes and matching weights.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `points` nodes on [-1, 1] (exact for polynomials
/// of degree <= 2*points - 1).  Nodes ascend; rules are cached internally.
const Rule1D& gauss_legendre(int points);

/// Gauss-Legendre rule mapped onto [a, b].
Rule1D gauss_legendre_on(int points, double a, double b);

/// Quadrature nodes on the sphere of the given center and radius in R^n,
/// with weights carrying the surface measure.
struct SphereRule {
  int n = 3;
  Point center = Point(3);
  double radius = 1.0;
  std::vector<Point> nodes;
  std::vector<double> weights;
};

/// Quadrature nodes on a ball in R^n, with weights carrying the volume
/// measure.  `singular_at` is set when the rule was built to resolve an
/// integrable point singularity (nodes then avoid that point).
struct BallRule {
  int n = 3;
  Point center = Point(3);
  double radius = 1.0;
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::optional<Point> singular_at;
};

/// Product rule on the sphere of the given center and radius.  Angular
/// structure: each polar angle is handled in the variable t = cos(phi) with a
/// Gauss rule exact for the weight (1 - t^2)^{(m-1)/2} produced by the
/// surface Jacobian (Gauss-Legendre with the integer part of the weight
/// folded in when m is odd, Gauss-Chebyshev of the second kind when m is
/// even), and the 2pi-periodic azimuth uses 2*level equispaced nodes, which
/// integrate trigonometric polynomials of degree < 2*level exactly.  The rule
/// therefore integrates every spherical polynomial of degree <= 2*level - 1
/// exactly, and in particular reproduces the surface measure at every level.
/// Node count: 2 * level^(n-1).
SphereRule sphere_quadrature(int n, const Point& center, double radius,
                             int level);

/// Product rule on the ball B(center, radius): Gauss-Legendre with `level`
/// points radially (the r^{n-1} Jacobian folded into the weights) times
/// sphere_quadrature(n, 1, level) angularly.
BallRule ball_quadrature(int n, const Point& center, double radius, int level);

/// Polar rule on B(center, radius) adapted to an integrable point
/// singularity strictly inside the ball: rays leave `singular_at` toward a
/// spherical direction set, and each ray carries a radial Gauss rule on
/// [0, rho_max(direction)] with the rho^{n-1} Jacobian folded in.  Because
/// the Jacobian vanishes like rho^{n-1} at the singular point, integrands
/// growing up to |y - singular_at|^{1-n} stay bounded on the nodes, and
/// |y - singular_at|^{2-n} is integrated to Gauss accuracy.  Rejects
/// singular_at on or outside the boundary.
BallRule singular_ball_quadrature(int n, const Point& center, double radius,
                                  const Point& singular_at, int level);

/// Surface rule on the sphere of radius `radius` about the origin, adapted
/// to integrands that peak toward the direction of the interior point
/// `toward` (relative to the origin) with angular scale
/// ~ (radius - |toward|): polar panels refine geometrically toward the peak.
/// Falls back to a near-uniform panel split when `toward` is close to the
/// center.  Used for boundary kernels evaluated at points well inside the
/// ball but close to the sphere.
SphereRule peaked_sphere_quadrature(int n, double radius, const Point& toward,
                                    int level);

/// Breakpoints for composite radial rules on [a, b] when the integrand is
/// flat (vanishes to all orders) at one or both ends: panel widths halve
/// geometrically toward each flat end, `halvings` times.  Plain {a, b}
/// when neither end is flat.
std::vector<double> flat_edge_breakpoints(double a, double b, bool flat_a,
                                          bool flat_b, int halvings = 8);

/// Composite-radial product rule on the shell {lo <= |y - center| <= hi}
/// (a ball when breaks.front() == 0): per radial panel a Gauss-Legendre rule
/// with `level` points and the rho^{n-1} Jacobian folded in, times
/// sphere_quadrature(n, 1, level).  `breaks` must be ascending and
/// nonnegative.
BallRule panel_radial_ball_quadrature(int n, const Point& center,
                                      const std::vector<double>& breaks,
                                      int level);

/// Integrates f over a rule's nodes with compensated summation.  Work is
/// split into fixed-size chunks reduced in chunk order, so the result is
/// bit-reproducible for any thread budget.  f must be safe to call
/// concurrently.
template <class RuleT, class F>
double integrate(const RuleT& rule, F&& f) {
  const std::size_t count = rule.nodes.size();
  constexpr std::size_t kChunk = 2048;
  const std::size_t nchunks = par::chunk_count(count, kChunk);
  if (nchunks <= 1) {
    NeumaierSum sum;
    for (std::size_t i = 0; i < count; ++i) {
      sum.add(rule.weights[i] * f(rule.nodes[i]));
    }
    return sum.value();
  }
  std::vector<double> partial(nchunks, 0.0);
  par::for_chunks(count, kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    NeumaierSum sum;
                    for (std::size_t i = begin; i < end; ++i) {
                      sum.add(rule.weights[i] * f(rule.nodes[i]));
                    }
                    partial[c] = sum.value();
                  });
  NeumaierSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

/// Sum of a rule's weights (the measure the rule represents), compensated.
template <class RuleT>
double rule_measure(const RuleT& rule) {
  NeumaierSum sum;
  for (double w : rule.weights) sum.add(w);
  return sum.value();
}

/// Globally adaptive 1-D integration of f over [a, b]: embedded Gauss pair
/// per panel, worst-panel bisection until the error estimate drops below
/// max(abs_tol, rel_tol * |integral|).  `forced_breaks` seeds panel edges at
/// known trouble points (kinks, near-singular radii).  Deterministic:
/// single-threaded, fixed refinement order.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          const std::vector<double>& forced_breaks = {});

}  // namespace greenball

#endif  // GREENBALL_QUADRATURE_HPP_
