#ifndef GREENBALL_MOLLIFIER_HPP_
#define GREENBALL_MOLLIFIER_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "greenball/fields.hpp"
#include "greenball/geometry.hpp"
#include "greenball/quadrature.hpp"

namespace greenball {

/// Normalization constant c of the standard bump mollifier in R^n:
/// c = 1 / (n alpha(n) * integral_0^1 r^{n-1} exp(1/(r^2-1)) dr), so that
/// the unit-scale mollifier has mass exactly 1.  Computed once per dimension
/// by adaptive radial quadrature to 1e-12 relative and cached.
double mollifier_normalization(int n);

/// The standard compactly supported smoothing kernel at scale epsilon:
/// omega_eps(x) = eps^{-n} c exp(1 / ((|x|/eps)^2 - 1)) for |x| < eps,
/// exactly 0 for |x| >= eps.
struct Mollifier {
  int n = 3;
  double epsilon = 1.0;
  double normalization_c = 0.0;

  static Mollifier make(int n, double epsilon);

  double operator()(const Point& x) const;
};

/// A smooth compactly supported probe function.  `profile` must vanish for
/// |x| >= support_radius; when `symmetric` is set the profile satisfies
/// profile(-x) = profile(x).  The radial hints describe the support's
/// structure so quadrature rules can be built with panels adapted to it:
/// profiles vanishing to all orders at an edge ("flat") defeat single-panel
/// Gauss rules.
struct TestFunction {
  int n = 3;
  std::function<double(const Point&)> profile;
  double support_radius = 1.0;
  bool symmetric = false;
  double inner_radius = 0.0;  ///< profile is identically 0 for |x| < this
  bool flat_inner = false;    ///< flat at |x| = inner_radius from outside
  bool flat_outer = false;    ///< flat at |x| = support_radius from inside
};

/// The scaled mollifier kernel as a TestFunction (support epsilon,
/// symmetric, flat at the outer edge).
TestFunction mollifier_test_function(const Mollifier& m);

/// Symmetric radial bump amplitude * exp(-1 / (1 - (|x|/radius)^2)) on
/// |x| < radius, 0 outside.
TestFunction bump_test_function(int n, double radius, double amplitude);

/// integral of t over R^n by a support-adapted rule.
double test_function_mass(const TestFunction& t, int level);

/// Offsets and folded weights for convolution against a fixed kernel: for a
/// TestFunction t, apply(u, x) = sum_i w_i t(z_i) u(x - z_i) approximates
/// (u * t)(x) = integral u(y) t(x - y) dy.  Built once, reused across many
/// evaluation points; apply is deterministic (fixed-order compensated sum)
/// and safe to call concurrently.
class ConvolutionRule {
 public:
  ConvolutionRule(const TestFunction& t, int level);

  double apply(const std::function<double(const Point&)>& evaluate,
               const Point& x) const;

  /// Same contract as apply, with the node loop spread over the thread
  /// budget in fixed chunks; the chunked sum is deterministic for any
  /// thread count.  For evaluate callbacks that are expensive and
  /// thread-safe.
  double apply_parallel(const std::function<double(const Point&)>& evaluate,
                        const Point& x) const;

  std::size_t size() const { return offsets_.size(); }
  /// Sum of folded weights = quadrature mass of the kernel.
  double mass() const;

 private:
  std::vector<Point> offsets_;
  std::vector<double> weights_;  // rule weight times kernel value
};

/// omega_eps * u: evaluates integral of omega_eps(z) u(x + z) over
/// B(0, epsilon) with a support-adapted rule built once at construction.
/// Linear in u; carries u's sup-norm bound through (mollification is an
/// averaging).
ScalarField mollify(const ScalarField& u, const Mollifier& m, int level);

/// (u * t)(x) over B(x, support radius).
double convolve_test(const ScalarField& u, const TestFunction& t,
                     const Point& x, int level);

/// max over the box lattice of |(u * t)(x)|: a desk-scale boundedness
/// certificate for the generalized function u.
double bounded_generalized_sup(const ScalarField& u, const TestFunction& t,
                               const Box& box, int level);

/// Attenuation factor a plane wave picks up under mollification:
/// kappa = integral omega_eps(z) cos(frequency . z) dz, so that
/// mollify(cos(w . x)) = kappa(eps, w) cos(w . x).
double mode_attenuation(const Mollifier& m, const Point& frequency, int level);

/// Both sides of the elementary power-mean inequality
/// |a^m - b^m| <= (m/2) |1/b - 1/a| (a^{m+1} + b^{m+1}), a, b > 0, m >= 1,
/// compared with 1e-12 relative slack.
struct PowerInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
PowerInequality check_power_inequality(double a, double b, int m);

/// |integral phi (u * psi) - integral psi (u * phi)| for symmetric test
/// functions: the convolution-exchange identity, each side computed by
/// nested quadrature (outer rule at `level`, convolution one level finer;
/// the stagger keeps the two sides' discretizations independent, so the
/// residual reflects genuine quadrature error and decays under refinement
/// instead of cancelling identically by node symmetry).  Rejects asymmetric
/// inputs (the identity's hypothesis).  Identical inputs run the same code
/// path twice, so the residual is exactly 0 by construction.
double fubini_residual(const ScalarField& u, const TestFunction& phi,
                       const TestFunction& psi, int level);

}  // namespace greenball

#endif  // GREENBALL_MOLLIFIER_HPP_
