#ifndef GREENBALL_FIELDS_HPP_
#define GREENBALL_FIELDS_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "greenball/geometry.hpp"

namespace greenball {

/// An evaluable scalar field on R^n.  `evaluate` must be total and finite on
/// finite points and safe to call concurrently.  The exact-calculus hooks
/// are optional: set them when closed forms exist (trig polynomials), leave
/// them empty otherwise.  `bound` is a sup-norm bound when one is known.
struct ScalarField {
  int dim = 3;
  std::function<double(const Point&)> evaluate;
  std::function<double(const Point&, int)> exact_gradient;  // (x, axis)
  std::function<double(const Point&)> exact_laplacian;
  std::optional<double> bound;

  static ScalarField constant(int n, double value);
};

/// u(. + x0): translates a field, carrying exact data and bounds along.
ScalarField translate(const ScalarField& u, const Point& x0);

/// Finite sum of modes amplitude * cos(frequency . x + phase) with
/// |frequency| > 0 for every mode.  Supports exact gradients, Laplacians,
/// per-axis derivative fields, and the exact inverse of -Laplace.
class TrigPolynomial {
 public:
  struct Mode {
    double amplitude;
    Point frequency;
    double phase;
  };

  explicit TrigPolynomial(int dim);

  /// Adds amplitude * cos(frequency . x + phase).  Rejects zero frequency:
  /// constant forcing has no bounded potential and stays out of scope.
  void add_mode(double amplitude, const Point& frequency, double phase);

  int dim() const { return dim_; }
  const std::vector<Mode>& modes() const { return modes_; }

  double evaluate(const Point& x) const;
  double gradient(const Point& x, int axis) const;
  double laplacian(const Point& x) const;

  /// Sum of |amplitude|: a sup-norm bound.
  double bound() const;

  /// Exact d/dx_axis as another trig polynomial
  /// (amplitude * frequency_axis, phase shifted by pi/2).
  TrigPolynomial derivative(int axis) const;

  /// View as a ScalarField with all exact hooks populated.
  ScalarField field() const;

 private:
  int dim_;
  std::vector<Mode> modes_;
};

/// The unique almost-periodic u with -Laplace(u) = f for trig f: every
/// amplitude divided by |frequency|^2.
TrigPolynomial exact_poisson_inverse(const TrigPolynomial& f);

/// Sampling lattice on [-half_width, half_width]^n: the desk-scale stand-in
/// for a supremum over R^n.  grid_per_axis >= 2 so the spacing
/// 2 * half_width / (grid_per_axis - 1) is positive and finite.
struct Box {
  double half_width = 1.0;
  int grid_per_axis = 2;

  Box(double half_width_, int grid_per_axis_);
};

/// max over the box lattice of |u(x + T) - u(x)|: a lower bound for the
/// translation defect over R^n.  Parallelized over lattice chunks with a
/// max-reduction (order-independent, so thread count cannot change the
/// result).
double almost_period_defect(const ScalarField& u, const Point& T,
                            const Box& box);

/// True iff some lattice point has |u(x + T) - u(x)| >= epsilon, i.e. the
/// lattice defect is >= epsilon.  Early-exits on the first witness; the
/// outcome is a pure existence statement, independent of scan order.
bool almost_period_defect_exceeds(const ScalarField& u, const Point& T,
                                  const Box& box, double epsilon);

/// Scans T in (0, t_max] along `axis` on a uniform grid of step
/// min(0.01, epsilon/10) for an epsilon-almost-period of u over the box
/// lattice.  Because every continuous field trivially has defect < epsilon
/// for T near 0, the scan returns the first T whose defect drops below
/// epsilon *after* the defect has first reached epsilon; if the defect never
/// reaches epsilon no nontrivial almost-period is distinguishable (constant
/// fields), and if it never returns below there is none to report — both
/// cases yield nullopt.
std::optional<double> find_almost_period(const ScalarField& u, double epsilon,
                                         int axis, double t_max,
                                         const Box& box);

}  // namespace greenball

#endif  // GREENBALL_FIELDS_HPP_
