#ifndef GREENBALL_KERNELS_HPP_
#define GREENBALL_KERNELS_HPP_

#include "greenball/geometry.hpp"

namespace greenball {

/// Dimension-derived constants shared by every kernel evaluation.
/// Immutable; build once per dimension with KernelContext::make.
struct KernelContext {
  int n = 3;
  double alpha_n = 0.0;  ///< unit-ball volume
  double surf_n = 0.0;   ///< unit-sphere surface measure, n * alpha_n

  static KernelContext make(int n) {
    require_dimension(n);
    KernelContext ctx;
    ctx.n = n;
    ctx.alpha_n = ball_volume(n);
    ctx.surf_n = n * ctx.alpha_n;
    return ctx;
  }
};

/// Fundamental solution of -Laplace in R^n (n >= 3):
/// phi(x) = |x|^{2-n} / (n(n-2) alpha(n)).  Rejects the pole x = 0.
double phi(const KernelContext& ctx, const Point& x);

/// Green's function of the unit ball: G(x, y) = phi(y - x) - phi of the
/// reflected argument.  The reflected norm is evaluated through the identity
/// |x| |y - x/|x|^2| = sqrt(|x|^2 |y|^2 - 2 x.y + 1), which extends
/// continuously to x = 0 (value 1), so the x = 0 limit needs no special
/// case.  Zero on the boundary |y| = 1.  Rejects |x| >= 1 and near-poles
/// |x - y| < 1e-14.
double green_unit(const KernelContext& ctx, const Point& x, const Point& y);

/// Green's function of the ball of radius r about the origin; r = 1 reduces
/// to green_unit.  Same continuous x = 0 limit via
/// (|x|/r)|y - r^2 x/|x|^2| = sqrt(|x|^2 |y|^2 / r^2 - 2 x.y + r^2).
double green_r(const KernelContext& ctx, double r, const Point& x,
               const Point& y);

/// Poisson kernel of the radius-r ball:
/// K_r(x, y) = (r^2 - |x|^2) / (n alpha(n) r |x - y|^n), for |x| < r and y on
/// the boundary sphere.  This is the negative outward normal derivative of
/// green_r in y, oriented so that harmonic u satisfies
/// u(x) = integral of K_r(x, .) u over the sphere.  Rejects |y| != r
/// (tolerance 1e-10) and |x| >= r.
double poisson_kernel(const KernelContext& ctx, const Point& x, const Point& y,
                      double r);

/// Partial derivative of the unit-ball Green's function in x_i (0-based i):
/// (1/(n alpha(n))) [ (y_i - x_i)/|y - x|^n
///                    - (y_i - x_i |y|^2)/sqrt(|x|^2|y|^2 - 2 x.y + 1)^n ].
/// The printed second term carries y/|y|, so y = 0 is rejected even though
/// the combination above is finite there; every quadrature rule in this
/// library keeps its nodes away from y = 0.
double green_dx(const KernelContext& ctx, int i, const Point& x,
                const Point& y);

/// x-gradient of the Poisson kernel's normal-derivative form at x = 0 on the
/// unit sphere: the closed value y_i / alpha(n) (0-based i).  Rejects
/// |y| != 1 (tolerance 1e-10).
double mixed_derivative_origin(const KernelContext& ctx, int i,
                               const Point& y);

}  // namespace greenball

#endif  // GREENBALL_KERNELS_HPP_
