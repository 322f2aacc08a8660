#include "greenball/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace greenball {

namespace {

constexpr double kPoleGuard = 1e-14;

void check_context(const KernelContext& ctx) {
  require_dimension(ctx.n);
  if (!(ctx.alpha_n > 0.0) || !(ctx.surf_n > 0.0)) {
    throw std::invalid_argument("kernel context not initialized");
  }
}

void check_axis(const KernelContext& ctx, int i) {
  if (i < 0 || i >= ctx.n) {
    throw std::invalid_argument("axis index out of range");
  }
}

double pot_const(const KernelContext& ctx) {
  return 1.0 / (static_cast<double>(ctx.n) * (ctx.n - 2.0) * ctx.alpha_n);
}

/// Norm of the reflected argument scaled into the radius-r ball:
/// (|x|/r) |y - r^2 x / |x|^2|, through the form that is continuous at x = 0.
double reflected_norm(double r, const Point& x, const Point& y) {
  const double xx = x.norm_sq();
  const double yy = y.norm_sq();
  const double xy = x.dot(y);
  return std::sqrt(std::fmax(0.0, xx * yy / (r * r) - 2.0 * xy + r * r));
}

}  // namespace

double phi(const KernelContext& ctx, const Point& x) {
  check_context(ctx);
  if (x.dim() != ctx.n) throw std::invalid_argument("point dimension mismatch");
  const double r = x.norm();
  if (r < kPoleGuard) throw std::domain_error("phi evaluated at its pole x = 0");
  return pot_const(ctx) * std::pow(r, 2 - ctx.n);
}

double green_unit(const KernelContext& ctx, const Point& x, const Point& y) {
  return green_r(ctx, 1.0, x, y);
}

double green_r(const KernelContext& ctx, double r, const Point& x,
               const Point& y) {
  check_context(ctx);
  if (x.dim() != ctx.n || y.dim() != ctx.n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
  if (!(x.norm() < r)) {
    throw std::domain_error("green_r requires |x| < r");
  }
  const double d = distance(x, y);
  if (d < kPoleGuard) {
    throw std::domain_error("green_r evaluated at its pole x = y");
  }
  const double q = reflected_norm(r, x, y);
  const double c = pot_const(ctx);
  return c * (std::pow(d, 2 - ctx.n) - std::pow(q, 2 - ctx.n));
}

double poisson_kernel(const KernelContext& ctx, const Point& x, const Point& y,
                      double r) {
  check_context(ctx);
  if (x.dim() != ctx.n || y.dim() != ctx.n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
  const double xr = x.norm();
  if (!(xr < r)) {
    throw std::domain_error("poisson_kernel requires |x| < r");
  }
  if (std::abs(y.norm() - r) > 1e-10 * std::fmax(1.0, r)) {
    throw std::domain_error("poisson_kernel requires y on the boundary sphere");
  }
  const double d = distance(x, y);
  if (d < kPoleGuard) {
    throw std::domain_error("poisson_kernel evaluated at its pole");
  }
  return (r * r - xr * xr) / (ctx.surf_n * r * std::pow(d, ctx.n));
}

double green_dx(const KernelContext& ctx, int i, const Point& x,
                const Point& y) {
  check_context(ctx);
  check_axis(ctx, i);
  if (x.dim() != ctx.n || y.dim() != ctx.n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (!(x.norm() < 1.0)) {
    throw std::domain_error("green_dx requires |x| < 1");
  }
  if (y.norm() < kPoleGuard) {
    throw std::domain_error("green_dx rejects y = 0 (reflected term undefined)");
  }
  const double d = distance(x, y);
  if (d < kPoleGuard) {
    throw std::domain_error("green_dx evaluated at its pole x = y");
  }
  const double q = reflected_norm(1.0, x, y);
  const double first = (y[i] - x[i]) / std::pow(d, ctx.n);
  const double second = (y[i] - x[i] * y.norm_sq()) / std::pow(q, ctx.n);
  return (first - second) / ctx.surf_n;
}

double mixed_derivative_origin(const KernelContext& ctx, int i,
                               const Point& y) {
  check_context(ctx);
  check_axis(ctx, i);
  if (y.dim() != ctx.n) throw std::invalid_argument("point dimension mismatch");
  if (std::abs(y.norm() - 1.0) > 1e-10) {
    throw std::domain_error(
        "mixed_derivative_origin requires y on the unit sphere");
  }
  return y[i] / ctx.alpha_n;
}

}  // namespace greenball
