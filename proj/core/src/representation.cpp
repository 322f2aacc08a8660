#include "greenball/representation.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "greenball/quadrature.hpp"

namespace greenball {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Surface measure of the unit sphere of R^d (d >= 2): 2 pi^{d/2} / Gamma(d/2).
/// Local helper because the cross-section spheres S^{n-2} live in R^{n-1},
/// which may be below the library's ambient-dimension floor.
double sphere_measure_dim(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

void check_levels(const RepresentationConfig& cfg) {
  if (cfg.surface_level < 1 || cfg.volume_level < 1) {
    throw std::invalid_argument("representation levels must be >= 1");
  }
  if (!(cfg.r > 0.0) || !std::isfinite(cfg.r)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
}

void check_axis(int i, int n) {
  if (i < 0 || i >= n) throw std::invalid_argument("axis index out of range");
}

double pot_const(const KernelContext& ctx) {
  return 1.0 / (static_cast<double>(ctx.n) * (ctx.n - 2.0) * ctx.alpha_n);
}

}  // namespace

AveragingWeight AveragingWeight::standard(double R, double delta) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("averaging radius must be positive and finite");
  }
  if (!(delta > 0.0) || !(delta < 0.5 * R)) {
    throw std::invalid_argument("averaging weight needs 0 < delta < R/2");
  }
  AveragingWeight w;
  w.R = R;
  w.delta = delta;
  w.profile = [R, delta](double r) {
    const double a = r - delta;
    const double b = (R - delta) - r;
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return std::exp(-1.0 / (a * b));
  };
  return w;
}

double averaging_weight_integral(const AveragingWeight& w) {
  if (!w.profile) throw std::invalid_argument("averaging weight has no profile");
  return adaptive_integrate(
      w.profile, w.delta, w.R - w.delta, 1e-12, 1e-18,
      flat_edge_breakpoints(w.delta, w.R - w.delta, true, true));
}

TestFunction averaging_test_function(const AveragingWeight& w, int n) {
  require_dimension(n);
  if (!w.profile) throw std::invalid_argument("averaging weight has no profile");
  TestFunction t;
  t.n = n;
  const auto profile = w.profile;
  t.profile = [profile, n](const Point& y) {
    const double rho = y.norm();
    const double p = profile(rho);
    if (p == 0.0) return 0.0;
    return p * std::pow(rho, 1 - n);
  };
  t.support_radius = w.R - w.delta;
  t.inner_radius = w.delta;
  t.symmetric = true;
  t.flat_inner = true;
  t.flat_outer = true;
  return t;
}

double eval_u_ball(const ScalarField& u_boundary, const ScalarField& f,
                   const Point& x, const RepresentationConfig& cfg) {
  check_levels(cfg);
  const int n = x.dim();
  require_dimension(n);
  if (u_boundary.dim != n || f.dim != n) {
    throw std::invalid_argument("field dimension mismatch");
  }
  const double r = cfg.r;
  if (!(x.norm() < r)) {
    throw std::domain_error("evaluation point must lie inside the ball");
  }
  const KernelContext ctx = KernelContext::make(n);

  const SphereRule srule =
      peaked_sphere_quadrature(n, r, x, cfg.surface_level);
  const auto& ub = u_boundary.evaluate;
  const double surface = integrate(srule, [&](const Point& y) {
    return poisson_kernel(ctx, x, y, r) * ub(y);
  });

  const BallRule vrule =
      singular_ball_quadrature(n, Point::zero(n), r, x, cfg.volume_level);
  const auto& fe = f.evaluate;
  const double volume = integrate(vrule, [&](const Point& y) {
    return fe(y) * green_r(ctx, r, x, y);
  });
  return surface + volume;
}

double eval_grad_u(const ScalarField& u, const ScalarField& f,
                   const Point& x0, int i, const RepresentationConfig& cfg) {
  check_levels(cfg);
  const int n = x0.dim();
  require_dimension(n);
  check_axis(i, n);
  if (u.dim != n || f.dim != n) {
    throw std::invalid_argument("field dimension mismatch");
  }
  const KernelContext ctx = KernelContext::make(n);
  const Point origin = Point::zero(n);

  const SphereRule srule =
      sphere_quadrature(n, origin, 1.0, cfg.surface_level);
  const auto& ue = u.evaluate;
  const double surface = integrate(srule, [&](const Point& y) {
    return ue(x0 + y) * mixed_derivative_origin(ctx, i, y);
  });

  const BallRule vrule =
      singular_ball_quadrature(n, origin, 1.0, origin, cfg.volume_level);
  const auto& fe = f.evaluate;
  const double volume = integrate(vrule, [&](const Point& y) {
    return fe(x0 + y) * green_dx(ctx, i, origin, y);
  });
  return surface + volume;
}

double lemma_lim_surface(double h, int i, int n, int level) {
  require_dimension(n);
  check_axis(i, n);
  if (!(h > 0.0) || !(h < 1.0)) {
    throw std::invalid_argument("surface limit functional needs 0 < h < 1");
  }
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  const double surf = unit_sphere_measure(n);

  // On |y| = 1 with t = y_i: the h-difference quotient of the boundary
  // kernel minus its analytic x = 0 derivative, both oriented the same way.
  const auto mismatch = [h, n, surf](double t) {
    const double d2 = 1.0 - 2.0 * h * t + h * h;  // |h e_i - y|^2
    const double quotient =
        ((1.0 - h * h) * std::pow(d2, -0.5 * n) - 1.0) / h;
    return (quotient - n * t) / surf;
  };
  const auto integrand = [&mismatch, n](double phi) {
    return std::abs(mismatch(std::cos(phi))) *
           std::pow(std::sin(phi), n - 2);
  };
  const double tol = std::pow(10.0, -(level + 2));
  return sphere_measure_dim(n - 1) *
         adaptive_integrate(integrand, 0.0, kPi, tol, 1e-15, {kPi / 2.0});
}

double lemma_lim_volume(double h, int i, int n, int level) {
  require_dimension(n);
  check_axis(i, n);
  if (!(h > 0.0) || !(h < 0.5)) {
    throw std::invalid_argument(
        "volume limit functional needs 0 < h < 1/2 (singular split)");
  }
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  const KernelContext ctx = KernelContext::make(n);
  const double surf = ctx.surf_n;
  const double c2 = pot_const(ctx);

  // Both kernels depend on y only through (rho, t) = (|y|, y_i/|y|); the
  // whole integrand is axisymmetric around e_i.
  const auto mismatch = [=](double rho, double t) {
    const double gdx = t * (std::pow(rho, 1 - n) - rho) / surf;
    const double d =
        std::sqrt(rho * rho - 2.0 * h * rho * t + h * h);  // |y - h e_i|
    const double q = std::sqrt(h * h * rho * rho - 2.0 * h * rho * t +
                               1.0);  // reflected norm
    const double g_he =
        c2 * (std::pow(d, 2 - n) - std::pow(q, 2 - n));
    const double g_0 = c2 * (std::pow(rho, 2 - n) - 1.0);
    return gdx - (g_he - g_0) / h;
  };

  const auto polar_abs = [&mismatch, n](double rho) {
    return adaptive_integrate(
        [&mismatch, n, rho](double phi) {
          return std::abs(mismatch(rho, std::cos(phi))) *
                 std::pow(std::sin(phi), n - 2);
        },
        0.0, kPi, 1e-11, 1e-15);
  };

  const auto radial = [&polar_abs, n](double rho) {
    return std::pow(rho, n - 1) * polar_abs(rho);
  };
  const double tol = std::fmax(1e-11, std::pow(10.0, -(level + 3)));
  return sphere_measure_dim(n - 1) *
         adaptive_integrate(radial, 0.0, 1.0, tol, 1e-14,
                            {0.5 * h, h, 2.0 * h, 4.0 * h, 0.5});
}

double averaging_identity_residual(const ScalarField& u, const ScalarField& f,
                                   const AveragingWeight& w, int level,
                                   AveragingVariant variant) {
  const int n = u.dim;
  require_dimension(n);
  if (f.dim != n) throw std::invalid_argument("field dimension mismatch");
  if (!w.profile) throw std::invalid_argument("averaging weight has no profile");
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  const KernelContext ctx = KernelContext::make(n);
  const double delta = w.delta;
  const double outer = w.R - w.delta;

  const double i1 = averaging_weight_integral(w);
  const auto profile = w.profile;
  const double i1_printed = adaptive_integrate(
      [&profile, n](double r) { return profile(r) * std::pow(r, n - 1); },
      delta, outer, 1e-12, 1e-18,
      flat_edge_breakpoints(delta, outer, true, true));

  // Weighted kernel integral over the annulus supp psi.
  const std::vector<double> shell_breaks =
      flat_edge_breakpoints(delta, outer, true, true);
  const BallRule shell =
      panel_radial_ball_quadrature(n, Point::zero(n), shell_breaks, level);
  const auto& ue = u.evaluate;
  const double term_u = integrate(shell, [&](const Point& y) {
    const double rho = y.norm();
    return profile(rho) * std::pow(rho, 1 - n) * ue(y);
  });

  // I3: outer composite Gauss rule in the averaging radius r against inner
  // singular ball rules centered at the origin.
  const Point origin = Point::zero(n);
  const auto& fe = f.evaluate;
  NeumaierSum i3;
  for (std::size_t p = 0; p + 1 < shell_breaks.size(); ++p) {
    const Rule1D seg =
        gauss_legendre_on(level, shell_breaks[p], shell_breaks[p + 1]);
    for (std::size_t k = 0; k < seg.nodes.size(); ++k) {
      const double r = seg.nodes[k];
      const BallRule inner =
          singular_ball_quadrature(n, origin, r, origin, level);
      const double vol = integrate(inner, [&](const Point& y) {
        return fe(y) * green_r(ctx, r, origin, y);
      });
      const double scale =
          variant == AveragingVariant::kPrintedPairing
              ? std::pow(r, n - 1)
              : 1.0;
      i3.add(seg.weights[k] * profile(r) * scale * vol);
    }
  }

  const double norm =
      variant == AveragingVariant::kPrintedPairing ? i1_printed : i1;
  const double rhs = term_u / (ctx.surf_n * norm) + i3.value() / norm;
  return std::abs(ue(Point::zero(n)) - rhs);
}

std::vector<RecoveryRow> generalized_recovery(
    const ScalarField& u_raw, const ScalarField& f, const AveragingWeight& w,
    const std::vector<double>& epsilons, int level) {
  const int n = u_raw.dim;
  require_dimension(n);
  if (f.dim != n) throw std::invalid_argument("field dimension mismatch");
  if (!w.profile) throw std::invalid_argument("averaging weight has no profile");
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  const KernelContext ctx = KernelContext::make(n);
  const double delta = w.delta;
  const double outer = w.R - w.delta;
  const double c2 = pot_const(ctx);
  const Point origin = Point::zero(n);

  const double i1 = averaging_weight_integral(w);
  const auto profile = w.profile;

  // v = u_raw * psi, sharing one convolution rule across all epsilons.
  const auto psi_rule = std::make_shared<ConvolutionRule>(
      averaging_test_function(w, n), level);
  const auto u_eval = u_raw.evaluate;
  const auto v_eval = [psi_rule, u_eval](const Point& x) {
    return psi_rule->apply(u_eval, x);
  };

  // Radial weight of the exact I3 reformulation:
  // W(rho) = c2 * integral_max(rho,delta)^outer phi(r)(rho^{2-n} - r^{2-n}) dr.
  const auto radial_weight = [&](double rho) {
    const double lo = std::fmax(rho, delta);
    if (!(lo < outer)) return 0.0;
    const double c = std::pow(rho, 2 - n);
    return c2 * adaptive_integrate(
                    [&profile, c, n](double r) {
                      return profile(r) * (c - std::pow(r, 2 - n));
                    },
                    lo, outer, 1e-11, 1e-18,
                    flat_edge_breakpoints(lo, outer, false, true));
  };

  // Ball rule over B(0, outer) with W(rho) folded into the weights.  One
  // panel covers [0, delta] (W is smooth there; the rho^{n-1} Jacobian
  // tames the rho^{2-n} factor), then flat-edge panels follow psi's support.
  std::vector<double> breaks{0.0};
  for (double b : flat_edge_breakpoints(delta, outer, false, true)) {
    breaks.push_back(b);
  }
  const SphereRule dirs = sphere_quadrature(n, origin, 1.0, level);
  BallRule w_rule;
  w_rule.n = n;
  w_rule.center = origin;
  w_rule.radius = outer;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Rule1D seg = gauss_legendre_on(level, breaks[p], breaks[p + 1]);
    for (std::size_t k = 0; k < seg.nodes.size(); ++k) {
      const double rho = seg.nodes[k];
      const double wr = seg.weights[k] * std::pow(rho, n - 1) *
                        radial_weight(rho);
      for (std::size_t d = 0; d < dirs.nodes.size(); ++d) {
        w_rule.nodes.push_back(dirs.nodes[d] * rho);
        w_rule.weights.push_back(wr * dirs.weights[d]);
      }
    }
  }

  std::vector<RecoveryRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    const Mollifier m = Mollifier::make(n, eps);
    const ConvolutionRule moll(mollifier_test_function(m), level);

    RecoveryRow row;
    row.epsilon = eps;
    row.u_eps_at_0 = moll.apply(u_eval, origin);
    const double v_eps_0 = moll.apply_parallel(v_eval, origin);
    const ScalarField f_eps = mollify(f, m, level);
    const double i3 = integrate(w_rule, f_eps.evaluate);
    row.rhs = v_eps_0 / (ctx.surf_n * i1) + i3 / i1;
    rows.push_back(row);
  }
  return rows;
}

double difference_quotient_defect(const ScalarField& u, const ScalarField& f,
                                  const std::vector<Point>& x0_samples, int i,
                                  double h, const RepresentationConfig& cfg) {
  check_levels(cfg);
  if (x0_samples.empty()) {
    throw std::invalid_argument("need at least one sample point");
  }
  const int n = u.dim;
  require_dimension(n);
  check_axis(i, n);
  if (!(h > 0.0) || !(h < 1.0)) {
    throw std::invalid_argument("difference quotient needs 0 < h < 1");
  }
  double worst = 0.0;
  for (const Point& x0 : x0_samples) {
    if (x0.dim() != n) throw std::invalid_argument("sample dimension mismatch");
    Point shifted = x0;
    shifted[i] += h;
    const double quotient = (u.evaluate(shifted) - u.evaluate(x0)) / h;
    const double grad = eval_grad_u(u, f, x0, i, cfg);
    worst = std::fmax(worst, std::abs(quotient - grad));
  }
  return worst;
}

}  // namespace greenball
