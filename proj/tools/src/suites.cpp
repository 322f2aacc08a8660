#include "suites.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "greenball/fields.hpp"
#include "greenball/geometry.hpp"
#include "greenball/kernels.hpp"
#include "greenball/mollifier.hpp"
#include "greenball/quadrature.hpp"
#include "greenball/representation.hpp"
#include "greenball/rng.hpp"

namespace greenball_cli {
namespace {

using greenball::AveragingVariant;
using greenball::AveragingWeight;
using greenball::BallRule;
using greenball::Box;
using greenball::KernelContext;
using greenball::Point;
using greenball::PowerInequality;
using greenball::RecoveryRow;
using greenball::RepresentationConfig;
using greenball::Rng;
using greenball::ScalarField;
using greenball::SphereRule;
using greenball::TestFunction;
using greenball::TrigPolynomial;
using nlohmann::json;

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

const double kSqrt2 = 1.4142135623730951;
const double kSqrt3 = 1.7320508075688772;

json default_modes_single() {
  return json::array({{{"amplitude", 1.0},
                       {"frequency", {1.0, 0.0, 0.0}},
                       {"phase", 0.0}}});
}

json default_modes_planar() {
  return json::array({{{"amplitude", 1.0},
                       {"frequency", {1.0, kSqrt2, 0.0}},
                       {"phase", 0.0}},
                      {{"amplitude", 0.5},
                       {"frequency", {kSqrt3, 0.0, 0.0}},
                       {"phase", 0.0}}});
}

json default_modes_axial() {
  return json::array({{{"amplitude", 1.0},
                       {"frequency", {1.0, 0.0, 0.0}},
                       {"phase", 0.0}},
                      {{"amplitude", 1.0},
                       {"frequency", {kSqrt2, 0.0, 0.0}},
                       {"phase", 0.0}}});
}

TrigPolynomial trig_from_json(const json& modes) {
  if (!modes.is_array() || modes.empty()) {
    throw std::invalid_argument("mode list must be a nonempty array");
  }
  const auto& first = modes.front().at("frequency");
  TrigPolynomial p(static_cast<int>(first.size()));
  for (const json& m : modes) {
    const auto& freq = m.at("frequency");
    Point w(static_cast<int>(freq.size()));
    for (int i = 0; i < w.dim(); ++i) w[i] = freq.at(i).get<double>();
    p.add_mode(m.at("amplitude").get<double>(), w,
               m.value("phase", 0.0));
  }
  return p;
}

Point point_from_json(const json& arr) {
  Point p(static_cast<int>(arr.size()));
  for (int i = 0; i < p.dim(); ++i) p[i] = arr.at(i).get<double>();
  return p;
}

double loglog_slope(const std::vector<double>& h,
                    const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(h.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(h[i]);
    const double ly = std::log(v[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int eff_level(const json& s, std::optional<int> ov, int fallback) {
  return ov ? *ov : s.value("level", fallback);
}

std::uint64_t eff_seed(const json& s, std::optional<std::uint64_t> ov,
                       std::uint64_t fallback) {
  return ov ? *ov : s.value("seed", fallback);
}

void stamp_parameters(VerificationReport& rep, const json& s) {
  for (auto it = s.begin(); it != s.end(); ++it) {
    rep.parameters[it.key()] =
        it.value().is_string() ? it.value().get<std::string>()
                               : it.value().dump();
  }
}

// -- kernels ------------------------------------------------------------------
VerificationReport suite_kernels(const json& s, std::optional<int> lov,
                                 std::optional<std::uint64_t> sov) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 8);
  const std::uint64_t seed = eff_seed(s, sov, 2);
  const int samples = s.value("quotient_samples", 20);

  KernelContext ctx = KernelContext::make(3);
  for (double xr : {0.0, 0.5, 0.9}) {
    Point x = xr == 0.9 ? Point::unit(3, 1) * xr : Point::unit(3, 0) * xr;
    SphereRule rule = greenball::peaked_sphere_quadrature(3, 1.0, x, level);
    const double mass = greenball::integrate(rule, [&](const Point& y) {
      return greenball::poisson_kernel(ctx, x, y, 1.0);
    });
    rep.add_abs(fmt("poisson mass |x|=%.1f level=%d", xr, level), mass, 1.0,
                1e-8);
  }

  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    const Point y = rng.next_unit_vector(3);
    auto qerr = [&](double h) {
      Point xh = Point::unit(3, 0) * h;
      const double dq = (greenball::poisson_kernel(ctx, xh, y, 1.0) -
                         greenball::poisson_kernel(ctx, Point::zero(3), y,
                                                   1.0)) / h;
      return std::abs(dq - greenball::mixed_derivative_origin(ctx, 0, y));
    };
    const double ratio = qerr(1e-2) / qerr(1e-3);
    rep.add_abs(fmt("derivative quotient ratio sample=%02d y1=%+.4f", k,
                    y[0]),
                ratio, 10.0, 2.0);
  }

  for (int n : {3, 4, 5}) {
    const double surf = greenball::unit_sphere_measure(n);
    for (double delta : {0.25, 0.5, 0.9}) {
      BallRule centered = greenball::singular_ball_quadrature(
          n, Point::zero(n), delta, Point::zero(n), 6);
      const double got = greenball::integrate(centered, [&](const Point& y) {
        return std::pow(y.norm(), 1.0 - n);
      });
      rep.add_abs(fmt("singular closed form n=%d delta=%.2f", n, delta), got,
                  surf * delta, 1e-8);

      const Point c = Point::unit(n, 0) * 0.1;
      BallRule offset =
          greenball::singular_ball_quadrature(n, c, delta + 0.1, c, 6);
      const double got2 = greenball::integrate(offset, [&](const Point& y) {
        return std::pow((y - c).norm(), 1.0 - n);
      });
      rep.add_abs(fmt("singular closed form offset n=%d delta=%.2f", n,
                      delta),
                  got2, surf * (delta + 0.1), 1e-8);
    }
  }
  return rep;
}

// -- representation -----------------------------------------------------------
VerificationReport suite_representation(const json& s, std::optional<int> lov,
                                        std::optional<std::uint64_t> sov) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 8);
  const std::uint64_t seed = eff_seed(s, sov, 41);
  const int samples = s.value("samples", 10);
  const double radius = s.value("interior_radius", 0.5);
  RepresentationConfig cfg;
  cfg.surface_level = level;
  cfg.volume_level = level;

  // harmonic reproduction: zero forcing, boundary data reproduced inside
  ScalarField zero = ScalarField::constant(3, 0.0);
  struct Harmonic {
    const char* name;
    double (*eval)(const Point&);
  };
  const Harmonic harmonics[3] = {
      {"u=1", [](const Point&) { return 1.0; }},
      {"u=y3", [](const Point& y) { return y[2]; }},
      {"u=y1^2-y2^2", [](const Point& y) { return y[0] * y[0] - y[1] * y[1]; }},
  };
  const Point probes[2] = {Point::unit(3, 0) * 0.3, Point::unit(3, 1) * 0.9};
  for (const Harmonic& h : harmonics) {
    ScalarField u;
    u.dim = 3;
    u.evaluate = h.eval;
    for (const Point& x : probes) {
      rep.add_abs(fmt("harmonic %s |x|=%.1f", h.name, x.norm()),
                  greenball::eval_u_ball(u, zero, x, cfg), h.eval(x), 1e-6);
    }
  }

  Rng rng(seed);
  for (const json& forcing : s.at("forcings")) {
    const std::string name = forcing.value("name", "trig");
    TrigPolynomial f = trig_from_json(forcing.at("modes"));
    ScalarField u = greenball::exact_poisson_inverse(f).field();
    for (int k = 0; k < samples; ++k) {
      const Point x = rng.next_in_ball(3, radius);
      const double got = greenball::eval_u_ball(u, f.field(), x, cfg);
      rep.add_rel(fmt("f=%s sample=%02d |x|=%.3f", name.c_str(), k, x.norm()),
                  got, u.evaluate(x), 1e-4);
    }
  }
  return rep;
}

// -- gradient -----------------------------------------------------------------
VerificationReport suite_gradient(const json& s, std::optional<int> lov,
                                  std::optional<std::uint64_t> sov) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 8);
  const std::uint64_t seed = eff_seed(s, sov, 52);
  const int samples = s.value("samples", 5);
  RepresentationConfig cfg;
  cfg.surface_level = level;
  cfg.volume_level = level;

  Rng rng(seed);
  for (const json& forcing : s.at("forcings")) {
    const std::string name = forcing.value("name", "trig");
    TrigPolynomial f = trig_from_json(forcing.at("modes"));
    ScalarField u = greenball::exact_poisson_inverse(f).field();
    for (int k = 0; k < samples; ++k) {
      const Point x0 = rng.next_in_ball(3, s.value("sample_radius", 2.0));
      const int axis = k % 3;
      const double got = greenball::eval_grad_u(u, f.field(), x0, axis, cfg);
      rep.add_abs(fmt("f=%s grad axis=%d sample=%02d", name.c_str(), axis, k),
                  got, u.exact_gradient(x0, axis), 1e-3);
    }
  }

  // difference-quotient defect against the displayed two-functional bound
  {
    TrigPolynomial f = trig_from_json(default_modes_single());
    ScalarField u = greenball::exact_poisson_inverse(f).field();
    Rng drng(s.value("defect_seed", 73));
    std::vector<Point> x0s;
    for (int k = 0; k < s.value("defect_samples", 10); ++k) {
      x0s.push_back(drng.next_in_ball(3, 1.5));
    }
    for (const json& hj : s.at("defect_h")) {
      const double h = hj.get<double>();
      const double defect =
          greenball::difference_quotient_defect(u, f.field(), x0s, 0, h, cfg);
      const double bound = greenball::lemma_lim_surface(h, 0, 3, 6) +
                           greenball::lemma_lim_volume(h, 0, 3, 6) + 1e-5;
      rep.add_upper(fmt("defect h=%.7g vs bound", h), defect, bound);
    }
  }
  return rep;
}

// -- lemma-lim ----------------------------------------------------------------
VerificationReport suite_lemma_lim(const json& s, std::optional<int> lov,
                                   std::optional<std::uint64_t>) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 6);
  const double min_slope = s.value("min_slope", 0.9);
  std::vector<double> hs;
  for (const json& hj : s.at("h")) hs.push_back(hj.get<double>());

  std::vector<double> surf, vol;
  for (double h : hs) {
    surf.push_back(greenball::lemma_lim_surface(h, 0, 3, level));
    vol.push_back(greenball::lemma_lim_volume(h, 0, 3, level));
    rep.add_lower(fmt("surface functional h=%.7g", h), surf.back(), 0.0);
    rep.add_lower(fmt("volume functional h=%.7g", h), vol.back(), 0.0);
  }
  // The surface functional decays at first order; the volume functional
  // carries an h*log(1/h) term from the two singular neighborhoods, so its
  // fitted exponent over this h-range settles near 0.77 and the row below
  // reports that shortfall honestly.
  rep.add_lower("surface fitted slope", loglog_slope(hs, surf), min_slope);
  rep.add_lower("volume fitted slope", loglog_slope(hs, vol), min_slope);
  return rep;
}

// -- averaging ----------------------------------------------------------------
VerificationReport suite_averaging(const json& s, std::optional<int> lov,
                                   std::optional<std::uint64_t>) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 8);
  AveragingWeight w =
      AveragingWeight::standard(s.value("R", 1.0), s.value("delta", 0.1));
  ScalarField zero = ScalarField::constant(3, 0.0);

  rep.add_abs("residual u=1 f=0",
              greenball::averaging_identity_residual(
                  ScalarField::constant(3, 1.0), zero, w, level),
              0.0, 1e-8);
  {
    ScalarField lin;
    lin.dim = 3;
    lin.evaluate = [](const Point& y) { return y[0]; };
    rep.add_abs("residual u=y1 f=0",
                greenball::averaging_identity_residual(lin, zero, w, level),
                0.0, 1e-8);
  }
  {
    TrigPolynomial f = trig_from_json(default_modes_single());
    ScalarField u = greenball::exact_poisson_inverse(f).field();
    rep.add_abs("residual trig pair",
                greenball::averaging_identity_residual(u, f.field(), w, level),
                0.0, 1e-4);
  }
  // documented discrepancy: the mismatched pairing misses the constant
  rep.add_lower("mismatched pairing residual u=1",
                greenball::averaging_identity_residual(
                    ScalarField::constant(3, 1.0), zero, w, level,
                    AveragingVariant::kPrintedPairing),
                0.1);
  return rep;
}

// -- recovery -----------------------------------------------------------------
VerificationReport suite_recovery(const json& s, std::optional<int> lov,
                                  std::optional<std::uint64_t>) {
  VerificationReport rep;
  const int level = eff_level(s, lov, 8);
  AveragingWeight w =
      AveragingWeight::standard(s.value("R", 1.0), s.value("delta", 0.1));
  std::vector<double> epsilons;
  for (const json& e : s.at("epsilons")) epsilons.push_back(e.get<double>());

  TrigPolynomial f = trig_from_json(default_modes_single());
  ScalarField u_clean = greenball::exact_poisson_inverse(f).field();
  auto with_spike = [](const ScalarField& base) {
    ScalarField dirty = base;
    const auto eval = base.evaluate;
    dirty.evaluate = [eval](const Point& x) {
      if (x.norm() == 0.0) return 5.0;
      return eval(x);
    };
    return dirty;
  };

  {
    std::vector<RecoveryRow> rows = greenball::generalized_recovery(
        with_spike(u_clean), f.field(), w, epsilons, level);
    for (const RecoveryRow& r : rows) {
      rep.add_abs(fmt("recovery eps=%.3g two-sided gap", r.epsilon),
                  r.u_eps_at_0, r.rhs, 1e-6);
      rep.add_abs(fmt("recovery eps=%.3g value at center", r.epsilon),
                  r.u_eps_at_0, 1.0, 0.5 * r.epsilon);
    }
  }
  {
    const Point x0 = point_from_json(s.value("translate", json{1.0, 0.0, 0.0}));
    ScalarField ut = with_spike(greenball::translate(u_clean, x0));
    ScalarField ft = greenball::translate(f.field(), x0);
    const double want = u_clean.evaluate(x0);
    std::vector<RecoveryRow> rows =
        greenball::generalized_recovery(ut, ft, w, epsilons, level);
    for (const RecoveryRow& r : rows) {
      rep.add_abs(fmt("translated recovery eps=%.3g two-sided gap", r.epsilon),
                  r.u_eps_at_0, r.rhs, 1e-6);
      rep.add_abs(fmt("translated recovery eps=%.3g value at center",
                      r.epsilon),
                  r.u_eps_at_0, want, 0.5 * r.epsilon);
    }
  }
  return rep;
}

// -- appendix -----------------------------------------------------------------
VerificationReport suite_appendix(const json& s, std::optional<int> lov,
                                  std::optional<std::uint64_t> sov) {
  VerificationReport rep;
  const std::uint64_t seed = eff_seed(s, sov, 1);
  const int samples = s.value("samples", 100000);

  Rng rng(seed);
  int violations = 0;
  for (int k = 0; k < samples; ++k) {
    const double a = rng.next_log_uniform(1e-3, 1e3);
    const double b = rng.next_log_uniform(1e-3, 1e3);
    const int m = rng.next_int(1, 8);
    if (!greenball::check_power_inequality(a, b, m).holds) ++violations;
  }
  rep.add_abs(fmt("power inequality violations in %d samples", samples),
              static_cast<double>(violations), 0.0, 0.0);

  int eq_bad = 0;
  for (int k = 0; k < 20; ++k) {
    const double a = 1e-3 * std::pow(10.0, 6.0 * k / 19.0);
    PowerInequality p = greenball::check_power_inequality(a, a, 1 + (k % 8));
    if (p.lhs != 0.0 || p.rhs != 0.0 || !p.holds) ++eq_bad;
  }
  rep.add_abs("power inequality equality rows a=b",
              static_cast<double>(eq_bad), 0.0, 0.0);

  {
    ScalarField u =
        greenball::exact_poisson_inverse(trig_from_json(default_modes_planar()))
            .field();
    TestFunction phi = greenball::bump_test_function(3, 0.7, 1.0);
    TestFunction psi = greenball::bump_test_function(3, 1.0, 0.8);
    const int coarse = s.value("coarse_level", 4);
    const int fine = lov ? *lov : s.value("fine_level", 6);
    const double rc = greenball::fubini_residual(u, phi, psi, coarse);
    const double rf = greenball::fubini_residual(u, phi, psi, fine);
    rep.add_abs(fmt("exchange residual level=%d", fine), rf, 0.0, 1e-6);
    rep.add_upper(fmt("exchange residual level=%d vs level=%d", fine, coarse),
                  rf, rc);
  }
  return rep;
}

// -- almost-period ------------------------------------------------------------
VerificationReport suite_almost_period(const json& s, std::optional<int>,
                                       std::optional<std::uint64_t>) {
  VerificationReport rep;
  const double epsilon = s.value("epsilon", 0.1);
  const double t_max = s.value("t_max", 200.0);
  const int axis = s.value("axis", 0);
  Box box(s.value("half_width", 20.0), s.value("grid", 401));

  TrigPolynomial f = trig_from_json(
      s.contains("modes") ? s.at("modes") : default_modes_axial());
  TrigPolynomial u = greenball::exact_poisson_inverse(f);
  TrigPolynomial du = u.derivative(axis);

  std::optional<double> T =
      greenball::find_almost_period(f.field(), epsilon, axis, t_max, box);
  if (!T) {
    // no almost-period found below t_max: emit one failing row
    rep.add_upper("almost period T", std::nan(""), t_max);
    return rep;
  }
  rep.add_upper("almost period T", *T, t_max);
  const Point shift = Point::unit(f.dim(), axis) * *T;
  rep.add_upper("defect(f,T)", greenball::almost_period_defect(f.field(),
                                                               shift, box),
                epsilon);
  rep.add_upper("defect(u,T)", greenball::almost_period_defect(u.field(),
                                                               shift, box),
                epsilon);
  rep.add_upper("defect(du,T)", greenball::almost_period_defect(du.field(),
                                                                shift, box),
                epsilon);
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "kernels",  "representation", "gradient", "lemma-lim",
      "averaging", "recovery",      "appendix", "almost-period"};
  return names;
}

json default_config() {
  json cfg;
  cfg["kernels"] = {{"level", 8}, {"seed", 2}, {"quotient_samples", 20}};
  cfg["representation"] = {
      {"level", 8},
      {"seed", 41},
      {"samples", 10},
      {"interior_radius", 0.5},
      {"forcings",
       json::array(
           {{{"name", "cos(x1)"}, {"modes", default_modes_single()}},
            {{"name", "cos(x1+sqrt2*x2)+0.5cos(sqrt3*x1)"},
             {"modes", default_modes_planar()}}})}};
  cfg["gradient"] = {
      {"level", 8},
      {"seed", 52},
      {"samples", 5},
      {"sample_radius", 2.0},
      {"defect_seed", 73},
      {"defect_samples", 10},
      {"defect_h", {0.125, 0.0625, 0.03125, 0.015625}},
      {"forcings",
       json::array(
           {{{"name", "cos(x1)"}, {"modes", default_modes_single()}},
            {{"name", "cos(x1+sqrt2*x2)+0.5cos(sqrt3*x1)"},
             {"modes", default_modes_planar()}}})}};
  cfg["lemma-lim"] = {
      {"level", 6},
      {"min_slope", 0.9},
      {"h", {0.125, 0.0625, 0.03125, 0.015625, 0.0078125}}};
  cfg["averaging"] = {{"level", 8}, {"R", 1.0}, {"delta", 0.1}};
  cfg["recovery"] = {{"level", 8},
                     {"R", 1.0},
                     {"delta", 0.1},
                     {"epsilons", {0.2, 0.1, 0.05}},
                     {"translate", {1.0, 0.0, 0.0}}};
  cfg["appendix"] = {{"seed", 1},
                     {"samples", 100000},
                     {"coarse_level", 4},
                     {"fine_level", 6}};
  cfg["almost-period"] = {{"epsilon", 0.1}, {"t_max", 200.0},
                          {"axis", 0},      {"half_width", 20.0},
                          {"grid", 401},    {"modes", default_modes_axial()}};
  return cfg;
}

VerificationReport run_suite(const std::string& name, const json& section,
                             std::optional<int> lov,
                             std::optional<std::uint64_t> sov) {
  VerificationReport rep;
  if (name == "kernels") {
    rep = suite_kernels(section, lov, sov);
  } else if (name == "representation") {
    rep = suite_representation(section, lov, sov);
  } else if (name == "gradient") {
    rep = suite_gradient(section, lov, sov);
  } else if (name == "lemma-lim") {
    rep = suite_lemma_lim(section, lov, sov);
  } else if (name == "averaging") {
    rep = suite_averaging(section, lov, sov);
  } else if (name == "recovery") {
    rep = suite_recovery(section, lov, sov);
  } else if (name == "appendix") {
    rep = suite_appendix(section, lov, sov);
  } else if (name == "almost-period") {
    rep = suite_almost_period(section, lov, sov);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
  rep.command = name;
  stamp_parameters(rep, section);
  if (lov) rep.parameters["level_override"] = std::to_string(*lov);
  if (sov) rep.parameters["seed_override"] = std::to_string(*sov);
  rep.pass = true;
  for (const ReportRow& r : rep.rows) rep.pass = rep.pass && r.pass;
  return rep;
}

}  // namespace greenball_cli
