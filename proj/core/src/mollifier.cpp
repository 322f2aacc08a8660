#include "greenball/mollifier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "greenball/parallel.hpp"

namespace greenball {

namespace {

/// Radial breakpoints adapted to a test function's support structure.
std::vector<double> support_breaks(const TestFunction& t) {
  const double lo = t.inner_radius;
  const double hi = t.support_radius;
  if (!(hi > lo) || lo < 0.0) {
    throw std::invalid_argument("test function support is empty");
  }
  return flat_edge_breakpoints(std::max(lo, 0.0), hi, t.flat_inner,
                               t.flat_outer);
}

// Shell supports (inner_radius > 0) start their radial panels at the inner
// edge, so no nodes land inside the hole.
BallRule support_rule(const TestFunction& t, int level) {
  return panel_radial_ball_quadrature(t.n, Point::zero(t.n), support_breaks(t),
                                      level);
}

}  // namespace

double mollifier_normalization(int n) {
  require_dimension(n);
  static std::mutex mutex;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto radial = [n](double r) {
      const double d = r * r - 1.0;
      if (d >= 0.0) return 0.0;
      return std::pow(r, n - 1) * std::exp(1.0 / d);
    };
    const double integral =
        adaptive_integrate(radial, 0.0, 1.0, 1e-13, 1e-16,
                           flat_edge_breakpoints(0.0, 1.0, false, true));
    it = cache.emplace(n, 1.0 / (unit_sphere_measure(n) * integral)).first;
  }
  return it->second;
}

Mollifier Mollifier::make(int n, double epsilon) {
  require_dimension(n);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("mollifier scale must be positive and finite");
  }
  Mollifier m;
  m.n = n;
  m.epsilon = epsilon;
  m.normalization_c = mollifier_normalization(n);
  return m;
}

double Mollifier::operator()(const Point& x) const {
  if (x.dim() != n) throw std::invalid_argument("point dimension mismatch");
  const double r = x.norm() / epsilon;
  const double d = r * r - 1.0;
  if (d >= 0.0) return 0.0;
  return normalization_c * std::pow(epsilon, -n) * std::exp(1.0 / d);
}

TestFunction mollifier_test_function(const Mollifier& m) {
  TestFunction t;
  t.n = m.n;
  t.profile = [m](const Point& x) { return m(x); };
  t.support_radius = m.epsilon;
  t.symmetric = true;
  t.inner_radius = 0.0;
  t.flat_inner = false;
  t.flat_outer = true;
  return t;
}

TestFunction bump_test_function(int n, double radius, double amplitude) {
  require_dimension(n);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  TestFunction t;
  t.n = n;
  t.profile = [radius, amplitude](const Point& x) {
    const double r = x.norm() / radius;
    const double d = 1.0 - r * r;
    if (d <= 0.0) return 0.0;
    return amplitude * std::exp(-1.0 / d);
  };
  t.support_radius = radius;
  t.symmetric = true;
  t.inner_radius = 0.0;
  t.flat_inner = false;
  t.flat_outer = true;
  return t;
}

double test_function_mass(const TestFunction& t, int level) {
  const BallRule rule = support_rule(t, level);
  const auto& profile = t.profile;
  return integrate(rule, [&profile](const Point& z) { return profile(z); });
}

ConvolutionRule::ConvolutionRule(const TestFunction& t, int level) {
  const BallRule rule = support_rule(t, level);
  offsets_.reserve(rule.nodes.size());
  weights_.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    offsets_.push_back(rule.nodes[i]);
    weights_.push_back(rule.weights[i] * t.profile(rule.nodes[i]));
  }
}

double ConvolutionRule::apply(
    const std::function<double(const Point&)>& evaluate,
    const Point& x) const {
  NeumaierSum sum;
  for (std::size_t i = 0; i < offsets_.size(); ++i) {
    sum.add(weights_[i] * evaluate(x - offsets_[i]));
  }
  return sum.value();
}

double ConvolutionRule::apply_parallel(
    const std::function<double(const Point&)>& evaluate,
    const Point& x) const {
  constexpr std::size_t kChunk = 256;
  const std::size_t count = offsets_.size();
  if (count <= kChunk) return apply(evaluate, x);
  std::vector<double> partial(par::chunk_count(count, kChunk), 0.0);
  par::for_chunks(count, kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    NeumaierSum sum;
                    for (std::size_t i = begin; i < end; ++i) {
                      sum.add(weights_[i] * evaluate(x - offsets_[i]));
                    }
                    partial[c] = sum.value();
                  });
  NeumaierSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

double ConvolutionRule::mass() const {
  NeumaierSum sum;
  for (double w : weights_) sum.add(w);
  return sum.value();
}

ScalarField mollify(const ScalarField& u, const Mollifier& m, int level) {
  if (u.dim != m.n) throw std::invalid_argument("dimension mismatch");
  auto rule = std::make_shared<ConvolutionRule>(mollifier_test_function(m),
                                                level);
  ScalarField v;
  v.dim = u.dim;
  const auto eval = u.evaluate;
  v.evaluate = [rule, eval](const Point& x) { return rule->apply(eval, x); };
  v.bound = u.bound;  // averaging against a unit-mass nonnegative kernel
  return v;
}

double convolve_test(const ScalarField& u, const TestFunction& t,
                     const Point& x, int level) {
  if (u.dim != t.n || x.dim() != t.n) {
    throw std::invalid_argument("dimension mismatch");
  }
  const ConvolutionRule rule(t, level);
  return rule.apply(u.evaluate, x);
}

double bounded_generalized_sup(const ScalarField& u, const TestFunction& t,
                               const Box& box, int level) {
  if (u.dim != t.n) throw std::invalid_argument("dimension mismatch");
  const ConvolutionRule rule(t, level);
  const int n = u.dim;
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) {
    total *= static_cast<std::size_t>(box.grid_per_axis);
  }
  const double step =
      2.0 * box.half_width / (static_cast<double>(box.grid_per_axis) - 1.0);

  constexpr std::size_t kChunk = 64;
  const std::size_t nchunks = par::chunk_count(total, kChunk);
  std::vector<double> partial(nchunks, 0.0);
  const auto& eval = u.evaluate;
  par::for_chunks(total, kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    double m = 0.0;
                    for (std::size_t i = begin; i < end; ++i) {
                      std::size_t flat = i;
                      Point x(n);
                      for (int k = 0; k < n; ++k) {
                        const std::size_t g =
                            static_cast<std::size_t>(box.grid_per_axis);
                        x[k] = -box.half_width +
                               step * static_cast<double>(flat % g);
                        flat /= g;
                      }
                      m = std::fmax(m, std::abs(rule.apply(eval, x)));
                    }
                    partial[c] = m;
                  });
  double result = 0.0;
  for (double p : partial) result = std::fmax(result, p);
  return result;
}

double mode_attenuation(const Mollifier& m, const Point& frequency,
                        int level) {
  if (frequency.dim() != m.n) {
    throw std::invalid_argument("dimension mismatch");
  }
  const ConvolutionRule rule(mollifier_test_function(m), level);
  return rule.apply(
      [&frequency](const Point& z) { return std::cos(frequency.dot(z)); },
      Point::zero(m.n));
}

PowerInequality check_power_inequality(double a, double b, int m) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("check_power_inequality requires a, b > 0");
  }
  if (m < 1) throw std::invalid_argument("power must be a positive integer");
  PowerInequality out;
  const double dm = static_cast<double>(m);
  out.lhs = std::abs(std::pow(a, dm) - std::pow(b, dm));
  out.rhs = 0.5 * dm * std::abs(1.0 / b - 1.0 / a) *
            (std::pow(a, dm + 1.0) + std::pow(b, dm + 1.0));
  const double scale = std::fmax(1.0, std::fmax(out.lhs, out.rhs));
  out.holds = out.lhs <= out.rhs + 1e-12 * scale;
  return out;
}

double fubini_residual(const ScalarField& u, const TestFunction& phi,
                       const TestFunction& psi, int level) {
  if (u.dim != phi.n || u.dim != psi.n) {
    throw std::invalid_argument("dimension mismatch");
  }
  if (!phi.symmetric || !psi.symmetric) {
    throw std::invalid_argument(
        "convolution-exchange identity requires symmetric test functions");
  }

  // side(a, b) = integral a(x) (u * b)(x) dx, outer rule over supp(a).
  // The inner rule runs one level finer than the outer: if both sides used
  // one shared level, side(phi, psi) and side(psi, phi) would be built from
  // the same two node sets, and the antipodal symmetry of the product rules
  // pairs every term W_i V_j u(x_i - z_j) of one sum with the term
  // W_i V_j u(z_j - x_i) of the other under (i, j) -> (-i, -j) — the two
  // double sums are exact permutations of each other and the residual is
  // roundoff for every field, checking nothing.  Staggered levels keep the
  // two discretizations independent, so the residual measures genuine
  // quadrature error and decays under refinement.
  const auto side = [&u, level](const TestFunction& a, const TestFunction& b) {
    const BallRule outer = support_rule(a, level);
    const ConvolutionRule inner(b, level + 1);
    const auto& eval = u.evaluate;
    const auto& aprof = a.profile;
    return integrate(outer, [&](const Point& x) {
      return aprof(x) * inner.apply(eval, x);
    });
  };
  return std::abs(side(phi, psi) - side(psi, phi));
}

}  // namespace greenball
