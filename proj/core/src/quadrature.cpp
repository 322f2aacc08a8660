#include "greenball/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <string>

namespace greenball {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_level(int level) {
  if (level < 1 || level > 64) {
    throw std::invalid_argument("quadrature level must be in [1, 64], got " +
                                std::to_string(level));
  }
}

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("radius must be positive and finite");
  }
}

Rule1D compute_gauss_legendre(int m) {
  Rule1D rule;
  rule.nodes.assign(static_cast<std::size_t>(m), 0.0);
  rule.weights.assign(static_cast<std::size_t>(m), 0.0);
  // Newton iteration on the Legendre recurrence, one root per line of
  // symmetry; the Chebyshev-angle initial guess converges in a handful of
  // steps for every practical order.
  for (int k = 0; k < (m + 1) / 2; ++k) {
    double x = std::cos(kPi * (static_cast<double>(k) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 =
            ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const std::size_t hi = static_cast<std::size_t>(m - 1 - k);
    const std::size_t lo = static_cast<std::size_t>(k);
    // Roots come out descending from +1; store ascending and mirror so the
    // rule is exactly symmetric (odd polynomials integrate to a clean 0).
    rule.nodes[hi] = (lo == hi) ? 0.0 : x;
    rule.nodes[lo] = (lo == hi) ? 0.0 : -x;
    rule.weights[hi] = w;
    rule.weights[lo] = w;
  }
  return rule;
}

/// Gauss rule for the weight (1 - t^2)^{(m-1)/2} on (-1, 1), m >= 1: the
/// polar-angle factor of the spherical product rule after the t = cos(phi)
/// substitution.  Odd m folds the polynomial weight into Gauss-Legendre
/// (order raised so degree-(2*level - 1) exactness survives the folding);
/// even m uses the closed-form Gauss-Chebyshev rule of the second kind with
/// the remaining integer power folded in.
Rule1D polar_factor_rule(int m, int level) {
  Rule1D rule;
  if (m % 2 == 1) {
    const int p = (m - 1) / 2;
    const Rule1D& base = gauss_legendre(level + p);
    rule = base;
    if (p > 0) {
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        rule.weights[i] *= std::pow(1.0 - t * t, p);
      }
    }
  } else {
    const int q = (m - 2) / 2;
    const int npts = level + q;
    rule.nodes.resize(static_cast<std::size_t>(npts));
    rule.weights.resize(static_cast<std::size_t>(npts));
    for (int j = 1; j <= npts; ++j) {
      const double theta = kPi * static_cast<double>(j) /
                           (static_cast<double>(npts) + 1.0);
      const double s = std::sin(theta);
      // Store ascending in t.
      const std::size_t slot = static_cast<std::size_t>(npts - j);
      rule.nodes[slot] = std::cos(theta);
      rule.weights[slot] = (kPi / (static_cast<double>(npts) + 1.0)) * s * s *
                           (q > 0 ? std::pow(s * s, q) : 1.0);
    }
  }
  return rule;
}

/// Orthonormal frame of R^n whose first vector is `axis` (unit), built from
/// a single Householder reflection mapping e_1 to axis.
std::vector<Point> householder_frame(int n, const Point& axis) {
  std::vector<Point> frame;
  frame.reserve(static_cast<std::size_t>(n));
  Point v = axis;
  v[0] -= 1.0;  // v = axis - e_1
  const double vv = v.norm_sq();
  for (int k = 0; k < n; ++k) {
    Point e = Point::unit(n, k);
    if (vv > 1e-24) {
      const double scale = 2.0 * v[k] / vv;
      e -= v * scale;
    }
    frame.push_back(e);
  }
  return frame;
}

struct Panel {
  double err;
  double a;
  double b;
  double value;
};

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;  // deterministic tie-break
  }
};

void panel_estimate(const std::function<double(double)>& f, double a, double b,
                    Panel* out) {
  const Rule1D& lo = gauss_legendre(12);
  const Rule1D& hi = gauss_legendre(25);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  NeumaierSum slo;
  for (std::size_t i = 0; i < lo.nodes.size(); ++i) {
    slo.add(lo.weights[i] * f(mid + half * lo.nodes[i]));
  }
  NeumaierSum shi;
  for (std::size_t i = 0; i < hi.nodes.size(); ++i) {
    shi.add(hi.weights[i] * f(mid + half * hi.nodes[i]));
  }
  const double vlo = half * slo.value();
  const double vhi = half * shi.value();
  out->a = a;
  out->b = b;
  out->value = vhi;
  out->err = std::abs(vhi - vlo);
}

}  // namespace

const Rule1D& gauss_legendre(int points) {
  if (points < 1 || points > 4096) {
    throw std::invalid_argument("gauss_legendre order out of range");
  }
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) {
    it = cache.emplace(points, compute_gauss_legendre(points)).first;
  }
  return it->second;
}

Rule1D gauss_legendre_on(int points, double a, double b) {
  const Rule1D& base = gauss_legendre(points);
  Rule1D rule;
  rule.nodes.reserve(base.nodes.size());
  rule.weights.reserve(base.nodes.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    rule.nodes.push_back(mid + half * base.nodes[i]);
    rule.weights.push_back(half * base.weights[i]);
  }
  return rule;
}

SphereRule sphere_quadrature(int n, const Point& center, double radius,
                             int level) {
  require_dimension(n);
  require_radius(radius);
  require_level(level);
  if (center.dim() != n) {
    throw std::invalid_argument("center dimension mismatch");
  }

  std::vector<Rule1D> polar;
  polar.reserve(static_cast<std::size_t>(n - 2));
  for (int j = 1; j <= n - 2; ++j) {
    polar.push_back(polar_factor_rule(n - 1 - j, level));
  }
  const int naz = 2 * level;
  const double waz = kPi / static_cast<double>(level);

  std::size_t total = static_cast<std::size_t>(naz);
  for (const auto& r : polar) total *= r.nodes.size();

  SphereRule rule;
  rule.n = n;
  rule.center = center;
  rule.radius = radius;
  rule.nodes.reserve(total);
  rule.weights.reserve(total);

  const double rpow = std::pow(radius, n - 1);
  std::vector<std::size_t> idx(polar.size(), 0);
  while (true) {
    // Chain of polar factors: x_1 = t_1, x_2 = s_1 t_2, ...; the azimuth
    // fills the last two coordinates.
    double prefix = 1.0;
    double wpolar = 1.0;
    Point base(n);
    for (std::size_t j = 0; j < polar.size(); ++j) {
      const double t = polar[j].nodes[idx[j]];
      wpolar *= polar[j].weights[idx[j]];
      base[static_cast<int>(j)] = prefix * t;
      prefix *= std::sqrt(std::max(0.0, 1.0 - t * t));
    }
    for (int k = 0; k < naz; ++k) {
      // Half-step offset keeps the azimuth set symmetric under the antipodal
      // map, so odd harmonics cancel exactly.
      const double theta =
          (static_cast<double>(k) + 0.5) * kPi / static_cast<double>(level);
      Point x = base;
      x[n - 2] = prefix * std::cos(theta);
      x[n - 1] = prefix * std::sin(theta);
      rule.nodes.push_back(center + x * radius);
      rule.weights.push_back(wpolar * waz * rpow);
    }
    // Odometer over the polar indices.
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      if (++idx[j] < polar[j].nodes.size()) break;
      idx[j] = 0;
    }
    if (j == idx.size()) break;
  }
  return rule;
}

BallRule ball_quadrature(int n, const Point& center, double radius, int level) {
  require_dimension(n);
  require_radius(radius);
  require_level(level);
  if (center.dim() != n) {
    throw std::invalid_argument("center dimension mismatch");
  }

  const SphereRule dirs = sphere_quadrature(n, Point::zero(n), 1.0, level);
  const Rule1D radial = gauss_legendre_on(level, 0.0, radius);

  BallRule rule;
  rule.n = n;
  rule.center = center;
  rule.radius = radius;
  rule.nodes.reserve(radial.nodes.size() * dirs.nodes.size());
  rule.weights.reserve(radial.nodes.size() * dirs.nodes.size());
  for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
    const double rho = radial.nodes[ir];
    const double wr = radial.weights[ir] * std::pow(rho, n - 1);
    for (std::size_t id = 0; id < dirs.nodes.size(); ++id) {
      rule.nodes.push_back(center + dirs.nodes[id] * rho);
      rule.weights.push_back(wr * dirs.weights[id]);
    }
  }
  return rule;
}

BallRule singular_ball_quadrature(int n, const Point& center, double radius,
                                  const Point& singular_at, int level) {
  require_dimension(n);
  require_radius(radius);
  require_level(level);
  if (center.dim() != n || singular_at.dim() != n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  const Point offset = singular_at - center;
  const double off = offset.norm();
  if (!(off < radius * (1.0 - 1e-12))) {
    throw std::domain_error(
        "singular point must lie strictly inside the ball");
  }

  const SphereRule dirs = sphere_quadrature(n, Point::zero(n), 1.0, level);
  const Rule1D& radial = gauss_legendre(level);

  BallRule rule;
  rule.n = n;
  rule.center = center;
  rule.radius = radius;
  rule.singular_at = singular_at;
  rule.nodes.reserve(radial.nodes.size() * dirs.nodes.size());
  rule.weights.reserve(radial.nodes.size() * dirs.nodes.size());
  const double r2_minus = radius * radius - off * off;
  for (std::size_t id = 0; id < dirs.nodes.size(); ++id) {
    const Point& dir = dirs.nodes[id];
    // Distance from the singular point to the boundary along dir.
    const double u = dir.dot(offset);
    const double rho_max = -u + std::sqrt(u * u + r2_minus);
    const double half = 0.5 * rho_max;
    for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
      const double rho = half * (radial.nodes[ir] + 1.0);
      const double wr = half * radial.weights[ir] * std::pow(rho, n - 1);
      rule.nodes.push_back(singular_at + dir * rho);
      rule.weights.push_back(wr * dirs.weights[id]);
    }
  }
  return rule;
}

SphereRule peaked_sphere_quadrature(int n, double radius, const Point& toward,
                                    int level) {
  require_dimension(n);
  require_radius(radius);
  require_level(level);
  if (toward.dim() != n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  const double rho_hat = toward.norm() / radius;
  if (rho_hat >= 1.0) {
    throw std::invalid_argument("peak point must lie inside the sphere");
  }

  // Angular scale of a boundary kernel peaking toward `toward`:
  // |y - toward|^2 = (radius - |toward|)^2 + 2 radius |toward| (1 - cos phi),
  // so the peak width in phi is (1 - rho_hat) / sqrt(rho_hat).
  double phi0 = kPi / 2.0;
  if (rho_hat > 1e-8) {
    phi0 = std::min(kPi / 2.0, (1.0 - rho_hat) / std::sqrt(rho_hat));
  }
  Point axis = Point::unit(n, 0);
  if (toward.norm() > 1e-14 * radius) {
    axis = toward * (1.0 / toward.norm());
  }

  // Geometrically doubling polar panels from the peak out to pi.
  std::vector<double> breaks{0.0};
  double edge = phi0;
  while (edge < kPi) {
    breaks.push_back(edge);
    edge *= 2.0;
  }
  breaks.push_back(kPi);
  // Merge a final sliver into the previous panel.
  if (breaks.size() >= 3 &&
      breaks.back() - breaks[breaks.size() - 2] <
          0.25 * (breaks[breaks.size() - 2] - breaks[breaks.size() - 3])) {
    breaks.erase(breaks.end() - 2);
  }

  // Directions orthogonal to the axis: a full sphere rule of R^{n-1} for
  // n > 3, the closed-form equispaced circle for n = 3.
  std::vector<Point> sub_nodes;
  std::vector<double> sub_weights;
  if (n == 3) {
    const int naz = 2 * level;
    for (int k = 0; k < naz; ++k) {
      const double theta =
          (static_cast<double>(k) + 0.5) * kPi / static_cast<double>(level);
      Point w(2);
      w[0] = std::cos(theta);
      w[1] = std::sin(theta);
      sub_nodes.push_back(w);
      sub_weights.push_back(kPi / static_cast<double>(level));
    }
  } else {
    const SphereRule sub = sphere_quadrature(n - 1, Point::zero(n - 1), 1.0, level);
    sub_nodes = sub.nodes;
    sub_weights = sub.weights;
  }

  const std::vector<Point> frame = householder_frame(n, axis);
  const Rule1D& base = gauss_legendre(level);

  SphereRule rule;
  rule.n = n;
  rule.radius = radius;
  rule.nodes.reserve((breaks.size() - 1) * base.nodes.size() *
                     sub_nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  const double rpow = std::pow(radius, n - 1);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t ip = 0; ip < base.nodes.size(); ++ip) {
      const double phi = mid + half * base.nodes[ip];
      const double wphi =
          half * base.weights[ip] * std::pow(std::sin(phi), n - 2);
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      for (std::size_t iw = 0; iw < sub_nodes.size(); ++iw) {
        Point y = frame[0] * c;
        for (int k = 0; k < n - 1; ++k) {
          y += frame[static_cast<std::size_t>(k + 1)] * (s * sub_nodes[iw][k]);
        }
        rule.nodes.push_back(y * radius);
        rule.weights.push_back(wphi * sub_weights[iw] * rpow);
      }
    }
  }
  return rule;
}

std::vector<double> flat_edge_breakpoints(double a, double b, bool flat_a,
                                          bool flat_b, int halvings) {
  if (!(b > a)) throw std::invalid_argument("empty interval");
  if (halvings < 1 || halvings > 40) {
    throw std::invalid_argument("halvings out of range");
  }
  std::vector<double> breaks;
  breaks.push_back(a);
  if (flat_a && flat_b) {
    const double mid = 0.5 * (a + b);
    for (int k = halvings; k >= 1; --k) {
      breaks.push_back(a + (mid - a) * std::pow(0.5, k));
    }
    breaks.push_back(mid);
    for (int k = 1; k <= halvings; ++k) {
      breaks.push_back(b - (b - mid) * std::pow(0.5, k));
    }
  } else if (flat_b) {
    for (int k = 1; k <= halvings; ++k) {
      breaks.push_back(a + (b - a) * (1.0 - std::pow(0.5, k)));
    }
  } else if (flat_a) {
    for (int k = halvings; k >= 1; --k) {
      breaks.push_back(a + (b - a) * std::pow(0.5, k));
    }
  }
  breaks.push_back(b);
  return breaks;
}

BallRule panel_radial_ball_quadrature(int n, const Point& center,
                                      const std::vector<double>& breaks,
                                      int level) {
  require_dimension(n);
  require_level(level);
  if (center.dim() != n) {
    throw std::invalid_argument("center dimension mismatch");
  }
  if (breaks.size() < 2) {
    throw std::invalid_argument("need at least two radial breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]) || breaks[i] < 0.0) {
      throw std::invalid_argument("radial breakpoints must ascend from >= 0");
    }
  }

  const SphereRule dirs = sphere_quadrature(n, Point::zero(n), 1.0, level);
  BallRule rule;
  rule.n = n;
  rule.center = center;
  rule.radius = breaks.back();
  rule.nodes.reserve((breaks.size() - 1) *
                     static_cast<std::size_t>(level) * dirs.nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Rule1D radial = gauss_legendre_on(level, breaks[p], breaks[p + 1]);
    for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
      const double rho = radial.nodes[ir];
      const double wr = radial.weights[ir] * std::pow(rho, n - 1);
      for (std::size_t id = 0; id < dirs.nodes.size(); ++id) {
        rule.nodes.push_back(center + dirs.nodes[id] * rho);
        rule.weights.push_back(wr * dirs.weights[id]);
      }
    }
  }
  return rule;
}

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol,
                          const std::vector<double>& forced_breaks) {
  if (!(b > a)) throw std::invalid_argument("empty interval");
  if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0) || (rel_tol == 0.0 && abs_tol == 0.0)) {
    throw std::invalid_argument("need a positive tolerance");
  }

  std::vector<double> edges{a};
  for (double t : forced_breaks) {
    if (t > a && t < b) edges.push_back(t);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  double total_value = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel panel;
    panel_estimate(f, edges[i], edges[i + 1], &panel);
    total_value += panel.value;
    total_err += panel.err;
    queue.push(panel);
  }

  const double min_width = 1e-14 * (b - a);
  const std::size_t max_panels = 20000;
  std::size_t panels = edges.size() - 1;
  while (panels < max_panels) {
    const double goal = std::max(abs_tol, rel_tol * std::abs(total_value));
    if (total_err <= goal) break;
    Panel worst = queue.top();
    if (worst.b - worst.a <= min_width) break;
    queue.pop();
    total_value -= worst.value;
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left, right;
    panel_estimate(f, worst.a, mid, &left);
    panel_estimate(f, mid, worst.b, &right);
    total_value += left.value + right.value;
    total_err += left.err + right.err;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Final pass: drain the queue and re-sum the panel values in positional
  // order so the result does not depend on the refinement history's
  // floating-point drift.
  std::vector<Panel> all;
  all.reserve(panels);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  NeumaierSum sum;
  for (const Panel& panel : all) sum.add(panel.value);
  return sum.value();
}

}  // namespace greenball
