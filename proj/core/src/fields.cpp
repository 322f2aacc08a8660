#include "greenball/fields.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "greenball/parallel.hpp"

namespace greenball {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Total lattice size g^n with overflow guard.
std::size_t lattice_size(int n, int grid) {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > (static_cast<std::size_t>(1) << 60) /
                    static_cast<std::size_t>(grid)) {
      throw std::invalid_argument("box lattice too large");
    }
    total *= static_cast<std::size_t>(grid);
  }
  return total;
}

/// Decodes a flat lattice index into a point, with `fast_axis` varying
/// fastest (so translation scans hit diverse values of that coordinate
/// early).
Point lattice_point(int n, const Box& box, std::size_t flat, int fast_axis) {
  const double step =
      2.0 * box.half_width / (static_cast<double>(box.grid_per_axis) - 1.0);
  Point x(n);
  for (int k = 0; k < n; ++k) {
    const int axis = (fast_axis + k) % n;
    const std::size_t g = static_cast<std::size_t>(box.grid_per_axis);
    x[axis] = -box.half_width + step * static_cast<double>(flat % g);
    flat /= g;
  }
  return x;
}

}  // namespace

ScalarField ScalarField::constant(int n, double value) {
  require_dimension(n);
  ScalarField f;
  f.dim = n;
  f.evaluate = [value](const Point&) { return value; };
  f.exact_gradient = [](const Point&, int) { return 0.0; };
  f.exact_laplacian = [](const Point&) { return 0.0; };
  f.bound = std::abs(value);
  return f;
}

ScalarField translate(const ScalarField& u, const Point& x0) {
  if (x0.dim() != u.dim) {
    throw std::invalid_argument("translation offset dimension mismatch");
  }
  ScalarField w;
  w.dim = u.dim;
  const auto eval = u.evaluate;
  w.evaluate = [eval, x0](const Point& x) { return eval(x + x0); };
  if (u.exact_gradient) {
    const auto grad = u.exact_gradient;
    w.exact_gradient = [grad, x0](const Point& x, int axis) {
      return grad(x + x0, axis);
    };
  }
  if (u.exact_laplacian) {
    const auto lap = u.exact_laplacian;
    w.exact_laplacian = [lap, x0](const Point& x) { return lap(x + x0); };
  }
  w.bound = u.bound;
  return w;
}

TrigPolynomial::TrigPolynomial(int dim) : dim_(dim) { require_dimension(dim); }

void TrigPolynomial::add_mode(double amplitude, const Point& frequency,
                              double phase) {
  if (frequency.dim() != dim_) {
    throw std::invalid_argument("mode frequency dimension mismatch");
  }
  if (!(frequency.norm() > 0.0)) {
    throw std::invalid_argument(
        "zero-frequency (constant) modes are not supported");
  }
  modes_.push_back(Mode{amplitude, frequency, phase});
}

double TrigPolynomial::evaluate(const Point& x) const {
  double s = 0.0;
  for (const Mode& m : modes_) {
    s += m.amplitude * std::cos(m.frequency.dot(x) + m.phase);
  }
  return s;
}

double TrigPolynomial::gradient(const Point& x, int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
  double s = 0.0;
  for (const Mode& m : modes_) {
    s -= m.amplitude * m.frequency[axis] *
         std::sin(m.frequency.dot(x) + m.phase);
  }
  return s;
}

double TrigPolynomial::laplacian(const Point& x) const {
  double s = 0.0;
  for (const Mode& m : modes_) {
    s -= m.amplitude * m.frequency.norm_sq() *
         std::cos(m.frequency.dot(x) + m.phase);
  }
  return s;
}

double TrigPolynomial::bound() const {
  double s = 0.0;
  for (const Mode& m : modes_) s += std::abs(m.amplitude);
  return s;
}

TrigPolynomial TrigPolynomial::derivative(int axis) const {
  if (axis < 0 || axis >= dim_) throw std::invalid_argument("axis out of range");
  TrigPolynomial d(dim_);
  for (const Mode& m : modes_) {
    // d/dx cos(w.x + p) = -w_axis sin(w.x + p) = w_axis cos(w.x + p + pi/2).
    d.add_mode(m.amplitude * m.frequency[axis], m.frequency,
               m.phase + kPi / 2.0);
  }
  return d;
}

ScalarField TrigPolynomial::field() const {
  ScalarField f;
  f.dim = dim_;
  TrigPolynomial self = *this;
  f.evaluate = [self](const Point& x) { return self.evaluate(x); };
  f.exact_gradient = [self](const Point& x, int axis) {
    return self.gradient(x, axis);
  };
  f.exact_laplacian = [self](const Point& x) { return self.laplacian(x); };
  f.bound = bound();
  return f;
}

TrigPolynomial exact_poisson_inverse(const TrigPolynomial& f) {
  TrigPolynomial u(f.dim());
  for (const TrigPolynomial::Mode& m : f.modes()) {
    const double w2 = m.frequency.norm_sq();
    if (!(w2 > 0.0)) {
      throw std::invalid_argument(
          "zero-frequency mode has no bounded potential");
    }
    u.add_mode(m.amplitude / w2, m.frequency, m.phase);
  }
  return u;
}

Box::Box(double half_width_, int grid_per_axis_)
    : half_width(half_width_), grid_per_axis(grid_per_axis_) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("box half_width must be positive and finite");
  }
  if (grid_per_axis < 2) {
    throw std::invalid_argument("box needs at least 2 grid points per axis");
  }
}

double almost_period_defect(const ScalarField& u, const Point& T,
                            const Box& box) {
  if (T.dim() != u.dim) {
    throw std::invalid_argument("translation dimension mismatch");
  }
  const int n = u.dim;
  const std::size_t total = lattice_size(n, box.grid_per_axis);
  constexpr std::size_t kChunk = 16384;
  const std::size_t nchunks = par::chunk_count(total, kChunk);
  std::vector<double> partial(nchunks, 0.0);
  const auto& eval = u.evaluate;
  par::for_chunks(total, kChunk,
                  [&](std::size_t c, std::size_t begin, std::size_t end) {
                    double m = 0.0;
                    for (std::size_t i = begin; i < end; ++i) {
                      const Point x = lattice_point(n, box, i, 0);
                      const double d = std::abs(eval(x + T) - eval(x));
                      if (d > m) m = d;
                    }
                    partial[c] = m;
                  });
  double result = 0.0;
  for (double p : partial) result = std::fmax(result, p);
  return result;
}

bool almost_period_defect_exceeds(const ScalarField& u, const Point& T,
                                  const Box& box, double epsilon) {
  if (T.dim() != u.dim) {
    throw std::invalid_argument("translation dimension mismatch");
  }
  const int n = u.dim;
  int fast_axis = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(T[k]) > std::abs(T[fast_axis])) fast_axis = k;
  }
  const std::size_t total = lattice_size(n, box.grid_per_axis);
  constexpr std::size_t kChunk = 16384;
  std::atomic<bool> found{false};
  const auto& eval = u.evaluate;
  par::for_chunks(total, kChunk,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    if (found.load(std::memory_order_relaxed)) return;
                    for (std::size_t i = begin; i < end; ++i) {
                      const Point x = lattice_point(n, box, i, fast_axis);
                      if (std::abs(eval(x + T) - eval(x)) >= epsilon) {
                        found.store(true, std::memory_order_relaxed);
                        return;
                      }
                    }
                  });
  return found.load(std::memory_order_relaxed);
}

std::optional<double> find_almost_period(const ScalarField& u, double epsilon,
                                         int axis, double t_max,
                                         const Box& box) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (axis < 0 || axis >= u.dim) {
    throw std::invalid_argument("axis out of range");
  }
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  const double step = std::fmin(0.01, epsilon / 10.0);
  const std::size_t count =
      static_cast<std::size_t>(std::floor(t_max / step + 1e-9));
  bool armed = false;
  for (std::size_t k = 1; k <= count; ++k) {
    const double t = static_cast<double>(k) * step;
    Point T = Point::zero(u.dim);
    T[axis] = t;
    const bool exceeds = almost_period_defect_exceeds(u, T, box, epsilon);
    if (!armed) {
      // Skip the trivial near-zero almost-periods every continuous field has:
      // only a return below epsilon after the defect has once reached epsilon
      // indicates recurrence rather than continuity.
      if (exceeds) armed = true;
      continue;
    }
    if (!exceeds) return t;
  }
  return std::nullopt;
}

}  // namespace greenball
