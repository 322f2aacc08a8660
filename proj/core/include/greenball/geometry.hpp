#ifndef GREENBALL_GEOMETRY_HPP_
#define GREENBALL_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace greenball {

/// Smallest ambient dimension the potential-theory routines accept.  The
/// planar case is excluded on purpose: the logarithmic fundamental solution
/// is only defined up to an additive constant, which changes every identity
/// downstream.
inline constexpr int kMinDim = 3;

/// Fixed capacity of Point.  Hot loops (lattice scans, nested quadratures)
/// run over tens of millions of points; a fixed-size value type keeps them
/// allocation-free.  Raise and recompile if you ever need more than R^8.
inline constexpr int kMaxDim = 8;

inline void require_dimension(int n) {
  if (n < kMinDim || n > kMaxDim) {
    throw std::invalid_argument("dimension must be in [" +
                                std::to_string(kMinDim) + ", " +
                                std::to_string(kMaxDim) + "], got " +
                                std::to_string(n));
  }
}

/// A point of R^n for n <= kMaxDim.  Plain value type: copyable, comparable,
/// allocation-free.  The dimension travels with the value; mixing dimensions
/// in arithmetic is a programming error and throws.
class Point {
 public:
  Point() : n_(kMinDim) { c_.fill(0.0); }

  explicit Point(int n) : n_(n) {
    check_dim_range(n);
    c_.fill(0.0);
  }

  Point(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
    check_dim_range(n_);
    c_.fill(0.0);
    int i = 0;
    for (double x : xs) c_[static_cast<std::size_t>(i++)] = x;
  }

  static Point zero(int n) { return Point(n); }

  /// Standard basis vector e_axis of R^n (axis is 0-based).
  static Point unit(int n, int axis) {
    Point p(n);
    if (axis < 0 || axis >= n) {
      throw std::invalid_argument("axis out of range");
    }
    p[axis] = 1.0;
    return p;
  }

  int dim() const { return n_; }

  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  Point& operator+=(const Point& o) {
    check_same_dim(o);
    for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] += o[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    check_same_dim(o);
    for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] -= o[i];
    return *this;
  }
  Point& operator*=(double s) {
    for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i) {
      if (a[i] != b[i]) return false;
    }
    return true;
  }

  double dot(const Point& o) const {
    check_same_dim(o);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += c_[static_cast<std::size_t>(i)] * o[i];
    return s;
  }

  double norm_sq() const { return dot(*this); }
  double norm() const { return std::sqrt(norm_sq()); }

 private:
  static void check_dim_range(int n) {
    if (n < 1 || n > kMaxDim) {
      throw std::invalid_argument("Point dimension must be in [1, " +
                                  std::to_string(kMaxDim) + "], got " +
                                  std::to_string(n));
    }
  }
  void check_same_dim(const Point& o) const {
    if (n_ != o.n_) {
      throw std::invalid_argument("mixing points of different dimensions");
    }
  }

  std::array<double, kMaxDim> c_;
  int n_;
};

inline double dot(const Point& a, const Point& b) { return a.dot(b); }
inline double norm(const Point& p) { return p.norm(); }
inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// Volume of the unit ball of R^n: pi^{n/2} / Gamma(n/2 + 1).
inline double ball_volume(int n) {
  require_dimension(n);
  const double pi = 3.14159265358979323846;
  return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface measure of the unit sphere of R^n: n * ball_volume(n).
inline double unit_sphere_measure(int n) { return n * ball_volume(n); }

}  // namespace greenball

#endif  // GREENBALL_GEOMETRY_HPP_
