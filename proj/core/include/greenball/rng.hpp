#ifndef GREENBALL_RNG_HPP_
#define GREENBALL_RNG_HPP_

#include <cmath>
#include <cstdint>

#include "greenball/geometry.hpp"

namespace greenball {

/// Deterministic pseudo-random source used by the fuzz tests and the CLI
/// sampling suites.  SplitMix64 state transition with an explicit Box-Muller
/// transform: the C++ standard leaves std::normal_distribution's algorithm
/// implementation-defined, so reports generated from a fixed seed would not
/// be byte-identical across standard libraries.  Everything here is pinned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Log-uniform double in [lo, hi); requires 0 < lo < hi.
  double next_log_uniform(double lo, double hi) {
    return lo * std::exp(next_double() * std::log(hi / lo));
  }

  /// Uniform integer in [lo, hi] inclusive.
  int next_int(int lo, int hi) {
    const double u = next_double();
    int v = lo + static_cast<int>(u * (static_cast<double>(hi - lo) + 1.0));
    return v > hi ? hi : v;
  }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double pi = 3.14159265358979323846;
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    spare_ = r * std::sin(2.0 * pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * pi * u2);
  }

  /// Uniform direction on the unit sphere of R^n.
  Point next_unit_vector(int n) {
    require_dimension(n);
    while (true) {
      Point p(n);
      for (int i = 0; i < n; ++i) p[i] = next_normal();
      const double r = p.norm();
      if (r > 1e-12) return p * (1.0 / r);
    }
  }

  /// Uniform point in the closed ball of radius `radius` about the origin.
  Point next_in_ball(int n, double radius) {
    Point dir = next_unit_vector(n);
    const double r = radius * std::pow(next_double(), 1.0 / n);
    return dir * r;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace greenball

#endif  // GREENBALL_RNG_HPP_
