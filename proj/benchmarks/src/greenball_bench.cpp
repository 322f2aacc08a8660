// Microbenchmarks for the library's hot paths: kernel evaluation, quadrature
// rule construction, the ball representation formula, mollified-field
// evaluation, and the almost-period lattice scan.

#include <benchmark/benchmark.h>

#include "greenball/fields.hpp"
#include "greenball/kernels.hpp"
#include "greenball/mollifier.hpp"
#include "greenball/quadrature.hpp"
#include "greenball/representation.hpp"

namespace {

using greenball::Box;
using greenball::KernelContext;
using greenball::Mollifier;
using greenball::Point;
using greenball::ScalarField;
using greenball::TrigPolynomial;

TrigPolynomial two_mode_forcing() {
  TrigPolynomial f(3);
  f.add_mode(1.0, {1.0, 1.4142135623730951, 0.0}, 0.0);
  f.add_mode(0.5, {1.7320508075688772, 0.0, 0.0}, 0.0);
  return f;
}

void BM_GreenUnit(benchmark::State& state) {
  const KernelContext ctx = KernelContext::make(3);
  const Point x{0.3, 0.1, -0.2};
  const Point y{0.1, 0.5, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::green_unit(ctx, x, y));
  }
}
BENCHMARK(BM_GreenUnit);

void BM_PoissonKernel(benchmark::State& state) {
  const KernelContext ctx = KernelContext::make(3);
  const Point x{0.3, 0.1, -0.2};
  const Point y{0.0, 0.6, 0.8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::poisson_kernel(ctx, x, y, 1.0));
  }
}
BENCHMARK(BM_PoissonKernel);

void BM_SphereRuleBuild(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        greenball::sphere_quadrature(3, Point::zero(3), 1.0, level));
  }
}
BENCHMARK(BM_SphereRuleBuild)->Arg(4)->Arg(8)->Arg(16);

void BM_SingularBallRuleBuild(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::singular_ball_quadrature(
        3, Point::zero(3), 1.0, Point::zero(3), level));
  }
}
BENCHMARK(BM_SingularBallRuleBuild)->Arg(4)->Arg(8);

void BM_PoissonKernelMass(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const KernelContext ctx = KernelContext::make(3);
  const Point x = Point::unit(3, 0) * 0.5;
  const greenball::SphereRule rule =
      greenball::peaked_sphere_quadrature(3, 1.0, x, level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::integrate(rule, [&](const Point& y) {
      return greenball::poisson_kernel(ctx, x, y, 1.0);
    }));
  }
}
BENCHMARK(BM_PoissonKernelMass)->Arg(6)->Arg(8);

void BM_EvalUBall(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const TrigPolynomial f = two_mode_forcing();
  const ScalarField u = greenball::exact_poisson_inverse(f).field();
  const ScalarField ff = f.field();
  greenball::RepresentationConfig cfg;
  cfg.surface_level = level;
  cfg.volume_level = level;
  const Point x{0.2, -0.1, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::eval_u_ball(u, ff, x, cfg));
  }
}
BENCHMARK(BM_EvalUBall)->Arg(6)->Arg(8);

void BM_EvalGradU(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const TrigPolynomial f = two_mode_forcing();
  const ScalarField u = greenball::exact_poisson_inverse(f).field();
  const ScalarField ff = f.field();
  greenball::RepresentationConfig cfg;
  cfg.surface_level = level;
  cfg.volume_level = level;
  const Point x{0.2, -0.1, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::eval_grad_u(u, ff, x, 0, cfg));
  }
}
BENCHMARK(BM_EvalGradU)->Arg(6)->Arg(8);

void BM_MollifiedEval(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const TrigPolynomial f = two_mode_forcing();
  const ScalarField u = greenball::exact_poisson_inverse(f).field();
  const ScalarField u_eps =
      greenball::mollify(u, Mollifier::make(3, 0.1), level);
  const Point x{0.2, -0.1, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(u_eps.evaluate(x));
  }
}
BENCHMARK(BM_MollifiedEval)->Arg(4)->Arg(6);

void BM_ModeAttenuation(benchmark::State& state) {
  const Mollifier m = Mollifier::make(3, 0.1);
  const Point w = Point::unit(3, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::mode_attenuation(m, w, 6));
  }
}
BENCHMARK(BM_ModeAttenuation);

void BM_AlmostPeriodDefect(benchmark::State& state) {
  const TrigPolynomial f = two_mode_forcing();
  const ScalarField ff = f.field();
  const Box box(5.0, static_cast<int>(state.range(0)));
  const Point shift = Point::unit(3, 0) * 6.28;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::almost_period_defect(ff, shift, box));
  }
}
BENCHMARK(BM_AlmostPeriodDefect)->Arg(51)->Arg(101);

void BM_LemmaLimSurface(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(greenball::lemma_lim_surface(0.0625, 0, 3, 6));
  }
}
BENCHMARK(BM_LemmaLimSurface);

}  // namespace

BENCHMARK_MAIN();
