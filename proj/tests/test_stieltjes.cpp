#include "doctest.h"
#include "recurlab/stieltjes.hpp"

#include <cmath>
#include <stdexcept>

using namespace recurlab;
using namespace recurlab::verify;

TEST_SUITE("stieltjes") {

TEST_CASE("step integrand against the identity integrator") {
  // f = 2 on [0, 1/2), 1 on [1/2, 1]; integral against dt is 2*(1/2) + 1*(1/2)
  StepFn f{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(2), Rational(1)}};
  f.validate();
  auto r = stieltjes_step(f, ScaleFn::identity());
  CHECK(r.exact);
  CHECK(r.exact_value == Rational(3, 2));
  CHECK(r.value == doctest::Approx(1.5));

  // three-piece staircase: 3, then 2, then 1
  StepFn g{Rational(0), Rational(1),
           {Rational(1, 4), Rational(1, 2)},
           {Rational(3), Rational(2), Rational(1)}};
  auto r2 = stieltjes_step(g, ScaleFn::identity());
  CHECK(r2.exact_value == Rational(7, 4));
}

TEST_CASE("constant integrand integrates to value times total increment") {
  StepFn f{Rational(0), Rational(1), {}, {Rational(5, 7)}};
  auto r = stieltjes_step(f, ScaleFn::identity());
  CHECK(r.exact);
  CHECK(r.exact_value == Rational(5, 7));
  // piecewise-linear integrator: total increment g(1) - g(0) = 1
  ScaleFn pl = ScaleFn::piecewise_linear(
      {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1, 8)}, {Rational(1), Rational(1)}});
  auto r2 = stieltjes_step(f, pl);
  CHECK(r2.exact_value == Rational(5, 7));
}

TEST_CASE("step values weight the integrator increments piecewise") {
  // f = 1 on [0, 1/4), 0 after; against the piecewise-linear g the integral
  // picks up exactly g(1/4) - g(0) = 1/8
  StepFn f{Rational(0), Rational(1), {Rational(1, 4)}, {Rational(1), Rational(0)}};
  ScaleFn pl = ScaleFn::piecewise_linear(
      {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1, 8)}, {Rational(1), Rational(1)}});
  auto r = stieltjes_step(f, pl);
  CHECK(r.exact);
  CHECK(r.exact_value == Rational(1, 8));
}

TEST_CASE("inexact integrators yield float values without exactness") {
  StepFn f{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(2), Rational(1)}};
  auto r = stieltjes_step(f, ScaleFn::power(0.5));
  CHECK_FALSE(r.exact);
  // 2 * sqrt(1/2) + 1 * (1 - sqrt(1/2))
  CHECK(r.value == doctest::Approx(2.0 * std::sqrt(0.5) + (1.0 - std::sqrt(0.5))));
}

TEST_CASE("step against step sums jumps") {
  StepFn f{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(3), Rational(1)}};
  // integrator jumps by 1/4 at 1/4 and by 3/4 at 3/4
  StepFn g{Rational(0), Rational(1),
           {Rational(1, 4), Rational(3, 4)},
           {Rational(0), Rational(1, 4), Rational(1)}};
  auto r = stieltjes_step_vs_step(f, g);
  CHECK(r.exact);
  CHECK(r.exact_value == Rational(3) * Rational(1, 4) + Rational(1) * Rational(3, 4));
}

TEST_CASE("shared discontinuities are rejected") {
  StepFn f{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(3), Rational(1)}};
  StepFn g{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(0), Rational(1)}};
  CHECK_THROWS_AS(stieltjes_step_vs_step(f, g), std::invalid_argument);
}

TEST_CASE("shape validation rejects malformed step functions") {
  StepFn bad_order{Rational(0), Rational(1),
                   {Rational(1, 2), Rational(1, 4)},
                   {Rational(1), Rational(2), Rational(3)}};
  CHECK_THROWS_AS(bad_order.validate(), std::invalid_argument);
  StepFn bad_count{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(1)}};
  CHECK_THROWS_AS(bad_count.validate(), std::invalid_argument);
  StepFn outside{Rational(0), Rational(1), {Rational(2)}, {Rational(1), Rational(2)}};
  CHECK_THROWS_AS(outside.validate(), std::invalid_argument);
  StepFn increasing{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(1), Rational(2)}};
  CHECK_NOTHROW(increasing.require_monotone(false));
  CHECK_THROWS_AS(increasing.require_monotone(true), std::invalid_argument);
}

TEST_CASE("value lookup respects right continuity") {
  StepFn f{Rational(0), Rational(1), {Rational(1, 2)}, {Rational(2), Rational(1)}};
  CHECK(f.value_at(Rational(0)) == Rational(2));
  CHECK(f.value_at(Rational(1, 4)) == Rational(2));
  CHECK(f.value_at(Rational(1, 2)) == Rational(1));  // jump point takes the right value
  CHECK(f.value_at(Rational(1)) == Rational(1));
  CHECK(f.breakpoints().size() == 3);
}

TEST_CASE("refinement brackets converge to the exact answer") {
  // integrand 1 - t against dt on [0, 1]: integral 1/2
  auto res = stieltjes_refine([](double t) { return 1.0 - t; }, true,
                              ScaleFn::identity(), 0.0, 1.0, 1e-6);
  CHECK(res.bracket_width <= 1e-6);
  CHECK(res.value == doctest::Approx(0.5).epsilon(1e-5));
  // against sqrt integrator: integral of (1-t) d sqrt(t) = integral sqrt'(t)(1-t) dt = 4/3 - ... known: 2/3
  auto res2 = stieltjes_refine([](double t) { return 1.0 - t; }, true,
                               ScaleFn::power(0.5), 0.0, 1.0, 1e-5);
  CHECK(res2.value == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
  // hitting the doubling cap leaves a wide bracket on record, no throw
  auto res3 = stieltjes_refine([](double t) { return 1.0 - t; }, true,
                               ScaleFn::identity(), 0.0, 1.0, 1e-12, 3);
  CHECK(res3.bracket_width > 1e-12);
}

}  // TEST_SUITE
