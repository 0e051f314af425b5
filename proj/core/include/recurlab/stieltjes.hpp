#pragma once

#include <functional>
#include <vector>

#include "recurlab/rational.hpp"
#include "recurlab/scale_fn.hpp"

namespace recurlab::verify {

// right-continuous step function on [lo, hi]: value val[i] on
// [cut[i-1], cut[i]) with cut[-1] = lo and cut[size] = hi (the last piece is
// closed at hi)
struct StepFn {
  Rational lo, hi;
  std::vector<Rational> cut;  // strictly increasing, strictly inside (lo, hi)
  std::vector<Rational> val;  // one more entry than cut

  void validate() const;                // shape only
  void require_monotone(bool nonincreasing) const;
  Rational value_at(const Rational& t) const;
  std::vector<Rational> breakpoints() const;  // lo, cuts, hi
};

struct StieltjesResult {
  double value = 0;
  bool exact = false;       // exact_value holds the rational answer
  Rational exact_value;
  double bracket_width = 0;  // refinement residual for Darboux evaluations
};

// integral of a monotone step integrand f against a nondecreasing continuous
// scale function g over [f.lo, f.hi]; a finite sum of f-values times
// g-increments, exact when g evaluates exactly on rationals
StieltjesResult stieltjes_step(const StepFn& f, const ScaleFn& g);

// integral of f against a nondecreasing step integrator g: the sum of
// f(jump point) times the jump sizes; rejects shared discontinuities,
// where the Riemann-Stieltjes integral does not exist
StieltjesResult stieltjes_step_vs_step(const StepFn& f, const StepFn& g);

// Darboux bracket for a monotone callable integrand against a nondecreasing
// scale function; the partition doubles until the bracket is narrower than
// tol (or max_doublings is hit, leaving the wider bracket on record).
// Returns the bracket midpoint with bracket_width set.
StieltjesResult stieltjes_refine(const std::function<double(double)>& f,
                                 bool f_nonincreasing, const ScaleFn& g, double lo,
                                 double hi, double tol = 1e-9, int max_doublings = 22);

}  // namespace recurlab::verify
