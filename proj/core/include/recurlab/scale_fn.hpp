#pragma once

#include <string>
#include <utility>
#include <vector>

#include "recurlab/rational.hpp"

namespace recurlab {

// Nondecreasing scale function on [0, 1], used both as the integrator of
// scale integrals and as the gauge weighting return distances.  Power laws
// t^alpha evaluate in floating point; the identity and piecewise-linear
// forms with rational knots also evaluate exactly on rationals.
class ScaleFn {
 public:
  enum class Kind { power, piecewise_linear };

  static ScaleFn power(double alpha);
  static ScaleFn identity() { return power(1.0); }
  // knots: (t, value) pairs with t from 0 to 1 inclusive, both coordinates
  // nondecreasing; linear interpolation in between
  static ScaleFn piecewise_linear(std::vector<std::pair<Rational, Rational>> knots);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const std::vector<std::pair<Rational, Rational>>& knots() const { return knots_; }

  bool exact() const;
  double operator()(double t) const;
  Rational at(const Rational& t) const;  // throws std::logic_error when !exact()

  // valid dimension gauge: vanishes at 0 and strictly increasing
  bool gauge_valid() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::power;
  double alpha_ = 1.0;
  std::vector<std::pair<Rational, Rational>> knots_;
};

// Parses "id", "pow:<alpha>" or "pl:t,v;t,v;..." with rational t and v.
ScaleFn parse_scale_fn(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace recurlab
