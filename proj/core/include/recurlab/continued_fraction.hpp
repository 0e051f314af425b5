#pragma once

#include <string>
#include <vector>

#include "recurlab/rational.hpp"

namespace recurlab::dynamics {

// convergents p[k]/q[k] of a continued fraction [0; a1, a2, ...];
// index 0 is the trivial convergent 0/1
struct Convergents {
  std::vector<long long> a;  // partial quotients actually consumed
  std::vector<long long> p;
  std::vector<long long> q;
};

// canonical continued fraction quotients of a rational in [0, 1)
std::vector<long long> cf_expand(const Rational& x);

// builds convergents from quotients, stopping before the denominator would
// exceed den_cap
Convergents cf_convergents(const std::vector<long long>& a, long long den_cap);

// A circle rotation angle held as an exact rational together with a bound on
// the distance to the intended (possibly irrational) value.  Irrational
// angles are entered by their continued fraction and truncated at a chosen
// denominator cap; the stored convergent is then the ground truth the library
// computes with, and error_bound tracks the truncation.
class RotationAngle {
 public:
  static RotationAngle exact(const Rational& alpha);
  static RotationAngle from_cf(const std::vector<long long>& quotients,
                               long long den_cap = (1ll << 31));
  // (sqrt(5)-1)/2 = [0; 1, 1, 1, ...]
  static RotationAngle golden(long long den_cap = (1ll << 31));
  // sqrt(2)-1 = [0; 2, 2, 2, ...]
  static RotationAngle sqrt2m1(long long den_cap = (1ll << 31));

  const Rational& value() const { return value_; }
  double error_bound() const { return error_; }
  bool exact_rational() const { return exact_; }
  const Convergents& convergents() const { return conv_; }
  // construction inputs, kept so a truncated angle can be serialized and
  // rebuilt with the identical value and error bound
  const std::vector<long long>& input_quotients() const { return input_; }
  long long den_cap() const { return den_cap_; }
  std::string describe() const;

 private:
  Rational value_;
  double error_ = 0;
  bool exact_ = true;
  Convergents conv_;
  std::vector<long long> input_;
  long long den_cap_ = 0;
};

}  // namespace recurlab::dynamics
