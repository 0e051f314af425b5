#include "recurlab/continued_fraction.hpp"

#include <sstream>
#include <stdexcept>

namespace recurlab::dynamics {

std::vector<long long> cf_expand(const Rational& x) {
  if (x < Rational(0) || !(x < Rational(1)))
    throw std::domain_error("continued fraction input must lie in [0, 1)");
  std::vector<long long> a;
  long long p = x.num(), q = x.den();  // x = p/q, 0 <= p < q
  while (p != 0) {
    a.push_back(q / p);
    long long r = q % p;
    q = p;
    p = r;
  }
  // canonical form: final quotient at least 2 when the expansion is nontrivial
  if (a.size() > 1 && a.back() == 1) {
    a.pop_back();
    a.back() += 1;
  }
  return a;
}

Convergents cf_convergents(const std::vector<long long>& a, long long den_cap) {
  if (den_cap < 1) throw std::invalid_argument("denominator cap must be positive");
  Convergents c;
  c.p = {0};
  c.q = {1};
  long long p2 = 1, q2 = 0;  // (p_{k-2}, q_{k-2}) seed
  for (long long ak : a) {
    if (ak < 1) throw std::invalid_argument("partial quotients must be positive");
    __int128 np = (__int128)ak * c.p.back() + p2;
    __int128 nq = (__int128)ak * c.q.back() + q2;
    if (nq > den_cap) break;
    p2 = c.p.back();
    q2 = c.q.back();
    c.p.push_back((long long)np);
    c.q.push_back((long long)nq);
    c.a.push_back(ak);
  }
  return c;
}

RotationAngle RotationAngle::exact(const Rational& alpha) {
  Rational a = alpha.mod1();
  RotationAngle r;
  r.value_ = a;
  r.error_ = 0;
  r.exact_ = true;
  r.conv_ = cf_convergents(cf_expand(a), (1ll << 62));
  return r;
}

RotationAngle RotationAngle::from_cf(const std::vector<long long>& quotients,
                                     long long den_cap) {
  if (quotients.empty()) return exact(Rational(0));
  Convergents c = cf_convergents(quotients, den_cap);
  if (c.a.empty())
    throw std::invalid_argument("denominator cap rejects every convergent");
  RotationAngle r;
  r.input_ = quotients;
  r.den_cap_ = den_cap;
  r.value_ = Rational(c.p.back(), c.q.back());
  if (c.a.size() == quotients.size()) {
    r.exact_ = true;
    r.error_ = 0;
  } else {
    r.exact_ = false;
    // |alpha - p_k/q_k| < 1/(q_k q_{k+1}) and the rejected q_{k+1} > den_cap
    double q = (double)c.q.back();
    r.error_ = 1.0 / (q * (double)den_cap);
  }
  r.conv_ = std::move(c);
  return r;
}

namespace {
RotationAngle periodic_cf(long long quotient, long long den_cap) {
  // enough terms that the cap always cuts the expansion first
  std::vector<long long> a(96, quotient);
  RotationAngle r = RotationAngle::from_cf(a, den_cap);
  if (r.exact_rational())
    throw std::invalid_argument("denominator cap too large for the expansion depth");
  return r;
}
}  // namespace

RotationAngle RotationAngle::golden(long long den_cap) { return periodic_cf(1, den_cap); }

RotationAngle RotationAngle::sqrt2m1(long long den_cap) { return periodic_cf(2, den_cap); }

std::string RotationAngle::describe() const {
  std::ostringstream os;
  os << value_.str();
  if (!exact_) os << "~(err<" << error_ << ")";
  return os.str();
}

}  // namespace recurlab::dynamics
