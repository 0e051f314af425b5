#include "recurlab/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recurlab::dynamics {
namespace {

using spaces::Point;
using spaces::Space;

constexpr double kOrbitErrorBudget = 1e-9;
constexpr long long kFiniteCheckCap = 200000;

long long mulmod(long long a, long long b, long long m) {
  return (long long)((__int128)a * b % m);
}

// [[2,1],[1,1]]^n mod m
struct Mat2 {
  long long a, b, c, d;
};

Mat2 matmul(const Mat2& x, const Mat2& y, long long m) {
  return {(mulmod(x.a, y.a, m) + mulmod(x.b, y.c, m)) % m,
          (mulmod(x.a, y.b, m) + mulmod(x.b, y.d, m)) % m,
          (mulmod(x.c, y.a, m) + mulmod(x.d, y.c, m)) % m,
          (mulmod(x.c, y.b, m) + mulmod(x.d, y.d, m)) % m};
}

Mat2 matpow(Mat2 base, long long n, long long m) {
  Mat2 r{1 % m, 0, 0, 1 % m};
  while (n > 0) {
    if (n & 1) r = matmul(r, base, m);
    base = matmul(base, base, m);
    n >>= 1;
  }
  return r;
}

long long powmod(long long base, long long e, long long m) {
  long long r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

Map Map::rotation(const RotationAngle& angle) {
  Map m;
  m.kind_ = Kind::rotation;
  m.space_ = Space::torus(1);
  m.angle_ = angle;
  return m;
}

Map Map::identity() { return rotation(RotationAngle::exact(Rational(0))); }

Map Map::cyclic_shift(long long modulus, long long step) {
  if (modulus < 1) throw std::invalid_argument("shift modulus must be positive");
  Map m;
  m.kind_ = Kind::shift;
  m.space_ = Space::cyclic(modulus);
  m.modulus_ = modulus;
  m.step_ = ((step % modulus) + modulus) % modulus;
  // validation: a shift must permute the points (trivially true, but cheap to
  // confirm on small spaces instead of trusting the algebra)
  if (modulus <= 4096) {
    std::vector<char> hit(modulus, 0);
    for (long long k = 0; k < modulus; ++k) hit[(k + m.step_) % modulus] = 1;
    for (long long k = 0; k < modulus; ++k)
      if (!hit[k]) throw std::logic_error("shift failed the bijection check");
  }
  return m;
}

Map Map::doubling() {
  Map m;
  m.kind_ = Kind::doubling;
  m.space_ = Space::torus(1);
  return m;
}

Map Map::cat() {
  Map m;
  m.kind_ = Kind::cat;
  m.space_ = Space::torus(2);
  return m;
}

Map Map::product(const std::vector<Map>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product map");
  std::vector<Space> parts;
  for (const auto& f : factors) parts.push_back(f.space());
  Map m;
  m.kind_ = Kind::product;
  m.space_ = Space::product(parts);
  m.factors_ = factors;
  return m;
}

const RotationAngle& Map::angle() const {
  if (kind_ != Kind::rotation) throw std::logic_error("map has no angle");
  return angle_;
}

void Map::iterate_into(const Point& x, long long n, size_t offset, Point* out) const {
  switch (kind_) {
    case Kind::rotation: {
      const Rational& a = angle_.value();
      long long r = a.den() == 1 ? 0 : (long long)((__int128)(n % a.den()) * a.num() % a.den());
      (*out)[offset] = (x[offset] + Rational(r, a.den())).mod1();
      return;
    }
    case Kind::shift: {
      long long k = x[offset].num();
      (*out)[offset] = Rational((k + (long long)((__int128)(n % modulus_) * step_ % modulus_)) % modulus_);
      return;
    }
    case Kind::doubling: {
      long long den = x[offset].den();
      long long num = mulmod(powmod(2, n, den), ((x[offset].num() % den) + den) % den, den);
      (*out)[offset] = Rational(num, den);
      return;
    }
    case Kind::cat: {
      const Rational& u = x[offset];
      const Rational& v = x[offset + 1];
      __int128 g = detail::gcd128(u.den(), v.den());
      __int128 lcm = (__int128)u.den() / (long long)g * v.den();
      if (lcm > (__int128)4e18) throw PrecisionError("cat map denominator overflow");
      long long den = (long long)lcm;
      long long a = mulmod(u.num(), den / u.den(), den);
      long long b = mulmod(v.num(), den / v.den(), den);
      Mat2 p = matpow({2, 1, 1, 1}, n, den);
      (*out)[offset] = Rational((mulmod(p.a, a, den) + mulmod(p.b, b, den)) % den, den);
      (*out)[offset + 1] = Rational((mulmod(p.c, a, den) + mulmod(p.d, b, den)) % den, den);
      return;
    }
    case Kind::product: {
      size_t off = offset;
      for (const auto& f : factors_) {
        f.iterate_into(x, n, off, out);
        off += (size_t)f.space().dim();
      }
      return;
    }
  }
}

spaces::Point Map::iterate(const Point& x, long long n) const {
  if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
  space_.validate_point(x);
  Point out = x;
  if (n == 0) return out;
  iterate_into(x, n, 0, &out);
  return out;
}

double Map::step_error_bound() const {
  switch (kind_) {
    case Kind::rotation:
      return 2.0 * angle_.error_bound();  // metric is twice the circle norm
    case Kind::product: {
      double worst = 0;
      for (const auto& f : factors_) worst = std::max(worst, f.step_error_bound());
      return worst;
    }
    default:
      return 0;
  }
}

std::string Map::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::rotation:
      os << "rot(" << angle_.describe() << ")";
      break;
    case Kind::shift:
      os << "shift(+" << step_ << " mod " << modulus_ << ")";
      break;
    case Kind::doubling:
      os << "doubling";
      break;
    case Kind::cat:
      os << "cat";
      break;
    case Kind::product: {
      os << "prod(";
      for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << ", ";
        os << factors_[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

namespace {

bool is_identity_like(const Map& m) {
  return m.kind() == Map::Kind::rotation && m.angle().exact_rational() &&
         m.angle().value().is_zero();
}

// certifiable commutation on infinite spaces
bool commutes_analytically(const Map& s, const Map& r) {
  using K = Map::Kind;
  if (is_identity_like(s) || is_identity_like(r)) return true;
  if (s.kind() == K::rotation && r.kind() == K::rotation) return true;
  if (s.kind() == K::shift && r.kind() == K::shift) return true;
  if (s.kind() == K::doubling && r.kind() == K::doubling) return true;
  if (s.kind() == K::cat && r.kind() == K::cat) return true;
  if (s.kind() == K::product && r.kind() == K::product &&
      s.factors().size() == r.factors().size()) {
    for (size_t i = 0; i < s.factors().size(); ++i) {
      if (!s.factors()[i].space().same(r.factors()[i].space())) return false;
      if (!commutes_analytically(s.factors()[i], r.factors()[i])) return false;
    }
    return true;
  }
  return false;
}

}  // namespace

CommutingPair::CommutingPair(Map s, Map r) : s_(std::move(s)), r_(std::move(r)) {
  if (!s_.space().same(r_.space()))
    throw std::invalid_argument("pair maps live on different spaces");
  const Space& sp = s_.space();
  if (sp.finite() && sp.cardinality() <= kFiniteCheckCap) {
    for (long long i = 0; i < sp.cardinality(); ++i) {
      Point x = sp.point_at(i);
      if (s_.apply(r_.apply(x)) != r_.apply(s_.apply(x)))
        throw std::invalid_argument("maps do not commute (found a witness point)");
    }
    return;
  }
  if (!commutes_analytically(s_, r_))
    throw std::invalid_argument("commutation cannot be certified for this pair");
}

namespace {

void require_precision(const Map& map, long long N) {
  double drift = map.step_error_bound() * (double)N;
  if (drift > kOrbitErrorBudget)
    throw PrecisionError(
        "angle truncation too coarse for this horizon; deepen the expansion");
}

}  // namespace

RecurrenceValue recurrence_constant(const Map& map, const Point& x, long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be at least 1");
  require_precision(map, N);
  map.space().validate_point(x);
  RecurrenceValue best;
  Point y = x;
  for (long long n = 1; n <= N; ++n) {
    y = map.apply(y);
    Rational d = map.space().distance(y, x);
    if (best.argmin == 0 || d < best.value) {
      best.value = d;
      best.argmin = n;
      if (d.is_zero()) break;
    }
  }
  return best;
}

RecurrenceValue simultaneous_recurrence(const CommutingPair& pair, const Point& x,
                                        long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be at least 1");
  require_precision(pair.S(), N);
  require_precision(pair.R(), N);
  pair.space().validate_point(x);
  RecurrenceValue best;
  Point ys = x, yr = x;
  for (long long n = 1; n <= N; ++n) {
    ys = pair.S().apply(ys);
    yr = pair.R().apply(yr);
    Rational d = rat_max(pair.space().distance(ys, x), pair.space().distance(yr, x));
    if (best.argmin == 0 || d < best.value) {
      best.value = d;
      best.argmin = n;
      if (d.is_zero()) break;
    }
  }
  return best;
}

std::vector<Rational> orbit_distances(const Map& map, const Point& x, long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be at least 1");
  require_precision(map, N);
  map.space().validate_point(x);
  std::vector<Rational> out;
  out.reserve((size_t)N);
  Point y = x;
  for (long long n = 1; n <= N; ++n) {
    y = map.apply(y);
    out.push_back(map.space().distance(y, x));
  }
  return out;
}

PairOrbitDistances pair_orbit_distances(const CommutingPair& pair, const Point& x,
                                        long long N) {
  PairOrbitDistances out;
  out.ds = orbit_distances(pair.S(), x, N);
  out.dr = orbit_distances(pair.R(), x, N);
  return out;
}

namespace {

void check_ladder(const std::vector<long long>& ks, long long N) {
  if (ks.empty()) throw std::invalid_argument("empty K ladder");
  for (long long k : ks)
    if (k < 1 || k > N) throw std::invalid_argument("ladder entry outside [1, N]");
}

}  // namespace

std::vector<ProfileRow> weighted_liminf_profile(const Map& map, const Point& x,
                                                const ScaleFn& h, long long N,
                                                const std::vector<long long>& k_ladder) {
  check_ladder(k_ladder, N);
  if (!h.gauge_valid()) throw std::invalid_argument("h is not a valid gauge");
  std::vector<Rational> d = orbit_distances(map, x, N);
  // suffix minima of n*h(d_n), so each ladder entry is one lookup
  std::vector<double> suff((size_t)N + 1);
  suff[(size_t)N] = std::numeric_limits<double>::infinity();
  for (long long n = N; n >= 1; --n)
    suff[(size_t)n - 1] =
        std::min(suff[(size_t)n], (double)n * h(d[(size_t)n - 1].value()));
  std::vector<ProfileRow> rows;
  for (long long k : k_ladder) rows.push_back({k, N, suff[(size_t)k - 1]});
  return rows;
}

std::vector<PairProfileRow> pair_weighted_profile(
    const CommutingPair& pair, const Point& x, const ScaleFn& h, long long N,
    const std::vector<long long>& k_ladder,
    const std::map<long long, corners::DensityCertificate>& l_source) {
  check_ladder(k_ladder, N);
  if (!h.gauge_valid()) throw std::invalid_argument("h is not a valid gauge");
  PairOrbitDistances d = pair_orbit_distances(pair, x, N);
  std::vector<double> suff_lo((size_t)N + 1), suff_hi((size_t)N + 1);
  suff_lo[(size_t)N] = suff_hi[(size_t)N] = std::numeric_limits<double>::infinity();
  for (long long n = N; n >= 1; --n) {
    auto it = l_source.find(n);
    if (it == l_source.end())
      throw std::invalid_argument("missing density certificate for horizon " +
                                  std::to_string(n));
    const auto& cert = it->second;
    if (!(Rational(0) < cert.lower))
      throw std::invalid_argument("density certificate with nonpositive lower end");
    double w = std::max(h(d.ds[(size_t)n - 1].value()), h(d.dr[(size_t)n - 1].value()));
    suff_lo[(size_t)n - 1] = std::min(suff_lo[(size_t)n], w / cert.lower.value());
    suff_hi[(size_t)n - 1] = std::min(suff_hi[(size_t)n], w / cert.upper.value());
  }
  std::vector<PairProfileRow> rows;
  for (long long k : k_ladder)
    rows.push_back({k, N, suff_lo[(size_t)k - 1], suff_hi[(size_t)k - 1]});
  return rows;
}

WeightedReturn rotation_min_weighted_return(const RotationAngle& angle, long long K,
                                            long long N) {
  if (K < 1 || K > N) throw std::invalid_argument("need 1 <= K <= N");
  long long p = angle.value().num(), q = angle.value().den();
  __int128 best = -1;
  long long arg = 0;
  long long r = (long long)((__int128)(K % q) * p % q);  // K*p mod q
  for (long long n = K; n <= N; ++n) {
    long long rm = std::min(r, q - r);
    if (q == 1) rm = 0;
    __int128 w = (__int128)n * rm;
    if (best < 0 || w < best) {
      best = w;
      arg = n;
      if (w == 0) break;
    }
    r += p;
    if (r >= q) r -= q;
  }
  WeightedReturn out;
  out.value = (double)((long double)best / (long double)q);
  out.argmin = arg;
  return out;
}

RotationOracle rotation_oracle(const RotationAngle& angle, long long N) {
  if (N < 1) throw std::invalid_argument("horizon must be at least 1");
  const Convergents& c = angle.convergents();
  if (!angle.exact_rational() && c.q.back() <= N)
    throw PrecisionError("continued-fraction expansion too shallow for this horizon");
  RotationOracle out;
  for (size_t i = 0; i < c.q.size(); ++i) {
    if (c.q[i] > N) break;
    if (out.denominators.empty() || out.denominators.back() != c.q[i])
      out.denominators.push_back(c.q[i]);
  }
  long long qb = out.denominators.back();
  long long q = angle.value().den();
  long long r = (long long)((__int128)(qb % q) * angle.value().num() % q);
  long long rm = q == 1 ? 0 : std::min(r, q - r);
  out.min_norm = Rational(rm, q);
  out.argmin = qb;
  return out;
}

}  // namespace recurlab::dynamics
