#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recurlab/continued_fraction.hpp"
#include "recurlab/corners.hpp"
#include "recurlab/rational.hpp"
#include "recurlab/scale_fn.hpp"
#include "recurlab/spaces.hpp"

namespace recurlab::dynamics {

// Measure-preserving map on one of the supported spaces.  Rotations carry a
// RotationAngle (exact rational plus truncation bound); every other kind is
// parameter-exact.
class Map {
 public:
  enum class Kind { rotation, shift, doubling, cat, product };

  static Map rotation(const RotationAngle& angle);
  static Map identity();  // rotation by 0
  static Map cyclic_shift(long long modulus, long long step);
  static Map doubling();
  static Map cat();
  static Map product(const std::vector<Map>& factors);

  Kind kind() const { return kind_; }
  const spaces::Space& space() const { return space_; }
  const RotationAngle& angle() const;
  long long shift_step() const { return step_; }
  const std::vector<Map>& factors() const { return factors_; }

  spaces::Point apply(const spaces::Point& x) const { return iterate(x, 1); }
  spaces::Point iterate(const spaces::Point& x, long long n) const;

  // distance in the normalized metric between one true step and one stored
  // step; nonzero only for truncated rotation angles
  double step_error_bound() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::rotation;
  spaces::Space space_ = spaces::Space::torus(1);
  RotationAngle angle_;
  long long modulus_ = 0, step_ = 0;
  std::vector<Map> factors_;

  void iterate_into(const spaces::Point& x, long long n, size_t offset,
                    spaces::Point* out) const;
};

// Two maps on the same space whose composition order provably does not
// matter.  Finite spaces are checked point by point; torus pairs are accepted
// only for combinations that commute identically (translations with each
// other, a map with itself or with the identity, products factorwise).
class CommutingPair {
 public:
  CommutingPair(Map s, Map r);
  const Map& S() const { return s_; }
  const Map& R() const { return r_; }
  const spaces::Space& space() const { return s_.space(); }

 private:
  Map s_, r_;
};

struct RecurrenceValue {
  Rational value;
  long long argmin = 0;
};

// closest-return distance min{d(T^n x, x) : 1 <= n <= N}
RecurrenceValue recurrence_constant(const Map& map, const spaces::Point& x, long long N);

// min over n <= N of max(d(S^n x, x), d(R^n x, x))
RecurrenceValue simultaneous_recurrence(const CommutingPair& pair, const spaces::Point& x,
                                        long long N);

// per-step distances d(T^n x, x) for n = 1..N
std::vector<Rational> orbit_distances(const Map& map, const spaces::Point& x, long long N);

struct PairOrbitDistances {
  std::vector<Rational> ds, dr;
};
PairOrbitDistances pair_orbit_distances(const CommutingPair& pair, const spaces::Point& x,
                                        long long N);

struct ProfileRow {
  long long K = 0, N = 0;
  double value = 0;
};

// tail minima m(K, N) = min{ n * h(d(T^n x, x)) : K <= n <= N } for each K in
// the ladder; finite-horizon diagnostic, not a liminf certificate
std::vector<ProfileRow> weighted_liminf_profile(const Map& map, const spaces::Point& x,
                                                const ScaleFn& h, long long N,
                                                const std::vector<long long>& k_ladder);

struct PairProfileRow {
  long long K = 0, N = 0;
  double value_lowerL = 0;  // weights 1/L(n) taken at the bracket's lower end
  double value_upperL = 0;
};

// tail minima of (1/L(n)) * max(h(d(S^n x, x)), h(d(R^n x, x))) with the
// corner-free density bracket L(n) supplied per n
std::vector<PairProfileRow> pair_weighted_profile(
    const CommutingPair& pair, const spaces::Point& x, const ScaleFn& h, long long N,
    const std::vector<long long>& k_ladder,
    const std::map<long long, corners::DensityCertificate>& l_source);

struct WeightedReturn {
  double value = 0;
  long long argmin = 0;
};

// exact tail minimum of n * ||n alpha|| over K <= n <= N, where ||.|| is the
// distance to the nearest integer (the classical, unnormalized circle norm);
// computed in integer arithmetic on the stored rational angle
WeightedReturn rotation_min_weighted_return(const RotationAngle& angle, long long K,
                                            long long N);

struct RotationOracle {
  std::vector<long long> denominators;  // best-approximation denominators <= N
  Rational min_norm;                    // min_{1<=n<=N} ||n alpha||, classical norm
  long long argmin = 0;
};

// closest-return oracle from continued-fraction best approximations; throws
// PrecisionError when the stored expansion is too shallow to certify the tail
RotationOracle rotation_oracle(const RotationAngle& angle, long long N);

}  // namespace recurlab::dynamics
