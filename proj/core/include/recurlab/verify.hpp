#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recurlab/corners.hpp"
#include "recurlab/dynamics.hpp"
#include "recurlab/rng.hpp"
#include "recurlab/scale_fn.hpp"
#include "recurlab/spaces.hpp"
#include "recurlab/stieltjes.hpp"

namespace recurlab::verify {

// Y(t): points of Y that do not return to Y (resp. do not simultaneously
// return) within t steps.  Exact point list on finite spaces, seeded sampled
// estimate with a 99% Hoeffding interval on tori.
struct NonReturningSet {
  long long t = 0;
  bool pair_variant = false;
  bool exact = false;
  std::vector<long long> members;  // sorted indices, exact mode only
  Rational measure_exact;
  double estimate = 0;
  double ci99 = 0;
  long long samples = 0;
  std::uint64_t seed = 0;

  double measure_value() const { return exact ? measure_exact.value() : estimate; }
  bool member(long long idx) const;
};

NonReturningSet non_returning_single(const spaces::Region& y, const dynamics::Map& map,
                                     long long t, const McPolicy& pol = {});
NonReturningSet non_returning_pair(const spaces::Region& y,
                                   const dynamics::CommutingPair& pair, long long t,
                                   const McPolicy& pol = {});

// Deliberately unvalidated claim that every point of Y survives the
// non-return condition.  Exists to exercise the corner-extraction
// contradiction path, which is unreachable from genuine non-returning sets.
NonReturningSet assume_non_returning(const spaces::Region& y, const spaces::Space& sp,
                                     long long t);

struct Report {
  std::string check;
  double statistic = 0;
  double bound = 0;
  double margin = 0;  // 0 for exact checks, CI half-width for sampled ones
  long long samples = 0;
  std::uint64_t seed = 0;
  std::string certificate_provenance;
  bool pass = false;
};

// mu(Y(t)) <= 1/t
Report check_lemma_l_add(const spaces::Region& y, const dynamics::Map& map, long long t,
                         const McPolicy& pol = {});

// mu(Y(t)) <= L(t), upper bracket end of the certificate
Report check_lemma_ll(const spaces::Region& y, const dynamics::CommutingPair& pair,
                      long long t, const corners::DensityCertificate& cert,
                      const McPolicy& pol = {});

// A(x) = {(k1,k2) in [1,t]^2 : S^{k1} R^{k2} x lies in the claimed Y(t)}
struct ReturnIndexSet {
  spaces::Point x;
  long long t = 0;
  corners::GridSubset indices{1};
  long long size = 0;
};

ReturnIndexSet return_index_set(const spaces::Point& x, const NonReturningSet& yt,
                                const dynamics::CommutingPair& pair);

struct CornerExtraction {
  corners::Corner corner;
  spaces::Point u1, u2, u3;
  bool relations_verified = false;     // S^d u1 == u2 and R^d u1 == u3, exactly
  bool contradiction_confirmed = false;  // both images lie in the claimed set, d <= t
};

// runs when |A(x)| exceeds t^2 L(t) with L exact; on genuine non-returning
// sets the premise is impossible, so callers feed corrupted claims on purpose
std::optional<CornerExtraction> corner_extraction_demo(
    const ReturnIndexSet& ax, const NonReturningSet& yt,
    const dynamics::CommutingPair& pair);

// multiplicity <= l pointwise implies mu(union) >= (1/l) sum mu(M_i); a
// violated hypothesis marks the check name and passes vacuously
Report check_union_multiplicity(const spaces::Space& sp,
                                const std::vector<spaces::Region>& family, long long l);

struct RhsOptions {
  int grid = 1000;  // uniform candidate resolution on tori
};

struct RhsResult {
  double value = 0;
  bool exact = false;
  Rational exact_value;
  Rational argmin_t;
  std::string note;
};

// inf_t { g(t) mu(A) + int_t^1 min(mu(A), N_eps(A)/n) dg(eps) }, evaluated on
// covering-count breakpoints (plus a uniform grid on tori); one-sided: the
// reported value is >= the true infimum
RhsResult rhs_bound_x2(const spaces::Region& a, const spaces::Space& sp, const ScaleFn& g,
                       long long n, const RhsOptions& opt = {});

// same with weight min(mu(A), N_eps(A) * L(n).upper)
RhsResult rhs_bound_x4(const spaces::Region& a, const spaces::Space& sp, const ScaleFn& g,
                       long long n, const corners::DensityCertificate& cert,
                       const RhsOptions& opt = {});

// int_A g(C_N(x)) dmu <= rhs_bound_x2: exact sums on finite spaces, seeded
// Monte Carlo over A on tori
Report check_theorem_x2(const spaces::Region& a, const dynamics::Map& map,
                        const ScaleFn& g, long long n, const McPolicy& pol = {},
                        const RhsOptions& opt = {});

// simultaneous-recurrence version against rhs_bound_x4
Report check_theorem_x4(const spaces::Region& a, const dynamics::CommutingPair& pair,
                        const ScaleFn& g, long long n,
                        const corners::DensityCertificate& cert, const McPolicy& pol = {},
                        const RhsOptions& opt = {});

// informational comparison of truncated profile integrals against the
// box-counting estimate; flagged only when every ladder entry exceeds it
Report diagnostic_x1_x3(const std::string& check,
                        const std::vector<double>& truncated_integrals,
                        double hh_estimate);

// deterministic exact-rational sampler used by the Monte Carlo paths;
// exposed so tests can pin its distribution.  dens holds one sampling
// denominator per circle coordinate (cyclic coordinates sample directly).
// Stratified mode assigns sample_index its own stratum of width
// 1/sample_count on the first circle coordinate, which keeps all stratum
// weights equal (and the mean unbiased) for every sample count.
spaces::Point sample_point(const spaces::Region& r, const spaces::Space& sp, Rng& rng,
                           McPolicy::Sampling mode, long long sample_index,
                           long long sample_count, const std::vector<long long>& dens);

// per-coordinate sampling denominators compatible with exact orbit
// arithmetic for the given map (odd grids under doubling, dyadic otherwise)
std::vector<long long> sampling_dens(const dynamics::Map& map);

// indices of an exactly representable region on a finite space
std::vector<long long> region_indices(const spaces::Region& r, const spaces::Space& sp);

}  // namespace recurlab::verify
