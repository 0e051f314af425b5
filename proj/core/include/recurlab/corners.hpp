#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recurlab/rational.hpp"

namespace recurlab::corners {

// Subset of the grid [1,N] x [1,N], stored as one bitset row per y value.
class GridSubset {
 public:
  explicit GridSubset(int side);
  static GridSubset full(int side);

  int side() const { return side_; }
  bool test(int x, int y) const;        // 1-based coordinates
  void set(int x, int y, bool on = true);
  long long size() const;
  bool operator==(const GridSubset& o) const { return side_ == o.side_ && rows_ == o.rows_; }

  // Members sorted lexicographically by (x, y); matches the witness file order.
  std::vector<std::pair<int, int>> members() const;

  // Raw row words (little-endian bit order within a row), for fast scans.
  const uint64_t* row(int y) const { return rows_.data() + (size_t)(y - 1) * words_; }
  int words_per_row() const { return words_; }

 private:
  int side_;
  int words_;
  std::vector<uint64_t> rows_;
};

// A corner is the triple (k,m), (k+d,m), (k,m+d) with d > 0, all inside [1,N]^2.
struct Corner {
  int k = 0, m = 0, d = 0;
  bool operator==(const Corner& o) const { return k == o.k && m == o.m && d == o.d; }
};

bool contains_corner(const GridSubset& a);

// Smallest corner contained in `a` in lexicographic (k, m, d) order, if any.
std::optional<Corner> find_corner(const GridSubset& a);

struct SearchResult {
  long long size = 0;        // best corner-free subset found
  GridSubset witness{1};     // a witness of that size
  bool optimal = false;      // true when size is proved to be the maximum
  long long upper_bound = 0; // valid upper bound on the maximum (== size when optimal)
  long long nodes = 0;       // search nodes spent
};

// Exhaustive enumeration in decreasing popcount order; side <= 5 only
// (at most 2^25 candidate masks).
SearchResult max_corner_free_exhaustive(int side);

// Branch and bound over the corner triple system.  The upper bound used for
// pruning comes from a greedy solution of the fractional hitting-set
// relaxation over the corner triples.  When the node budget runs out the
// result carries optimal = false and a still-valid global upper bound.
SearchResult max_corner_free_bnb(int side, long long node_budget);

// Dispatcher: exhaustive for side <= 5, branch and bound beyond.
SearchResult max_corner_free_exact(int side, long long node_budget = 2'000'000);

// Subset of [1, bound] with no nontrivial 3-term arithmetic progression.
struct ApFreeSet {
  int bound = 0;
  std::vector<int> members;  // strictly increasing
};

bool has_ap3(const std::vector<int>& members);

struct ApSearchResult {
  int size = 0;
  ApFreeSet witness;
  bool optimal = false;
  long long nodes = 0;
};

// Maximum progression-free subset of [1, bound] via the same branch and
// bound machinery; exact (optimal = true) for every bound the budget allows,
// and guaranteed cheap for bound <= 20.
ApSearchResult max_ap3_free_exact(int bound, long long node_budget = 2'000'000);

// Digit construction: numbers whose base-(2d-1) digits are < d, restricted to
// one sphere of the digit vectors (all spheres for d = 2, where the whole
// digit cube is progression-free).  Searches the small parameter range and
// returns the largest set that fits in [1, bound]; always re-checked by a
// progression scan before returning.
ApFreeSet behrend_set(int bound);

// A = {(x, y) in [1,side]^2 : x + 2y in B}.  Requires B subset of [1, 3*side];
// the result is corner-free because a corner maps to a 3-term progression of
// the sums x + 2y.
GridSubset lift_ap3_to_corner_free(const ApFreeSet& b, int side);

// Iterated-logarithm count: largest k with log^(k)(n) >= 2 (natural log),
// and 0 when log(n) < 2.
int log_star(unsigned long long n);

// 100 * log_star(n)^(-1/4), before clamping.
double vu_upper_bound_raw(int log_star_value);

// Density upper bound min(1, 100 * log_star(n)^(-1/4)); empty when
// log_star(n) = 0, i.e. the bound is unavailable for such small n.
std::optional<double> vu_upper_bound(unsigned long long n);

enum class Provenance { exact, exhaustive, branch_and_bound, behrend_lift, vu_bound, trivial };
std::string provenance_name(Provenance p);

// Two-sided certificate for the extremal corner-free density at side t:
// lower <= max/t^2 <= upper, both exact rationals.
struct DensityCertificate {
  long long t = 0;
  Rational lower;
  Rational upper;
  Provenance provenance = Provenance::trivial;
};

enum class CertMode { exact_required, best_available };

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Certified density bracket at side t.  Exact for t <= 5 (cached exhaustive
// values) and whenever branch and bound proves optimality within the budget;
// otherwise a [construction lower, search/analytic upper] bracket.  In
// exact_required mode a non-exact result raises CertificateError instead of
// silently degrading.
DensityCertificate certified_L(long long t, CertMode mode = CertMode::best_available,
                               long long node_budget = -1);

// Budget heuristic used when certified_L is called with node_budget < 0:
// roughly constant total work across t.
long long default_node_budget(long long t);

}  // namespace recurlab::corners
