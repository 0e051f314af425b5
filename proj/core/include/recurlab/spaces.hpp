#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recurlab/rational.hpp"
#include "recurlab/scale_fn.hpp"

namespace recurlab::spaces {

// One coordinate of a product space: the unit circle R/Z with rational
// coordinates, or the cyclic group Z/m.
enum class CompKind { circle, cyclic };

struct Component {
  CompKind kind = CompKind::circle;
  long long modulus = 0;  // cyclic only
};

// A point is one rational per coordinate: circle coordinates live in [0, 1),
// cyclic coordinates are integers in [0, m).
using Point = std::vector<Rational>;

// Product of circles and cyclic groups carrying the normalized max metric:
// every component is rescaled so its diameter is exactly 1, hence the
// product diameter is 1 as well.  All distances are exact rationals.
class Space {
 public:
  static Space torus(int dim = 1);
  static Space cyclic(long long modulus);
  static Space product(const std::vector<Space>& parts);

  const std::vector<Component>& components() const { return comps_; }
  int dim() const { return (int)comps_.size(); }
  bool finite() const;
  long long cardinality() const;  // throws std::logic_error unless finite
  bool same(const Space& other) const;

  void validate_point(const Point& p) const;  // throws std::domain_error
  Point canonical(const Point& p) const;      // reduces coordinates into range
  Rational distance(const Point& a, const Point& b) const;

  // finite spaces: mixed-radix bijection between points and [0, cardinality)
  long long index_of(const Point& p) const;
  Point point_at(long long index) const;

  std::string describe() const;

 private:
  std::vector<Component> comps_;
};

// distance between two coordinates of a single component, normalized to [0, 1]
Rational component_distance(const Component& c, const Rational& a, const Rational& b);

// Half-open arc [a, b) on the circle, walking in the positive direction;
// wraps through 0 when b <= a.
struct Arc {
  Rational a, b;
};

// Subset of a space: a finite union of arcs (1-dim torus), boxes (products of
// per-coordinate arcs on a torus), an explicit point list (finite spaces), or
// the whole space.  Arcs are normalized at construction: split at 0, sorted,
// overlaps merged; a union of measure 1 collapses to `whole`.
class Region {
 public:
  enum class Kind { empty, whole, arcs, boxes, points };

  static Region empty();
  static Region whole();
  static Region arcs(const std::vector<Arc>& raw);
  static Region boxes(const std::vector<std::vector<Arc>>& raw);
  static Region points(const Space& sp, const std::vector<Point>& pts);

  Kind kind() const { return kind_; }
  void require_on(const Space& sp) const;  // throws when shape and space disagree

  Rational measure(const Space& sp) const;
  bool contains(const Space& sp, const Point& p) const;

  // normalized non-wrapping segments [s, e) with 0 <= s < e <= 1 (arcs only)
  const std::vector<std::pair<Rational, Rational>>& segments() const;
  const std::vector<std::vector<Arc>>& box_list() const { return boxes_; }
  const std::vector<long long>& point_indices() const { return indices_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::empty;
  std::vector<std::pair<Rational, Rational>> segs_;  // arcs, split at 0, merged
  std::vector<std::vector<Arc>> boxes_;
  std::vector<long long> indices_;  // sorted unique indices into the finite space
};

struct CoveringResult {
  long long lower = 0;   // no cover by balls of this radius can be smaller
  long long upper = 0;   // a cover of this size exists
  bool exact = false;    // lower == upper and both are certified
  std::vector<Point> net;  // centers of the witnessing cover (may be withheld
                           // when larger than the emission cap)
  bool net_emitted = false;
};

// Minimum number of closed balls of radius eps (in the normalized metric)
// needed to cover the region.  Exact on tori for the whole space, single
// boxes and arc unions, and on cyclic spaces for any point set; unions of
// boxes and points of higher-dimensional products return a bracket.
// Product-space counts for full spaces and boxes multiply per-coordinate
// counts (grid covers).
CoveringResult covering_number(const Region& r, const Space& sp, const Rational& eps);

// covering count at scale delta weighted by the gauge: N(delta) * h(delta);
// uses the upper (witnessed) covering count when the count is a bracket
double box_counting_premeasure(const Region& r, const Space& sp, const ScaleFn& h,
                               const Rational& delta);

// monotone refinement estimate: min of the premeasure over the given ladder
// of scales
double hh_upper_estimate(const Region& r, const Space& sp, const ScaleFn& h,
                         const std::vector<Rational>& ladder);

}  // namespace recurlab::spaces
