#include "recurlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace recurlab::spaces {
namespace {

constexpr long long kNetEmissionCap = 200000;
constexpr long long kPointCoverCap = 100000;

// smallest count of closed intervals of length eps covering a line segment of
// length len
long long segment_count(const Rational& len, const Rational& eps) {
  // ceil(len / eps) = ceil(len.num * eps.den / (len.den * eps.num))
  __int128 num = (__int128)len.num() * eps.den();
  __int128 den = (__int128)len.den() * eps.num();
  return (long long)((num + den - 1) / den);
}

}  // namespace

Space Space::torus(int dim) {
  if (dim < 1) throw std::invalid_argument("torus dimension must be positive");
  Space s;
  s.comps_.assign((size_t)dim, Component{CompKind::circle, 0});
  return s;
}

Space Space::cyclic(long long modulus) {
  if (modulus < 1) throw std::invalid_argument("cyclic modulus must be positive");
  Space s;
  s.comps_.push_back(Component{CompKind::cyclic, modulus});
  return s;
}

Space Space::product(const std::vector<Space>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty product space");
  Space s;
  for (const auto& p : parts)
    s.comps_.insert(s.comps_.end(), p.comps_.begin(), p.comps_.end());
  return s;
}

bool Space::finite() const {
  for (const auto& c : comps_)
    if (c.kind == CompKind::circle) return false;
  return true;
}

long long Space::cardinality() const {
  if (!finite()) throw std::logic_error("space is not finite");
  __int128 n = 1;
  for (const auto& c : comps_) {
    n *= c.modulus;
    if (n > (__int128)1 << 62) throw PrecisionError("cardinality overflow");
  }
  return (long long)n;
}

bool Space::same(const Space& other) const {
  if (comps_.size() != other.comps_.size()) return false;
  for (size_t i = 0; i < comps_.size(); ++i)
    if (comps_[i].kind != other.comps_[i].kind ||
        comps_[i].modulus != other.comps_[i].modulus)
      return false;
  return true;
}

void Space::validate_point(const Point& p) const {
  if ((int)p.size() != dim())
    throw std::domain_error("point dimension mismatch");
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].kind == CompKind::cyclic) {
      if (!p[i].is_integer())
        throw std::domain_error("cyclic coordinate must be an integer");
      long long k = p[i].num();
      if (k < 0 || k >= comps_[i].modulus)
        throw std::domain_error("cyclic coordinate out of range");
    } else {
      if (p[i] < Rational(0) || !(p[i] < Rational(1)))
        throw std::domain_error("circle coordinate outside [0, 1)");
    }
  }
}

Point Space::canonical(const Point& p) const {
  if ((int)p.size() != dim())
    throw std::domain_error("point dimension mismatch");
  Point q(p.size());
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].kind == CompKind::cyclic) {
      if (!p[i].is_integer())
        throw std::domain_error("cyclic coordinate must be an integer");
      long long m = comps_[i].modulus;
      long long k = ((p[i].num() % m) + m) % m;
      q[i] = Rational(k);
    } else {
      q[i] = p[i].mod1();
    }
  }
  return q;
}

Rational component_distance(const Component& c, const Rational& a, const Rational& b) {
  if (c.kind == CompKind::circle) {
    Rational d = (a - b).mod1();
    Rational other = Rational(1) - d;
    return Rational(2) * rat_min(d, other);
  }
  long long m = c.modulus;
  long long half = m / 2;
  if (half == 0) return Rational(0);
  long long d = (((a.num() - b.num()) % m) + m) % m;
  return Rational(std::min(d, m - d), half);
}

Rational Space::distance(const Point& a, const Point& b) const {
  validate_point(a);
  validate_point(b);
  Rational best(0);
  for (size_t i = 0; i < comps_.size(); ++i)
    best = rat_max(best, component_distance(comps_[i], a[i], b[i]));
  return best;
}

long long Space::index_of(const Point& p) const {
  if (!finite()) throw std::logic_error("space is not finite");
  validate_point(p);
  long long idx = 0;
  for (size_t i = 0; i < comps_.size(); ++i)
    idx = idx * comps_[i].modulus + p[i].num();
  return idx;
}

Point Space::point_at(long long index) const {
  long long card = cardinality();
  if (index < 0 || index >= card) throw std::domain_error("point index out of range");
  Point p(comps_.size());
  for (size_t i = comps_.size(); i-- > 0;) {
    p[i] = Rational(index % comps_[i].modulus);
    index /= comps_[i].modulus;
  }
  return p;
}

std::string Space::describe() const {
  std::ostringstream os;
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (i) os << " x ";
    if (comps_[i].kind == CompKind::circle)
      os << "T";
    else
      os << "Z/" << comps_[i].modulus;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// regions

namespace {

// splits one arc into non-wrapping half-open segments inside [0, 1)
void push_segments(const Arc& arc, std::vector<std::pair<Rational, Rational>>* out) {
  Rational a = arc.a.mod1();
  Rational len = arc.b - arc.a;
  if (len != Rational(1)) len = len.mod1();
  if (len.is_zero())
    throw std::invalid_argument(
        "zero-length arc; use a full-length arc (b = a + 1) for the whole circle");
  Rational end = a + len;
  if (end <= Rational(1)) {
    out->push_back({a, end});
  } else {
    out->push_back({a, Rational(1)});
    out->push_back({Rational(0), end - Rational(1)});
  }
}

std::vector<std::pair<Rational, Rational>> merge_segments(
    std::vector<std::pair<Rational, Rational>> segs) {
  std::sort(segs.begin(), segs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<Rational, Rational>> merged;
  for (const auto& s : segs) {
    if (!merged.empty() && s.first <= merged.back().second)
      merged.back().second = rat_max(merged.back().second, s.second);
    else
      merged.push_back(s);
  }
  return merged;
}

// true when the two circle arcs (canonical start + length) intersect
bool arcs_intersect(const Rational& a1, const Rational& l1, const Rational& a2,
                    const Rational& l2) {
  // offset of arc2 start relative to arc1 start, walking positively
  Rational d = (a2 - a1).mod1();
  return d < l1 || (Rational(1) - d) < l2 || d.is_zero();
}

struct BoxDim {
  Rational start, len;  // canonical start in [0,1), len in (0,1]
};

std::vector<BoxDim> canon_box(const std::vector<Arc>& raw) {
  std::vector<BoxDim> dims;
  for (const auto& arc : raw) {
    Rational a = arc.a.mod1();
    Rational len = arc.b - arc.a;
    if (len != Rational(1)) len = len.mod1();
    if (len.is_zero()) throw std::invalid_argument("zero-length box edge");
    dims.push_back({a, len});
  }
  return dims;
}

bool box_dim_contains(const BoxDim& d, const Rational& x) {
  if (d.len == Rational(1)) return true;
  return (x - d.start).mod1() < d.len;
}

}  // namespace

Region Region::empty() { return Region{}; }

Region Region::whole() {
  Region r;
  r.kind_ = Kind::whole;
  return r;
}

Region Region::arcs(const std::vector<Arc>& raw) {
  if (raw.empty()) return empty();
  std::vector<std::pair<Rational, Rational>> segs;
  for (const auto& arc : raw) {
    if (arc.b - arc.a == Rational(1)) return whole();
    push_segments(arc, &segs);
  }
  segs = merge_segments(std::move(segs));
  if (segs.size() == 1 && segs[0].first.is_zero() && segs[0].second == Rational(1))
    return whole();
  Region r;
  r.kind_ = Kind::arcs;
  r.segs_ = std::move(segs);
  return r;
}

Region Region::boxes(const std::vector<std::vector<Arc>>& raw) {
  if (raw.empty()) return empty();
  size_t d = raw[0].size();
  if (d == 0) throw std::invalid_argument("empty box");
  std::vector<std::vector<BoxDim>> canon;
  for (const auto& b : raw) {
    if (b.size() != d) throw std::invalid_argument("boxes of mixed dimension");
    canon.push_back(canon_box(b));
  }
  // unions of boxes must be pairwise disjoint so measures and covers add up
  for (size_t i = 0; i < canon.size(); ++i)
    for (size_t j = i + 1; j < canon.size(); ++j) {
      bool disjoint = false;
      for (size_t k = 0; k < d && !disjoint; ++k)
        if (!arcs_intersect(canon[i][k].start, canon[i][k].len, canon[j][k].start,
                            canon[j][k].len) &&
            !arcs_intersect(canon[j][k].start, canon[j][k].len, canon[i][k].start,
                            canon[i][k].len))
          disjoint = true;
      if (!disjoint)
        throw std::invalid_argument("boxes in a union must be pairwise disjoint");
    }
  if (d == 1) {
    std::vector<Arc> flat;
    for (const auto& b : raw) flat.push_back(b[0]);
    return arcs(flat);
  }
  Region r;
  r.kind_ = Kind::boxes;
  r.boxes_ = raw;
  return r;
}

Region Region::points(const Space& sp, const std::vector<Point>& pts) {
  if (!sp.finite()) throw std::invalid_argument("point regions need a finite space");
  if (pts.empty()) return empty();
  std::set<long long> idx;
  for (const auto& p : pts) idx.insert(sp.index_of(sp.canonical(p)));
  Region r;
  r.kind_ = Kind::points;
  r.indices_.assign(idx.begin(), idx.end());
  return r;
}

void Region::require_on(const Space& sp) const {
  switch (kind_) {
    case Kind::empty:
    case Kind::whole:
      return;
    case Kind::arcs:
      if (sp.dim() != 1 || sp.components()[0].kind != CompKind::circle)
        throw std::invalid_argument("arc regions live on the 1-dim torus");
      return;
    case Kind::boxes:
      if ((int)boxes_[0].size() != sp.dim())
        throw std::invalid_argument("box dimension does not match the space");
      for (const auto& c : sp.components())
        if (c.kind != CompKind::circle)
          throw std::invalid_argument("box regions live on tori");
      return;
    case Kind::points:
      if (!sp.finite())
        throw std::invalid_argument("point regions live on finite spaces");
      if (indices_.back() >= sp.cardinality())
        throw std::invalid_argument("point index exceeds the space cardinality");
      return;
  }
}

Rational Region::measure(const Space& sp) const {
  require_on(sp);
  switch (kind_) {
    case Kind::empty:
      return Rational(0);
    case Kind::whole:
      return Rational(1);
    case Kind::arcs: {
      Rational total(0);
      for (const auto& [s, e] : segs_) total = total + (e - s);
      return total;
    }
    case Kind::boxes: {
      Rational total(0);
      for (const auto& b : boxes_) {
        Rational vol(1);
        for (const auto& d : canon_box(b)) vol = vol * d.len;
        total = total + vol;
      }
      return total;
    }
    case Kind::points:
      return Rational((long long)indices_.size(), sp.cardinality());
  }
  return Rational(0);
}

bool Region::contains(const Space& sp, const Point& p) const {
  require_on(sp);
  sp.validate_point(p);
  switch (kind_) {
    case Kind::empty:
      return false;
    case Kind::whole:
      return true;
    case Kind::arcs: {
      for (const auto& [s, e] : segs_)
        if (s <= p[0] && p[0] < e) return true;
      return false;
    }
    case Kind::boxes: {
      for (const auto& b : boxes_) {
        auto dims = canon_box(b);
        bool in = true;
        for (size_t i = 0; i < dims.size() && in; ++i)
          in = box_dim_contains(dims[i], p[i]);
        if (in) return true;
      }
      return false;
    }
    case Kind::points: {
      long long idx = sp.index_of(p);
      return std::binary_search(indices_.begin(), indices_.end(), idx);
    }
  }
  return false;
}

const std::vector<std::pair<Rational, Rational>>& Region::segments() const {
  if (kind_ != Kind::arcs) throw std::logic_error("not an arc region");
  return segs_;
}

std::string Region::describe() const {
  switch (kind_) {
    case Kind::empty:
      return "empty";
    case Kind::whole:
      return "whole";
    case Kind::arcs: {
      std::ostringstream os;
      os << "arcs[";
      for (size_t i = 0; i < segs_.size(); ++i) {
        if (i) os << ' ';
        os << segs_[i].first.str() << ':' << segs_[i].second.str();
      }
      os << ']';
      return os.str();
    }
    case Kind::boxes: {
      std::ostringstream os;
      os << "boxes[" << boxes_.size() << " of dim " << boxes_[0].size() << ']';
      return os.str();
    }
    case Kind::points: {
      std::ostringstream os;
      os << "points[" << indices_.size() << ']';
      return os.str();
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// covering numbers

namespace {

struct Seg {
  Rational s, e;
};

// greedy cover of segments laid out on a line; each ball's left edge sits on
// the first still-uncovered point, which is optimal for closed balls
long long linear_greedy(std::vector<Seg> segs, const Rational& eps,
                        std::vector<Rational>* centers) {
  long long count = 0;
  size_t i = 0;
  while (i < segs.size()) {
    Rational p = segs[i].s;
    ++count;
    if (centers) centers->push_back(p + eps / Rational(2));
    Rational reach = p + eps;
    while (i < segs.size() && segs[i].e <= reach) ++i;
    if (i < segs.size() && segs[i].s <= reach) segs[i].s = reach;
  }
  return count;
}

// exact minimum number of closed eps-balls covering a union of circle
// segments; centers come back in circle coordinates
long long circle_cover(const std::vector<std::pair<Rational, Rational>>& merged,
                       const Rational& eps, std::vector<Rational>* centers) {
  size_t n = merged.size();
  std::vector<Seg> base(n);
  for (size_t i = 0; i < n; ++i) base[i] = {merged[i].first, merged[i].second};

  auto unroll_at = [&](size_t k) {
    // segments in circle order starting from segment k; later wraps get +1
    std::vector<Seg> out;
    for (size_t j = 0; j < n; ++j) {
      const Seg& s = base[(k + j) % n];
      if (k + j < n)
        out.push_back(s);
      else
        out.push_back({s.s + Rational(1), s.e + Rational(1)});
    }
    return out;
  };

  // a gap of size >= eps cannot be bridged by one ball, so cutting there
  // reduces the circle to a line
  for (size_t i = 0; i < n; ++i) {
    Rational gap_end = (i + 1 < n) ? base[i + 1].s : base[0].s + Rational(1);
    if (gap_end - base[i].e >= eps) {
      std::vector<Rational> cs;
      long long c = linear_greedy(unroll_at((i + 1) % n), eps, centers ? &cs : nullptr);
      if (centers)
        for (auto& x : cs) centers->push_back(x.mod1());
      return c;
    }
  }

  // every gap is small: optimal covers either anchor a ball at some segment
  // start or chain balls all the way around the circle
  long long best = ceil_div(1, eps);  // closed chain: full-circle grid
  long long best_anchor = -1;
  for (size_t k = 0; k < n; ++k) {
    long long c = linear_greedy(unroll_at(k), eps, nullptr);
    if (c < best) {
      best = c;
      best_anchor = (long long)k;
    }
  }
  if (centers) {
    if (best_anchor < 0) {
      for (long long i = 0; i < best; ++i)
        centers->push_back((eps / Rational(2) + Rational(i) * eps).mod1());
    } else {
      std::vector<Rational> cs;
      linear_greedy(unroll_at((size_t)best_anchor), eps, &cs);
      for (auto& x : cs) centers->push_back(x.mod1());
    }
  }
  return best;
}

// exact minimum number of (2w+1)-windows of consecutive residues covering a
// sorted residue set in Z/m
long long cyclic_cover(const std::vector<long long>& rs, long long m, long long w,
                       std::vector<long long>* centers) {
  long long width = 2 * w + 1;
  size_t n = rs.size();
  if (width >= m) {
    if (centers) centers->push_back(((rs[0] + w) % m + m) % m);
    return 1;
  }

  auto linear_from = [&](size_t k, std::vector<long long>* cs) {
    long long count = 0;
    long long reach = -1;  // rightmost covered position in unrolled coords
    for (size_t j = 0; j < n; ++j) {
      long long r = rs[(k + j) % n] + (k + j < n ? 0 : m);
      if (r <= reach) continue;
      ++count;
      if (cs) cs->push_back((r + w) % m);
      reach = r + width - 1;
    }
    return count;
  };

  for (size_t i = 0; i < n; ++i) {
    long long next = (i + 1 < n) ? rs[i + 1] : rs[0] + m;
    if (next - rs[i] - 1 >= width) {
      return linear_from((i + 1) % n, centers);
    }
  }

  long long best = (m + width - 1) / width;
  long long best_anchor = -1;
  for (size_t k = 0; k < n; ++k) {
    long long c = linear_from(k, nullptr);
    if (c < best) {
      best = c;
      best_anchor = (long long)k;
    }
  }
  if (centers) {
    if (best_anchor < 0) {
      for (long long i = 0; i < best; ++i) centers->push_back((i * width + w) % m);
    } else {
      linear_from((size_t)best_anchor, centers);
    }
  }
  return best;
}

// per-component count for covering the full component at radius eps
long long full_component_count(const Component& c, const Rational& eps) {
  if (c.kind == CompKind::circle) return ceil_div(1, eps);
  long long half = c.modulus / 2;
  if (half == 0) return 1;
  long long w = (eps * Rational(half)).floor();
  long long width = 2 * w + 1;
  return (c.modulus + width - 1) / width;
}

void emit_grid_net(const std::vector<std::vector<Rational>>& axes,
                   CoveringResult* out) {
  __int128 total = 1;
  for (const auto& ax : axes) total *= (__int128)ax.size();
  if (total > kNetEmissionCap) {
    out->net_emitted = false;
    return;
  }
  std::vector<size_t> idx(axes.size(), 0);
  for (__int128 c = 0; c < total; ++c) {
    Point p(axes.size());
    for (size_t i = 0; i < axes.size(); ++i) p[i] = axes[i][idx[i]];
    out->net.push_back(std::move(p));
    for (size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
  }
  out->net_emitted = true;
}

std::vector<Rational> full_axis_centers(const Component& c, const Rational& eps) {
  std::vector<Rational> out;
  if (c.kind == CompKind::circle) {
    long long k = ceil_div(1, eps);
    for (long long i = 0; i < k; ++i)
      out.push_back((eps / Rational(2) + Rational(i) * eps).mod1());
  } else {
    long long half = c.modulus / 2;
    long long w = half == 0 ? 0 : (eps * Rational(half)).floor();
    long long width = 2 * w + 1;
    long long k = (c.modulus + width - 1) / width;
    for (long long i = 0; i < k; ++i) out.push_back(Rational((i * width + w) % c.modulus));
  }
  return out;
}

}  // namespace

CoveringResult covering_number(const Region& r, const Space& sp, const Rational& eps) {
  if (eps <= Rational(0)) throw std::domain_error("covering radius must be positive");
  r.require_on(sp);
  CoveringResult out;

  if (r.kind() == Region::Kind::empty) {
    out.exact = true;
    out.net_emitted = true;
    return out;
  }

  // the whole space has diameter 1, so one ball suffices at radius >= 1
  if (eps >= Rational(1)) {
    out.lower = out.upper = 1;
    out.exact = true;
    out.net_emitted = true;
    Point center(sp.dim(), Rational(0));
    if (r.kind() == Region::Kind::points) center = sp.point_at(r.point_indices()[0]);
    out.net.push_back(center);
    return out;
  }

  const auto& comps = sp.components();

  if (r.kind() == Region::Kind::whole) {
    std::vector<long long> per_dim;
    std::vector<std::vector<Rational>> axes;
    for (const auto& c : comps) {
      per_dim.push_back(full_component_count(c, eps));
      axes.push_back(full_axis_centers(c, eps));
    }
    __int128 prod = 1;
    for (long long k : per_dim) prod *= k;
    if (prod > (__int128)1000000000000000ll)
      throw PrecisionError("covering count overflow");
    out.upper = (long long)prod;
    if (sp.dim() == 1) {
      out.lower = out.upper;
    } else {
      // column argument: every slice through the next component needs a full
      // cover of the previous factor, and each ball meets few slices
      long long L = per_dim[0];
      for (size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].kind == CompKind::circle) {
          // N * eps >= L  =>  N >= ceil(L / eps)
          __int128 num = (__int128)L * eps.den();
          L = (long long)((num + eps.num() - 1) / eps.num());
        } else {
          long long half = comps[i].modulus / 2;
          long long w = half == 0 ? 0 : (eps * Rational(half)).floor();
          long long width = 2 * w + 1;
          __int128 num = (__int128)L * comps[i].modulus;
          L = (long long)((num + width - 1) / width);
        }
      }
      out.lower = std::min(L, out.upper);
    }
    out.exact = out.lower == out.upper;
    emit_grid_net(axes, &out);
    return out;
  }

  if (r.kind() == Region::Kind::arcs) {
    std::vector<Rational> centers;
    out.upper = out.lower = circle_cover(r.segments(), eps, &centers);
    out.exact = true;
    for (const auto& c : centers) out.net.push_back({c});
    out.net_emitted = true;
    return out;
  }

  if (r.kind() == Region::Kind::boxes) {
    const auto& bxs = r.box_list();
    long long upper = 0;
    long long best_box_lower = 0;
    bool net_ok = true;
    for (const auto& b : bxs) {
      std::vector<std::vector<Rational>> axes;
      __int128 prod = 1;
      long long L = 0;
      for (const auto& arc : b) {
        Rational a = arc.a.mod1();
        Rational len = arc.b - arc.a;
        if (len != Rational(1)) len = len.mod1();
        long long k = len == Rational(1) ? ceil_div(1, eps) : segment_count(len, eps);
        prod *= k;
        std::vector<Rational> ax;
        for (long long i = 0; i < k; ++i)
          ax.push_back((a + eps / Rational(2) + Rational(i) * eps).mod1());
        axes.push_back(std::move(ax));
        if (L == 0) {
          L = k;
        } else {
          // column argument within the box: N >= ceil(L * len / eps)
          __int128 num = (__int128)L * len.num() * eps.den();
          __int128 den = (__int128)len.den() * eps.num();
          L = (long long)((num + den - 1) / den);
        }
      }
      if (prod > (__int128)1000000000000000ll)
        throw PrecisionError("covering count overflow");
      upper += (long long)prod;
      best_box_lower = std::max(best_box_lower, L);
      if (net_ok) {
        CoveringResult tmp;
        emit_grid_net(axes, &tmp);
        if (tmp.net_emitted) {
          out.net.insert(out.net.end(), tmp.net.begin(), tmp.net.end());
        } else {
          out.net.clear();
          net_ok = false;
        }
      }
    }
    out.net_emitted = net_ok;
    out.upper = upper;
    if (bxs.size() == 1) {
      out.lower = best_box_lower;
    } else {
      // a single ball can straddle several boxes, so only volume and
      // single-box bounds survive for unions
      long long vol_bound = 0;
      try {
        Rational vol(1);
        for (size_t i = 0; i < bxs[0].size(); ++i) vol = vol * eps;
        Rational mu = r.measure(sp);
        vol_bound = (long long)(((__int128)mu.num() * vol.den() +
                                 (__int128)mu.den() * vol.num() - 1) /
                                ((__int128)mu.den() * vol.num()));
      } catch (const PrecisionError&) {
        vol_bound = 0;  // ball volume underflowed; keep the weaker bound
      }
      out.lower = std::max(best_box_lower, vol_bound);
    }
    out.exact = out.lower == out.upper;
    if ((long long)out.net.size() > kNetEmissionCap) {
      out.net.clear();
      out.net_emitted = false;
    }
    return out;
  }

  // point sets on finite spaces
  const auto& idx = r.point_indices();
  if (sp.dim() == 1) {
    long long m = comps[0].modulus;
    long long half = m / 2;
    if (half == 0) {
      out.lower = out.upper = 1;
      out.exact = true;
      out.net.push_back(sp.point_at(idx[0]));
      out.net_emitted = true;
      return out;
    }
    long long w = (eps * Rational(half)).floor();
    std::vector<long long> centers;
    out.lower = out.upper = cyclic_cover(idx, m, w, &centers);
    out.exact = true;
    for (long long c : centers) out.net.push_back({Rational(c)});
    out.net_emitted = true;
    return out;
  }

  if ((long long)idx.size() > kPointCoverCap)
    throw std::invalid_argument("point set too large for covering search");
  std::vector<Point> pts;
  pts.reserve(idx.size());
  for (long long i : idx) pts.push_back(sp.point_at(i));
  // greedy cover: every uncovered point opens a ball centered on itself
  std::vector<char> covered(pts.size(), 0);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (covered[i]) continue;
    ++out.upper;
    out.net.push_back(pts[i]);
    for (size_t j = i; j < pts.size(); ++j)
      if (!covered[j] && sp.distance(pts[i], pts[j]) <= eps) covered[j] = 1;
  }
  out.net_emitted = true;
  // greedy packing: points pairwise further than 2 eps apart need distinct balls
  Rational sep = rat_min(Rational(2) * eps, Rational(1));
  std::vector<size_t> packed;
  for (size_t i = 0; i < pts.size(); ++i) {
    bool ok = true;
    for (size_t j : packed)
      if (sp.distance(pts[i], pts[j]) <= sep) {
        ok = false;
        break;
      }
    if (ok) packed.push_back(i);
  }
  out.lower = (long long)packed.size();
  out.exact = out.lower == out.upper;
  return out;
}

double box_counting_premeasure(const Region& r, const Space& sp, const ScaleFn& h,
                               const Rational& delta) {
  CoveringResult c = covering_number(r, sp, delta);
  return (double)c.upper * h(rat_min(delta, Rational(1)).value());
}

double hh_upper_estimate(const Region& r, const Space& sp, const ScaleFn& h,
                         const std::vector<Rational>& ladder) {
  if (ladder.empty()) throw std::invalid_argument("empty scale ladder");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : ladder) {
    if (d <= Rational(0) || Rational(1) < d)
      throw std::domain_error("ladder scales must lie in (0, 1]");
    best = std::min(best, box_counting_premeasure(r, sp, h, d));
  }
  return best;
}

}  // namespace recurlab::spaces
