#include "recurlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace recurlab::verify {
namespace {

using dynamics::CommutingPair;
using dynamics::Map;
using spaces::Point;
using spaces::Region;
using spaces::Space;

constexpr double kOrbitErrorBudget = 1e-9;
constexpr long long kEnumCap = 2000000;

void require_orbit_precision(const Map& map, long long steps) {
  if (map.step_error_bound() * (double)steps > kOrbitErrorBudget)
    throw PrecisionError(
        "angle truncation too coarse for this horizon; deepen the expansion");
}

}  // namespace

std::vector<long long> region_indices(const Region& r, const Space& sp) {
  r.require_on(sp);
  switch (r.kind()) {
    case Region::Kind::empty:
      return {};
    case Region::Kind::points:
      return r.point_indices();
    case Region::Kind::whole: {
      long long card = sp.cardinality();
      if (card > kEnumCap) throw std::invalid_argument("space too large to enumerate");
      std::vector<long long> all((size_t)card);
      for (long long i = 0; i < card; ++i) all[(size_t)i] = i;
      return all;
    }
    default:
      throw std::invalid_argument("region has no exact finite enumeration");
  }
}

std::vector<long long> sampling_dens(const Map& map) {
  switch (map.kind()) {
    case Map::Kind::rotation:
      return {1ll << 20};
    case Map::Kind::doubling:
      return {1594323};  // 3^13: odd, so repeated doubling never collapses it
    case Map::Kind::cat:
      return {1ll << 20, 1ll << 20};
    case Map::Kind::shift:
      return {0};
    case Map::Kind::product: {
      std::vector<long long> dens;
      for (const auto& f : map.factors()) {
        auto sub = sampling_dens(f);
        dens.insert(dens.end(), sub.begin(), sub.end());
      }
      return dens;
    }
  }
  return {};
}

namespace {

// uniform rational in [0, 1): r/den, or systematic-stratified
// (s + r/den)/count with one stratum per sample index.  Tying the stratum
// count to the sample count keeps every stratum weight identical, so the
// estimator stays unbiased for any sample count.
Rational unit_sample(Rng& rng, McPolicy::Sampling mode, long long sample_index,
                     long long count, long long den) {
  long long r = rng.below(den);
  if (mode == McPolicy::Sampling::stratified) {
    long long s = sample_index % count;
    return Rational::from128((__int128)s * den + r, (__int128)count * den);
  }
  return Rational(r, den);
}

}  // namespace

Point sample_point(const Region& r, const Space& sp, Rng& rng, McPolicy::Sampling mode,
                   long long sample_index, long long sample_count,
                   const std::vector<long long>& dens) {
  if (sample_count < 1) throw std::invalid_argument("sample count must be positive");
  r.require_on(sp);
  const auto& comps = sp.components();
  if ((size_t)sp.dim() > dens.size() && r.kind() != Region::Kind::points)
    throw std::invalid_argument("missing sampling denominators");

  switch (r.kind()) {
    case Region::Kind::empty:
      throw std::invalid_argument("cannot sample the empty region");
    case Region::Kind::whole: {
      Point p((size_t)sp.dim());
      for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].kind == spaces::CompKind::cyclic) {
          p[i] = Rational(rng.below(comps[i].modulus));
        } else {
          if (dens[i] <= 0) throw std::invalid_argument("bad sampling denominator");
          p[i] = i == 0 ? unit_sample(rng, mode, sample_index, sample_count, dens[i])
                        : Rational(rng.below(dens[i]), dens[i]);
        }
      }
      return p;
    }
    case Region::Kind::arcs: {
      const auto& segs = r.segments();
      Rational total(0);
      for (const auto& [s, e] : segs) total = total + (e - s);
      Rational u = unit_sample(rng, mode, sample_index, sample_count, dens[0]) * total;
      for (const auto& [s, e] : segs) {
        Rational len = e - s;
        if (u < len) return {s + u};
        u = u - len;
      }
      return {segs.back().second - Rational(1, dens[0])};  // unreachable guard
    }
    case Region::Kind::boxes: {
      const auto& bxs = r.box_list();
      std::vector<Rational> vols;
      Rational total(0);
      for (const auto& b : bxs) {
        Rational vol(1);
        for (const auto& arc : b) {
          Rational len = arc.b - arc.a;
          if (len != Rational(1)) len = len.mod1();
          vol = vol * len;
        }
        vols.push_back(vol);
        total = total + vol;
      }
      Rational u = unit_sample(rng, mode, sample_index, sample_count, dens[0]) * total;
      size_t pick = bxs.size() - 1;
      for (size_t i = 0; i < vols.size(); ++i) {
        if (u < vols[i]) {
          pick = i;
          break;
        }
        u = u - vols[i];
      }
      Point p((size_t)sp.dim());
      for (size_t i = 0; i < bxs[pick].size(); ++i) {
        const auto& arc = bxs[pick][i];
        Rational a = arc.a.mod1();
        Rational len = arc.b - arc.a;
        if (len != Rational(1)) len = len.mod1();
        if (dens[i] <= 0) throw std::invalid_argument("bad sampling denominator");
        p[i] = (a + len * Rational(rng.below(dens[i]), dens[i])).mod1();
      }
      return p;
    }
    case Region::Kind::points: {
      const auto& idx = r.point_indices();
      return sp.point_at(idx[(size_t)rng.below((long long)idx.size())]);
    }
  }
  throw std::logic_error("unhandled region kind");
}

bool NonReturningSet::member(long long idx) const {
  if (!exact) throw std::logic_error("membership requires the exact representation");
  return std::binary_search(members.begin(), members.end(), idx);
}

namespace {

// exact enumeration of the non-returning subset on a finite space;
// survive(x) must say whether x stays out of Y at every step 1..t
template <typename SurviveFn>
NonReturningSet finite_non_returning(const Region& y, const Space& sp, long long t,
                                     SurviveFn survive) {
  NonReturningSet out;
  out.t = t;
  out.exact = true;
  for (long long idx : region_indices(y, sp)) {
    Point x = sp.point_at(idx);
    if (survive(x)) out.members.push_back(idx);
  }
  out.measure_exact = Rational((long long)out.members.size(), sp.cardinality());
  return out;
}

template <typename IndicatorFn>
NonReturningSet sampled_non_returning(long long t, const McPolicy& pol,
                                      IndicatorFn indicator) {
  NonReturningSet out;
  out.t = t;
  out.exact = false;
  out.samples = pol.samples;
  out.seed = pol.seed;
  out.estimate = mc_mean(pol.samples, pol.seed, pol.workers, indicator);
  out.ci99 = hoeffding99(pol.samples);
  return out;
}

}  // namespace

NonReturningSet non_returning_single(const Region& y, const Map& map, long long t,
                                     const McPolicy& pol) {
  if (t < 1) throw std::invalid_argument("horizon must be at least 1");
  const Space& sp = map.space();
  y.require_on(sp);
  require_orbit_precision(map, t);

  if (sp.finite()) {
    return finite_non_returning(y, sp, t, [&](const Point& x) {
      Point z = x;
      for (long long i = 1; i <= t; ++i) {
        z = map.apply(z);
        if (y.contains(sp, z)) return false;
      }
      return true;
    });
  }

  std::vector<long long> dens = sampling_dens(map);
  Region whole = Region::whole();
  NonReturningSet out = sampled_non_returning(t, pol, [&](Rng& rng, long long i) {
    Point x = sample_point(whole, sp, rng, pol.sampling, i, pol.samples, dens);
    if (!y.contains(sp, x)) return 0.0;
    Point z = x;
    for (long long k = 1; k <= t; ++k) {
      z = map.apply(z);
      if (y.contains(sp, z)) return 0.0;
    }
    return 1.0;
  });
  return out;
}

NonReturningSet non_returning_pair(const Region& y, const CommutingPair& pair,
                                   long long t, const McPolicy& pol) {
  if (t < 1) throw std::invalid_argument("horizon must be at least 1");
  const Space& sp = pair.space();
  y.require_on(sp);
  require_orbit_precision(pair.S(), t);
  require_orbit_precision(pair.R(), t);

  auto survive_from = [&](const Point& x) {
    Point zs = x, zr = x;
    for (long long i = 1; i <= t; ++i) {
      zs = pair.S().apply(zs);
      zr = pair.R().apply(zr);
      if (y.contains(sp, zs) && y.contains(sp, zr)) return false;
    }
    return true;
  };

  if (sp.finite()) {
    NonReturningSet out = finite_non_returning(y, sp, t, survive_from);
    out.pair_variant = true;
    return out;
  }

  std::vector<long long> dens = sampling_dens(pair.S());
  Region whole = Region::whole();
  NonReturningSet out = sampled_non_returning(t, pol, [&](Rng& rng, long long i) {
    Point x = sample_point(whole, sp, rng, pol.sampling, i, pol.samples, dens);
    if (!y.contains(sp, x)) return 0.0;
    return survive_from(x) ? 1.0 : 0.0;
  });
  out.pair_variant = true;
  return out;
}

NonReturningSet assume_non_returning(const Region& y, const Space& sp, long long t) {
  if (t < 1) throw std::invalid_argument("horizon must be at least 1");
  NonReturningSet out;
  out.t = t;
  out.exact = true;
  out.members = region_indices(y, sp);
  out.measure_exact = Rational((long long)out.members.size(), sp.cardinality());
  return out;
}

Report check_lemma_l_add(const Region& y, const Map& map, long long t,
                         const McPolicy& pol) {
  NonReturningSet nr = non_returning_single(y, map, t, pol);
  Report rep;
  rep.check = "lemma-l-add";
  Rational bound(1, t);
  rep.bound = bound.value();
  rep.statistic = nr.measure_value();
  if (nr.exact) {
    rep.pass = !(bound < nr.measure_exact);
  } else {
    rep.margin = nr.ci99;
    rep.samples = nr.samples;
    rep.seed = nr.seed;
    rep.pass = nr.estimate - nr.ci99 <= rep.bound;
  }
  return rep;
}

Report check_lemma_ll(const Region& y, const CommutingPair& pair, long long t,
                      const corners::DensityCertificate& cert, const McPolicy& pol) {
  if (cert.t != t)
    throw std::invalid_argument("density certificate side does not match the horizon");
  NonReturningSet nr = non_returning_pair(y, pair, t, pol);
  Report rep;
  rep.check = "lemma-ll";
  rep.bound = cert.upper.value();
  rep.statistic = nr.measure_value();
  rep.certificate_provenance = corners::provenance_name(cert.provenance) + ":upper";
  if (nr.exact) {
    rep.pass = !(cert.upper < nr.measure_exact);
  } else {
    rep.margin = nr.ci99;
    rep.samples = nr.samples;
    rep.seed = nr.seed;
    rep.pass = nr.estimate - nr.ci99 <= rep.bound;
  }
  return rep;
}

ReturnIndexSet return_index_set(const Point& x, const NonReturningSet& yt,
                                const CommutingPair& pair) {
  if (!yt.exact)
    throw std::invalid_argument("return-index sets need an exact non-returning set");
  const Space& sp = pair.space();
  sp.validate_point(x);
  long long t = yt.t;
  if (t > 4096) throw std::invalid_argument("horizon too large for the index grid");
  ReturnIndexSet out;
  out.x = x;
  out.t = t;
  out.indices = corners::GridSubset((int)t);
  Point xs = x;
  for (long long k1 = 1; k1 <= t; ++k1) {
    xs = pair.S().apply(xs);
    Point z = xs;
    for (long long k2 = 1; k2 <= t; ++k2) {
      z = pair.R().apply(z);
      if (yt.member(sp.index_of(z))) {
        out.indices.set((int)k1, (int)k2);
        ++out.size;
      }
    }
  }
  return out;
}

std::optional<CornerExtraction> corner_extraction_demo(const ReturnIndexSet& ax,
                                                       const NonReturningSet& yt,
                                                       const CommutingPair& pair) {
  long long t = ax.t;
  corners::DensityCertificate cert =
      corners::certified_L(t, corners::CertMode::exact_required);
  // |A(x)| > t^2 L(t) forces a corner inside A(x)
  if (!(Rational(t) * Rational(t) * cert.lower < Rational(ax.size))) return std::nullopt;
  std::optional<corners::Corner> c = corners::find_corner(ax.indices);
  if (!c)
    throw std::logic_error("density above the extremal threshold but no corner found");
  const Space& sp = pair.space();
  CornerExtraction ex;
  ex.corner = *c;
  auto compose = [&](long long k1, long long k2) {
    return pair.R().iterate(pair.S().iterate(ax.x, k1), k2);
  };
  ex.u1 = compose(c->k, c->m);
  ex.u2 = compose(c->k + c->d, c->m);
  ex.u3 = compose(c->k, c->m + c->d);
  ex.relations_verified = pair.S().iterate(ex.u1, c->d) == ex.u2 &&
                          pair.R().iterate(ex.u1, c->d) == ex.u3;
  ex.contradiction_confirmed = c->d >= 1 && c->d <= t &&
                               yt.member(sp.index_of(ex.u1)) &&
                               yt.member(sp.index_of(ex.u2)) &&
                               yt.member(sp.index_of(ex.u3));
  return ex;
}

Report check_union_multiplicity(const Space& sp, const std::vector<Region>& family,
                                long long l) {
  if (l < 1) throw std::invalid_argument("multiplicity bound must be positive");
  long long card = sp.cardinality();
  if (card > kEnumCap) throw std::invalid_argument("space too large to enumerate");
  std::vector<long long> mult((size_t)card, 0);
  long long sum_sizes = 0;
  for (const auto& r : family)
    for (long long idx : region_indices(r, sp)) {
      ++mult[(size_t)idx];
      ++sum_sizes;
    }
  long long union_count = 0, max_mult = 0;
  for (long long m : mult) {
    if (m > 0) ++union_count;
    max_mult = std::max(max_mult, m);
  }
  Report rep;
  bool hypothesis_ok = max_mult <= l;
  rep.check = hypothesis_ok ? "union-multiplicity" : "union-multiplicity[hypothesis-fail]";
  rep.statistic = (double)sum_sizes / ((double)l * (double)card);
  rep.bound = (double)union_count / (double)card;
  // conclusion checked in integers: l * |union| >= sum of sizes
  rep.pass = hypothesis_ok ? l * union_count >= sum_sizes : true;
  return rep;
}

// ---------------------------------------------------------------------------
// integral right-hand sides

namespace {

struct CoverGrid {
  std::vector<Rational> bounds;   // cell boundaries, ascending, last = 1
  std::vector<long long> counts;  // counts[i] valid on [bounds[i], bounds[i+1])
  bool exact = true;
  std::string note;
};

void insert_breaks(std::set<Rational>* cands, const Rational& len, long long grid) {
  // scales len/k down to the grid floor 1/grid
  long long kmax = (Rational((long long)grid) * len).ceil();
  for (long long k = 1; k <= kmax; ++k) {
    Rational e = len / Rational(k);
    if (!(e < Rational(1, grid)) && !(Rational(1) < e)) cands->insert(e);
  }
}

CoverGrid build_cover_grid(const Region& r, const Space& sp, int grid) {
  CoverGrid out;
  std::set<Rational> cands;
  cands.insert(Rational(1));

  if (sp.finite()) {
    // counts only change where floor(eps * half) jumps for some component,
    // so the breakpoint list below is complete and no uniform grid is needed
    long long half_max = 0;
    for (const auto& c : sp.components()) {
      long long half = c.modulus / 2;
      half_max = std::max(half_max, half);
      for (long long j = 1; j <= half; ++j) cands.insert(Rational(j, half));
    }
    std::vector<Rational> bounds(cands.begin(), cands.end());
    if (half_max > 0) bounds.insert(bounds.begin(), Rational(0));
    out.bounds = bounds;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
      Rational rep = bounds[i].is_zero()
                         ? bounds[i + 1] / Rational(2)
                         : bounds[i];
      spaces::CoveringResult cr = covering_number(r, sp, rep);
      out.counts.push_back(cr.upper);
      out.exact = out.exact && cr.exact;
    }
    if (out.bounds.size() < 2) {  // one-point space: counts constant
      out.bounds = {Rational(0), Rational(1)};
      spaces::CoveringResult cr = covering_number(r, sp, Rational(1, 2));
      out.counts = {cr.upper};
      out.exact = cr.exact;
    }
    out.note = "complete breakpoint grid";
    return out;
  }

  for (long long i = 1; i <= grid; ++i) cands.insert(Rational(i, (long long)grid));
  switch (r.kind()) {
    case Region::Kind::whole:
      insert_breaks(&cands, Rational(1), grid);
      break;
    case Region::Kind::arcs:
      for (const auto& [s, e] : r.segments()) insert_breaks(&cands, e - s, grid);
      break;
    case Region::Kind::boxes:
      for (const auto& b : r.box_list())
        for (const auto& arc : b) {
          Rational len = arc.b - arc.a;
          if (len != Rational(1)) len = len.mod1();
          insert_breaks(&cands, len, grid);
        }
      break;
    default:
      break;
  }
  out.bounds.assign(cands.begin(), cands.end());
  for (size_t i = 0; i + 1 < out.bounds.size(); ++i) {
    spaces::CoveringResult cr = covering_number(r, sp, out.bounds[i]);
    out.counts.push_back(cr.upper);
  }
  out.exact = false;  // left-endpoint counts overestimate inside each cell
  std::ostringstream os;
  os << "one-sided: candidate resolution 1/" << grid
     << ", counts held at cell left endpoints";
  out.note = os.str();
  return out;
}

// shared engine: inf over candidate t of g(t) mu + sum_{cells >= t} w_i dg_i
// with cell weight w_i = min(mu, scale * count_i)
RhsResult rhs_engine(const Region& a, const Space& sp, const ScaleFn& g, long long n,
                     const Rational& scale, const RhsOptions& opt,
                     const std::string& missing_exact_note) {
  a.require_on(sp);
  if (n < 1) throw std::invalid_argument("horizon must be at least 1");
  RhsResult out;
  if (a.kind() == Region::Kind::empty) {
    out.exact = true;
    out.exact_value = Rational(0);
    out.argmin_t = Rational(1);
    out.note = "empty region";
    return out;
  }
  CoverGrid cg = build_cover_grid(a, sp, opt.grid);
  Rational mu = a.measure(sp);
  bool exact_mode = cg.exact && g.exact();
  out.note = cg.note;
  if (!exact_mode && !missing_exact_note.empty() && cg.exact)
    out.note += "; " + missing_exact_note;

  size_t m = cg.counts.size();
  if (exact_mode) {
    Rational suffix(0);
    Rational best;
    bool have = false;
    // walk candidates right to left, extending the integral as we go
    for (size_t j = m + 1; j-- > 0;) {
      if (j < m) {
        Rational w = rat_min(mu, scale * Rational(cg.counts[j]));
        suffix = suffix + w * (g.at(cg.bounds[j + 1]) - g.at(cg.bounds[j]));
      }
      Rational obj = g.at(cg.bounds[j]) * mu + suffix;
      if (!have || obj < best) {
        have = true;
        best = obj;
        out.argmin_t = cg.bounds[j];
      }
    }
    out.exact = true;
    out.exact_value = best;
    out.value = best.value();
    return out;
  }

  double mu_d = mu.value();
  double scale_d = scale.value();
  double suffix = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t j = m + 1; j-- > 0;) {
    if (j < m) {
      double w = std::min(mu_d, scale_d * (double)cg.counts[j]);
      suffix += w * (g(cg.bounds[j + 1].value()) - g(cg.bounds[j].value()));
    }
    double obj = g(cg.bounds[j].value()) * mu_d + suffix;
    if (obj < best) {
      best = obj;
      out.argmin_t = cg.bounds[j];
    }
  }
  out.value = best;
  return out;
}

}  // namespace

RhsResult rhs_bound_x2(const Region& a, const Space& sp, const ScaleFn& g, long long n,
                       const RhsOptions& opt) {
  return rhs_engine(a, sp, g, n, Rational(1, n), opt,
                    "scale function not exactly evaluable");
}

RhsResult rhs_bound_x4(const Region& a, const Space& sp, const ScaleFn& g, long long n,
                       const corners::DensityCertificate& cert, const RhsOptions& opt) {
  if (cert.t != n)
    throw std::invalid_argument("density certificate side does not match the horizon");
  return rhs_engine(a, sp, g, n, cert.upper, opt,
                    "scale function not exactly evaluable");
}

// ---------------------------------------------------------------------------
// theorem checks

namespace {

template <typename RecurFn>
Report theorem_check(const std::string& name, const Region& a, const Space& sp,
                     const ScaleFn& g, const RhsResult& rhs, const McPolicy& pol,
                     const std::vector<long long>& dens, RecurFn recur_value) {
  Report rep;
  rep.check = name;
  rep.bound = rhs.value;

  if (a.kind() == Region::Kind::empty) {
    rep.statistic = 0;
    rep.pass = true;
    return rep;
  }

  if (sp.finite()) {
    long long card = sp.cardinality();
    if (g.exact() && rhs.exact) {
      Rational lhs(0);
      for (long long idx : region_indices(a, sp))
        lhs = lhs + g.at(recur_value(sp.point_at(idx)));
      lhs = lhs / Rational(card);
      rep.statistic = lhs.value();
      rep.pass = !(rhs.exact_value < lhs);
    } else {
      double lhs = 0;
      for (long long idx : region_indices(a, sp))
        lhs += g(recur_value(sp.point_at(idx)).value());
      lhs /= (double)card;
      rep.statistic = lhs;
      rep.margin = 1e-12;
      rep.pass = lhs <= rhs.value + rep.margin;
    }
    return rep;
  }

  // torus path: mean of g(recurrence) over A, scaled by mu(A)
  Rational mu = a.measure(sp);
  double mean = mc_mean(pol.samples, pol.seed, pol.workers, [&](Rng& rng, long long i) {
    Point x = sample_point(a, sp, rng, pol.sampling, i, pol.samples, dens);
    return g(recur_value(x).value());
  });
  rep.statistic = mu.value() * mean;
  rep.margin = mu.value() * hoeffding99(pol.samples, g(1.0));
  rep.samples = pol.samples;
  rep.seed = pol.seed;
  rep.pass = rep.statistic - rep.margin <= rhs.value;
  return rep;
}

}  // namespace

Report check_theorem_x2(const Region& a, const Map& map, const ScaleFn& g, long long n,
                        const McPolicy& pol, const RhsOptions& opt) {
  const Space& sp = map.space();
  a.require_on(sp);
  require_orbit_precision(map, n);
  RhsResult rhs = rhs_bound_x2(a, sp, g, n, opt);
  return theorem_check("thm-x2", a, sp, g, rhs, pol, sampling_dens(map),
                       [&](const Point& x) {
                         return dynamics::recurrence_constant(map, x, n).value;
                       });
}

Report check_theorem_x4(const Region& a, const CommutingPair& pair, const ScaleFn& g,
                        long long n, const corners::DensityCertificate& cert,
                        const McPolicy& pol, const RhsOptions& opt) {
  const Space& sp = pair.space();
  a.require_on(sp);
  require_orbit_precision(pair.S(), n);
  require_orbit_precision(pair.R(), n);
  RhsResult rhs = rhs_bound_x4(a, sp, g, n, cert, opt);
  Report rep =
      theorem_check("thm-x4", a, sp, g, rhs, pol, sampling_dens(pair.S()),
                    [&](const Point& x) {
                      return dynamics::simultaneous_recurrence(pair, x, n).value;
                    });
  rep.certificate_provenance = corners::provenance_name(cert.provenance) + ":upper";
  return rep;
}

Report diagnostic_x1_x3(const std::string& check,
                        const std::vector<double>& truncated_integrals,
                        double hh_estimate) {
  if (truncated_integrals.empty())
    throw std::invalid_argument("diagnostic needs at least one profile integral");
  Report rep;
  rep.check = check;
  rep.statistic = *std::min_element(truncated_integrals.begin(),
                                    truncated_integrals.end());
  rep.bound = hh_estimate;
  // informational: flagged only when every ladder entry exceeds the estimate
  rep.pass = rep.statistic <= hh_estimate;
  return rep;
}

}  // namespace recurlab::verify
