#include "recurlab/corners.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace recurlab::corners {

namespace {

constexpr int kBnbSideCap = 128;  // triple list is ~side^3/3 entries

inline int popcount64(uint64_t w) { return std::popcount(w); }

}  // namespace

GridSubset::GridSubset(int side) : side_(side) {
  if (side < 1) throw std::invalid_argument("grid side must be >= 1");
  words_ = (side + 63) / 64;
  rows_.assign((size_t)side * words_, 0);
}

GridSubset GridSubset::full(int side) {
  GridSubset g(side);
  for (int y = 1; y <= side; ++y)
    for (int x = 1; x <= side; ++x) g.set(x, y);
  return g;
}

bool GridSubset::test(int x, int y) const {
  if (x < 1 || x > side_ || y < 1 || y > side_)
    throw std::domain_error("grid coordinate out of range");
  int c = x - 1;
  return (rows_[(size_t)(y - 1) * words_ + c / 64] >> (c % 64)) & 1u;
}

void GridSubset::set(int x, int y, bool on) {
  if (x < 1 || x > side_ || y < 1 || y > side_)
    throw std::domain_error("grid coordinate out of range");
  int c = x - 1;
  uint64_t& w = rows_[(size_t)(y - 1) * words_ + c / 64];
  if (on)
    w |= (uint64_t)1 << (c % 64);
  else
    w &= ~((uint64_t)1 << (c % 64));
}

long long GridSubset::size() const {
  long long n = 0;
  for (uint64_t w : rows_) n += popcount64(w);
  return n;
}

std::vector<std::pair<int, int>> GridSubset::members() const {
  std::vector<std::pair<int, int>> out;
  for (int y = 1; y <= side_; ++y) {
    const uint64_t* r = row(y);
    for (int w = 0; w < words_; ++w) {
      uint64_t bits = r[w];
      while (bits) {
        int b = std::countr_zero(bits);
        out.emplace_back(w * 64 + b + 1, y);
        bits &= bits - 1;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// word w of (row >> d), rows are little-endian across words
inline uint64_t shifted_word(const uint64_t* row, int words, int w, int d) {
  int q = d / 64, r = d % 64;
  uint64_t lo = (w + q < words) ? row[w + q] : 0;
  uint64_t hi = (r != 0 && w + q + 1 < words) ? row[w + q + 1] : 0;
  return (r == 0) ? lo : (lo >> r) | (hi << (64 - r));
}

}  // namespace

bool contains_corner(const GridSubset& a) {
  int n = a.side(), words = a.words_per_row();
  for (int d = 1; d < n; ++d) {
    for (int m = 1; m + d <= n; ++m) {
      const uint64_t* rm = a.row(m);
      const uint64_t* rmd = a.row(m + d);
      for (int w = 0; w < words; ++w) {
        if (rm[w] & shifted_word(rm, words, w, d) & rmd[w]) return true;
      }
    }
  }
  return false;
}

std::optional<Corner> find_corner(const GridSubset& a) {
  int n = a.side(), words = a.words_per_row();
  std::optional<Corner> best;
  for (int d = 1; d < n; ++d) {
    for (int m = 1; m + d <= n; ++m) {
      const uint64_t* rm = a.row(m);
      const uint64_t* rmd = a.row(m + d);
      for (int w = 0; w < words; ++w) {
        uint64_t hits = rm[w] & shifted_word(rm, words, w, d) & rmd[w];
        if (hits) {
          int k = w * 64 + std::countr_zero(hits) + 1;
          Corner c{k, m, d};
          if (!best || std::tuple(c.k, c.m, c.d) < std::tuple(best->k, best->m, best->d))
            best = c;
          break;  // smallest k for this (m, d)
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// triple systems: shared search machinery for corner-free and AP3-free maxima
// ---------------------------------------------------------------------------

namespace {

struct TripleSystem {
  int n = 0;
  std::vector<std::array<int, 3>> triples;
  std::vector<std::vector<int>> incident;

  void finish() {
    incident.assign(n, {});
    for (int t = 0; t < (int)triples.size(); ++t)
      for (int c : triples[t]) incident[c].push_back(t);
  }
};

TripleSystem corner_system(int side) {
  TripleSystem s;
  s.n = side * side;
  auto cell = [side](int x, int y) { return (y - 1) * side + (x - 1); };
  for (int d = 1; d < side; ++d)
    for (int m = 1; m + d <= side; ++m)
      for (int k = 1; k + d <= side; ++k)
        s.triples.push_back({cell(k, m), cell(k + d, m), cell(k, m + d)});
  s.finish();
  return s;
}

TripleSystem ap3_system(int bound) {
  TripleSystem s;
  s.n = bound;
  for (int d = 1; 2 * d < bound; ++d)
    for (int a = 1; a + 2 * d <= bound; ++a)
      s.triples.push_back({a - 1, a + d - 1, a + 2 * d - 1});
  s.finish();
  return s;
}

enum : int8_t { kFree = 0, kIn = 1, kOut = 2 };

struct BnbState {
  std::vector<int8_t> status;
  std::vector<int8_t> in_cnt, out_cnt;
  int free_cnt = 0;
  long long in_total = 0;
};

struct BnbDriver {
  const TripleSystem& sys;
  long long budget;
  long long nodes = 0;
  long long best = -1;
  std::vector<int8_t> best_set;
  long long open_ub = 0;
  bool aborted = false;

  explicit BnbDriver(const TripleSystem& s, long long b) : sys(s), budget(b) {}

  // Assign cell -> val and run unit propagation; false on conflict.
  bool assign(BnbState& st, int cell, int8_t val) {
    std::vector<int> queue{cell};
    std::vector<int8_t> qval{val};
    size_t head = 0;
    while (head < queue.size()) {
      int c = queue[head];
      int8_t v = qval[head];
      ++head;
      if (st.status[c] == v) continue;
      if (st.status[c] != kFree) return false;  // conflicting forced values
      st.status[c] = v;
      --st.free_cnt;
      if (v == kIn) ++st.in_total;
      for (int t : sys.incident[c]) {
        if (v == kIn) {
          if (++st.in_cnt[t] == 2 && st.out_cnt[t] == 0) {
            // third member must stay out
            for (int o : sys.triples[t])
              if (st.status[o] == kFree) {
                queue.push_back(o);
                qval.push_back(kOut);
              }
          }
          if (st.in_cnt[t] == 3) return false;
        } else {
          ++st.out_cnt[t];
        }
      }
    }
    return true;
  }

  // Greedy feasible solution of the dual of the fractional hitting-set LP
  // over the still-active triples: a family of cell-disjoint constraint
  // edges, each of which forces at least one exclusion.
  long long pack_bound(const BnbState& st, std::vector<int8_t>& used) {
    std::fill(used.begin(), used.end(), 0);
    long long pack = 0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int t = 0; t < (int)sys.triples.size(); ++t) {
        if (st.out_cnt[t] != 0) continue;
        int edge[3], sz = 0;
        bool blocked = false;
        for (int c : sys.triples[t]) {
          if (st.status[c] == kFree) {
            edge[sz++] = c;
            if (used[c]) blocked = true;
          }
        }
        if (sz == 0 || blocked) continue;
        if ((pass == 0) != (sz == 2)) continue;  // tighter 2-edges first
        for (int i = 0; i < sz; ++i) used[edge[i]] = 1;
        ++pack;
      }
    }
    return pack;
  }

  void dfs(BnbState st) {
    std::vector<int8_t> used(sys.n, 0);
    long long ub = st.in_total + st.free_cnt - pack_bound(st, used);
    if (nodes >= budget) {
      aborted = true;
      open_ub = std::max(open_ub, ub);
      return;
    }
    ++nodes;

    if (ub <= best) return;

    // branch cell: free cell hit by the most active triples
    std::vector<int> degree(sys.n, 0);
    bool any_active = false;
    for (int t = 0; t < (int)sys.triples.size(); ++t) {
      if (st.out_cnt[t] != 0) continue;
      bool active = false;
      for (int c : sys.triples[t])
        if (st.status[c] == kFree) active = true;
      if (!active) continue;
      any_active = true;
      for (int c : sys.triples[t])
        if (st.status[c] == kFree) ++degree[c];
    }

    if (!any_active) {
      // every remaining triple already has an excluded member: take the rest
      long long cand = st.in_total + st.free_cnt;
      if (cand > best) {
        best = cand;
        best_set = st.status;
        for (int c = 0; c < sys.n; ++c)
          if (best_set[c] == kFree) best_set[c] = kIn;
      }
      return;
    }

    int cell = -1, bestdeg = -1;
    for (int c = 0; c < sys.n; ++c)
      if (st.status[c] == kFree && degree[c] > bestdeg) {
        bestdeg = degree[c];
        cell = c;
      }

    {
      BnbState child = st;
      if (assign(child, cell, kIn)) dfs(std::move(child));
    }
    {
      BnbState child = std::move(st);
      if (assign(child, cell, kOut)) dfs(std::move(child));
    }
  }

  void run() {
    BnbState st;
    st.status.assign(sys.n, kFree);
    st.in_cnt.assign(sys.triples.size(), 0);
    st.out_cnt.assign(sys.triples.size(), 0);
    st.free_cnt = sys.n;

    // greedy incumbent in cell order, so pruning has something to push against
    BnbState greedy = st;
    for (int c = 0; c < sys.n; ++c) {
      if (greedy.status[c] != kFree) continue;
      BnbState trial = greedy;
      if (assign(trial, c, kIn)) greedy = std::move(trial);
    }
    best = greedy.in_total + greedy.free_cnt;  // free cells are unconstrained leftovers
    best_set = greedy.status;
    for (int c = 0; c < sys.n; ++c)
      if (best_set[c] == kFree) best_set[c] = kIn;

    dfs(std::move(st));
  }

  long long upper() const { return aborted ? std::max(best, open_ub) : best; }
};

}  // namespace

SearchResult max_corner_free_exhaustive(int side) {
  if (side < 1 || side > 5)
    throw std::invalid_argument("exhaustive corner search supports side 1..5 only");
  int cells = side * side;
  std::vector<uint32_t> tmask;
  auto cellbit = [side](int x, int y) { return (uint32_t)1 << ((y - 1) * side + (x - 1)); };
  for (int d = 1; d < side; ++d)
    for (int m = 1; m + d <= side; ++m)
      for (int k = 1; k + d <= side; ++k)
        tmask.push_back(cellbit(k, m) | cellbit(k + d, m) | cellbit(k, m + d));

  SearchResult res{0, GridSubset(side), true, 0, 0};
  for (int k = cells; k >= 1; --k) {
    uint64_t mask = (k == 64) ? ~0ull : (((uint64_t)1 << k) - 1);
    uint64_t limit = (uint64_t)1 << cells;
    while (mask < limit) {
      ++res.nodes;
      bool ok = true;
      for (uint32_t t : tmask)
        if ((mask & t) == t) {
          ok = false;
          break;
        }
      if (ok) {
        res.size = k;
        res.upper_bound = k;
        for (int c = 0; c < cells; ++c)
          if ((mask >> c) & 1) res.witness.set(c % side + 1, c / side + 1);
        return res;
      }
      // Gosper's hack: next mask with the same popcount
      uint64_t c = mask & -mask;
      uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return res;  // side = 0 never reached; grid of size >= 1 always admits one cell
}

namespace {

SearchResult run_bnb(const TripleSystem& sys, int side_or_bound, bool grid, long long budget) {
  BnbDriver drv(sys, budget);
  drv.run();
  int side = grid ? side_or_bound : 0;
  SearchResult res{drv.best, GridSubset(grid ? side : 1), !drv.aborted, drv.upper(), drv.nodes};
  if (grid) {
    for (int c = 0; c < sys.n; ++c)
      if (drv.best_set[c] == kIn) res.witness.set(c % side + 1, c / side + 1);
  }
  return res;
}

}  // namespace

SearchResult max_corner_free_bnb(int side, long long node_budget) {
  if (side < 1) throw std::invalid_argument("grid side must be >= 1");
  if (side > kBnbSideCap)
    throw std::invalid_argument("side too large for the branch-and-bound triple system");
  if (node_budget < 1) node_budget = 1;
  TripleSystem sys = corner_system(side);
  return run_bnb(sys, side, true, node_budget);
}

SearchResult max_corner_free_exact(int side, long long node_budget) {
  if (side >= 1 && side <= 5) return max_corner_free_exhaustive(side);
  return max_corner_free_bnb(side, node_budget);
}

bool has_ap3(const std::vector<int>& members) {
  if (members.empty()) return false;
  int hi = *std::max_element(members.begin(), members.end());
  std::vector<char> in((size_t)hi + 1, 0);
  for (int v : members) {
    if (v < 1) throw std::domain_error("progression scan expects positive members");
    in[v] = 1;
  }
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      long long c = 2ll * members[j] - members[i];
      if (members[j] > members[i] && c <= hi && in[c]) return true;
    }
  return false;
}

ApSearchResult max_ap3_free_exact(int bound, long long node_budget) {
  if (bound < 1) throw std::invalid_argument("interval bound must be >= 1");
  if (node_budget < 1) node_budget = 1;
  TripleSystem sys = ap3_system(bound);
  BnbDriver drv(sys, node_budget);
  drv.run();
  ApSearchResult res;
  res.size = (int)drv.best;
  res.optimal = !drv.aborted;
  res.nodes = drv.nodes;
  res.witness.bound = bound;
  for (int c = 0; c < bound; ++c)
    if (drv.best_set[c] == kIn) res.witness.members.push_back(c + 1);
  return res;
}

ApFreeSet behrend_set(int bound) {
  if (bound < 2) throw std::invalid_argument("digit construction needs bound >= 2");

  std::vector<int> best;
  const long long kEnumCap = 4'000'000;

  for (int d = 2; d <= 51; ++d) {
    long long q = 2ll * d - 1;  // base; digit sums of two members never carry
    // number of digit positions needed to reach bound-1
    int levels = 1;
    {
      long long p = q;
      while (p <= bound - 1 && levels < 40) {
        p *= q;
        ++levels;
      }
    }
    // enumeration cost is d^levels vectors
    double cost = std::pow((double)d, (double)levels);
    if (cost > (double)kEnumCap) continue;

    std::vector<long long> pw(levels, 1);
    for (int i = 1; i < levels; ++i) pw[i] = pw[i - 1] * q;

    std::map<long long, std::vector<int>> shells;  // digit norm -> values
    std::vector<int> digits(levels, 0);
    while (true) {
      long long val = 0, norm = 0;
      for (int i = 0; i < levels; ++i) {
        val += digits[i] * pw[i];
        norm += (long long)digits[i] * digits[i];
      }
      if (val <= bound - 1) shells[d == 2 ? 0 : norm].push_back((int)val + 1);
      // odometer step
      int i = 0;
      while (i < levels) {
        if (++digits[i] < d) break;
        digits[i] = 0;
        ++i;
      }
      if (i == levels) break;
    }
    for (auto& [norm, vals] : shells) {
      (void)norm;
      if (vals.size() > best.size()) best = vals;
    }
  }

  std::sort(best.begin(), best.end());
  ApFreeSet out{bound, best};
  if (has_ap3(out.members))
    throw std::logic_error("digit construction produced a progression; construction bug");
  return out;
}

GridSubset lift_ap3_to_corner_free(const ApFreeSet& b, int side) {
  if (side < 1) throw std::invalid_argument("grid side must be >= 1");
  std::vector<char> in((size_t)3 * side + 1, 0);
  for (int v : b.members) {
    if (v < 1 || v > 3 * side)
      throw std::invalid_argument("lift input must lie inside [1, 3*side]");
    in[v] = 1;
  }
  GridSubset a(side);
  for (int y = 1; y <= side; ++y)
    for (int x = 1; x <= side; ++x)
      if (in[x + 2 * y]) a.set(x, y);
  if (contains_corner(a))
    throw std::logic_error("lifted set contains a corner; lift bug");
  return a;
}

int log_star(unsigned long long n) {
  if (n < 1) throw std::domain_error("log_star needs n >= 1");
  int k = 0;
  double v = std::log((double)n);
  while (v >= 2.0) {
    ++k;
    v = std::log(v);
  }
  return k;
}

double vu_upper_bound_raw(int log_star_value) {
  if (log_star_value < 1) throw std::domain_error("raw bound needs log_star >= 1");
  return 100.0 * std::pow((double)log_star_value, -0.25);
}

std::optional<double> vu_upper_bound(unsigned long long n) {
  int k = log_star(n);
  if (k == 0) return std::nullopt;
  return std::min(1.0, vu_upper_bound_raw(k));
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::branch_and_bound: return "branch-and-bound";
    case Provenance::behrend_lift: return "behrend-lift";
    case Provenance::vu_bound: return "vu-bound";
    case Provenance::trivial: return "trivial";
  }
  return "unknown";
}

long long default_node_budget(long long t) {
  // keep node_count * triple_count roughly constant
  long long triples = std::max<long long>(1, t * t * t / 3);
  long long b = 60'000'000 / triples;
  return std::clamp<long long>(b, 500, 2'000'000);
}

namespace {

long long exact_small_max(int side) {
  static long long cache[6] = {-1, -1, -1, -1, -1, -1};
  if (cache[side] < 0) cache[side] = max_corner_free_exhaustive(side).size;
  return cache[side];
}

}  // namespace

DensityCertificate certified_L(long long t, CertMode mode, long long node_budget) {
  if (t < 1) throw std::invalid_argument("certificate side must be >= 1");
  if (t <= 5) {
    long long f = exact_small_max((int)t);
    Rational v(f, t * t);
    return {t, v, v, Provenance::exact};
  }

  if (node_budget < 0) node_budget = default_node_budget(t);

  bool searched = false;
  SearchResult sr;
  if (t <= kBnbSideCap && node_budget > 0) {
    sr = max_corner_free_bnb((int)t, node_budget);
    searched = true;
    if (sr.optimal) {
      Rational v(sr.size, t * t);
      return {t, v, v, Provenance::exact};
    }
  }
  if (mode == CertMode::exact_required)
    throw CertificateError("no optimality certificate at side " + std::to_string(t) +
                           " within the node budget");

  long long lift_size = 0;
  if (t <= 5000) {
    GridSubset lifted = lift_ap3_to_corner_free(behrend_set((int)(3 * t)), (int)t);
    lift_size = lifted.size();
  }
  long long lower_count = std::max<long long>({searched ? sr.size : 0, lift_size, 1});
  bool lower_from_lift = lift_size >= (searched ? sr.size : 0) && lift_size >= 1;

  Rational upper(1);
  Provenance prov = Provenance::trivial;
  if (searched && Rational(sr.upper_bound, t * t) < upper) {
    upper = Rational(sr.upper_bound, t * t);
    prov = Provenance::branch_and_bound;
  }
  if (auto vu = vu_upper_bound((unsigned long long)t)) {
    // round up at 1e-9 resolution so the rational stays a valid upper bound
    Rational vu_rat((long long)std::ceil(*vu * 1e9), 1'000'000'000);
    if (vu_rat < upper) {
      upper = vu_rat;
      prov = Provenance::vu_bound;
    }
  }
  if (prov == Provenance::trivial && lower_from_lift) prov = Provenance::behrend_lift;

  return {t, Rational(lower_count, t * t), upper, prov};
}

}  // namespace recurlab::corners
