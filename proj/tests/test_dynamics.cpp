#include "doctest.h"
#include "recurlab/dynamics.hpp"
#include "recurlab/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

using namespace recurlab;
using namespace recurlab::dynamics;
using recurlab::spaces::Point;
using recurlab::spaces::Space;

TEST_SUITE("dynamics") {

TEST_CASE("map application on each kind") {
  Map rot = Map::rotation(RotationAngle::exact(Rational(1, 4)));
  CHECK(rot.apply({Rational(7, 8)}) == Point{Rational(1, 8)});
  CHECK(rot.iterate({Rational(0)}, 3) == Point{Rational(3, 4)});

  Map shift = Map::cyclic_shift(10, 3);
  CHECK(shift.apply({Rational(9)}) == Point{Rational(2)});
  CHECK(shift.iterate({Rational(0)}, 7) == Point{Rational(1)});

  Map dbl = Map::doubling();
  CHECK(dbl.apply({Rational(3, 8)}) == Point{Rational(3, 4)});
  CHECK(dbl.apply({Rational(3, 4)}) == Point{Rational(1, 2)});

  Map cat = Map::cat();
  CHECK(cat.apply({Rational(1, 4), Rational(1, 3)}) ==
        Point{Rational(5, 6), Rational(7, 12)});

  Map prod = Map::product({rot, shift});
  CHECK(prod.apply({Rational(0), Rational(9)}) == Point{Rational(1, 4), Rational(2)});
  CHECK(prod.space().dim() == 2);
}

TEST_CASE("iterate matches repeated application") {
  Rng rng(5);
  Map maps[] = {Map::rotation(RotationAngle::exact(Rational(3, 7))), Map::cyclic_shift(12, 5),
                Map::doubling(), Map::cat()};
  for (const Map& m : maps) {
    Point x;
    for (const auto& c : m.space().components())
      x.push_back(c.kind == spaces::CompKind::circle ? Rational(rng.below(32), 32)
                                                     : Rational(rng.below(c.modulus)));
    Point direct = x;
    for (int n = 1; n <= 9; ++n) {
      direct = m.apply(direct);
      CHECK(m.iterate(x, n) == direct);
    }
  }
}

TEST_CASE("finite maps act bijectively") {
  for (auto [m, a] : {std::pair<long long, long long>{12, 5}, {9, 3}, {7, 0}}) {
    Map shift = Map::cyclic_shift(m, a);
    std::set<long long> image;
    for (long long i = 0; i < m; ++i)
      image.insert(shift.apply({Rational(i)})[0].num());
    CHECK((long long)image.size() == m);
  }
}

TEST_CASE("doubling keeps odd denominators intact") {
  Map dbl = Map::doubling();
  long long den = 1594323;  // 3^13
  Point x = {Rational(2, den)};
  for (int n = 1; n <= 40; ++n) {
    x = dbl.apply(x);
    CHECK(x[0].den() == den);
  }
  std::set<long long> seen;
  Point y = {Rational(1, 7)};
  for (int n = 0; n < 3; ++n) {
    seen.insert(y[0].num());
    y = dbl.apply(y);
  }
  CHECK(y == Point{Rational(1, 7)});  // 2^3 = 8 = 1 mod 7
  CHECK(seen.size() == 3);
}

TEST_CASE("closest returns for rational rotations, brute force comparison") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    long long q = 2 + rng.below(400);
    long long p = 1 + rng.below(q - 1);
    RotationAngle alpha = RotationAngle::exact(Rational(p, q));
    Map rot = Map::rotation(alpha);
    long long N = 1 + rng.below(200);
    Point x = {Rational(rng.below(16), 16)};
    auto dist = orbit_distances(rot, x, N);
    Rational best = dist[0];
    long long arg = 1;
    for (long long n = 2; n <= N; ++n)
      if (dist[n - 1] < best) {
        best = dist[n - 1];
        arg = n;
      }
    auto rc = recurrence_constant(rot, x, N);
    CHECK(rc.value == best);
    CHECK(rc.argmin == arg);
    // the return profile of a rotation does not depend on the base point
    auto rc0 = recurrence_constant(rot, {Rational(0)}, N);
    CHECK(rc0.value == rc.value);
    // continued-fraction oracle: closest return = twice the classical norm
    auto oracle = rotation_oracle(alpha, N);
    CHECK(rc.value == Rational(2) * oracle.min_norm);
    CHECK(rc.argmin == oracle.argmin);
  }
}

TEST_CASE("oracle denominators are the best-approximation ladder") {
  auto g = RotationAngle::golden(1ll << 20);
  auto oracle = rotation_oracle(g, 100);
  std::vector<long long> fib = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  CHECK(oracle.denominators == fib);
  CHECK(oracle.argmin == 89);
  auto oracle1000 = rotation_oracle(g, 1000);
  CHECK(oracle1000.argmin == 987);
  // at N = 100 the closest return is ||89 alpha|| with alpha = F29/F30
  auto rc = recurrence_constant(Map::rotation(g), {Rational(0)}, 100);
  CHECK(rc.value == Rational(4181, 416020));
  CHECK(rc.value == Rational(2) * oracle.min_norm);
}

TEST_CASE("identity and periodic rotations return exactly") {
  CHECK(recurrence_constant(Map::identity(), {Rational(1, 3)}, 5).value == Rational(0));
  auto rc = recurrence_constant(Map::rotation(RotationAngle::exact(Rational(1, 3))),
                                {Rational(0)}, 3);
  CHECK(rc.value == Rational(0));
  CHECK(rc.argmin == 3);
  auto rc2 = recurrence_constant(Map::rotation(RotationAngle::exact(Rational(1, 3))),
                                 {Rational(0)}, 2);
  CHECK(rc2.value > Rational(0));
}

TEST_CASE("commuting pair construction accepts translations and rejects mixtures") {
  Map a = Map::rotation(RotationAngle::exact(Rational(1, 4)));
  Map b = Map::rotation(RotationAngle::exact(Rational(1, 6)));
  CHECK_NOTHROW(CommutingPair(a, b));
  CHECK_NOTHROW(CommutingPair(Map::doubling(), Map::doubling()));
  CHECK_NOTHROW(CommutingPair(Map::doubling(), Map::identity()));
  CHECK_THROWS_AS(CommutingPair(a, Map::doubling()), std::invalid_argument);
  CHECK_THROWS_AS(CommutingPair(Map::cyclic_shift(10, 1), Map::cyclic_shift(12, 1)),
                  std::invalid_argument);  // different spaces
  CHECK_NOTHROW(CommutingPair(Map::cyclic_shift(10, 1), Map::cyclic_shift(10, 7)));
}

TEST_CASE("simultaneous returns dominate individual returns") {
  Map s = Map::rotation(RotationAngle::exact(Rational(1, 4)));
  Map r = Map::rotation(RotationAngle::exact(Rational(1, 6)));
  CommutingPair pair(s, r);
  Point x = {Rational(0)};
  for (long long N : {3ll, 7ll, 11ll, 12ll}) {
    auto sim = simultaneous_recurrence(pair, x, N);
    CHECK(sim.value >= recurrence_constant(s, x, N).value);
    CHECK(sim.value >= recurrence_constant(r, x, N).value);
  }
  // both maps return exactly at the common period
  CHECK(simultaneous_recurrence(pair, x, 12).value == Rational(0));
  CHECK(simultaneous_recurrence(pair, x, 12).argmin == 12);
  // exhaustive value just below the period: best n = 4 gives max(0, 2*(1/3 -> 1/3... ))
  auto sim11 = simultaneous_recurrence(pair, x, 11);
  auto po = pair_orbit_distances(pair, x, 11);
  Rational best(2);
  for (size_t i = 0; i < po.ds.size(); ++i) best = rat_min(best, rat_max(po.ds[i], po.dr[i]));
  CHECK(sim11.value == best);
  CHECK(sim11.value > Rational(0));
}

TEST_CASE("pair of identical maps collapses to the single map") {
  Map s = Map::cyclic_shift(17, 5);
  CommutingPair pair(s, s);
  Point x = {Rational(3)};
  for (long long N : {1ll, 5ll, 16ll})
    CHECK(simultaneous_recurrence(pair, x, N).value == recurrence_constant(s, x, N).value);
}

TEST_CASE("tail profiles move monotonically in both arguments") {
  Map rot = Map::rotation(RotationAngle::golden(1ll << 20));
  Point x = {Rational(0)};
  auto profile = weighted_liminf_profile(rot, x, ScaleFn::identity(), 400, {1, 10, 100});
  REQUIRE(profile.size() == 3);
  CHECK(profile[0].value <= profile[1].value);
  CHECK(profile[1].value <= profile[2].value);
  auto shorter = weighted_liminf_profile(rot, x, ScaleFn::identity(), 150, {1, 10, 100});
  for (size_t i = 0; i < 3; ++i) CHECK(profile[i].value <= shorter[i].value);
}

TEST_CASE("pair profiles bracket the density weighting") {
  Map s = Map::rotation(RotationAngle::golden(1ll << 20));
  Map r = Map::rotation(RotationAngle::sqrt2m1(1ll << 20));
  CommutingPair pair(s, r);
  std::map<long long, corners::DensityCertificate> lsrc;
  for (long long n = 1; n <= 50; ++n)
    lsrc[n] = corners::certified_L(n, corners::CertMode::best_available, 1000);
  auto rows = pair_weighted_profile(pair, {Rational(0)}, ScaleFn::identity(), 50, {1, 10}, lsrc);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.value_lowerL >= row.value_upperL);  // smaller density, larger weight
    CHECK(row.value_upperL >= 0.0);
  }
}

TEST_CASE("weighted return tails of the golden rotation") {
  auto g = RotationAngle::golden(1ll << 20);
  auto head = rotation_min_weighted_return(g, 1, 1000);
  CHECK(head.argmin == 1);
  CHECK(head.value == doctest::Approx(0.3819660113).epsilon(1e-8));
  // the stored angle is a convergent p/q with q = 832040, so n*||n*angle||
  // dips lowest at the largest even-index Fibonacci n in the window
  auto tail = rotation_min_weighted_return(g, 100, 10000);
  CHECK(tail.argmin == 6765);
  CHECK(tail.value == doctest::Approx(0.4471840296).epsilon(1e-8));
  // n ||n alpha|| >= value of the tail statistic for every n in the window
  auto deep = rotation_min_weighted_return(g, 100, 100000);
  CHECK(deep.value <= tail.value + 1e-15);
}

TEST_CASE("precision guard rejects horizons beyond the expansion depth") {
  auto shallow = RotationAngle::golden(1ll << 20);
  CHECK_THROWS_AS(rotation_oracle(shallow, 1000000), PrecisionError);
  CHECK_NOTHROW(rotation_oracle(RotationAngle::golden(1ll << 31), 100000));
}

TEST_CASE("step error bounds") {
  CHECK(Map::rotation(RotationAngle::exact(Rational(2, 7))).step_error_bound() == 0.0);
  CHECK(Map::cyclic_shift(10, 3).step_error_bound() == 0.0);
  Map g = Map::rotation(RotationAngle::golden(1ll << 20));
  CHECK(g.step_error_bound() > 0.0);
  CHECK(g.step_error_bound() <= 2.0 / (832040.0 * (double)(1ll << 20)));
  Map prod = Map::product({g, Map::cyclic_shift(5, 1)});
  CHECK(prod.step_error_bound() == g.step_error_bound());
}

TEST_CASE("map descriptions are stable identifiers") {
  CHECK_FALSE(Map::doubling().describe().empty());
  CHECK_FALSE(Map::cat().describe().empty());
  CHECK_FALSE(Map::cyclic_shift(10, 3).describe().empty());
}

}  // TEST_SUITE
