#include "doctest.h"
#include "recurlab/corners.hpp"
#include "recurlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace recurlab;
using namespace recurlab::corners;

TEST_SUITE("corners") {

TEST_CASE("corner detection on hand-built sets") {
  GridSubset a(3);
  a.set(1, 1);
  a.set(2, 1);
  a.set(1, 2);
  CHECK(contains_corner(a));
  auto c = find_corner(a);
  REQUIRE(c.has_value());
  CHECK(*c == Corner{1, 1, 1});

  // diamond: no two points share a row/column pair completable to a corner
  GridSubset b(3);
  b.set(1, 2);
  b.set(2, 1);
  b.set(2, 3);
  b.set(3, 2);
  CHECK_FALSE(contains_corner(b));
  CHECK_FALSE(find_corner(b).has_value());

  // axis-aligned pairs alone never form a corner
  GridSubset d(4);
  d.set(1, 1);
  d.set(4, 1);
  d.set(1, 3);
  CHECK_FALSE(contains_corner(d));
  d.set(3, 1);  // completes (1,1),(3,1),(1,3) with d = 2
  CHECK(contains_corner(d));
  CHECK(*find_corner(d) == Corner{1, 1, 2});
}

TEST_CASE("full grids of side >= 2 contain corners") {
  CHECK_FALSE(contains_corner(GridSubset::full(1)));
  CHECK(contains_corner(GridSubset::full(2)));
  CHECK(contains_corner(GridSubset::full(5)));
}

TEST_CASE("exhaustive maxima for sides 1..5") {
  const long long expected[] = {1, 3, 7, 11, 17};
  for (int n = 1; n <= 5; ++n) {
    auto r = max_corner_free_exhaustive(n);
    CHECK(r.optimal);
    CHECK(r.size == expected[n - 1]);
    CHECK(r.upper_bound == r.size);
    CHECK(r.witness.size() == r.size);
    CHECK_FALSE(contains_corner(r.witness));
  }
}

TEST_CASE("branch and bound agrees with exhaustive search") {
  for (int n = 1; n <= 5; ++n) {
    auto ex = max_corner_free_exhaustive(n);
    auto bb = max_corner_free_bnb(n, 2'000'000);
    CHECK(bb.optimal);
    CHECK(bb.size == ex.size);
    CHECK_FALSE(contains_corner(bb.witness));
  }
}

TEST_CASE("branch and bound proves side 6") {
  auto r = max_corner_free_bnb(6, 20'000'000);
  CHECK(r.optimal);
  CHECK(r.size == 22);
  CHECK_FALSE(contains_corner(r.witness));
}

TEST_CASE("exhausted budget still yields a valid bracket") {
  auto r = max_corner_free_bnb(7, 50);
  CHECK_FALSE(r.optimal);
  CHECK(r.size <= r.upper_bound);
  CHECK(r.size >= 1);
  CHECK_FALSE(contains_corner(r.witness));
}

TEST_CASE("witness enumeration is deterministic") {
  auto a = max_corner_free_exact(4);
  auto b = max_corner_free_exact(4);
  CHECK(a.witness == b.witness);
  CHECK(a.witness.members() == b.witness.members());
}

TEST_CASE("progression detection") {
  CHECK(has_ap3({1, 2, 3}));
  CHECK(has_ap3({1, 3, 5}));
  CHECK(has_ap3({2, 5, 8, 11}));
  CHECK_FALSE(has_ap3({1, 2, 4, 8}));
  CHECK_FALSE(has_ap3({1}));
  CHECK_FALSE(has_ap3({}));
}

TEST_CASE("progression-free maxima for bounds 1..20 and 24") {
  const int expected[] = {1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9};
  for (int n = 1; n <= 20; ++n) {
    auto r = max_ap3_free_exact(n);
    CHECK(r.optimal);
    CHECK(r.size == expected[n - 1]);
    CHECK((int)r.witness.members.size() == r.size);
    CHECK_FALSE(has_ap3(r.witness.members));
  }
  auto r24 = max_ap3_free_exact(24);
  CHECK(r24.optimal);
  CHECK(r24.size == 10);
}

TEST_CASE("digit construction sizes and validity") {
  struct { int bound; int size; } rows[] = {{3, 2}, {14, 8}, {150, 32}, {729, 64}};
  for (auto [bound, size] : rows) {
    ApFreeSet b = behrend_set(bound);
    CHECK((int)b.members.size() == size);
    CHECK(b.bound == bound);
    CHECK_FALSE(has_ap3(b.members));
    CHECK(std::is_sorted(b.members.begin(), b.members.end()));
    CHECK(b.members.front() >= 1);
    CHECK(b.members.back() <= bound);
  }
}

TEST_CASE("digit construction beats the optimum ratio floor at larger bounds") {
  // at bound 729 the construction reaches 64 members; any scan over random
  // subsets of that size would almost surely contain progressions
  ApFreeSet b = behrend_set(729);
  CHECK((int)b.members.size() >= 64);
}

TEST_CASE("lift of a progression-free set is corner-free") {
  ApFreeSet b = behrend_set(24);
  GridSubset a = lift_ap3_to_corner_free(b, 8);
  CHECK_FALSE(contains_corner(a));
  // membership matches the defining sum condition
  for (auto [x, y] : a.members())
    CHECK(std::binary_search(b.members.begin(), b.members.end(), x + 2 * y));
  long long count = 0;
  for (int x = 1; x <= 8; ++x)
    for (int y = 1; y <= 8; ++y)
      if (std::binary_search(b.members.begin(), b.members.end(), x + 2 * y)) ++count;
  CHECK(a.size() == count);
}

TEST_CASE("frozen lift size at side 243") {
  GridSubset a = lift_ap3_to_corner_free(behrend_set(729), 243);
  CHECK(a.size() == 4848);
}

TEST_CASE("lift validates the bound") {
  ApFreeSet b = behrend_set(24);
  CHECK_THROWS(lift_ap3_to_corner_free(b, 4));  // needs bound <= 3 * side
}

TEST_CASE("iterated logarithm count") {
  CHECK(log_star(1) == 0);
  CHECK(log_star(7) == 0);
  CHECK(log_star(8) == 1);
  CHECK(log_star(1618) == 1);
  CHECK(log_star(1619) == 2);
  CHECK(log_star(1'000'000'000ull) == 2);
}

TEST_CASE("analytic density bound clamps to one") {
  CHECK_FALSE(vu_upper_bound(7).has_value());
  auto v = vu_upper_bound(1'000'000'000ull);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(1.0));  // 100 * 2^(-1/4) clamps
  CHECK(vu_upper_bound_raw(2) == doctest::Approx(100.0 * std::pow(2.0, -0.25)));
}

TEST_CASE("certified density brackets, exact range") {
  struct { long long t; Rational L; } rows[] = {
      {1, Rational(1)},      {2, Rational(3, 4)},   {3, Rational(7, 9)},
      {4, Rational(11, 16)}, {5, Rational(17, 25)},
  };
  for (auto [t, L] : rows) {
    auto c = certified_L(t, CertMode::exact_required);
    CHECK(c.t == t);
    CHECK(c.lower == L);
    CHECK(c.upper == L);
  }
  CHECK(certified_L(1).provenance == Provenance::exact);
  CHECK(certified_L(3).provenance == Provenance::exact);
}

TEST_CASE("certified bracket beyond the exact range") {
  auto c = certified_L(9, CertMode::best_available, 2'000);
  CHECK(c.lower <= c.upper);
  CHECK(Rational(0) < c.lower);
  CHECK(c.upper <= Rational(1));
  CHECK_THROWS_AS(certified_L(9, CertMode::exact_required, 2'000), CertificateError);
}

TEST_CASE("provenance names are stable") {
  CHECK(provenance_name(Provenance::exact) == "exact");
  CHECK(provenance_name(Provenance::exhaustive) == "exhaustive");
  CHECK(provenance_name(Provenance::branch_and_bound) == "branch-and-bound");
  CHECK(provenance_name(Provenance::behrend_lift) == "behrend-lift");
  CHECK(provenance_name(Provenance::vu_bound) == "vu-bound");
  CHECK(provenance_name(Provenance::trivial) == "trivial");
}

TEST_CASE("grid subset bookkeeping") {
  GridSubset g(4);
  CHECK(g.size() == 0);
  g.set(2, 3);
  g.set(2, 3);
  CHECK(g.size() == 1);
  CHECK(g.test(2, 3));
  CHECK_FALSE(g.test(3, 2));
  g.set(2, 3, false);
  CHECK(g.size() == 0);
  CHECK(GridSubset::full(4).size() == 16);
}

}  // TEST_SUITE
