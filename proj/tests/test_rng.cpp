#include "doctest.h"
#include "recurlab/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

using namespace recurlab;

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible from the seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t x = a.u64();
    if (x != b.u64()) all_equal = false;
    if (x != c.u64()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("bounded draws stay in range and hit every value") {
  Rng rng(7);
  std::set<long long> seen;
  for (int i = 0; i < 2000; ++i) {
    long long v = rng.below(17);
    CHECK(v >= 0);
    CHECK(v < 17);
    seen.insert(v);
  }
  CHECK(seen.size() == 17);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("rational coordinates are uniform grid fractions") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational u = rng.coord_pow2(10);
    CHECK(u >= Rational(0));
    CHECK(u < Rational(1));
    CHECK(1024 % u.den() == 0);
    Rational w = rng.coord_den(30);
    CHECK(w >= Rational(0));
    CHECK(w < Rational(1));
    CHECK(30 % w.den() == 0);
  }
}

TEST_CASE("chunked means are identical for every worker count") {
  auto kernel = [](Rng& rng, long long) { return (double)rng.below(1000) / 1000.0; };
  // a length that is not a multiple of the chunk size exercises the tail chunk
  const long long n = 10000;
  double w1 = mc_mean(n, 555, 1, kernel);
  double w2 = mc_mean(n, 555, 2, kernel);
  double w4 = mc_mean(n, 555, 4, kernel);
  double w7 = mc_mean(n, 555, 7, kernel);
  CHECK(w1 == w2);
  CHECK(w1 == w4);
  CHECK(w1 == w7);
  CHECK(w1 == doctest::Approx(0.4995).epsilon(0.05));
  // different seeds decorrelate
  CHECK(mc_mean(n, 556, 1, kernel) != w1);
}

TEST_CASE("sample index is passed through to the kernel") {
  // mean of the index sequence 0..n-1 is (n-1)/2 regardless of rng state
  auto kernel = [](Rng&, long long i) { return (double)i; };
  CHECK(mc_mean(9000, 1, 3, kernel) == doctest::Approx(4499.5));
}

TEST_CASE("splitmix64 scrambles nearby seeds") {
  CHECK(splitmix64(1) != splitmix64(2));
  CHECK(splitmix64(0) != 0);
}

TEST_CASE("confidence radius shrinks like the square root") {
  double h1 = hoeffding99(10000);
  double h4 = hoeffding99(40000);
  CHECK(h1 == doctest::Approx(2.0 * h4).epsilon(1e-12));
  CHECK(hoeffding99(10000, 2.0) == doctest::Approx(2.0 * h1).epsilon(1e-12));
  // 99% two-sided: ln(2/0.01) / 2 inside the square root
  CHECK(h1 == doctest::Approx(std::sqrt(std::log(200.0) / (2.0 * 10000.0))));
  CHECK(hoeffding99(100) > hoeffding99(1000));
}

}  // TEST_SUITE
