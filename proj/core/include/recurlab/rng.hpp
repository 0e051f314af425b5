#pragma once

#include <cstdint>
#include <functional>

#include "recurlab/rational.hpp"

namespace recurlab {

// SplitMix64 step; used to derive independent chunk seeds from a root seed
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// xoshiro256** seeded deterministically; the full state is derived from one
// 64-bit value via splitmix64, so a seed fully defines the stream
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t u64();
  std::uint32_t bits(int k);            // top k bits, 1 <= k <= 32
  long long below(long long n);         // uniform in [0, n)
  Rational coord_pow2(int k = 20);      // uniform j / 2^k
  Rational coord_den(long long den);    // uniform j / den

 private:
  std::uint64_t s_[4];
};

struct McPolicy {
  long long samples = 100000;
  std::uint64_t seed = 20250823;
  int workers = 1;
  enum class Sampling { iid, stratified } sampling = Sampling::iid;
};

// Deterministic chunked Monte Carlo mean.  The sample index range is split
// into fixed chunks of 4096; chunk c uses an Rng seeded from (seed, c), and
// partial sums are reduced in chunk order.  The result is therefore
// byte-identical for every worker count.
double mc_mean(long long n, std::uint64_t seed, int workers,
               const std::function<double(Rng&, long long)>& sample_value);

// half-width of the two-sided 99% Hoeffding interval for a mean of n samples
// taking values in [0, range]
double hoeffding99(long long n, double range = 1.0);

}  // namespace recurlab
