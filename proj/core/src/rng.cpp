#include "recurlab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace recurlab {
namespace {

constexpr long long kChunk = 4096;

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = x = splitmix64(x);
}

std::uint64_t Rng::u64() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint32_t Rng::bits(int k) {
  if (k < 1 || k > 32) throw std::invalid_argument("bit count out of range");
  return (std::uint32_t)(u64() >> (64 - k));
}

long long Rng::below(long long n) {
  if (n < 1) throw std::invalid_argument("below() needs a positive bound");
  return (long long)(((__uint128_t)u64() * (std::uint64_t)n) >> 64);
}

Rational Rng::coord_pow2(int k) { return Rational((long long)bits(k), 1ll << k); }

Rational Rng::coord_den(long long den) { return Rational(below(den), den); }

double mc_mean(long long n, std::uint64_t seed, int workers,
               const std::function<double(Rng&, long long)>& sample_value) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  if (workers < 1) throw std::invalid_argument("worker count must be positive");
  long long chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial((size_t)chunks, 0.0);

  auto run_chunk = [&](long long c) {
    Rng rng(splitmix64(seed ^ (0x5851f42d4c957f2dull * (std::uint64_t)(c + 1))));
    long long lo = c * kChunk, hi = std::min(n, lo + kChunk);
    double acc = 0;
    for (long long i = lo; i < hi; ++i) acc += sample_value(rng, i);
    partial[(size_t)c] = acc;
  };

  if (workers == 1 || chunks == 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    int nw = (int)std::min<long long>(workers, chunks);
    pool.reserve((size_t)nw);
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&] {
        for (long long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
          run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }

  // fixed reduction order: chunk 0, 1, 2, ...
  double total = 0;
  for (double p : partial) total += p;
  return total / (double)n;
}

double hoeffding99(long long n, double range) {
  return range * std::sqrt(std::log(2.0 / 0.01) / (2.0 * (double)n));
}

}  // namespace recurlab
