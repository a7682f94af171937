#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "pitbound/arith.hpp"

namespace pitbound {

inline constexpr u64 kDefaultSegmentSize = 1u << 18;

/// Primes below `limit` by the plain sieve of Eratosthenes.
inline std::vector<u64> simple_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 3) return out;
  std::vector<char> composite(limit, 0);
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = 1;
  }
  return out;
}

/// Primes in [lo, hi) given every prime up to sqrt(hi).
inline std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base) {
  std::vector<u64> out;
  if (hi <= lo) return out;
  std::vector<char> composite(hi - lo, 0);
  for (u64 p : base) {
    if (p * p >= hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 j = start; j < hi; j += p) composite[j - lo] = 1;
  }
  for (u64 n = std::max<u64>(lo, 2); n < hi; ++n)
    if (!composite[n - lo]) out.push_back(n);
  return out;
}

/// All primes below `limit`, ascending. Segments are sieved in parallel and
/// concatenated by segment index, so the output does not depend on scheduling.
inline std::vector<u64> primes_below(u64 limit, u64 segment_size = kDefaultSegmentSize, bool parallel = true) {
  if (limit < 3) return {};
  if (segment_size == 0) throw DomainError("segment size must be positive");
  const std::vector<u64> base = simple_primes(isqrt(limit) + 2);
  const u64 segments = (limit + segment_size - 1) / segment_size;
  std::vector<std::vector<u64>> parts(segments);

  std::atomic<u64> next{0};
  const auto worker = [&] {
    for (u64 i = next++; i < segments; i = next++) {
      const u64 lo = i * segment_size;
      parts[i] = sieve_segment(lo, std::min(limit, lo + segment_size), base);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const u64 workers = parallel ? std::min<u64>(hw, segments) : 1;
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (u64 i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<u64> out;
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace pitbound
