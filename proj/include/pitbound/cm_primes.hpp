#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "pitbound/arith.hpp"
#include "pitbound/errors.hpp"

namespace pitbound {

/// (p, q, t, f, Delta) with 4p - t^2 = |Delta| f^2 and q | p + 1 - t.
struct CMCandidate {
  u64 p = 0;
  u64 q = 0;
  i64 t = 0;
  u64 f = 0;
  i64 discriminant = 0;
  friend bool operator==(const CMCandidate&, const CMCandidate&) = default;
};

struct CMVerdict {
  bool valid = false;
  /// First violated clause: "p_not_prime", "q_not_prime", "trace_bound",
  /// "divisibility" or "norm_equation"; empty when valid.
  std::string failure_reason;
};

inline CMVerdict verify_cm_pair(const CMCandidate& c) {
  using i128 = __int128;
  if (!is_prime(c.p)) return {false, "p_not_prime"};
  if (!is_prime(c.q)) return {false, "q_not_prime"};
  const i128 t = c.t;
  if (t * t > 4 * static_cast<i128>(c.p)) return {false, "trace_bound"};
  const i128 order = static_cast<i128>(c.p) + 1 - t;
  if (order % static_cast<i128>(c.q) != 0) return {false, "divisibility"};
  if (c.discriminant >= 0) return {false, "norm_equation"};
  const i128 abs_disc = -static_cast<i128>(c.discriminant);
  const i128 f = c.f;
  if (4 * static_cast<i128>(c.p) - t * t != abs_disc * f * f) return {false, "norm_equation"};
  return {true, ""};
}

struct CMSearchOptions {
  u64 p_cap = 1'000'000'000;
  bool parallel = true;
};

/// All (p, t) with p prime in [p_min, p_max] and 4p = t^2 + |Delta| f^2,
/// f >= 1, whose largest prime factor q of p + 1 - t is at least q_min.
/// Both signs of t are reported. Output is sorted by p, then t.
inline std::vector<CMCandidate> search_cm_pairs(i64 discriminant, u64 p_min, u64 p_max, u64 q_min,
                                                const CMSearchOptions& opts = {}) {
  if (discriminant >= 0) throw DomainError("discriminant must be negative");
  const i64 r = ((discriminant % 4) + 4) % 4;
  if (r != 0 && r != 1) throw DomainError("discriminant must be 0 or 1 mod 4, got " + std::to_string(discriminant));
  if (p_max > opts.p_cap)
    throw ResourceError("p_max = " + std::to_string(p_max) + " exceeds the search cap " + std::to_string(opts.p_cap));
  if (p_min > p_max) return {};

  const u64 abs_disc = static_cast<u64>(-discriminant);
  const u64 lo = 4 * p_min;
  const u64 hi = 4 * p_max;
  const u64 f_max = isqrt(hi / abs_disc);

  const auto search_f = [&](u64 f, std::vector<CMCandidate>& out) {
    const u64 df2 = abs_disc * f * f;
    if (df2 > hi) return;
    const u64 t_max = isqrt(hi - df2);
    // t^2 + |Delta| f^2 must be divisible by 4, so t has the parity of |Delta| f.
    const u64 parity = (abs_disc * f) & 1;
    for (u64 t = parity; t <= t_max; t += 2) {
      const u64 s = t * t + df2;
      if (s < lo || s % 4 != 0) continue;
      const u64 p = s / 4;
      if (!is_prime(p)) continue;
      for (int sign : {1, -1}) {
        if (t == 0 && sign == -1) break;
        const i64 ts = sign * static_cast<i64>(t);
        const u64 order = static_cast<u64>(static_cast<i64>(p) + 1 - ts);
        const u64 q = largest_prime_factor(order);
        if (q >= q_min && q >= 2) out.push_back({p, q, ts, f, discriminant});
      }
    }
  };

  // Partition by f; workers take f values round-robin and results are sorted.
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const u64 workers = opts.parallel ? std::min<u64>(hw, std::max<u64>(f_max, 1)) : 1;
  std::vector<std::vector<CMCandidate>> parts(workers);
  std::atomic<u64> next{1};
  const auto worker = [&](u64 id) {
    for (u64 f = next++; f <= f_max; f = next++) search_f(f, parts[id]);
  };
  if (workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (u64 i = 0; i < workers; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  std::vector<CMCandidate> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), [](const CMCandidate& a, const CMCandidate& b) {
    return std::tie(a.p, a.t) < std::tie(b.p, b.t);
  });
  return out;
}

}  // namespace pitbound
