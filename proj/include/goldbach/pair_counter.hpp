// pair_counter.hpp
// Exact Goldbach-pair counts.
//
//   count_pairs(n, range)  - number of m with n-m, n+m both odd primes
//   total_pairs(M)         - number of odd-prime pairs p1 <= p2 with p1+p2 <= M
//   oracle_count_pairs     - trial-division reference for n <= 10^6
//
// For every even M: total_pairs(M) == sum_{n=3}^{M/2} count_pairs(n, Full).

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/parallel.hpp"
#include "goldbach/prime_engine.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goldbach {

// Full: 0 <= m <= n-3.
// Reduced: the lower prime n-m lies strictly above q(n), the smallest prime of
// the window [(2-sqrt(2))n, n]; this also keeps (n+m)^2 < 2n^2. Equivalently
// m < n - q(n). The window's first prime is never a lower member, which is the
// convention the published reduced-range counts follow.
enum class RangeKind { Full, Reduced };

inline std::string_view to_string(RangeKind r) { return r == RangeKind::Full ? "full" : "reduced"; }

inline RangeKind parse_range(std::string_view s)
{
    if (s == "full") return RangeKind::Full;
    if (s == "reduced") return RangeKind::Reduced;
    throw DomainError("unknown range '" + std::string(s) + "' (expected full|reduced)");
}

// Largest m with (n+m)^2 < 2n^2 and m <= n-3 (n >= 3).
// Largest m with (n+m)^2 < 2n^2.
inline uint64_t geometric_span(uint64_t n)
{
    const auto two_n_sq = static_cast<unsigned __int128>(n) * n * 2;
    return isqrt(two_n_sq - 1) - n;
}

inline uint64_t geometric_max_m(uint64_t n) { return std::min(n - 3, geometric_span(n)); }

// Smallest prime >= n - geometric_span(n), or 0 when none is <= n.
inline uint64_t reduced_window_first_prime(const PrimeEngine& engine, uint64_t n)
{
    const uint64_t lo = n - geometric_span(n);
    engine.require_coverage(n);
    for (uint64_t b = lo; b <= n; b += 4096) {
        const uint64_t e = std::min(n, b + 4095);
        const SievedSegment seg = engine.window(b, e);
        for (uint64_t p = b; p <= e; ++p)
            if (seg.test(p)) return p;
    }
    return 0;
}

// Largest admissible m, or nullopt when the range is empty.
inline std::optional<uint64_t> max_m(const PrimeEngine& engine, uint64_t n, RangeKind range)
{
    if (range == RangeKind::Full) return n - 3;
    const uint64_t q = reduced_window_first_prime(engine, n);
    if (q == 0 || q == n) return std::nullopt;
    return std::min(n - 3, n - q - 1);
}

struct PairCount {
    uint64_t n = 0;
    RangeKind range = RangeKind::Full;
    uint64_t count = 0;
};

inline uint64_t count_pairs(const PrimeEngine& engine, uint64_t n, RangeKind range)
{
    if (n < 3) throw DomainError("count_pairs requires n >= 3, got " + std::to_string(n));
    const uint64_t lo_m = 0;
    const auto top = max_m(engine, n, range);
    if (!top) return 0;
    const uint64_t hi_m = *top;
    engine.require_coverage(n + hi_m);

    // n-m must be odd
    const uint64_t parity = (n - 1) & 1;
    const uint64_t block = std::max<uint64_t>(2, engine.segment_size() / 2);
    const uint64_t blocks = (hi_m - lo_m) / block + 1;
    std::vector<uint64_t> partial(blocks, 0);

    parallel_for(blocks, engine.workers(), [&](std::size_t c) {
        const uint64_t a = lo_m + c * block;
        const uint64_t b = std::min(hi_m, a + block - 1);
        const SievedSegment low = engine.window(n - b, n - a);
        const SievedSegment high = engine.window(n + a, n + b);
        uint64_t m = a + (((a & 1) != parity) ? 1 : 0);
        if (m > b) return;
        uint64_t li = (n - m - low.base() - 1) / 2;
        uint64_t hi = (n + m - high.base() - 1) / 2;
        uint64_t count = 0;
        for (; m <= b; m += 2, --li, ++hi) count += low.odd_bit(li) & high.odd_bit(hi);
        partial[c] = count;
    });

    uint64_t total = 0;
    for (uint64_t v : partial) total += v;
    return total;
}

inline PairCount count_pair_record(const PrimeEngine& engine, uint64_t n, RangeKind range)
{
    return {n, range, count_pairs(engine, n, range)};
}

// Number of pairs of odd primes p1 <= p2 with p1 + p2 <= m_limit.
//
// Uses total = sum_{p <= M/2} pi_odd(M - p) - K(K-1)/2, K = pi_odd(M/2).
// The low half [3, M/2] is cut into blocks; block c pairs with the mirrored
// high window [M - hi_c, M - lo_c], walked downward in step with p.
inline uint64_t total_pairs(const PrimeEngine& engine, uint64_t m_limit)
{
    if (m_limit < 6) return 0;
    const uint64_t M = m_limit & ~uint64_t{1};  // odd sums do not exist
    const uint64_t half = M / 2;
    engine.require_coverage(M - 3);

    const uint64_t block = engine.segment_size();
    const uint64_t blocks = half / block + 1;

    struct BlockResult {
        uint64_t low_primes = 0;   // odd primes in the low block
        uint64_t high_primes = 0;  // odd primes in the mirrored window
        uint64_t local_sum = 0;    // sum over p of #odd primes in [M-hi_c, M-p]
    };
    std::vector<BlockResult> results(blocks);

    parallel_for(blocks, engine.workers(), [&](std::size_t c) {
        const uint64_t lo = std::max<uint64_t>(3, c * block);
        const uint64_t hi = std::min(half, (c + 1) * block - 1);
        if (hi < lo) return;
        const SievedSegment low = engine.window(lo, hi);
        const SievedSegment high = engine.window(M - hi, M - lo);
        BlockResult r;
        r.high_primes = high.count_between(M - hi, M - lo);

        uint64_t p = lo | 1;
        if (p > hi) {
            results[c] = r;
            return;
        }
        uint64_t running = high.count_between(M - hi, M - p);
        uint64_t li = (p - low.base() - 1) / 2;
        uint64_t ti = (M - p - high.base() - 1) / 2;
        for (; p <= hi; p += 2, ++li) {
            if (low.odd_bit(li)) {
                ++r.low_primes;
                r.local_sum += running;
            }
            if (high.odd_bit(ti)) --running;
            if (ti == 0) break;
            --ti;
        }
        results[c] = r;
    });

    // pi_odd just below the lowest mirrored window
    const uint64_t below = M - half - 1;
    uint64_t base = below >= 3 ? engine.pi(below) - 1 : 0;
    uint64_t sum = 0, k = 0;
    for (std::size_t c = blocks; c-- > 0;) {
        sum += results[c].low_primes * base + results[c].local_sum;
        base += results[c].high_primes;
        k += results[c].low_primes;
    }
    return sum - k * (k - 1) / 2;
}

// -------------------------------------------------------
// Trial-division oracle (no sieve involved)
// -------------------------------------------------------
inline constexpr uint64_t kOracleLimit = 1'000'000;

inline bool trial_division_is_prime(uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline uint64_t oracle_count_pairs(uint64_t n, RangeKind range)
{
    if (n < 3) throw DomainError("oracle_count_pairs requires n >= 3");
    if (n > kOracleLimit) throw DomainError("oracle_count_pairs is limited to n <= 1000000");
    // reduced: lower primes must exceed the smallest prime q <= n with (2n-q)^2 < 2n^2
    uint64_t floor_prime = 0;
    if (range == RangeKind::Reduced) {
        for (uint64_t q = 2; q <= n && floor_prime == 0; ++q)
            if ((2 * n - q) * (2 * n - q) < 2 * n * n && trial_division_is_prime(q)) floor_prime = q;
        if (floor_prime == 0) return 0;
    }
    uint64_t count = 0;
    for (uint64_t m = 0; m + 3 <= n; ++m) {
        const uint64_t a = n - m, b = n + m;
        if (range == RangeKind::Reduced && (a <= floor_prime || b * b >= 2 * n * n)) break;
        if (a % 2 == 1 && trial_division_is_prime(a) && trial_division_is_prime(b)) ++count;
    }
    return count;
}

} // namespace goldbach
