// oracle.hpp
// Test-only reference implementations. Nothing here touches the segmented
// sieve or the estimator code paths it is used to check.

#pragma once
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Byte-per-number sieve, primality of 0..limit.
inline std::vector<char> full_sieve(uint64_t limit)
{
    std::vector<char> prime(limit + 1, 1);
    prime[0] = 0;
    if (limit >= 1) prime[1] = 0;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (prime[i])
            for (uint64_t j = i * i; j <= limit; j += i) prime[j] = 0;
    return prime;
}

// NDF as a reduced fraction by scanning every odd d with d*d <= n.
inline std::pair<uint64_t, uint64_t> ndf_fraction(uint64_t n)
{
    uint64_t num = 1, den = 1;
    for (uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d != 0 || !is_prime(d)) continue;
        num *= d - 1;
        den *= d - 2;
        uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return {num, den};
}

} // namespace oracle
