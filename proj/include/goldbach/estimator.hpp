// estimator.hpp
// Analytic estimate of the number of Goldbach pairs for N.
//
//   pi_upper(x)    = x/L * (1 + 1/L + 2.51/L^2),  L = log x,  valid for x >= 355991
//   g_tot(x)       = pi_upper(x)^2 / 4
//   g_tot'(x)      = x (100L^2 + 100L + 251)(100L^3 + 51L - 753) / (4 * 5000 L^7)
//   ndf(N)         = prod (p-1)/(p-2) over odd primes p | N with p^2 <= N
//   U(N)           = 2 pi(N) / pi(2N)
//   estimate(N)    = g_tot'(2N) * 2 * C * ndf(N)            (full range)
//                    ... * (sqrt(2) - 1)                     (reduced range)
//                    ... * U^{3/2}                           (corrected)
//
// C is the twin prime constant; the default is the 5-digit 0.66016.

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/pair_counter.hpp"
#include "goldbach/parallel.hpp"
#include "goldbach/prime_engine.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace goldbach {

inline constexpr double kTwinPrimeConstantShort = 0.66016;
inline constexpr double kTwinPrimeConstant = 0.66016181584686957392781211;
inline constexpr uint64_t kDusartMinX = 355991;

struct EstimateConfig {
    double twin_constant = kTwinPrimeConstantShort;
    double reduced_factor = std::numbers::sqrt2 - 1.0;
    uint64_t dusart_min_x = kDusartMinX;
    double correction_exponent = 1.5;
};

// -------------------------------------------------------
// Dusart bound and its square
// -------------------------------------------------------
inline void require_dusart_domain(double x, const EstimateConfig& cfg)
{
    if (!(x >= static_cast<double>(cfg.dusart_min_x)))
        throw DomainError("Dusart bound is only valid for x >= " + std::to_string(cfg.dusart_min_x) +
                          " (got " + std::to_string(x) + ")");
}

inline double dusart_pi_upper(double x, const EstimateConfig& cfg = {})
{
    require_dusart_domain(x, cfg);
    const double l = std::log(x);
    return x / l * (1.0 + 1.0 / l + 2.51 / (l * l));
}

inline double g_tot(double x, const EstimateConfig& cfg = {})
{
    const double p = dusart_pi_upper(x, cfg);
    return p * p / 4.0;
}

inline double g_tot_prime(double x, const EstimateConfig& cfg = {})
{
    require_dusart_domain(x, cfg);
    const double l = std::log(x);
    const double l2 = l * l, l3 = l2 * l, l7 = l3 * l3 * l;
    return 0.25 * x * (100.0 * l2 + 100.0 * l + 251.0) * (100.0 * l3 + 51.0 * l - 753.0) / (5000.0 * l7);
}

// -------------------------------------------------------
// NDF
// -------------------------------------------------------
class NdfValue {
public:
    NdfValue() = default;

    uint64_t numerator() const noexcept { return num_; }
    uint64_t denominator() const noexcept { return den_; }
    // Qualifying odd primes in ascending order.
    const std::vector<uint64_t>& factors() const noexcept { return factors_; }

    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Multiplies in (p-1)/(p-2); p must be an odd prime not yet included.
    void include(uint64_t p)
    {
        if (p < 3 || p % 2 == 0) throw DomainError("ndf factor must be an odd prime");
        num_ *= p - 1;
        den_ *= p - 2;
        const uint64_t g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
        factors_.push_back(p);
    }

    bool operator==(const NdfValue&) const = default;

private:
    uint64_t num_ = 1;
    uint64_t den_ = 1;
    std::vector<uint64_t> factors_;
};

inline NdfValue ndf(uint64_t n)
{
    if (n < 1) throw DomainError("ndf requires n >= 1");
    NdfValue out;
    uint64_t rest = n;
    while (rest % 2 == 0) rest /= 2;
    auto primes = base_primes(isqrt(n));
    for (uint32_t p32 : *primes) {
        const uint64_t p = p32;
        if (p == 2) continue;
        if (p * p > n || p * p > rest) break;
        if (rest % p == 0) {
            out.include(p);
            while (rest % p == 0) rest /= p;
        }
    }
    // rest is 1 or a single prime larger than every divisor tried
    if (rest > 1 && rest <= n / rest) out.include(rest);
    return out;
}

// Mean of ndf(n) over [start, start+count). Each n is handled by sieving the
// window with odd primes up to sqrt(start+count-1) instead of factoring n
// individually. Chunk boundaries are fixed, so the pairwise reduction gives the
// same bits for any worker count.
inline double ndf_average(uint64_t start, uint64_t count, unsigned workers = 1)
{
    if (start < 2) throw DomainError("ndf_average requires start >= 2");
    if (count < 1) throw DomainError("ndf_average requires count >= 1");
    const uint64_t last = start + count - 1;
    const uint64_t root = isqrt(last);
    auto primes = base_primes(root);

    constexpr uint64_t chunk = 1u << 16;
    const uint64_t chunks = (count + chunk - 1) / chunk;
    std::vector<double> sums(chunks, 0.0);

    parallel_for(chunks, workers, [&](std::size_t c) {
        const uint64_t lo = start + c * chunk;
        const uint64_t len = std::min(chunk, last - lo + 1);
        std::vector<double> factor(len, 1.0);
        for (uint32_t p32 : *primes) {
            const uint64_t p = p32;
            if (p == 2) continue;
            if (p > root) break;
            for (uint64_t k = (lo + p - 1) / p * p; k < lo + len; k += p)
                if (p * p <= k) factor[k - lo] *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
        }
        sums[c] = pairwise_sum(factor);
    });
    return pairwise_sum(sums) / static_cast<double>(count);
}

// -------------------------------------------------------
// Unbalance
// -------------------------------------------------------
struct UnbalanceValue {
    uint64_t n = 0;
    double u = 0.0;
    double correction = 0.0;
};

// Full range: 2 pi(n) / pi(2n).
// Reduced range: the same ratio restricted to the primes of the reduced window
// [n - m_max, n + m_max]: 2 (pi(n) - pi(lo-1)) / (pi(hi) - pi(lo-1)).
inline UnbalanceValue unbalance(const PrimeEngine& engine, uint64_t n, RangeKind range = RangeKind::Full,
                                const EstimateConfig& cfg = {})
{
    if (n < 5) throw DomainError("unbalance requires n >= 5");
    double u = 0.0;
    if (range == RangeKind::Full) {
        const uint64_t below = engine.pi(n);
        const uint64_t total = engine.pi(2 * n);
        u = 2.0 * static_cast<double>(below) / static_cast<double>(total);
    } else {
        const uint64_t m = geometric_max_m(n);
        const uint64_t lower = engine.pi(n - m - 1);
        const uint64_t below = engine.pi(n) - lower;
        const uint64_t total = engine.pi(n + m) - lower;
        u = 2.0 * static_cast<double>(below) / static_cast<double>(total);
    }
    return {n, u, std::pow(u, cfg.correction_exponent)};
}

// -------------------------------------------------------
// Per-N estimate
// -------------------------------------------------------
struct Estimate {
    double raw = 0.0;         // uncorrected estimate for the requested range
    double correction = 1.0;  // U^{3/2}, or 1 when uncorrected
    double value = 0.0;       // raw * correction
    NdfValue ndf;
    std::optional<UnbalanceValue> unbalance;
};

inline Estimate estimate_detail(const PrimeEngine& engine, uint64_t n, RangeKind range, bool corrected,
                                const EstimateConfig& cfg = {})
{
    const double x = 2.0 * static_cast<double>(n);
    require_dusart_domain(x, cfg);
    Estimate e;
    e.ndf = ndf(n);
    e.raw = g_tot_prime(x, cfg) * 2.0 * cfg.twin_constant * e.ndf.value();
    if (range == RangeKind::Reduced) e.raw *= cfg.reduced_factor;
    e.value = e.raw;
    if (corrected) {
        e.unbalance = unbalance(engine, n, range, cfg);
        e.correction = e.unbalance->correction;
        e.value = e.raw * e.correction;
    }
    return e;
}

inline double estimate(const PrimeEngine& engine, uint64_t n, RangeKind range, bool corrected,
                       const EstimateConfig& cfg = {})
{
    return estimate_detail(engine, n, range, corrected, cfg).value;
}

} // namespace goldbach
