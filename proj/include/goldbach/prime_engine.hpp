// prime_engine.hpp
// Segmented sieve of Eratosthenes and exact prime counting.
//
// A SievedSegment stores one bit per odd number of a window [base, base+length)
// with `base` even:
//
//   bit index i  ->  odd number base + 2*i + 1
//   odd number n ->  bit index (n - base - 1) / 2
//
// 2 is never stored; queries special-case it. Memory is length/16 bytes.
//
// PrimeEngine sieves windows on demand in fixed-size segments and answers
// is_prime / pi for any x up to a configured coverage limit (default 2e10).
// An optional PiIndex of exact (x, pi(x)) checkpoints lets pi() start from the
// nearest checkpoint instead of 0; it can be persisted as a text cache file.

#pragma once
#include "goldbach/error.hpp"
#include "goldbach/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace goldbach {

inline uint64_t isqrt(uint64_t n)
{
    auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Floor square root of a 128-bit value; results up to 2^64-1.
inline uint64_t isqrt(unsigned __int128 n)
{
    using u128 = unsigned __int128;
    auto r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return static_cast<uint64_t>(r);
}

// All primes <= limit (plain Eratosthenes, byte per number).
inline std::vector<uint32_t> simple_sieve(uint32_t limit)
{
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint32_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

// Shared, grow-only table of primes used for sieving. Holders of an older
// (smaller) table keep it alive through the shared_ptr.
inline std::shared_ptr<const std::vector<uint32_t>> base_primes(uint64_t bound)
{
    static std::mutex mutex;
    static std::shared_ptr<const std::vector<uint32_t>> table;
    static uint64_t table_bound = 0;

    std::lock_guard lock(mutex);
    if (!table || table_bound < bound) {
        uint64_t target = std::max<uint64_t>(bound, 1u << 16);
        if (target > UINT32_MAX) throw ResourceError("base prime table too large");
        table = std::make_shared<const std::vector<uint32_t>>(simple_sieve(static_cast<uint32_t>(target)));
        table_bound = target;
    }
    return table;
}

// -------------------------------------------------------
// SievedSegment
// -------------------------------------------------------
class SievedSegment {
public:
    uint64_t base() const noexcept { return base_; }
    uint64_t length() const noexcept { return length_; }
    uint64_t end() const noexcept { return base_ + length_; }
    uint64_t odd_count() const noexcept { return length_ / 2; }
    std::span<const uint64_t> words() const noexcept { return words_; }

    bool contains(uint64_t n) const noexcept { return n >= base_ && n < end(); }

    // Primality of bit i, i.e. of base + 2i + 1.
    bool odd_bit(uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

    // Primality of n; n must lie inside the window.
    bool test(uint64_t n) const
    {
        if (!contains(n)) throw DomainError("value " + std::to_string(n) + " outside sieved window");
        if (n == 2) return true;
        if ((n & 1) == 0) return false;
        return odd_bit((n - base_ - 1) / 2);
    }

    // Number of primes p with lo <= p <= hi (clipped to the window).
    uint64_t count_between(uint64_t lo, uint64_t hi) const noexcept
    {
        lo = std::max(lo, base_);
        if (length_ == 0 || hi < lo) return 0;
        hi = std::min(hi, end() - 1);
        if (hi < lo) return 0;
        uint64_t total = (lo <= 2 && 2 <= hi) ? 1 : 0;
        // odd numbers in [lo, hi] map to bit range [first, last]
        const uint64_t first_odd = lo | 1;
        const uint64_t last_odd = (hi & 1) ? hi : hi - 1;
        if (last_odd < first_odd || last_odd < base_ + 1) return total;
        const uint64_t first = (first_odd - base_ - 1) / 2;
        const uint64_t last = (last_odd - base_ - 1) / 2;
        return total + popcount_bits(first, last + 1);
    }

    uint64_t count() const noexcept { return length_ == 0 ? 0 : count_between(base_, end() - 1); }

    bool operator==(const SievedSegment&) const = default;

private:
    friend SievedSegment sieve_segment(uint64_t base, uint64_t length, uint64_t limit);

    SievedSegment(uint64_t base, uint64_t length)
        : base_(base), length_(length), words_((length / 2 + 63) / 64, ~uint64_t{0})
    {
        const uint64_t bits = length / 2;
        if (bits % 64 != 0) words_.back() &= (uint64_t{1} << (bits % 64)) - 1;
    }

    void clear(uint64_t i) noexcept { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    uint64_t popcount_bits(uint64_t from, uint64_t to) const noexcept
    {
        if (from >= to) return 0;
        uint64_t wf = from >> 6, wt = (to - 1) >> 6;
        uint64_t head_mask = ~uint64_t{0} << (from & 63);
        uint64_t tail_mask = ~uint64_t{0} >> (63 - ((to - 1) & 63));
        if (wf == wt) return std::popcount(words_[wf] & head_mask & tail_mask);
        uint64_t c = std::popcount(words_[wf] & head_mask);
        for (uint64_t w = wf + 1; w < wt; ++w) c += std::popcount(words_[w]);
        return c + std::popcount(words_[wt] & tail_mask);
    }

    uint64_t base_ = 0;
    uint64_t length_ = 0;
    std::vector<uint64_t> words_;
};

inline constexpr uint64_t kDefaultSieveLimit = 20'000'000'000ULL;
// 2^21 integers -> 128 KiB of bits, L2 scale.
inline constexpr uint64_t kDefaultSegmentSize = uint64_t{1} << 21;

// Sieve the window [base, base+length). base must be even; the window must end
// at or below limit+1.
inline SievedSegment sieve_segment(uint64_t base, uint64_t length, uint64_t limit = kDefaultSieveLimit)
{
    if (base & 1) throw DomainError("segment base must be even");
    if (length < 2) throw DomainError("segment length must be at least 2");
    if (base > limit || length - 1 > limit - base)
        throw ResourceError("window [" + std::to_string(base) + ", " + std::to_string(base + length) +
                            ") exceeds sieve limit " + std::to_string(limit));

    SievedSegment seg(base, length);
    const uint64_t hi = base + length;  // exclusive
    if (base == 0) seg.clear(0);        // 1 is not prime

    const uint64_t root = isqrt(hi - 1);
    auto primes = base_primes(root);
    for (uint32_t p32 : *primes) {
        const uint64_t p = p32;
        if (p == 2) continue;
        if (p > root) break;
        uint64_t start = std::max(p * p, (base + p - 1) / p * p);
        if ((start & 1) == 0) start += p;
        for (uint64_t i = (start - base - 1) / 2; i < seg.odd_count(); i += p) seg.clear(i);
    }
    return seg;
}

// -------------------------------------------------------
// PiIndex and its cache file
// -------------------------------------------------------
struct PiCheckpoint {
    uint64_t x = 0;
    uint64_t count = 0;
    bool operator==(const PiCheckpoint&) const = default;
};

class PiIndex {
public:
    PiIndex() = default;

    // Appends a checkpoint; x must exceed the last x and count must not decrease.
    void add(uint64_t x, uint64_t count)
    {
        if (!points_.empty()) {
            if (x <= points_.back().x) throw DomainError("pi checkpoints must be strictly ascending in x");
            if (count < points_.back().count) throw DomainError("pi checkpoint counts must be nondecreasing");
        }
        points_.push_back({x, count});
    }

    const std::vector<PiCheckpoint>& checkpoints() const noexcept { return points_; }
    bool empty() const noexcept { return points_.empty(); }
    uint64_t coverage_limit() const noexcept { return points_.empty() ? 0 : points_.back().x; }

    std::optional<uint64_t> exact(uint64_t x) const
    {
        auto it = std::lower_bound(points_.begin(), points_.end(), x,
                                   [](const PiCheckpoint& c, uint64_t v) { return c.x < v; });
        if (it != points_.end() && it->x == x) return it->count;
        return std::nullopt;
    }

    // Largest checkpoint with x' <= x, or (0, 0).
    PiCheckpoint floor(uint64_t x) const
    {
        auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                   [](uint64_t v, const PiCheckpoint& c) { return v < c.x; });
        if (it == points_.begin()) return {};
        return *std::prev(it);
    }

    bool operator==(const PiIndex&) const = default;

private:
    std::vector<PiCheckpoint> points_;
};

inline constexpr const char* kPiCacheMagic = "GOLDBACH-PI v1";

inline void write_pi_cache(const PiIndex& index, std::ostream& out)
{
    out << kPiCacheMagic << '\n';
    for (const auto& c : index.checkpoints()) out << c.x << '\t' << c.count << '\n';
}

inline PiIndex read_pi_cache(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw FormatError("missing header", 1);
    if (line != kPiCacheMagic) throw FormatError("bad header, expected '" + std::string(kPiCacheMagic) + "'", 1);

    auto parse_u64 = [](const std::string& s, std::size_t line_no) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError("expected decimal integer, got '" + s + "'", line_no);
        try {
            return static_cast<uint64_t>(std::stoull(s));
        } catch (const std::out_of_range&) {
            throw FormatError("integer out of range: " + s, line_no);
        }
    };

    PiIndex index;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw FormatError("expected 'x<TAB>pi(x)'", line_no);
        uint64_t x = parse_u64(line.substr(0, tab), line_no);
        uint64_t c = parse_u64(line.substr(tab + 1), line_no);
        try {
            index.add(x, c);
        } catch (const DomainError& e) {
            throw FormatError(e.what(), line_no);
        }
    }
    return index;
}

inline void save_pi_cache(const PiIndex& index, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_pi_cache(index, out);
    if (!out) throw IoError("failed writing '" + path + "'");
}

inline PiIndex load_pi_cache(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_pi_cache(in);
}

// -------------------------------------------------------
// PrimeEngine
// -------------------------------------------------------
struct EngineConfig {
    uint64_t sieve_limit = kDefaultSieveLimit;
    uint64_t segment_size = kDefaultSegmentSize;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
};

class PrimeEngine {
public:
    explicit PrimeEngine(EngineConfig config = {}, PiIndex index = {})
        : config_(config), index_(std::move(index))
    {
        if (config_.sieve_limit < 2) throw DomainError("sieve limit must be at least 2");
        if (config_.workers < 1) throw DomainError("workers must be at least 1");
        config_.segment_size = std::max<uint64_t>(64, config_.segment_size & ~uint64_t{1});
    }

    const EngineConfig& config() const noexcept { return config_; }
    const PiIndex& index() const noexcept { return index_; }
    uint64_t limit() const noexcept { return config_.sieve_limit; }
    unsigned workers() const noexcept { return config_.workers; }
    uint64_t segment_size() const noexcept { return config_.segment_size; }

    void require_coverage(uint64_t x) const
    {
        if (x > config_.sieve_limit)
            throw ResourceError("value " + std::to_string(x) + " exceeds sieve limit " +
                                std::to_string(config_.sieve_limit));
    }

    SievedSegment segment(uint64_t base, uint64_t length) const
    {
        return sieve_segment(base, length, config_.sieve_limit);
    }

    // Segment covering at least [lo, hi] (inclusive), with an even base.
    SievedSegment window(uint64_t lo, uint64_t hi) const
    {
        const uint64_t base = lo & ~uint64_t{1};
        return segment(base, std::max<uint64_t>(2, hi - base + 1));
    }

    bool is_prime(uint64_t n) const
    {
        if (n < 2) return false;
        if (n == 2) return true;
        if ((n & 1) == 0) return false;
        require_coverage(n);
        return window(n, n).test(n);
    }

    // Number of primes p with lo <= p <= hi.
    uint64_t count_primes(uint64_t lo, uint64_t hi) const
    {
        if (hi < lo) return 0;
        require_coverage(hi);
        const uint64_t base = lo & ~uint64_t{1};
        const uint64_t seg = config_.segment_size;
        const uint64_t chunks = (hi - base) / seg + 1;
        std::vector<uint64_t> counts(chunks, 0);
        parallel_for(chunks, config_.workers, [&](std::size_t c) {
            const uint64_t b = base + c * seg;
            const uint64_t e = std::min(hi, b + seg - 1);
            counts[c] = window(b, e).count_between(lo, e);
        });
        uint64_t total = 0;
        for (uint64_t c : counts) total += c;
        return total;
    }

    // Exact pi(x): number of primes <= x, including 2.
    uint64_t pi(uint64_t x) const
    {
        if (auto hit = index_.exact(x)) return *hit;
        require_coverage(x);
        const PiCheckpoint from = index_.floor(x);
        return from.count + count_primes(from.x + 1, x);
    }

    // Exact pi at each of the given values, returned as an index.
    PiIndex build_index(std::vector<uint64_t> xs) const
    {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        PiIndex out;
        uint64_t prev_x = 0, running = 0;
        for (uint64_t x : xs) {
            if (auto hit = index_.exact(x)) {
                running = *hit;
            } else {
                PiCheckpoint from = index_.floor(x);
                if (from.x < prev_x) from = {prev_x, running};
                running = from.count + count_primes(from.x + 1, x);
            }
            out.add(x, running);
            prev_x = x;
        }
        return out;
    }

private:
    EngineConfig config_;
    PiIndex index_;
};

} // namespace goldbach
