#pragma once

// Segmented, odd-only sieve of Eratosthenes.
//
// Slot j of a segment starting at (even) `lo` stands for the odd number
// lo + 2j + 1. A set bit means composite; 2 is emitted by a special case.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace champlab {

struct SieveConfig {
    /// Odd slots per segment (2^20 slots = 128 KiB of bits).
    std::uint64_t segment_slots = std::uint64_t{1} << 20;
    /// Largest sieve limit accepted; the budget named in capacity errors.
    std::uint64_t max_limit = 10'000'000'000ULL;
    /// Worker count; 0 means hardware concurrency.
    unsigned threads = 1;
};

/// Base primes (odd, >= 3) up to floor(sqrt(limit)), shared read-only.
using BasePrimes = std::shared_ptr<const std::vector<std::uint32_t>>;

BasePrimes make_base_primes(std::uint64_t limit);

/// One sieved window [lo, hi) of the integers, odd numbers only.
class SieveSegment {
public:
    /// Sieves [lo, hi); lo and hi must be even and hi - lo <= 2 * slots.
    SieveSegment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& base);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t slots() const { return (hi_ - lo_) / 2; }

    /// True iff lo + 2j + 1 is prime.
    bool prime_slot(std::uint64_t j) const { return ((bits_[j >> 6] >> (j & 63)) & 1U) == 0; }

    /// Calls fn(p) for every prime p in [lo, hi) with p <= cap, ascending.
    template <typename Fn>
    void for_each_prime(std::uint64_t cap, Fn&& fn) const {
        const std::uint64_t n = slots();
        for (std::uint64_t w = 0; w * 64 < n; ++w) {
            std::uint64_t free = ~bits_[w];
            if ((w + 1) * 64 > n) free &= (std::uint64_t{1} << (n - w * 64)) - 1;
            while (free != 0) {
                const std::uint64_t j = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(free));
                const std::uint64_t p = lo_ + 2 * j + 1;
                if (p > cap) return;
                fn(p);
                free &= free - 1;
            }
        }
    }

    std::span<const std::uint64_t> words() const { return bits_; }

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> bits_;
};

/// Pull-style stream over the primes p <= limit in increasing order.
class PrimeStream {
public:
    PrimeStream(std::uint64_t limit, const SieveConfig& config);

    std::optional<std::uint64_t> next();
    std::uint64_t limit() const { return limit_; }

    class iterator {
    public:
        using value_type = std::uint64_t;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        explicit iterator(PrimeStream* s) : stream_(s) { advance(); }
        std::uint64_t operator*() const { return current_; }
        iterator& operator++() {
            advance();
            return *this;
        }
        void operator++(int) { advance(); }
        bool operator==(std::default_sentinel_t) const { return stream_ == nullptr; }

    private:
        void advance() {
            auto v = stream_->next();
            if (v)
                current_ = *v;
            else
                stream_ = nullptr;
        }
        PrimeStream* stream_ = nullptr;
        std::uint64_t current_ = 0;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() { return {}; }

private:
    void load_segment();

    std::uint64_t limit_;
    SieveConfig config_;
    BasePrimes base_;
    bool emitted_two_ = false;
    std::uint64_t next_lo_ = 0;
    std::vector<std::uint64_t> buffer_;
    std::size_t cursor_ = 0;
};

/// Throws CapacityError when limit exceeds config.max_limit.
void check_sieve_budget(std::uint64_t limit, const SieveConfig& config);

PrimeStream primes_up_to(std::uint64_t limit, const SieveConfig& config = {});

/// Calls fn(p) for every prime p <= limit, in increasing order. Segments
/// are sieved on config.threads workers in batches and delivered in order.
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& fn,
                    const SieveConfig& config = {});

std::vector<std::uint64_t> prime_list(std::uint64_t limit, const SieveConfig& config = {});

/// pi(limit).
std::uint64_t prime_count(std::uint64_t limit, const SieveConfig& config = {});

/// The n-th prime, p_1 = 2.
std::uint64_t nth_prime(std::uint64_t n, const SieveConfig& config = {});

/// Chebyshev theta(y) = sum of log p over p <= y, compensated summation.
double chebyshev_theta(std::uint64_t y, const SieveConfig& config = {});

/// Deterministic trial division; for arguments outside any sieve.
bool is_prime_trial(std::uint64_t n);

/// Distinct prime factors of n >= 1, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Primality of every integer in [0, limit], stored odd-only: bit i is
/// set iff 2i + 1 is prime. Shared read-only by the tuple scans.
class PrimalityBitset {
public:
    explicit PrimalityBitset(std::uint64_t limit, const SieveConfig& config = {});

    std::uint64_t limit() const { return limit_; }
    bool is_prime(std::uint64_t n) const;

    /// 64 bits starting at bit position `pos`; positions outside
    /// [0, bit_count) read as zero.
    std::uint64_t window(std::int64_t pos) const;

    std::uint64_t bit_count() const { return bit_count_; }
    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::uint64_t limit_;
    std::uint64_t bit_count_;
    std::vector<std::uint64_t> words_;
};

}  // namespace champlab
