#include "champlab/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "champlab/errors.hpp"
#include "champlab/parallel.hpp"

namespace champlab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Exclusive even upper end covering every odd number <= limit.
std::uint64_t odd_cover_end(std::uint64_t limit) { return limit + (limit & 1U); }

std::uint64_t segment_span(const SieveConfig& config) {
    if (config.segment_slots == 0) throw DomainError("segment_slots must be positive");
    return 2 * config.segment_slots;
}

}  // namespace

BasePrimes make_base_primes(std::uint64_t limit) {
    const std::uint64_t root = isqrt(limit);
    std::vector<char> composite(root + 1, 0);
    auto primes = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 3; i <= root; i += 2) {
        if (composite[i]) continue;
        primes->push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= root; j += 2 * i) composite[j] = 1;
    }
    return primes;
}

SieveSegment::SieveSegment(std::uint64_t lo, std::uint64_t hi,
                           const std::vector<std::uint32_t>& base)
    : lo_(lo), hi_(hi) {
    if ((lo & 1U) != 0 || (hi & 1U) != 0 || hi < lo)
        throw DomainError("segment bounds must be even and ordered");
    const std::uint64_t n = slots();
    bits_.assign((n + 63) / 64, 0);
    if (lo == 0 && n > 0) bits_[0] |= 1U;  // 1 is not prime
    for (std::uint32_t p32 : base) {
        const std::uint64_t p = p32;
        const std::uint64_t sq = p * p;
        if (sq >= hi) break;
        std::uint64_t start = std::max(sq, (lo + 1 + p - 1) / p * p);
        if ((start & 1U) == 0) start += p;
        for (std::uint64_t j = (start - lo - 1) / 2; j < n; j += p)
            bits_[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
}

void check_sieve_budget(std::uint64_t limit, const SieveConfig& config) {
    if (limit > config.max_limit)
        throw CapacityError("sieve limit " + std::to_string(limit) +
                            " exceeds budget max_limit=" + std::to_string(config.max_limit));
}

PrimeStream::PrimeStream(std::uint64_t limit, const SieveConfig& config)
    : limit_(limit), config_(config) {
    check_sieve_budget(limit, config);
    segment_span(config_);
    base_ = make_base_primes(odd_cover_end(limit));
}

void PrimeStream::load_segment() {
    buffer_.clear();
    cursor_ = 0;
    const std::uint64_t end = odd_cover_end(limit_);
    while (buffer_.empty() && next_lo_ < end) {
        const std::uint64_t hi = std::min(end, next_lo_ + segment_span(config_));
        SieveSegment seg(next_lo_, hi, *base_);
        seg.for_each_prime(limit_, [&](std::uint64_t p) { buffer_.push_back(p); });
        next_lo_ = hi;
    }
}

std::optional<std::uint64_t> PrimeStream::next() {
    if (!emitted_two_) {
        emitted_two_ = true;
        if (limit_ >= 2) return 2;
        next_lo_ = odd_cover_end(limit_);
        return std::nullopt;
    }
    if (cursor_ >= buffer_.size()) {
        load_segment();
        if (buffer_.empty()) return std::nullopt;
    }
    return buffer_[cursor_++];
}

PrimeStream primes_up_to(std::uint64_t limit, const SieveConfig& config) {
    return PrimeStream(limit, config);
}

void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& fn,
                    const SieveConfig& config) {
    check_sieve_budget(limit, config);
    if (limit < 2) return;
    fn(2);
    const std::uint64_t end = odd_cover_end(limit);
    const std::uint64_t span = segment_span(config);
    const BasePrimes base = make_base_primes(end);
    const unsigned threads = config.threads == 0 ? default_threads() : config.threads;

    if (threads <= 1) {
        for (std::uint64_t lo = 0; lo < end; lo += span) {
            SieveSegment seg(lo, std::min(end, lo + span), *base);
            seg.for_each_prime(limit, fn);
        }
        return;
    }

    const std::uint64_t batch = std::uint64_t{threads} * 4;
    std::vector<std::optional<SieveSegment>> segments(batch);
    for (std::uint64_t lo = 0; lo < end; lo += batch * span) {
        const std::uint64_t count = std::min(batch, (end - lo + span - 1) / span);
        parallel_for(count, threads, [&](std::size_t i) {
            const std::uint64_t s = lo + i * span;
            segments[i].emplace(s, std::min(end, s + span), *base);
        });
        for (std::uint64_t i = 0; i < count; ++i) {
            segments[i]->for_each_prime(limit, fn);
            segments[i].reset();
        }
    }
}

std::vector<std::uint64_t> prime_list(std::uint64_t limit, const SieveConfig& config) {
    std::vector<std::uint64_t> out;
    if (limit >= 10) {
        const double l = static_cast<double>(limit);
        out.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)) + 16);
    }
    for_each_prime(limit, [&](std::uint64_t p) { out.push_back(p); }, config);
    return out;
}

std::uint64_t prime_count(std::uint64_t limit, const SieveConfig& config) {
    check_sieve_budget(limit, config);
    if (limit < 2) return 0;
    const std::uint64_t end = odd_cover_end(limit);
    const std::uint64_t span = segment_span(config);
    const BasePrimes base = make_base_primes(end);
    const std::uint64_t nseg = (end + span - 1) / span;
    std::vector<std::uint64_t> counts(nseg, 0);
    parallel_for(nseg, config.threads, [&](std::size_t i) {
        const std::uint64_t lo = i * span;
        SieveSegment seg(lo, std::min(end, lo + span), *base);
        std::uint64_t c = 0;
        seg.for_each_prime(limit, [&](std::uint64_t) { ++c; });
        counts[i] = c;
    });
    std::uint64_t total = 1;  // the prime 2
    for (auto c : counts) total += c;
    return total;
}

std::uint64_t nth_prime(std::uint64_t n, const SieveConfig& config) {
    if (n == 0) throw DomainError("nth_prime: n must be >= 1");
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11};
    if (n <= 5) return small[n - 1];
    // p_n < n (ln n + ln ln n) for n >= 6
    const double dn = static_cast<double>(n);
    const double bound = dn * (std::log(dn) + std::log(std::log(dn)));
    if (bound >= static_cast<double>(config.max_limit))
        throw CapacityError("nth_prime: p_" + std::to_string(n) +
                            " may exceed budget max_limit=" + std::to_string(config.max_limit));
    const auto limit = static_cast<std::uint64_t>(bound) + 1;
    std::uint64_t seen = 0;
    for (std::uint64_t p : primes_up_to(limit, config))
        if (++seen == n) return p;
    throw CapacityError("nth_prime: bound too small for n=" + std::to_string(n));
}

double chebyshev_theta(std::uint64_t y, const SieveConfig& config) {
    CompensatedSum sum;
    for_each_prime(y, [&](std::uint64_t p) { sum.add(std::log(static_cast<double>(p))); }, config);
    return sum.value();
}

bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t i = 3; i <= n / i; i += 2)
        if (n % i == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    if (n == 0) throw DomainError("prime_factors: n must be >= 1");
    std::vector<std::uint64_t> out;
    if (n % 2 == 0) {
        out.push_back(2);
        while (n % 2 == 0) n /= 2;
    }
    for (std::uint64_t i = 3; i <= n / i; i += 2) {
        if (n % i != 0) continue;
        out.push_back(i);
        while (n % i == 0) n /= i;
    }
    if (n > 1) out.push_back(n);
    return out;
}

PrimalityBitset::PrimalityBitset(std::uint64_t limit, const SieveConfig& config)
    : limit_(limit), bit_count_((limit + 1) / 2) {
    check_sieve_budget(limit, config);
    words_.assign((bit_count_ + 63) / 64, 0);
    if (bit_count_ == 0) return;

    // Word-aligned segments so each worker owns whole words.
    const std::uint64_t slots = (std::max<std::uint64_t>(config.segment_slots, 64) + 63) / 64 * 64;
    const std::uint64_t end = 2 * bit_count_;
    const BasePrimes base = make_base_primes(end);
    const std::uint64_t nseg = (bit_count_ + slots - 1) / slots;
    parallel_for(nseg, config.threads, [&](std::size_t i) {
        const std::uint64_t lo = 2 * i * slots;
        SieveSegment seg(lo, std::min(end, lo + 2 * slots), *base);
        const auto src = seg.words();
        const std::size_t w0 = i * slots / 64;
        for (std::size_t w = 0; w < src.size(); ++w) words_[w0 + w] = ~src[w];
    });
    if (bit_count_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (bit_count_ % 64)) - 1;
}

bool PrimalityBitset::is_prime(std::uint64_t n) const {
    if (n > limit_) throw DomainError("PrimalityBitset::is_prime: argument beyond limit");
    if (n == 2) return true;
    if ((n & 1U) == 0) return false;
    const std::uint64_t i = n / 2;
    return ((words_[i >> 6] >> (i & 63)) & 1U) != 0;
}

std::uint64_t PrimalityBitset::window(std::int64_t pos) const {
    auto word = [&](std::int64_t wi) -> std::uint64_t {
        if (wi < 0 || static_cast<std::uint64_t>(wi) >= words_.size()) return 0;
        return words_[static_cast<std::size_t>(wi)];
    };
    const std::int64_t wi = pos >= 0 ? pos / 64 : -((-pos + 63) / 64);
    const auto off = static_cast<unsigned>(pos - wi * 64);
    std::uint64_t out = word(wi) >> off;
    if (off != 0) out |= word(wi + 1) << (64 - off);
    return out;
}

}  // namespace champlab
