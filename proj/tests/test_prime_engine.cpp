#include <doctest.h>

#include <cmath>

#include "champlab/errors.hpp"
#include "champlab/prime_engine.hpp"
#include "oracle.hpp"

using namespace champlab;

TEST_SUITE("prime_engine") {

TEST_CASE("prime_list matches a plain sieve across segment sizes and thread counts") {
    const auto expect = oracle::naive_primes(200000);
    for (std::uint64_t slots : {64ULL, 1000ULL, 4096ULL, 1ULL << 20}) {
        for (unsigned threads : {1U, 3U}) {
            SieveConfig cfg;
            cfg.segment_slots = slots;
            cfg.threads = threads;
            CAPTURE(slots);
            CAPTURE(threads);
            CHECK(prime_list(200000, cfg) == expect);
        }
    }
}

TEST_CASE("small limits") {
    CHECK(prime_list(0).empty());
    CHECK(prime_list(1).empty());
    CHECK(prime_list(2) == std::vector<std::uint64_t>{2});
    CHECK(prime_list(3) == std::vector<std::uint64_t>{2, 3});
    CHECK(prime_list(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    for (std::uint64_t n = 0; n < 300; ++n) {
        CHECK(prime_list(n) == oracle::naive_primes(n));
    }
}

TEST_CASE("PrimeStream yields the same sequence as the list") {
    SieveConfig cfg;
    cfg.segment_slots = 512;
    std::vector<std::uint64_t> got;
    for (auto p : primes_up_to(50000, cfg)) got.push_back(p);
    CHECK(got == oracle::naive_primes(50000));

    PrimeStream s(10, cfg);
    CHECK(s.next() == 2U);
    CHECK(s.next() == 3U);
    CHECK(s.next() == 5U);
    CHECK(s.next() == 7U);
    CHECK_FALSE(s.next().has_value());
}

TEST_CASE("for_each_prime delivers in order on several workers") {
    SieveConfig cfg;
    cfg.segment_slots = 256;
    cfg.threads = 4;
    std::vector<std::uint64_t> got;
    for_each_prime(100000, [&](std::uint64_t p) { got.push_back(p); }, cfg);
    CHECK(got == oracle::naive_primes(100000));
}

TEST_CASE("prime counts") {
    CHECK(prime_count(100) == 25);
    CHECK(prime_count(1000000) == 78498);
    CHECK(prime_count(10000000) == oracle::naive_primes(10000000).size());
}

TEST_CASE("nth_prime") {
    const auto list = oracle::naive_primes(200000);
    for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 5ULL, 6ULL, 7ULL, 100ULL, 1000ULL, 10000ULL, 17984ULL}) {
        CHECK(nth_prime(n) == list[n - 1]);
    }
    CHECK_THROWS_AS(nth_prime(0), DomainError);
}

TEST_CASE("chebyshev theta against a direct sum") {
    long double direct = 0.0L;
    for (auto p : oracle::naive_primes(300000)) direct += std::log(static_cast<long double>(p));
    CHECK(chebyshev_theta(300000) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-13));
    CHECK(chebyshev_theta(1) == 0.0);
}

TEST_CASE("trial division and factoring") {
    const auto is = oracle::naive_sieve(20000);
    for (std::uint64_t n = 0; n <= 20000; ++n) CHECK(is_prime_trial(n) == is[n]);
    CHECK(is_prime_trial(1000000007ULL));
    CHECK_FALSE(is_prime_trial(1000000007ULL * 3));

    for (std::uint64_t n = 1; n <= 5000; ++n) {
        std::vector<std::uint64_t> expect;
        for (std::uint64_t q = 2; q <= n; ++q) {
            if (n % q == 0 && oracle::trial_prime(q)) expect.push_back(q);
        }
        CHECK(prime_factors(n) == expect);
    }
    CHECK(prime_factors(30030) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13});
}

TEST_CASE("primality bitset") {
    const std::uint64_t limit = 100003;
    SieveConfig cfg;
    cfg.segment_slots = 1024;
    cfg.threads = 2;
    const PrimalityBitset bits(limit, cfg);
    const auto is = oracle::naive_sieve(limit);
    for (std::uint64_t n = 0; n <= limit; ++n) CHECK(bits.is_prime(n) == is[n]);
    CHECK_THROWS_AS(bits.is_prime(limit + 2), DomainError);

    for (std::int64_t pos : {-70LL, -64LL, -3LL, 0LL, 1LL, 63LL, 64LL, 777LL, 50000LL, 50001LL}) {
        const std::uint64_t w = bits.window(pos);
        for (int b = 0; b < 64; ++b) {
            const std::int64_t i = pos + b;
            bool expect = false;
            if (i >= 0 && static_cast<std::uint64_t>(i) < bits.bit_count()) {
                const std::uint64_t n = 2 * static_cast<std::uint64_t>(i) + 1;
                expect = n <= limit && is[n];
            }
            CHECK(((w >> b) & 1U) == static_cast<std::uint64_t>(expect));
        }
    }
}

TEST_CASE("sieve budget") {
    SieveConfig cfg;
    cfg.max_limit = 1000;
    CHECK_NOTHROW(check_sieve_budget(1000, cfg));
    CHECK_THROWS_AS(check_sieve_budget(1001, cfg), CapacityError);
    CHECK_THROWS_AS(prime_list(5000, cfg), CapacityError);
}

}
