#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "champlab/census_cache.hpp"
#include "champlab/errors.hpp"
#include "champlab/gap_census.hpp"
#include "champlab/singular_series.hpp"
#include "oracle.hpp"

using namespace champlab;

namespace {

void check_against_walk(const GapCensus& c, const oracle::WalkCensus& w) {
    CHECK(c.counts == w.counts);
    CHECK(c.total_primes == w.primes);
    CHECK(c.champions == w.champions);
}

double li_closed(unsigned k, double x) {
    // li1 = li(x) - li(2), li2 = li1 - x/log x + 2/log 2
    const double li1 = boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0));
    if (k == 1) return li1;
    return li1 - x / std::log(x) + 2.0 / std::log(2.0);
}

}  // namespace

TEST_SUITE("gap_census") {

TEST_CASE("census(100)") {
    const GapCensus c = census(100);
    const std::map<std::uint64_t, std::uint64_t> expect{{1, 1}, {2, 8}, {4, 7}, {6, 7}, {8, 1}};
    CHECK(c.counts == expect);
    CHECK(c.champions == std::vector<std::uint64_t>{2});
    CHECK(c.n_star == 8);
    CHECK(c.total_primes == 25);
}

TEST_CASE("gap attribution uses the larger prime") {
    CHECK(census(3).counts == std::map<std::uint64_t, std::uint64_t>{{1, 1}});
    CHECK(census(4).counts == std::map<std::uint64_t, std::uint64_t>{{1, 1}});
    CHECK(census(5).count(2) == 1);
    CHECK(census(6).champions == std::vector<std::uint64_t>{1, 2});
    CHECK(census(126).count(14) == 0);
    CHECK(census(127).count(14) == 1);
    CHECK_THROWS_AS(census(2), DomainError);
}

TEST_CASE("census agrees with the walk oracle for every x up to 3000") {
    SieveConfig cfg;
    cfg.segment_slots = 64;
    for (std::uint64_t x = 3; x <= 3000; ++x) {
        CAPTURE(x);
        check_against_walk(census(x, cfg), oracle::walk_census(x));
    }
}

TEST_CASE("census agrees with the walk oracle at sampled x up to 1e5") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> dist(3000, 100000);
    SieveConfig cfg;
    cfg.segment_slots = 128;
    cfg.threads = 3;
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t x = dist(rng);
        CAPTURE(x);
        check_against_walk(census(x, cfg), oracle::walk_census_sieved(x));
    }
    check_against_walk(census(100000), oracle::walk_census(100000));
}

TEST_CASE("census at 1e6 matches the frozen snapshot") {
    std::ifstream in(CHAMPLAB_TEST_DATA "/census_1e6.csv", std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    const GapCensus c = census(1000000);
    CHECK(render_census_cache(c) == ss.str());
    CHECK(c.champions == std::vector<std::uint64_t>{6});
    check_against_walk(c, oracle::walk_census_sieved(1000000));
}

TEST_CASE("census is independent of thread count and segment size") {
    const GapCensus ref = census(2000000);
    for (unsigned threads : {2U, 5U}) {
        for (std::uint64_t slots : {1000ULL, 1ULL << 16}) {
            SieveConfig cfg;
            cfg.threads = threads;
            cfg.segment_slots = slots;
            CHECK(census(2000000, cfg) == ref);
        }
    }
}

TEST_CASE("merging parts is associative and order-free") {
    const std::uint64_t x = 50000;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::uint64_t> cut(1, x - 2);
        std::uint64_t a = cut(rng), b = cut(rng);
        if (a > b) std::swap(a, b);
        if (a == b) ++b;
        const CensusPart p = census_part(0, a);
        const CensusPart q = census_part(a + 1, b);
        const CensusPart r = census_part(b + 1, x);
        const CensusPart left = merge(merge(p, q), r);
        const CensusPart right = merge(p, merge(q, r));
        CHECK(left == right);
        CHECK(merge(q, p) == merge(p, q));
        CHECK(left.counts == oracle::walk_census_sieved(x).counts);
    }
    CHECK_THROWS_AS(merge(census_part(0, 100), census_part(200, 300)), DomainError);
}

TEST_CASE("empty and single-prime parts merge cleanly") {
    const CensusPart empty = census_part(24, 28);
    CHECK(empty.prime_count == 0);
    CHECK_FALSE(empty.first_prime.has_value());
    const CensusPart one = census_part(29, 30);
    const CensusPart joined = merge(merge(census_part(0, 23), empty), one);
    CHECK(joined.counts == census_part(0, 30).counts);
    CHECK(joined.counts.at(6) == 1);
}

TEST_CASE("tuple counts against brute force") {
    const std::uint64_t x = 100000;
    const TupleCounter counter(x);
    for (std::uint64_t d : {2ULL, 4ULL, 6ULL, 8ULL, 30ULL, 210ULL}) {
        CHECK(counter.pair(d).count == oracle::brute_pattern(x, {d}));
    }
    CHECK(counter.triple(2, 6).count == oracle::brute_pattern(x, {2, 6}));
    CHECK(counter.triple(4, 6).count == oracle::brute_pattern(x, {4, 6}));
    CHECK(counter.triple(2, 4).count == oracle::brute_pattern(x, {2, 4}));
    CHECK(counter.quad(2, 6, 8).count == oracle::brute_pattern(x, {2, 6, 8}));
    CHECK(counter.quad(6, 8, 12).count == oracle::brute_pattern(x, {6, 8, 12}));
    CHECK(counter.count({1}) == oracle::brute_pattern(x, {1}));
    CHECK(counter.count({1, 3}) == oracle::brute_pattern(x, {1, 3}));
    CHECK(counter.count({3}) == oracle::brute_pattern(x, {3}));

    const TupleCount t = counter.triple(2, 6);
    CHECK(t.offsets == OffsetSet{0, 4, 6});
    CHECK(t.shifts == std::vector<std::uint64_t>{2, 6});
}

TEST_CASE("tuple counts on many workers and at awkward limits") {
    for (std::uint64_t x : {5ULL, 64ULL, 127ULL, 128ULL, 129ULL, 4097ULL, 333333ULL}) {
        SieveConfig cfg;
        cfg.threads = 4;
        cfg.segment_slots = 256;
        const TupleCounter counter(x, cfg);
        CAPTURE(x);
        CHECK(counter.pair(2).count == oracle::brute_pattern(x, {2}));
        CHECK(counter.triple(2, 6).count == oracle::brute_pattern(x, {2, 6}));
        CHECK(counter.count({1}) == oracle::brute_pattern(x, {1}));
    }
}

TEST_CASE("tuple argument checks") {
    const TupleCounter counter(1000);
    CHECK_THROWS_AS(counter.pair(3), DomainError);
    CHECK_THROWS_AS(counter.pair(0), DomainError);
    CHECK_THROWS_AS(counter.triple(6, 6), DomainError);
    CHECK_THROWS_AS(counter.triple(6, 2), DomainError);
    CHECK_THROWS_AS(counter.quad(2, 2, 6), DomainError);
}

TEST_CASE("exclusion chain brackets the census count") {
    for (std::uint64_t x : {10000ULL, 60000ULL}) {
        const TupleCounter counter(x);
        const GapCensus c = census(x);
        for (std::uint64_t d = 2; d <= 40; d += 2) {
            for (std::uint64_t D = 1; D <= d; ++D) {
                const ExclusionChain ch = counter.exclusion_chain(d, D, c);
                CAPTURE(x);
                CAPTURE(d);
                CAPTURE(D);
                CHECK(ch.holds);
                CHECK(ch.lower <= static_cast<std::int64_t>(ch.census_count));
                CHECK(static_cast<std::int64_t>(ch.census_count) <= ch.upper);
                CHECK(ch.census_count == c.count(d));
            }
        }
    }
}

TEST_CASE("exclusion chain pieces match brute force") {
    const std::uint64_t x = 20000;
    const ExclusionChain ch = exclusion_chain(x, 12, 8);
    CHECK(ch.pi2 == oracle::brute_pattern(x, {12}));
    std::uint64_t s3 = 0, s3t = 0, s4 = 0;
    for (std::uint64_t a = 1; a < 12; ++a) {
        const auto n = oracle::brute_pattern(x, {a, 12});
        s3 += n;
        if (a < 8) s3t += n;
    }
    for (std::uint64_t a = 1; a < 8; ++a) {
        for (std::uint64_t b = a + 1; b < 8; ++b) s4 += oracle::brute_pattern(x, {a, b, 12});
    }
    CHECK(ch.sum_pi3 == s3);
    CHECK(ch.sum_pi3_truncated == s3t);
    CHECK(ch.sum_pi4 == s4);
    CHECK(ch.lower == static_cast<std::int64_t>(ch.pi2) - static_cast<std::int64_t>(s3));
    CHECK(ch.upper == static_cast<std::int64_t>(ch.pi2) - static_cast<std::int64_t>(s3t) +
                          static_cast<std::int64_t>(s4));
}

TEST_CASE("log integrals") {
    for (double x : {10.0, 1000.0, 1e6, 1e9, 1e12}) {
        CAPTURE(x);
        CHECK(log_integral_k(1, x) == doctest::Approx(li_closed(1, x)).epsilon(1e-9));
        CHECK(log_integral_k(2, x) == doctest::Approx(li_closed(2, x)).epsilon(1e-9));
    }
    // li3 by the recurrence li_{k+1} = (li_k - x/log^k x + 2/log^k 2) / k
    for (double x : {100.0, 1e5, 1e8}) {
        const double li3 = (li_closed(2, x) - x / std::pow(std::log(x), 2) + 2.0 / std::pow(std::log(2.0), 2)) / 2.0;
        CHECK(log_integral_k(3, x) == doctest::Approx(li3).epsilon(1e-9));
    }
    CHECK(log_integral_k(2, 2.0) == 0.0);
}

TEST_CASE("pair comparison and sieve bound") {
    const TupleCounter counter(1000000);
    const PairComparison pc = compare_pair(counter, 6);
    CHECK(pc.count == oracle::brute_pattern(1000000, {6}));
    CHECK(pc.sigma == doctest::Approx(4.0 * twin_prime_constant_memo()).epsilon(1e-14));
    CHECK(pc.ratio_li2 == doctest::Approx(pc.count / (pc.sigma * pc.li2)));
    CHECK(pc.ratio_li2 > 0.9);
    CHECK(pc.ratio_li2 < 1.1);

    const SieveBoundCheck sb = sieve_bound_check(counter, {2, 6});
    CHECK(sb.holds);
    CHECK(sb.tuple.count == oracle::brute_pattern(1000000, {2, 6}));
    const double lx = std::log(1e6);
    CHECK(sb.bound == doctest::Approx(48.0 * sb.sigma * 1e6 / (lx * lx * lx) * 1.1).epsilon(1e-12));
}

}
