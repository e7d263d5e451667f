#include "champlab/gap_census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "champlab/errors.hpp"
#include "champlab/parallel.hpp"
#include "champlab/singular_series.hpp"

namespace champlab {

CensusPart census_part(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config) {
    if (hi < lo) throw DomainError("census_part: empty range");
    check_sieve_budget(hi, config);
    CensusPart part;
    part.lo = lo;
    part.hi = hi;
    auto visit = [&](std::uint64_t p) {
        if (part.last_prime)
            ++part.counts[p - *part.last_prime];
        else
            part.first_prime = p;
        part.last_prime = p;
        ++part.prime_count;
    };
    if (lo <= 2 && hi >= 2) visit(2);

    const std::uint64_t start = lo & ~std::uint64_t{1};
    const std::uint64_t end = hi + (hi & 1U);  // covers odd numbers <= hi
    const std::uint64_t span = 2 * std::max<std::uint64_t>(config.segment_slots, 1);
    const BasePrimes base = make_base_primes(end);
    for (std::uint64_t s = start; s < end; s += span) {
        SieveSegment seg(s, std::min(end, s + span), *base);
        seg.for_each_prime(hi, [&](std::uint64_t p) {
            if (p >= lo) visit(p);
        });
    }
    return part;
}

CensusPart merge(const CensusPart& a, const CensusPart& b) {
    const CensusPart& left = a.lo <= b.lo ? a : b;
    const CensusPart& right = a.lo <= b.lo ? b : a;
    if (left.hi + 1 != right.lo) throw DomainError("merge: census ranges are not adjacent");
    CensusPart out = left;
    out.hi = right.hi;
    for (const auto& [d, c] : right.counts) out.counts[d] += c;
    if (left.last_prime && right.first_prime) ++out.counts[*right.first_prime - *left.last_prime];
    if (!out.first_prime) out.first_prime = right.first_prime;
    if (right.last_prime) out.last_prime = right.last_prime;
    out.prime_count += right.prime_count;
    return out;
}

void finalize_champions(GapCensus& census) {
    census.n_star = 0;
    census.champions.clear();
    for (const auto& [d, c] : census.counts) census.n_star = std::max(census.n_star, c);
    for (const auto& [d, c] : census.counts)
        if (c == census.n_star) census.champions.push_back(d);
}

GapCensus census(std::uint64_t x, const SieveConfig& config) {
    if (x < 3) throw DomainError("census: x must be >= 3");
    check_sieve_budget(x, config);
    const std::uint64_t span = 16 * 2 * std::max<std::uint64_t>(config.segment_slots, 1);
    const std::uint64_t nparts = x / span + 1;
    std::vector<CensusPart> parts(nparts);
    SieveConfig inner = config;
    inner.threads = 1;
    parallel_for(nparts, config.threads, [&](std::size_t i) {
        const std::uint64_t lo = i * span;
        const std::uint64_t hi = std::min(x, lo + span - 1);
        parts[i] = census_part(lo, hi, inner);
    });
    CensusPart whole = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) whole = merge(whole, parts[i]);

    GapCensus out;
    out.x = x;
    out.counts = std::move(whole.counts);
    out.total_primes = whole.prime_count;
    finalize_champions(out);
    return out;
}

// ---------------------------------------------------------------------------
// Tuple scans

TupleCounter::TupleCounter(std::uint64_t x, const SieveConfig& config)
    : bits_(x, config), threads_(config.threads) {
    if (x < 3) throw DomainError("TupleCounter: x must be >= 3");
}

std::uint64_t TupleCounter::count(const std::vector<std::uint64_t>& shifts) const {
    const std::uint64_t x = bits_.limit();
    const bool all_even =
        std::all_of(shifts.begin(), shifts.end(), [](std::uint64_t s) { return s % 2 == 0; });

    auto all_prime = [&](std::uint64_t p) {
        if (p > x || !bits_.is_prime(p)) return false;
        for (auto s : shifts)
            if (s > p || !bits_.is_prime(p - s)) return false;
        return true;
    };

    // Tuples through the even prime: some p - s equals 2.
    std::uint64_t total = 0;
    if (all_prime(2)) ++total;
    for (auto s : shifts)
        if (all_prime(2 + s)) ++total;

    // Odd p with all p - s odd primes: AND of shifted bit windows.
    if (all_even && !shifts.empty()) {
        const auto words = bits_.words();
        const std::size_t nwords = words.size();
        const std::size_t chunk = 1 << 14;
        const std::size_t nchunks = (nwords + chunk - 1) / chunk;
        std::vector<std::uint64_t> partial(nchunks, 0);
        parallel_for(nchunks, threads_, [&](std::size_t c) {
            std::uint64_t sum = 0;
            const std::size_t end = std::min(nwords, (c + 1) * chunk);
            for (std::size_t w = c * chunk; w < end; ++w) {
                std::uint64_t acc = words[w];
                const auto base = static_cast<std::int64_t>(w * 64);
                for (auto s : shifts) {
                    if (acc == 0) break;
                    acc &= bits_.window(base - static_cast<std::int64_t>(s / 2));
                }
                sum += static_cast<std::uint64_t>(std::popcount(acc));
            }
            partial[c] = sum;
        });
        for (auto v : partial) total += v;
    } else if (shifts.empty()) {
        for (auto w : bits_.words()) total += static_cast<std::uint64_t>(std::popcount(w));
    }
    return total;
}

TupleCount TupleCounter::make_count(std::vector<std::uint64_t> shifts) const {
    std::sort(shifts.begin(), shifts.end());
    TupleCount out;
    out.x = bits_.limit();
    std::vector<std::uint64_t> offs{shifts.back()};
    for (auto s : shifts) offs.push_back(shifts.back() - s);
    out.offsets = OffsetSet(std::move(offs));
    out.count = count(shifts);
    out.shifts = std::move(shifts);
    return out;
}

namespace {
void require_even(std::uint64_t d, const char* what) {
    if (d < 2 || d % 2 != 0)
        throw DomainError(std::string(what) + ": offsets must be even and >= 2, got " +
                          std::to_string(d));
}
}  // namespace

TupleCount TupleCounter::pair(std::uint64_t d) const {
    require_even(d, "pair_count");
    return make_count({d});
}

TupleCount TupleCounter::triple(std::uint64_t d_prime, std::uint64_t d) const {
    require_even(d_prime, "triple_count");
    require_even(d, "triple_count");
    if (d_prime >= d) throw DomainError("triple_count: requires d' < d");
    return make_count({d_prime, d});
}

TupleCount TupleCounter::quad(std::uint64_t d1, std::uint64_t d2, std::uint64_t d) const {
    require_even(d1, "quad_count");
    require_even(d2, "quad_count");
    require_even(d, "quad_count");
    if (!(d1 < d2 && d2 < d)) throw DomainError("quad_count: requires d1 < d2 < d");
    return make_count({d1, d2, d});
}

ExclusionChain TupleCounter::exclusion_chain(std::uint64_t d, std::uint64_t D,
                                             const GapCensus& census) const {
    require_even(d, "exclusion_chain");
    if (D < 1 || D > d) throw DomainError("exclusion_chain: D must satisfy 1 <= D <= d");
    if (census.x != bits_.limit()) throw DomainError("exclusion_chain: census bound mismatch");
    ExclusionChain out;
    out.x = bits_.limit();
    out.d = d;
    out.D = D;
    out.pi2 = count({d});
    for (std::uint64_t dp = 1; dp < d; ++dp) {
        const std::uint64_t c = count({dp, d});
        out.sum_pi3 += c;
        if (dp < D) out.sum_pi3_truncated += c;
    }
    for (std::uint64_t d2 = 2; d2 < D; ++d2)
        for (std::uint64_t d1 = 1; d1 < d2; ++d1) out.sum_pi4 += count({d1, d2, d});
    out.lower = static_cast<std::int64_t>(out.pi2) - static_cast<std::int64_t>(out.sum_pi3);
    out.upper = static_cast<std::int64_t>(out.pi2) -
                static_cast<std::int64_t>(out.sum_pi3_truncated) +
                static_cast<std::int64_t>(out.sum_pi4);
    out.census_count = census.count(d);
    const auto n = static_cast<std::int64_t>(out.census_count);
    out.holds = out.lower <= n && n <= out.upper;
    return out;
}

TupleCount pair_count(std::uint64_t x, std::uint64_t d, const SieveConfig& config) {
    require_even(d, "pair_count");
    return TupleCounter(x, config).pair(d);
}

TupleCount triple_count(std::uint64_t x, std::uint64_t d_prime, std::uint64_t d,
                        const SieveConfig& config) {
    require_even(d_prime, "triple_count");
    require_even(d, "triple_count");
    if (d_prime >= d) throw DomainError("triple_count: requires d' < d");
    return TupleCounter(x, config).triple(d_prime, d);
}

TupleCount quad_count(std::uint64_t x, std::uint64_t d1, std::uint64_t d2, std::uint64_t d,
                      const SieveConfig& config) {
    if (!(d1 < d2 && d2 < d)) throw DomainError("quad_count: requires d1 < d2 < d");
    return TupleCounter(x, config).quad(d1, d2, d);
}

ExclusionChain exclusion_chain(std::uint64_t x, std::uint64_t d, std::uint64_t D,
                               const SieveConfig& config) {
    require_even(d, "exclusion_chain");
    if (D < 1 || D > d) throw DomainError("exclusion_chain: D must satisfy 1 <= D <= d");
    const TupleCounter counter(x, config);
    return counter.exclusion_chain(d, D, census(x, config));
}

// ---------------------------------------------------------------------------
// Comparators

double log_integral_k(unsigned k, double x) {
    if (x < 2.0) throw DomainError("log_integral_k: x must be >= 2");
    if (x == 2.0) return 0.0;
    // t = e^u
    auto f = [k](double u) { return std::exp(u) / std::pow(u, static_cast<double>(k)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(2.0),
                                                                         std::log(x), 30, 1e-13);
}

PairComparison compare_pair(const TupleCounter& counter, std::uint64_t d) {
    PairComparison out;
    out.x = counter.x();
    out.d = d;
    out.count = counter.pair(d).count;
    out.sigma = sigma_pair(d).value;
    const double x = static_cast<double>(out.x);
    const double lx = std::log(x);
    out.li2 = log_integral_k(2, x);
    out.x_over_log2 = x / (lx * lx);
    out.ratio_li2 = static_cast<double>(out.count) / (out.sigma * out.li2);
    out.ratio_log2 = static_cast<double>(out.count) / (out.sigma * out.x_over_log2);
    return out;
}

SieveBoundCheck sieve_bound_check(const TupleCounter& counter,
                                  const std::vector<std::uint64_t>& shifts, double headroom) {
    if (shifts.empty()) throw DomainError("sieve_bound_check: need at least one shift");
    for (auto s : shifts) require_even(s, "sieve_bound_check");
    SieveBoundCheck out;
    auto sorted = shifts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("sieve_bound_check: shifts must be distinct");
    out.tuple.x = counter.x();
    out.tuple.count = counter.count(sorted);
    std::vector<std::uint64_t> offs{sorted.back()};
    for (auto s : sorted) offs.push_back(sorted.back() - s);
    out.tuple.offsets = OffsetSet(std::move(offs));
    out.tuple.shifts = sorted;

    const unsigned k = static_cast<unsigned>(sorted.size() + 1);
    out.sigma = sigma(out.tuple.offsets).value;
    const double x = static_cast<double>(counter.x());
    double factorial = 1.0;
    for (unsigned i = 2; i <= k; ++i) factorial *= i;
    out.bound = std::ldexp(factorial, static_cast<int>(k)) * out.sigma * x /
                std::pow(std::log(x), static_cast<double>(k)) * (1.0 + headroom);
    out.li_k = log_integral_k(k, x);
    out.ratio_li = out.sigma > 0.0 ? static_cast<double>(out.tuple.count) / (out.sigma * out.li_k) : 0.0;
    out.holds = static_cast<double>(out.tuple.count) <= out.bound;
    return out;
}

}  // namespace champlab
