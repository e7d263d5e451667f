#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "champlab/offset_set.hpp"
#include "champlab/prime_engine.hpp"

namespace champlab {

/// Histogram d -> N(x, d) of consecutive-prime gaps whose larger endpoint
/// is <= x, with the champion set.
struct GapCensus {
    std::uint64_t x = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total_primes = 0;
    std::vector<std::uint64_t> champions;
    std::uint64_t n_star = 0;

    std::uint64_t count(std::uint64_t d) const {
        auto it = counts.find(d);
        return it == counts.end() ? 0 : it->second;
    }
    bool operator==(const GapCensus&) const = default;
};

/// Census of the primes inside [lo, hi]; mergeable with its neighbours.
struct CensusPart {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::optional<std::uint64_t> first_prime;
    std::optional<std::uint64_t> last_prime;
    std::uint64_t prime_count = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    bool operator==(const CensusPart&) const = default;
};

CensusPart census_part(std::uint64_t lo, std::uint64_t hi, const SieveConfig& config = {});

/// Joins two parts covering adjacent ranges, in either argument order; the
/// gap across the seam is added. Throws DomainError if not adjacent.
CensusPart merge(const CensusPart& a, const CensusPart& b);

/// Recomputes n_star and champions from counts.
void finalize_champions(GapCensus& census);

/// Full census for x >= 3 (DomainError otherwise). Ranges are censused on
/// config.threads workers and merged in order.
GapCensus census(std::uint64_t x, const SieveConfig& config = {});

/// Pattern count #{p <= x : p - s prime for every s in shifts}; p itself
/// must be prime (shift 0 is implied).
struct TupleCount {
    std::uint64_t x = 0;
    /// Backward differences p - p_j, ascending, without 0.
    std::vector<std::uint64_t> shifts;
    /// The prime tuple {p - d, ..., p} translated to start at 0.
    OffsetSet offsets{0};
    std::uint64_t count = 0;
};

struct ExclusionChain {
    std::uint64_t x = 0;
    std::uint64_t d = 0;
    std::uint64_t D = 0;
    std::uint64_t pi2 = 0;
    /// sum over 1 <= d' < d of pi3(x, d', d).
    std::uint64_t sum_pi3 = 0;
    /// sum over 1 <= d' < D of pi3(x, d', d).
    std::uint64_t sum_pi3_truncated = 0;
    /// sum over 1 <= d1 < d2 < D of pi4(x, d1, d2, d).
    std::uint64_t sum_pi4 = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::uint64_t census_count = 0;
    bool holds = false;
};

/// Shifted-AND tuple scans over a primality bitset of [0, x].
class TupleCounter {
public:
    explicit TupleCounter(std::uint64_t x, const SieveConfig& config = {});

    std::uint64_t x() const { return bits_.limit(); }
    const PrimalityBitset& bits() const { return bits_; }

    /// Raw count for arbitrary distinct positive shifts (odd allowed).
    std::uint64_t count(const std::vector<std::uint64_t>& shifts) const;

    /// pi2(x, d), d >= 2 even.
    TupleCount pair(std::uint64_t d) const;
    /// pi3(x, d', d), 2 <= d' < d, both even.
    TupleCount triple(std::uint64_t d_prime, std::uint64_t d) const;
    /// pi4(x, d1, d2, d), 2 <= d1 < d2 < d, all even.
    TupleCount quad(std::uint64_t d1, std::uint64_t d2, std::uint64_t d) const;

    /// Inclusion-exclusion bounds for N(x, d) with truncation 1 <= D <= d.
    ExclusionChain exclusion_chain(std::uint64_t d, std::uint64_t D, const GapCensus& census) const;

private:
    TupleCount make_count(std::vector<std::uint64_t> shifts) const;

    PrimalityBitset bits_;
    unsigned threads_;
};

TupleCount pair_count(std::uint64_t x, std::uint64_t d, const SieveConfig& config = {});
TupleCount triple_count(std::uint64_t x, std::uint64_t d_prime, std::uint64_t d,
                        const SieveConfig& config = {});
TupleCount quad_count(std::uint64_t x, std::uint64_t d1, std::uint64_t d2, std::uint64_t d,
                      const SieveConfig& config = {});
ExclusionChain exclusion_chain(std::uint64_t x, std::uint64_t d, std::uint64_t D,
                               const SieveConfig& config = {});

/// li_k(x) = integral from 2 to x of dt / (log t)^k, relative error < 1e-9.
double log_integral_k(unsigned k, double x);

/// pi2(x, d) against S(d) li2(x) and against S(d) x / log^2 x.
struct PairComparison {
    std::uint64_t x = 0;
    std::uint64_t d = 0;
    std::uint64_t count = 0;
    double sigma = 0.0;
    double li2 = 0.0;
    double x_over_log2 = 0.0;
    double ratio_li2 = 0.0;
    double ratio_log2 = 0.0;
};
PairComparison compare_pair(const TupleCounter& counter, std::uint64_t d);

/// Count of a k-pattern against the sieve bound 2^k k! S(D) x / log^k x,
/// scaled by (1 + headroom).
struct SieveBoundCheck {
    TupleCount tuple;
    double sigma = 0.0;
    double li_k = 0.0;
    double ratio_li = 0.0;
    double bound = 0.0;
    bool holds = false;
};
SieveBoundCheck sieve_bound_check(const TupleCounter& counter, const std::vector<std::uint64_t>& shifts,
                                  double headroom = 0.1);

}  // namespace champlab
