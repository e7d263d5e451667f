#pragma once

// Primorial-champion model: M(x, d) = S(d) (1 - d / log x), the primorial
// ladder, and the transition intervals where p_k# should be the most
// common gap. Table-scale numbers are kept as base-10 logarithms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "champlab/offset_set.hpp"

namespace champlab {

class PairSeriesTable;

struct PrimorialEntry {
    unsigned k = 0;
    std::uint64_t prime = 0;
    BigInt primorial;
    /// Natural log of the primorial, i.e. theta(p_k).
    double log_primorial = 0.0;

    std::string decimal() const { return primorial.str(); }
    double approx() const { return primorial.convert_to<double>(); }
};

class PrimorialLadder {
public:
    explicit PrimorialLadder(unsigned max_k = 50);

    unsigned size() const { return static_cast<unsigned>(entries_.size()); }
    /// 1-based: at(1) is 2.
    const PrimorialEntry& at(unsigned k) const;
    const std::vector<PrimorialEntry>& entries() const { return entries_; }

    /// Largest primorial <= y. DomainError for y < 2; CapacityError when the
    /// answer lies beyond the ladder.
    const PrimorialEntry& floor(double y) const;
    /// Smallest primorial >= y. CapacityError beyond the ladder.
    const PrimorialEntry& ceiling(double y) const;

    /// The same lookups keyed by ln y.
    const PrimorialEntry& floor_log(double log_y) const;
    const PrimorialEntry& ceiling_log(double log_y) const;

private:
    std::vector<PrimorialEntry> entries_;
    /// p_{max_k + 1}#, the first primorial past the ladder.
    BigInt sentinel_;
    double sentinel_log_ = 0.0;
};

/// Shared ladder with the default extent.
const PrimorialLadder& default_ladder();

/// m * 10^e with 1 <= m < 10, m rounded to `digits` significant figures.
struct SciNumber {
    double mantissa = 0.0;
    std::int64_t exponent = 0;
    /// "4.67e4"
    std::string str(int digits = 3) const;
};
SciNumber sci_from_log10(double log10_value, int digits = 3);

struct LogInterval {
    double lo_log10 = 0.0;
    double hi_log10 = 0.0;

    SciNumber lo(int digits = 3) const { return sci_from_log10(lo_log10, digits); }
    SciNumber hi(int digits = 3) const { return sci_from_log10(hi_log10, digits); }
    bool contains(const LogInterval& other) const {
        return lo_log10 <= other.lo_log10 && other.hi_log10 <= hi_log10;
    }
};

/// Row label k of the interval table, whose primorial column is P = p_{k-1}#
/// (row 3 is P = 6, row 7 is P = 30030).
const PrimorialEntry& table_primorial(unsigned k, const PrimorialLadder& ladder = default_ladder());

/// [exp((1+delta) P log P), exp((1-delta) P (log P)^2)] for P = table_primorial(k),
/// with 0 <= delta < 1/2 (delta = 0 gives the plain table intervals). Row 2
/// (P = 2) is empty and rejected.
LogInterval transition_interval(unsigned k, double delta,
                                const PrimorialLadder& ladder = default_ladder());

struct ModelScan {
    double log_x = 0.0;
    /// Requested window [2, d_max] and the part actually evaluated. Even
    /// d >= log x have M <= 0 < M(x, 2) and are not evaluated.
    std::uint64_t d_min = 2;
    std::uint64_t d_max = 0;
    std::uint64_t d_scanned = 0;
    /// (d, M(x, d)) for even d in [2, d_scanned].
    std::vector<std::pair<std::uint64_t, double>> values;
    std::uint64_t argmax_d = 0;
    /// Every d attaining the maximum, ascending; argmax_d is the first.
    std::vector<std::uint64_t> ties;
};

/// M(x, d) = S(d) (1 - d / log x).
double model_value(double log_x, std::uint64_t d);

/// Scan of M over even d in [2, d_max]; d_max defaults to ceil(log_x^2).
ModelScan model_scan(double log_x, std::optional<std::uint64_t> d_max = std::nullopt);
/// Same, reading S(d) from a prebuilt table (must cover the scanned window).
ModelScan model_scan(double log_x, std::optional<std::uint64_t> d_max, const PairSeriesTable& table);

/// Window [lo, hi] of reals used by the case analysis below.
struct RealWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;
    bool contains(double v) const {
        return (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    }
};

struct ChampionWindows {
    double log_x = 0.0;
    RealWindow inner;
    RealWindow outer_lo;
    RealWindow outer_hi;
    /// Ladder indices k of the primorials found in each window.
    std::vector<unsigned> inner_found;
    std::vector<unsigned> outer_lo_found;
    std::vector<unsigned> outer_hi_found;
    /// "unique", "flanking" or "multiple".
    std::string outcome;
    /// Predicted champion(s) as ladder indices.
    std::vector<unsigned> predicted;
};

/// Requires 3/4 <= a' < b < 1 < a < b' <= 5/4 and log log x > 0.
ChampionWindows champion_windows(double log_x, double a, double a_prime, double b, double b_prime,
                               const PrimorialLadder& ladder = default_ladder());

struct PredictedCount {
    double sigma = 0.0;
    /// 1 - d / log x, floored at 0.
    double factor = 0.0;
    /// Natural log of S(d) x / (log x)^2 (1 - d/log x); -inf when zero.
    double log_value = 0.0;
    /// Absolute prediction, only when x <= 1e15.
    std::optional<double> value;
};

/// Two-term model prediction of N(x, d) from log x, d even, 2 <= d <= (log x)^2.
PredictedCount predicted_gap_count(double log_x, std::uint64_t d);

}  // namespace champlab
