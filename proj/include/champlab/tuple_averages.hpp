#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "champlab/offset_set.hpp"

namespace champlab {

/// Memo of full singular-series values keyed by the translation-normalized
/// offset set. Safe for concurrent use.
class SigmaCache {
public:
    explicit SigmaCache(double rel_tolerance = 1e-10) : tolerance_(rel_tolerance) {}

    double operator()(const OffsetSet& dset);
    double tolerance() const { return tolerance_; }
    std::size_t size() const;

private:
    double tolerance_;
    mutable std::mutex mutex_;
    std::map<OffsetSet, double> values_;
};

struct AverageOptions {
    /// Skip terms whose offsets mix parities (they vanish at p = 2).
    bool parity_screen = true;
    unsigned threads = 1;
    double rel_tolerance = 1e-10;
};

struct AverageReport {
    unsigned k = 0;
    std::uint64_t d = 0;
    std::uint64_t D = 0;
    /// A_k(d, D)
    double sum = 0.0;
    /// S(d) D^(k-2) / (k-2)!
    double main_term = 0.0;
    double ratio = 0.0;
    /// sum - main_term; for D = d this is R_k(d).
    double remainder = 0.0;
    std::uint64_t terms_evaluated = 0;
    std::uint64_t terms_screened = 0;
};

/// A_k(d, D) = sum over 1 <= d_1 < ... < d_{k-2} < D of S({0, d_1, ..., d_{k-2}, d})
/// for k in {3, 4}, d even, 1 <= D <= d.
AverageReport average(unsigned k, std::uint64_t d, std::uint64_t D,
                      const AverageOptions& options = {});
AverageReport average(unsigned k, std::uint64_t d, std::uint64_t D, const AverageOptions& options,
                      SigmaCache& cache);

struct WindowSum {
    double sum = 0.0;
    /// S(D) * H
    double main = 0.0;
    /// d0 values skipped because they already lie in D.
    std::vector<std::uint64_t> collisions;
};

/// sum over 1 <= d0 <= H, d0 not in D, of S(D u {d0}). Requires D within
/// [0, h] and 1 <= H <= h.
WindowSum window_sum(const OffsetSet& dset, std::uint64_t H, std::uint64_t h,
                     const AverageOptions& options = {});

}  // namespace champlab
