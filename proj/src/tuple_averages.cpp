#include "champlab/tuple_averages.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "champlab/errors.hpp"
#include "champlab/parallel.hpp"
#include "champlab/singular_series.hpp"

namespace champlab {

double SigmaCache::operator()(const OffsetSet& dset) {
    const OffsetSet key = dset.normalized();
    {
        std::lock_guard lock(mutex_);
        auto it = values_.find(key);
        if (it != values_.end()) return it->second;
    }
    const double v = sigma(key, tolerance_).value;
    std::lock_guard lock(mutex_);
    values_.emplace(key, v);
    return v;
}

std::size_t SigmaCache::size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
}

namespace {

struct Partial {
    CompensatedSum sum;
    std::uint64_t evaluated = 0;
    std::uint64_t screened = 0;
};

// Outer rows are claimed in chunks; partial sums are reduced in row order.
template <typename Row>
Partial reduce_rows(std::uint64_t rows, unsigned threads, Row&& row) {
    const std::uint64_t chunk = 256;
    const std::uint64_t nchunks = (rows + chunk - 1) / chunk;
    std::vector<Partial> parts(nchunks);
    parallel_for(nchunks, threads, [&](std::size_t c) {
        for (std::uint64_t r = c * chunk; r < std::min(rows, (c + 1) * chunk); ++r) row(r, parts[c]);
    });
    Partial total;
    for (const auto& p : parts) {
        total.sum.add(p.sum);
        total.evaluated += p.evaluated;
        total.screened += p.screened;
    }
    return total;
}

}  // namespace

AverageReport average(unsigned k, std::uint64_t d, std::uint64_t D, const AverageOptions& options,
                      SigmaCache& cache) {
    if (k != 3 && k != 4) throw DomainError("average: only k = 3 and k = 4 are supported");
    if (d < 2 || d % 2 != 0) throw DomainError("average: d must be even and >= 2");
    if (D < 1 || D > d) throw DomainError("average: D must satisfy 1 <= D <= d");

    AverageReport out;
    out.k = k;
    out.d = d;
    out.D = D;

    Partial total;
    if (k == 3) {
        // row r <-> d1 = r + 1
        total = reduce_rows(D > 1 ? D - 1 : 0, options.threads, [&](std::uint64_t r, Partial& p) {
            const std::uint64_t d1 = r + 1;
            if (options.parity_screen && d1 % 2 == 1) {
                ++p.screened;
                return;
            }
            p.sum.add(cache(OffsetSet{0, d1, d}));
            ++p.evaluated;
        });
    } else {
        // row r <-> d2 = r + 2, inner d1 < d2
        total = reduce_rows(D > 2 ? D - 2 : 0, options.threads, [&](std::uint64_t r, Partial& p) {
            const std::uint64_t d2 = r + 2;
            for (std::uint64_t d1 = 1; d1 < d2; ++d1) {
                if (options.parity_screen && (d1 % 2 == 1 || d2 % 2 == 1)) {
                    ++p.screened;
                    continue;
                }
                p.sum.add(cache(OffsetSet{0, d1, d2, d}));
                ++p.evaluated;
            }
        });
    }

    out.sum = total.sum.value();
    out.terms_evaluated = total.evaluated;
    out.terms_screened = total.screened;
    const double s_d = sigma_pair(d).value;
    const double dd = static_cast<double>(D);
    out.main_term = k == 3 ? s_d * dd : s_d * dd * dd / 2.0;
    out.ratio = out.main_term > 0.0 ? out.sum / out.main_term : 0.0;
    out.remainder = out.sum - out.main_term;
    return out;
}

AverageReport average(unsigned k, std::uint64_t d, std::uint64_t D, const AverageOptions& options) {
    SigmaCache cache(options.rel_tolerance);
    return average(k, d, D, options, cache);
}

WindowSum window_sum(const OffsetSet& dset, std::uint64_t H, std::uint64_t h,
                     const AverageOptions& options) {
    if (dset.back() > h) throw DomainError("window_sum: offsets must lie in [0, h]");
    if (H < 1 || H > h) throw DomainError("window_sum: requires 1 <= H <= h");

    WindowSum out;
    const double base = sigma(dset, options.rel_tolerance).value;
    out.main = base * static_cast<double>(H);
    for (std::uint64_t d0 = 1; d0 <= H; ++d0)
        if (dset.contains(d0)) out.collisions.push_back(d0);

    // A base with both parities already vanishes; otherwise d0 of the other
    // parity makes nu(2) = 2.
    const bool has_even = std::any_of(dset.offsets().begin(), dset.offsets().end(),
                                      [](std::uint64_t v) { return v % 2 == 0; });
    const bool has_odd = std::any_of(dset.offsets().begin(), dset.offsets().end(),
                                     [](std::uint64_t v) { return v % 2 == 1; });
    SigmaCache cache(options.rel_tolerance);
    const Partial total = reduce_rows(H, options.threads, [&](std::uint64_t r, Partial& p) {
        const std::uint64_t d0 = r + 1;
        if (dset.contains(d0)) return;
        if (options.parity_screen &&
            ((has_even && has_odd) || (d0 % 2 == 0 ? has_odd : has_even))) {
            ++p.screened;
            return;
        }
        p.sum.add(cache(dset.with(d0)));
        ++p.evaluated;
    });
    out.sum = total.sum.value();
    return out;
}

}  // namespace champlab
