#include "champlab/champion_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "champlab/errors.hpp"
#include "champlab/parallel.hpp"
#include "champlab/prime_engine.hpp"
#include "champlab/singular_series.hpp"

namespace champlab {

namespace {

constexpr double kLn10 = 2.302585092994045684;

double log_slack(double v) { return 1e-12 * std::max(1.0, std::fabs(v)); }

BigInt floor_integer(double y) { return BigInt(std::floor(y)); }

void require_even_gap(std::uint64_t d) {
    if (d < 2 || d % 2 != 0) throw DomainError("d must be even and >= 2, got " + std::to_string(d));
}

std::vector<unsigned> primorials_in(const RealWindow& w, const PrimorialLadder& ladder) {
    const auto& last = ladder.entries().back();
    if (w.hi >= last.approx()) {
        throw CapacityError("window reaches past the primorial ladder (k <= " +
                            std::to_string(ladder.size()) + ")");
    }
    std::vector<unsigned> found;
    for (const auto& e : ladder.entries()) {
        if (w.contains(e.approx())) found.push_back(e.k);
    }
    return found;
}

}  // namespace

PrimorialLadder::PrimorialLadder(unsigned max_k) {
    if (max_k == 0) throw DomainError("ladder needs at least one entry");
    std::uint64_t limit = 64;
    std::vector<std::uint64_t> primes = prime_list(limit);
    while (primes.size() < std::size_t{max_k} + 1) {
        limit *= 2;
        primes = prime_list(limit);
    }
    BigInt product = 1;
    CompensatedSum log_sum;
    entries_.reserve(max_k);
    for (unsigned k = 1; k <= max_k; ++k) {
        const std::uint64_t p = primes[k - 1];
        product *= p;
        log_sum.add(std::log(static_cast<double>(p)));
        entries_.push_back(PrimorialEntry{k, p, product, log_sum.value()});
    }
    const std::uint64_t next = primes[max_k];
    sentinel_ = product * next;
    log_sum.add(std::log(static_cast<double>(next)));
    sentinel_log_ = log_sum.value();
}

const PrimorialEntry& PrimorialLadder::at(unsigned k) const {
    if (k == 0) throw DomainError("primorial index starts at 1");
    if (k > entries_.size()) {
        throw CapacityError("primorial index " + std::to_string(k) + " beyond ladder of " +
                            std::to_string(entries_.size()));
    }
    return entries_[k - 1];
}

const PrimorialEntry& PrimorialLadder::floor(double y) const {
    if (!(y >= 2.0)) throw DomainError("primorial floor needs y >= 2");
    if (!std::isfinite(y)) throw CapacityError("primorial floor of an infinite value");
    const BigInt yi = floor_integer(y);
    if (sentinel_ <= yi) throw CapacityError("primorial floor lies beyond the ladder");
    auto it = std::upper_bound(entries_.begin(), entries_.end(), yi,
                               [](const BigInt& v, const PrimorialEntry& e) { return v < e.primorial; });
    return *std::prev(it);
}

const PrimorialEntry& PrimorialLadder::ceiling(double y) const {
    if (std::isnan(y)) throw DomainError("primorial ceiling of NaN");
    if (y <= 2.0) return entries_.front();
    if (!std::isfinite(y)) throw CapacityError("primorial ceiling of an infinite value");
    const BigInt yi = BigInt(std::ceil(y));
    auto it = std::lower_bound(entries_.begin(), entries_.end(), yi,
                               [](const PrimorialEntry& e, const BigInt& v) { return e.primorial < v; });
    if (it == entries_.end()) throw CapacityError("primorial ceiling lies beyond the ladder");
    return *it;
}

const PrimorialEntry& PrimorialLadder::floor_log(double log_y) const {
    if (!(log_y >= std::log(2.0) - log_slack(log_y))) throw DomainError("primorial floor needs y >= 2");
    if (log_y >= sentinel_log_ - log_slack(log_y)) throw CapacityError("primorial floor lies beyond the ladder");
    auto it = std::upper_bound(entries_.begin(), entries_.end(), log_y + log_slack(log_y),
                               [](double v, const PrimorialEntry& e) { return v < e.log_primorial; });
    return *std::prev(it);
}

const PrimorialEntry& PrimorialLadder::ceiling_log(double log_y) const {
    if (std::isnan(log_y)) throw DomainError("primorial ceiling of NaN");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), log_y - log_slack(log_y),
                               [](const PrimorialEntry& e, double v) { return e.log_primorial < v; });
    if (it == entries_.end()) throw CapacityError("primorial ceiling lies beyond the ladder");
    return *it;
}

const PrimorialLadder& default_ladder() {
    static const PrimorialLadder ladder(50);
    return ladder;
}

SciNumber sci_from_log10(double log10_value, int digits) {
    if (!std::isfinite(log10_value)) throw DomainError("cannot render a non-finite logarithm");
    if (digits < 1 || digits > 15) throw DomainError("digits must be in [1, 15]");
    double e = std::floor(log10_value);
    double m = std::pow(10.0, log10_value - e);
    const double scale = std::pow(10.0, digits - 1);
    m = std::round(m * scale) / scale;
    if (m >= 10.0) {
        m /= 10.0;
        e += 1.0;
    }
    return SciNumber{m, static_cast<std::int64_t>(e)};
}

std::string SciNumber::str(int digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%lld", std::max(0, digits - 1), mantissa,
                  static_cast<long long>(exponent));
    return buf;
}

const PrimorialEntry& table_primorial(unsigned k, const PrimorialLadder& ladder) {
    if (k < 2) throw DomainError("interval rows start at k = 2");
    return ladder.at(k - 1);
}

LogInterval transition_interval(unsigned k, double delta, const PrimorialLadder& ladder) {
    if (!(delta >= 0.0 && delta < 0.5)) throw DomainError("delta must satisfy 0 <= delta < 1/2");
    const PrimorialEntry& e = table_primorial(k, ladder);
    const double p = e.approx();
    if (!std::isfinite(p)) throw CapacityError("primorial too large for the interval calculator");
    const double lp = e.log_primorial;
    LogInterval out{(1.0 + delta) * p * lp / kLn10, (1.0 - delta) * p * lp * lp / kLn10};
    if (out.lo_log10 > out.hi_log10) {
        throw DomainError("transition interval for k = " + std::to_string(k) + " is empty");
    }
    return out;
}

double model_value(double log_x, std::uint64_t d) {
    require_even_gap(d);
    if (!(log_x > 0.0)) throw DomainError("log x must be positive");
    return sigma_pair(d).value * (1.0 - static_cast<double>(d) / log_x);
}

namespace {

struct ScanWindow {
    std::uint64_t d_max;
    std::uint64_t scanned;
};

ScanWindow scan_window(double log_x, std::optional<std::uint64_t> d_max) {
    if (!(log_x > 0.0) || !std::isfinite(log_x)) throw DomainError("log x must be positive and finite");
    std::uint64_t cap;
    if (d_max) {
        cap = *d_max;
    } else {
        const double sq = std::ceil(log_x * log_x);
        cap = sq >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(sq);
    }
    if (cap < 2) throw DomainError("d_max must be >= 2");
    std::uint64_t hi;
    if (log_x > 2.0) {
        hi = std::min<std::uint64_t>(cap, static_cast<std::uint64_t>(std::ceil(log_x)) - 1);
    } else {
        hi = std::min<std::uint64_t>(cap, 4);
    }
    hi &= ~std::uint64_t{1};
    if (hi < 2) hi = 2;
    return {cap, hi};
}

template <typename SigmaFn>
ModelScan run_scan(double log_x, const ScanWindow& w, SigmaFn&& sigma_of) {
    ModelScan scan;
    scan.log_x = log_x;
    scan.d_max = w.d_max;
    scan.d_scanned = w.scanned;
    scan.values.reserve(w.scanned / 2);
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t d = 2; d <= w.scanned; d += 2) {
        const double m = sigma_of(d) * (1.0 - static_cast<double>(d) / log_x);
        scan.values.emplace_back(d, m);
        if (m > best) {
            best = m;
            scan.ties.assign(1, d);
        } else if (m == best) {
            scan.ties.push_back(d);
        }
    }
    scan.argmax_d = scan.ties.front();
    return scan;
}

}  // namespace

ModelScan model_scan(double log_x, std::optional<std::uint64_t> d_max) {
    const ScanWindow w = scan_window(log_x, d_max);
    const PairSeriesTable table(w.scanned);
    return run_scan(log_x, w, [&](std::uint64_t d) { return table(d); });
}

ModelScan model_scan(double log_x, std::optional<std::uint64_t> d_max, const PairSeriesTable& table) {
    const ScanWindow w = scan_window(log_x, d_max);
    if (table.limit() < w.scanned) {
        throw DomainError("series table covers d <= " + std::to_string(table.limit()) + ", scan needs " +
                          std::to_string(w.scanned));
    }
    return run_scan(log_x, w, [&](std::uint64_t d) { return table(d); });
}

ChampionWindows champion_windows(double log_x, double a, double a_prime, double b, double b_prime,
                               const PrimorialLadder& ladder) {
    if (!(0.75 <= a_prime && a_prime < b && b < 1.0 && 1.0 < a && a < b_prime && b_prime <= 1.25)) {
        throw DomainError("parameters must satisfy 3/4 <= a' < b < 1 < a < b' <= 5/4");
    }
    if (!(log_x > 1.0) || !std::isfinite(log_x)) throw DomainError("log log x must be positive");
    const double ll = std::log(log_x);
    const double small = log_x / (ll * ll);
    const double large = log_x / ll;

    ChampionWindows out;
    out.log_x = log_x;
    out.inner = RealWindow{a * small, b * large, false, false};
    out.outer_lo = RealWindow{a_prime * small, a * small, false, true};
    out.outer_hi = RealWindow{b * large, b_prime * large, true, false};
    out.inner_found = primorials_in(out.inner, ladder);
    out.outer_lo_found = primorials_in(out.outer_lo, ladder);
    out.outer_hi_found = primorials_in(out.outer_hi, ladder);

    if (out.inner_found.size() == 1) {
        out.outcome = "unique";
        out.predicted = out.inner_found;
    } else if (out.inner_found.empty()) {
        out.outcome = "flanking";
        out.predicted = out.outer_lo_found;
        out.predicted.insert(out.predicted.end(), out.outer_hi_found.begin(), out.outer_hi_found.end());
    } else {
        out.outcome = "multiple";
        out.predicted = out.inner_found;
    }
    return out;
}

PredictedCount predicted_gap_count(double log_x, std::uint64_t d) {
    require_even_gap(d);
    if (!(log_x > 0.0) || !std::isfinite(log_x)) throw DomainError("log x must be positive and finite");
    if (static_cast<double>(d) > log_x * log_x) throw DomainError("d exceeds (log x)^2");
    PredictedCount out;
    out.sigma = sigma_pair(d).value;
    out.factor = std::max(0.0, 1.0 - static_cast<double>(d) / log_x);
    if (out.factor == 0.0) {
        out.log_value = -std::numeric_limits<double>::infinity();
    } else {
        out.log_value = std::log(out.sigma) + log_x - 2.0 * std::log(log_x) + std::log(out.factor);
    }
    if (log_x <= 15.0 * kLn10) out.value = std::exp(out.log_value);
    return out;
}

}  // namespace champlab
