#pragma once

// Slow, obviously-correct reference implementations used as test oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<bool> naive_sieve(std::uint64_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = false;
    if (n >= 1) is[1] = false;
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (!is[i]) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) is[j] = false;
    }
    return is;
}

inline std::vector<std::uint64_t> naive_primes(std::uint64_t n) {
    const auto is = naive_sieve(n);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (is[i]) out.push_back(i);
    }
    return out;
}

inline bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) return false;
    }
    return true;
}

// prod_{2 < p <= y} (1 - 1/(p-1)^2); the rest is within 2/y
inline long double naive_twin_product(std::uint64_t y) {
    long double v = 1.0L;
    for (auto p : naive_primes(y)) {
        if (p == 2) continue;
        const long double q = static_cast<long double>(p - 1);
        v *= 1.0L - 1.0L / (q * q);
    }
    return v;
}

/// Walks consecutive primes and histograms their differences.
struct WalkCensus {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t primes = 0;
    std::vector<std::uint64_t> champions;
};

inline WalkCensus walk_census(std::uint64_t x) {
    WalkCensus c;
    std::uint64_t prev = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        if (!trial_prime(n)) continue;
        ++c.primes;
        if (prev != 0) ++c.counts[n - prev];
        prev = n;
    }
    std::uint64_t best = 0;
    for (const auto& [d, k] : c.counts) best = std::max(best, k);
    for (const auto& [d, k] : c.counts) {
        if (k == best) c.champions.push_back(d);
    }
    return c;
}

inline WalkCensus walk_census_sieved(std::uint64_t x) {
    WalkCensus c;
    std::uint64_t prev = 0;
    for (auto p : naive_primes(x)) {
        ++c.primes;
        if (prev != 0) ++c.counts[p - prev];
        prev = p;
    }
    std::uint64_t best = 0;
    for (const auto& [d, k] : c.counts) best = std::max(best, k);
    for (const auto& [d, k] : c.counts) {
        if (k == best) c.champions.push_back(d);
    }
    return c;
}

/// Residue classes mod p hit by the offsets, counted by marking.
inline std::uint64_t count_classes(const std::vector<std::uint64_t>& offsets, std::uint64_t p) {
    std::vector<bool> hit(p, false);
    std::uint64_t n = 0;
    for (auto o : offsets) {
        if (!hit[o % p]) {
            hit[o % p] = true;
            ++n;
        }
    }
    return n;
}

/// #{0 <= j < n : gcd(prod (j + d_i), n) = 1}, by direct enumeration.
inline std::uint64_t brute_phi(std::uint64_t n, const std::vector<std::uint64_t>& offsets) {
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
        bool ok = true;
        for (auto o : offsets) {
            if (std::gcd(j + o, n) != 1) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

/// prod_{p <= y} (1 - 1/p)^(-k) (1 - nu(p)/p) in long double.
inline long double naive_truncated_series(const std::vector<std::uint64_t>& offsets, std::uint64_t y) {
    long double v = 1.0L;
    const long double k = static_cast<long double>(offsets.size());
    for (auto p : naive_primes(y)) {
        const long double pp = static_cast<long double>(p);
        const long double nu = static_cast<long double>(count_classes(offsets, p));
        v *= std::pow(1.0L - 1.0L / pp, -k) * (1.0L - nu / pp);
    }
    return v;
}

/// #{p <= x prime : p - s prime for all s}.
inline std::uint64_t brute_pattern(std::uint64_t x, const std::vector<std::uint64_t>& shifts) {
    const auto is = naive_sieve(x);
    std::uint64_t count = 0;
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (!is[p]) continue;
        bool ok = true;
        for (auto s : shifts) {
            if (s > p || !is[p - s]) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

/// Random offset set of `size` distinct values in [0, span], always containing 0.
inline std::vector<std::uint64_t> random_offsets(std::mt19937_64& rng, std::size_t size, std::uint64_t span) {
    std::uniform_int_distribution<std::uint64_t> dist(1, span);
    std::vector<std::uint64_t> out{0};
    while (out.size() < size) {
        const auto v = dist(rng);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
