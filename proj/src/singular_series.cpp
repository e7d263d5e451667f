#include "champlab/singular_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "champlab/errors.hpp"
#include "champlab/parallel.hpp"
#include "champlab/prime_engine.hpp"

namespace champlab {

// ---------------------------------------------------------------------------
// OffsetSet

OffsetSet::OffsetSet(std::vector<std::uint64_t> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) throw DomainError("offset set must not be empty");
    std::sort(offsets_.begin(), offsets_.end());
    if (std::adjacent_find(offsets_.begin(), offsets_.end()) != offsets_.end())
        throw DomainError("offset set elements must be distinct");
}

bool OffsetSet::contains(std::uint64_t d) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), d);
}

OffsetSet OffsetSet::with(std::uint64_t d) const {
    if (contains(d)) throw DomainError("offset " + std::to_string(d) + " already in set");
    auto v = offsets_;
    v.push_back(d);
    return OffsetSet(std::move(v));
}

OffsetSet OffsetSet::normalized() const {
    auto v = offsets_;
    const std::uint64_t base = v.front();
    for (auto& d : v) d -= base;
    return OffsetSet(std::move(v));
}

BigInt OffsetSet::discriminant() const {
    BigInt delta = 1;
    for (std::size_t j = 1; j < offsets_.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) delta *= offsets_[j] - offsets_[i];
    return delta;
}

std::vector<std::uint64_t> OffsetSet::discriminant_primes() const {
    std::vector<std::uint64_t> out;
    for (std::size_t j = 1; j < offsets_.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            for (auto p : prime_factors(offsets_[j] - offsets_[i])) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string OffsetSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(offsets_[i]);
    }
    return s + "}";
}

OffsetSet parse_offset_set(const std::string& text) {
    std::string cleaned = text;
    for (auto& c : cleaned)
        if (c == ',' || c == '{' || c == '}') c = ' ';
    std::istringstream in(cleaned);
    std::vector<std::uint64_t> v;
    std::string tok;
    while (in >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("bad offset '" + tok + "'");
        v.push_back(std::stoull(tok));
    }
    return OffsetSet(std::move(v));
}

// ---------------------------------------------------------------------------
// Tail constants

namespace {

// Explicit prime counting bounds (Dusart):
//   pi(t) >= t/ln t (1 + 1/ln t)       for t >= 599,
//   pi(t) <= t/ln t (1 + 1.2762/ln t)  for t > 1.
constexpr double kPiLowerCoef = 1.0;
constexpr double kPiUpperCoef = 1.2762;
constexpr std::uint64_t kMinBracketCutoff = 599;

// -g_k'(t)
double log_deficit_slope(unsigned k, double t) {
    const double kk = k;
    return kk * (kk - 1.0) / (t * (t - 1.0) * (t - kk));
}

// Integral over [y, inf) of t/ln t (1 + c/ln t) * (-g_k'(t)), via t = y e^s.
double bound_integral(unsigned k, double y, double c) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double s) {
        const double t = y * std::exp(s);
        if (t > 1e150) return 0.0;
        const double lt = std::log(t);
        return t * (t / lt) * (1.0 + c / lt) * log_deficit_slope(k, t);
    };
    return integrator.integrate(f, 1e-14);
}

double bracket_width_at(unsigned k, double y) {
    // Integrand of (U - L): t/ln^2 t * (c_U - c_L) * slope.
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [&](double s) {
        const double t = y * std::exp(s);
        if (t > 1e150) return 0.0;
        const double lt = std::log(t);
        return t * (t / (lt * lt)) * (kPiUpperCoef - kPiLowerCoef) * log_deficit_slope(k, t);
    };
    return integrator.integrate(f, 1e-12);
}

// Smallest cutoff >= 599 with pred(cutoff) true; pred must be monotone.
template <typename Pred>
std::uint64_t smallest_cutoff(Pred pred) {
    std::uint64_t hi = 1024;
    while (!pred(hi)) {
        if (hi > (std::uint64_t{1} << 40)) throw CapacityError("tail cutoff search diverged");
        hi *= 2;
    }
    std::uint64_t lo = std::max<std::uint64_t>(kMinBracketCutoff, hi / 2);
    if (pred(lo)) return lo;
    while (hi - lo > std::max<std::uint64_t>(1, hi / 4096)) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Floating slack for sums of ~pi(Y) small positive terms with compensation.
constexpr double kRoundingSlack = 1e-15;

struct TailSum {
    double sum = 0.0;
    std::uint64_t pi = 0;
};

// sum_{k < p <= cutoff} g_k(p) and pi(cutoff).
TailSum explicit_tail_sum(unsigned k, std::uint64_t cutoff) {
    CompensatedSum sum;
    std::uint64_t pi = 0;
    for_each_prime(cutoff, [&](std::uint64_t p) {
        ++pi;
        if (p > k) sum.add(generic_log_deficit(k, static_cast<double>(p)));
    });
    return {sum.value(), pi};
}

std::mutex& tail_memo_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<unsigned, std::uint64_t>, TailConstant>& tail_memo() {
    static std::map<std::pair<unsigned, std::uint64_t>, TailConstant> memo;
    return memo;
}

}  // namespace

double generic_log_deficit(unsigned k, double t) {
    if (k <= 1) return 0.0;
    const double kk = k;
    if (t <= kk) throw DomainError("generic_log_deficit: t must exceed k");
    const double u = 1.0 / t;
    if (kk * u < 1e-3) {
        // sum_{m >= 2} (k^m - k) u^m / m
        double sum = 0.0;
        double km = kk;
        double um = u;
        for (int m = 2; m <= 10; ++m) {
            km *= kk;
            um *= u;
            sum += (km - kk) * um / m;
        }
        return sum;
    }
    return -std::log1p(-kk * u) + kk * std::log1p(-u);
}

TailBracket tail_sum_bracket(unsigned k, std::uint64_t y, std::uint64_t pi_y) {
    if (y < kMinBracketCutoff) throw DomainError("tail bracket requires cutoff >= 599");
    if (k < 2) return {0.0, 0.0};
    const double dy = static_cast<double>(y);
    const double boundary = generic_log_deficit(k, dy) * static_cast<double>(pi_y);
    return {bound_integral(k, dy, kPiLowerCoef) - boundary,
            bound_integral(k, dy, kPiUpperCoef) - boundary};
}

double tail_bracket_width(unsigned k, std::uint64_t y) {
    if (k < 2) return 0.0;
    return bracket_width_at(k, static_cast<double>(y));
}

TailConstant tail_constant_at(unsigned k, std::uint64_t cutoff) {
    if (k < 2) return {k, 1.0, 0, 0.0};
    if (cutoff < kMinBracketCutoff) throw DomainError("tail constant cutoff must be >= 599");
    {
        std::lock_guard lock(tail_memo_mutex());
        auto it = tail_memo().find({k, cutoff});
        if (it != tail_memo().end()) return it->second;
    }
    const TailSum explicit_part = explicit_tail_sum(k, cutoff);
    const TailBracket br = tail_sum_bracket(k, cutoff, explicit_part.pi);
    const double mid = 0.5 * (br.lo + br.hi);
    TailConstant out;
    out.k = k;
    out.cutoff = cutoff;
    out.value = std::exp(-(explicit_part.sum + mid));
    out.rel_half_width = std::expm1(0.5 * (br.hi - br.lo)) + kRoundingSlack;
    std::lock_guard lock(tail_memo_mutex());
    tail_memo().emplace(std::make_pair(k, cutoff), out);
    return out;
}

TailConstant tail_constant(unsigned k, double rel_tolerance) {
    if (!(rel_tolerance > 0.0)) throw DomainError("tail_constant: tolerance must be positive");
    if (k < 2) return {k, 1.0, 0, 0.0};
    {
        // Any memoized cutoff that is already accurate enough will do.
        std::lock_guard lock(tail_memo_mutex());
        for (const auto& [key, tc] : tail_memo())
            if (key.first == k && tc.rel_half_width < rel_tolerance) return tc;
    }
    const std::uint64_t cutoff = smallest_cutoff([&](std::uint64_t y) {
        return std::expm1(0.5 * tail_bracket_width(k, y)) + kRoundingSlack < 0.9 * rel_tolerance;
    });
    return tail_constant_at(k, cutoff);
}

// ---------------------------------------------------------------------------
// Twin prime constant

TwinPrimeEstimate twin_prime_constant_at(std::uint64_t cutoff) {
    if (cutoff < kMinBracketCutoff) throw DomainError("twin prime constant cutoff must be >= 599");
    // log of prod_{2 < p <= cutoff} (1 - 1/(p-1)^2)
    CompensatedSum log_sum;
    std::uint64_t pi = 0;
    for_each_prime(cutoff, [&](std::uint64_t p) {
        ++pi;
        if (p == 2) return;
        const double q = static_cast<double>(p - 1);
        const double u = 1.0 / (q * q);
        log_sum.add(u < 1e-4 ? -(u + u * u * (0.5 + u * (1.0 / 3.0 + 0.25 * u))) : std::log1p(-u));
    });
    // 1 - 1/(p-1)^2 = (1 - 2/p)(1 - 1/p)^(-2), so the tail is the k = 2 bracket.
    const TailBracket br = tail_sum_bracket(2, cutoff, pi);
    TwinPrimeEstimate out;
    out.cutoff = cutoff;
    out.truncated_product = std::exp(log_sum.value());
    out.value = std::exp(log_sum.value() - 0.5 * (br.lo + br.hi));
    out.abs_error = out.value * (std::expm1(0.5 * (br.hi - br.lo)) + kRoundingSlack);
    return out;
}

TwinPrimeEstimate twin_prime_constant_detail(double tolerance) {
    if (!(tolerance > 0.0 && tolerance < 1e-3))
        throw DomainError("twin_prime_constant: tolerance must lie in (0, 1e-3)");
    // C_2 < 0.67 bounds the absolute error in terms of the relative bracket.
    const std::uint64_t cutoff = smallest_cutoff([&](std::uint64_t y) {
        return 0.67 * (std::expm1(0.5 * tail_bracket_width(2, y)) + kRoundingSlack) <
               0.9 * tolerance;
    });
    return twin_prime_constant_at(cutoff);
}

double twin_prime_constant(double tolerance) { return twin_prime_constant_detail(tolerance).value; }

namespace {
const TwinPrimeEstimate& twin_memo() {
    static std::once_flag once;
    static TwinPrimeEstimate value;
    std::call_once(once, [] { value = twin_prime_constant_detail(1e-12); });
    return value;
}
}  // namespace

double twin_prime_constant_memo() { return twin_memo().value; }

// ---------------------------------------------------------------------------
// nu, phi, closed forms

namespace {

std::uint64_t nu_unchecked(const OffsetSet& dset, std::uint64_t p) {
    if (p > dset.spread()) return dset.size();
    std::vector<std::uint64_t> residues;
    residues.reserve(dset.size());
    for (auto d : dset.offsets()) residues.push_back(d % p);
    std::sort(residues.begin(), residues.end());
    return static_cast<std::uint64_t>(std::unique(residues.begin(), residues.end()) -
                                      residues.begin());
}

// (1 - 1/p)^(-k) (1 - nu/p)
double local_factor(std::uint64_t p, std::uint64_t nu_p, std::size_t k) {
    const double dp = static_cast<double>(p);
    return (static_cast<double>(p - nu_p) / dp) * std::pow(dp / (dp - 1.0), static_cast<double>(k));
}

// Distinct primes of n, or nullopt if n is not squarefree.
std::optional<std::vector<std::uint64_t>> squarefree_primes(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return std::nullopt;
        out.push_back(p);
    }
    if (n > 1) out.push_back(n);
    return out;
}

double big_ratio_to_double(const BigInt& num, const BigInt& den) {
    if (num == 0) return 0.0;
    const long e = static_cast<long>(boost::multiprecision::msb(num)) -
                   static_cast<long>(boost::multiprecision::msb(den));
    const long shift = 62 - e;
    BigInt q = shift >= 0 ? BigInt(num << shift) / den : num / BigInt(den << -shift);
    return std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
}

}  // namespace

std::uint64_t nu(const OffsetSet& dset, std::uint64_t p) {
    if (!is_prime_trial(p)) throw DomainError("nu: " + std::to_string(p) + " is not prime");
    return nu_unchecked(dset, p);
}

SingularValue sigma_pair(std::uint64_t d) {
    if (d == 0) throw DomainError("sigma_pair: d must be positive");
    SingularValue out;
    if (d % 2 == 1) {
        out.zero_witness = 2;
        out.exact_primes = {2};
        out.note = "odd d";
        return out;
    }
    const auto& c2 = twin_memo();
    out.exact_primes = prime_factors(d);
    out.value = 2.0 * c2.value;
    for (auto p : out.exact_primes)
        if (p > 2) out.value *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    out.tail_bound = c2.abs_error / c2.value;
    out.tail_cutoff = c2.cutoff;
    return out;
}

std::uint64_t phi_tuple(std::uint64_t n, const OffsetSet& dset) {
    if (n == 0) throw DomainError("phi_tuple: n must be >= 1");
    auto primes = squarefree_primes(n);
    if (!primes) throw DomainError("phi_tuple: n=" + std::to_string(n) + " is not squarefree");
    std::uint64_t result = n;
    for (auto p : *primes) result = result / p * (p - nu_unchecked(dset, p));
    return result;
}

BigInt phi_tuple(const BigInt& n, const std::vector<std::uint64_t>& primes,
                 const OffsetSet& dset) {
    BigInt result = n;
    for (auto p : primes) {
        if (result % p != 0) throw DomainError("phi_tuple: prime list does not divide n");
        result = result / p * (p - nu_unchecked(dset, p));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Truncated and full series

SingularValue sigma_truncated_direct(const OffsetSet& dset, std::uint64_t y) {
    if (y < 2) throw DomainError("sigma_truncated: y must be >= 2");
    SingularValue out;
    out.truncation_y = y;
    out.exact_primes = prime_list(y);
    out.value = 1.0;
    for (auto p : out.exact_primes) {
        const auto v = nu_unchecked(dset, p);
        if (v == p && !out.zero_witness) out.zero_witness = p;
        out.value *= local_factor(p, v, dset.size());
    }
    if (out.zero_witness) out.value = 0.0;
    return out;
}

double sigma_truncated_primorial(const OffsetSet& dset, std::uint64_t y) {
    if (y < 2) throw DomainError("sigma_truncated: y must be >= 2");
    const auto primes = prime_list(y);
    BigInt primorial = 1;
    for (auto p : primes) primorial *= p;
    if (boost::multiprecision::msb(primorial) + 1 > kPrimorialBitBudget)
        throw CapacityError("primorial p#(" + std::to_string(y) + ") exceeds big-integer budget of " +
                            std::to_string(kPrimorialBitBudget) + " bits");
    const std::size_t k = dset.size();
    const BigInt phi_d = phi_tuple(primorial, primes, dset);
    const BigInt totient = phi_tuple(primorial, primes, OffsetSet{0});
    // phi(P, D)/P * (P/phi(P))^k
    BigInt num = phi_d * boost::multiprecision::pow(primorial, static_cast<unsigned>(k - 1));
    BigInt den = boost::multiprecision::pow(totient, static_cast<unsigned>(k));
    return big_ratio_to_double(num, den);
}

TruncatedRoutes sigma_truncated_routes(const OffsetSet& dset, std::uint64_t y) {
    TruncatedRoutes r;
    r.direct = sigma_truncated_direct(dset, y).value;
    r.via_primorial = sigma_truncated_primorial(dset, y);
    const double scale = std::max(std::abs(r.direct), std::abs(r.via_primorial));
    r.rel_diff = scale == 0.0 ? 0.0 : std::abs(r.direct - r.via_primorial) / scale;
    return r;
}

SingularValue sigma_truncated(const OffsetSet& dset, std::uint64_t y) {
    SingularValue out = sigma_truncated_direct(dset, y);
    const double alt = sigma_truncated_primorial(dset, y);
    const double scale = std::max(std::abs(out.value), std::abs(alt));
    if (scale != 0.0 && std::abs(out.value - alt) > 1e-12 * scale)
        throw std::logic_error("sigma_truncated: direct and primorial routes disagree for " +
                               dset.to_string());
    return out;
}

SingularValue sigma(const OffsetSet& dset, double rel_tolerance) {
    if (!(rel_tolerance > 0.0 && rel_tolerance < 1e-2))
        throw DomainError("sigma: rel_tolerance must lie in (0, 1e-2)");
    const std::size_t k = dset.size();
    SingularValue out;
    if (k == 1) {
        out.value = 1.0;
        return out;
    }

    double exact = 1.0;
    for (std::uint64_t p = 2; p <= k; ++p) {
        if (!is_prime_trial(p)) continue;
        const auto v = nu_unchecked(dset, p);
        out.exact_primes.push_back(p);
        if (v == p) {
            out.zero_witness = p;
            out.value = 0.0;
            return out;
        }
        exact *= local_factor(p, v, k);
    }
    for (auto q : dset.discriminant_primes()) {
        if (q <= k) continue;
        out.exact_primes.push_back(q);
        exact *= static_cast<double>(q - nu_unchecked(dset, q)) / static_cast<double>(q - k);
    }

    const TailConstant tail = tail_constant(static_cast<unsigned>(k), rel_tolerance);
    out.value = exact * tail.value;
    out.tail_bound = tail.rel_half_width;
    out.tail_cutoff = tail.cutoff;
    return out;
}

PairSeriesTable::PairSeriesTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw DomainError("PairSeriesTable: limit must be >= 2");
    values_.assign(limit / 2 + 1, 2.0 * twin_prime_constant_memo());
    values_[0] = 0.0;
    for (auto p : prime_list(limit)) {
        if (p == 2) continue;
        const double r = static_cast<double>(p - 1) / static_cast<double>(p - 2);
        for (std::uint64_t i = p; i < values_.size(); i += p) values_[i] *= r;
    }
}

double PairSeriesTable::operator()(std::uint64_t d) const {
    if (d < 2 || d % 2 == 1 || d > limit_) throw DomainError("PairSeriesTable: d out of range");
    return values_[d / 2];
}

}  // namespace champlab
