#pragma once

// Hardy-Littlewood singular series
//
//   S(D) = prod_p (1 - 1/p)^(-k) (1 - nu_D(p)/p),
//
// where nu_D(p) counts the residue classes mod p hit by D and k = |D|.
//
// Full evaluations split the product into an exact part (primes p <= k
// and primes dividing some difference of D) and the generic tail
// G_k = prod_{p > k} f_k(p), f_k(p) = (1 - k/p)(1 - 1/p)^(-k). For p > k
// dividing the discriminant the exact factor over the generic one is
// (p - nu)/(p - k), so
//
//   S(D) = prod_{p <= k} F(p) * prod_{p > k, p | Delta} (p - nu)/(p - k) * G_k.
//
// G_k is summed explicitly over primes up to a cutoff Y and the remainder
// sum over p > Y is bracketed by partial summation against explicit
// bounds on pi(t). G_2 is the twin prime constant.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "champlab/offset_set.hpp"

namespace champlab {

struct SingularValue {
    double value = 0.0;
    /// Set for truncated products S_y; empty for a full evaluation.
    std::optional<std::uint64_t> truncation_y;
    /// Primes whose factors were taken exactly.
    std::vector<std::uint64_t> exact_primes;
    /// Bound on the relative error contributed by the bracketed tail.
    double tail_bound = 0.0;
    /// Largest prime summed explicitly in the tail constant (0 if none).
    std::uint64_t tail_cutoff = 0;
    /// Prime p with nu(p) = p when the series vanishes.
    std::optional<std::uint64_t> zero_witness;
    std::string note;

    bool is_zero() const { return zero_witness.has_value(); }
};

/// A constant prod_{p > k} f_k(p) with a rigorous relative error bracket.
struct TailConstant {
    unsigned k = 0;
    double value = 0.0;
    std::uint64_t cutoff = 0;
    /// Relative half-width of the bracket around `value`.
    double rel_half_width = 0.0;
};

/// Bounds [lo, hi] on sum_{p > y} g_k(p), g_k = -log f_k, given pi(y).
/// Requires y >= 599 (validity of the lower pi bound).
struct TailBracket {
    double lo = 0.0;
    double hi = 0.0;
};
TailBracket tail_sum_bracket(unsigned k, std::uint64_t y, std::uint64_t pi_y);

/// Width hi - lo of the bracket above; independent of pi(y).
double tail_bracket_width(unsigned k, std::uint64_t y);

/// g_k(t) = -log((1 - k/t)(1 - 1/t)^(-k)), t > k.
double generic_log_deficit(unsigned k, double t);

/// prod_{p > k} f_k(p) with relative half-width below rel_tolerance.
/// Results are memoized per (k, cutoff).
TailConstant tail_constant(unsigned k, double rel_tolerance);

/// The same constant at an explicit cutoff y >= 599.
TailConstant tail_constant_at(unsigned k, std::uint64_t cutoff);

struct TwinPrimeEstimate {
    double value = 0.0;
    std::uint64_t cutoff = 0;
    /// Truncated product prod_{2 < p <= cutoff} (1 - 1/(p-1)^2).
    double truncated_product = 0.0;
    /// Absolute error bound for `value`.
    double abs_error = 0.0;
};

/// C_2 = prod_{p > 2} (1 - 1/(p-1)^2) with absolute error < tolerance.
/// Requires 0 < tolerance < 1e-3.
double twin_prime_constant(double tolerance);
TwinPrimeEstimate twin_prime_constant_detail(double tolerance);
TwinPrimeEstimate twin_prime_constant_at(std::uint64_t cutoff);

/// C_2 at absolute error 1e-12, computed once per process.
double twin_prime_constant_memo();

/// nu_D(p). Throws DomainError if p is not prime.
std::uint64_t nu(const OffsetSet& dset, std::uint64_t p);

/// S({0, d}) by the closed form 2 C_2 prod_{p | d, p > 2} (p-1)/(p-2).
/// Odd d gives the zero value (witness 2); d = 0 throws DomainError.
SingularValue sigma_pair(std::uint64_t d);

/// phi(n, D) = n prod_{p | n} (1 - nu_D(p)/p) for squarefree n >= 1.
std::uint64_t phi_tuple(std::uint64_t n, const OffsetSet& dset);

/// Big-integer variant; `primes` must be the distinct prime factors of
/// the squarefree n.
BigInt phi_tuple(const BigInt& n, const std::vector<std::uint64_t>& primes,
                 const OffsetSet& dset);

/// Bits allowed for the primorial p#(y) in the primorial route.
inline constexpr unsigned kPrimorialBitBudget = 4096;

/// Both evaluations of the truncated product S_y(D).
struct TruncatedRoutes {
    double direct = 0.0;
    double via_primorial = 0.0;
    double rel_diff = 0.0;
};

/// Direct product over p <= y; always available.
SingularValue sigma_truncated_direct(const OffsetSet& dset, std::uint64_t y);

/// phi(p#(y), D)/p#(y) * prod_{p <= y} (1 - 1/p)^(-k), in exact rationals.
/// Throws CapacityError past kPrimorialBitBudget.
double sigma_truncated_primorial(const OffsetSet& dset, std::uint64_t y);

TruncatedRoutes sigma_truncated_routes(const OffsetSet& dset, std::uint64_t y);

/// S_y(D): computed by both routes; throws std::logic_error if they
/// disagree by more than 1e-12 relative.
SingularValue sigma_truncated(const OffsetSet& dset, std::uint64_t y);

/// Full S(D) with relative error below rel_tolerance (0 < tol < 1e-2).
SingularValue sigma(const OffsetSet& dset, double rel_tolerance = 1e-10);

/// S(d) for every even d <= limit, built multiplicatively from the
/// memoized C_2. Entry d/2 holds S(d).
class PairSeriesTable {
public:
    explicit PairSeriesTable(std::uint64_t limit);
    std::uint64_t limit() const { return limit_; }
    /// S(d) for even 2 <= d <= limit.
    double operator()(std::uint64_t d) const;

private:
    std::uint64_t limit_;
    std::vector<double> values_;
};

}  // namespace champlab
