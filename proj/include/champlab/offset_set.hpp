#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace champlab {

using BigInt = boost::multiprecision::cpp_int;

/// A finite set of distinct non-negative offsets d_1 < ... < d_k, the
/// argument of the singular series.
class OffsetSet {
public:
    /// Sorts the input; throws DomainError on duplicates or an empty set.
    explicit OffsetSet(std::vector<std::uint64_t> offsets);
    OffsetSet(std::initializer_list<std::uint64_t> offsets)
        : OffsetSet(std::vector<std::uint64_t>(offsets)) {}

    std::size_t size() const { return offsets_.size(); }
    const std::vector<std::uint64_t>& offsets() const { return offsets_; }
    std::uint64_t front() const { return offsets_.front(); }
    std::uint64_t back() const { return offsets_.back(); }
    std::uint64_t spread() const { return offsets_.back() - offsets_.front(); }
    bool contains(std::uint64_t d) const;

    /// The set with d added; throws DomainError if d is already present.
    OffsetSet with(std::uint64_t d) const;

    /// Translate so the smallest offset is 0. The singular series depends
    /// only on differences, so this is the canonical cache key.
    OffsetSet normalized() const;

    /// Product of |d_j - d_i| over i < j (1 for a singleton).
    BigInt discriminant() const;

    /// Distinct primes dividing some pairwise difference, i.e. the primes
    /// dividing the discriminant.
    std::vector<std::uint64_t> discriminant_primes() const;

    std::string to_string() const;

    auto operator<=>(const OffsetSet&) const = default;

private:
    std::vector<std::uint64_t> offsets_;
};

/// Parses "0,2,6" (commas or whitespace). Throws DomainError.
OffsetSet parse_offset_set(const std::string& text);

}  // namespace champlab
