#pragma once

// On-disk census cache:
//
//   gapcensus v1, x=<integer>, primes=<integer>
//   <d>,<count>          one row per gap, ascending d
//   checksum,<hex>       64-bit FNV-1a over the row lines, each with its '\n'
//
// The checksum is written as 16 lowercase hex digits.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "champlab/gap_census.hpp"

namespace champlab {

std::uint64_t fnv1a64(std::string_view bytes);

std::string render_census_cache(const GapCensus& census);

enum class CacheStatus { hit, missing, corrupt, mismatch };

struct CacheLoad {
    CacheStatus status = CacheStatus::missing;
    std::optional<GapCensus> census;
    /// Human-readable reason for anything but a hit.
    std::string detail;
};

/// Parses cache text and verifies the header bound, prime total and
/// checksum against `expected_x`.
CacheLoad parse_census_cache(std::string_view text, std::uint64_t expected_x);

CacheLoad load_census_cache(const std::filesystem::path& path, std::uint64_t expected_x);

/// Throws IoError on failure.
void write_census_cache(const std::filesystem::path& path, const GapCensus& census);

/// Default file name inside a cache directory.
std::filesystem::path census_cache_file(const std::filesystem::path& dir, std::uint64_t x);

}  // namespace champlab
