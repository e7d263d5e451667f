#include "champlab/census_cache.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "champlab/errors.hpp"

namespace champlab {

namespace {

std::string row_text(const GapCensus& census) {
    std::string rows;
    for (const auto& [d, c] : census.counts)
        rows += std::to_string(d) + "," + std::to_string(c) + "\n";
    return rows;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

bool parse_u64(std::string_view s, std::uint64_t& out, int base = 10) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

CacheLoad failure(CacheStatus status, std::string detail) {
    CacheLoad out;
    out.status = status;
    out.detail = std::move(detail);
    return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string render_census_cache(const GapCensus& census) {
    const std::string rows = row_text(census);
    return "gapcensus v1, x=" + std::to_string(census.x) +
           ", primes=" + std::to_string(census.total_primes) + "\n" + rows + "checksum," +
           hex64(fnv1a64(rows)) + "\n";
}

CacheLoad parse_census_cache(std::string_view text, std::uint64_t expected_x) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        if (nl == std::string_view::npos) {
            lines.push_back(text);
            break;
        }
        lines.push_back(text.substr(0, nl));
        text.remove_prefix(nl + 1);
    }
    if (lines.size() < 2) return failure(CacheStatus::corrupt, "truncated cache file");

    const std::string_view header = lines.front();
    constexpr std::string_view prefix = "gapcensus v1, x=";
    const auto comma = header.find(", primes=");
    if (header.substr(0, prefix.size()) != prefix || comma == std::string_view::npos)
        return failure(CacheStatus::corrupt, "bad header");
    GapCensus census;
    if (!parse_u64(header.substr(prefix.size(), comma - prefix.size()), census.x) ||
        !parse_u64(header.substr(comma + 9), census.total_primes))
        return failure(CacheStatus::corrupt, "bad header numbers");
    if (census.x != expected_x)
        return failure(CacheStatus::mismatch, "cache holds x=" + std::to_string(census.x));

    const std::string_view tail = lines.back();
    std::uint64_t stored = 0;
    if (tail.substr(0, 9) != "checksum," || !parse_u64(tail.substr(9), stored, 16))
        return failure(CacheStatus::corrupt, "missing checksum line");

    std::string rows;
    std::uint64_t gaps = 0;
    for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
        const auto line = lines[i];
        const auto c = line.find(',');
        std::uint64_t d = 0;
        std::uint64_t n = 0;
        if (c == std::string_view::npos || !parse_u64(line.substr(0, c), d) ||
            !parse_u64(line.substr(c + 1), n))
            return failure(CacheStatus::corrupt, "bad row " + std::to_string(i));
        if (!census.counts.empty() && d <= census.counts.rbegin()->first)
            return failure(CacheStatus::corrupt, "rows not ascending");
        census.counts[d] = n;
        gaps += n;
        rows.append(line);
        rows.push_back('\n');
    }
    if (fnv1a64(rows) != stored) return failure(CacheStatus::corrupt, "checksum mismatch");
    if (gaps + 1 != census.total_primes)
        return failure(CacheStatus::corrupt, "gap total disagrees with prime count");

    finalize_champions(census);
    CacheLoad out;
    out.status = CacheStatus::hit;
    out.census = std::move(census);
    return out;
}

CacheLoad load_census_cache(const std::filesystem::path& path, std::uint64_t expected_x) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return failure(CacheStatus::missing, "no cache at " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_census_cache(buf.str(), expected_x);
}

void write_census_cache(const std::filesystem::path& path, const GapCensus& census) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write census cache " + tmp);
        out << render_census_cache(census);
        if (!out) throw IoError("short write to census cache " + tmp);
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move census cache into place at " + path.string() + ": " + ec.message());
}

std::filesystem::path census_cache_file(const std::filesystem::path& dir, std::uint64_t x) {
    return dir / ("gapcensus_" + std::to_string(x) + ".csv");
}

}  // namespace champlab
