#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace champlab {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr std::string_view kReportSchema = "champion-lab/1";

enum class Command { census, champion, pairs, triples, sseries, tuple, average, model, intervals, compare };
enum class Format { csv, json, plot };

std::string_view command_name(Command c);
/// DomainError for unknown names.
Command parse_command(std::string_view name);
std::string_view format_name(Format f);
Format parse_format(std::string_view name);

struct RunConfig {
    Command command = Command::census;
    std::optional<std::uint64_t> x;
    std::optional<std::uint64_t> d;
    std::optional<std::uint64_t> d1;
    std::optional<std::uint64_t> d2;
    std::optional<std::uint64_t> D;
    std::optional<unsigned> k;
    std::optional<double> delta;
    std::optional<std::uint64_t> y_trunc;
    std::optional<double> log_x;
    std::optional<std::string> offsets;
    std::optional<std::uint64_t> H;
    std::optional<std::uint64_t> h;
    std::optional<std::uint64_t> d_max;
    double tolerance = 1e-10;
    Format format = Format::json;
    std::optional<std::filesystem::path> cache_path;
    /// 0 means available parallelism. Never echoed into reports.
    unsigned threads = 0;
};

/// Throws DomainError when a field required by the command is missing or
/// out of range.
void validate(const RunConfig& config);

/// Cache directory: the explicit path, else $CHAMPIONLAB_CACHE_DIR, else none.
std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig& config);

struct Provenance {
    std::string version;
    nlohmann::ordered_json tolerances;
    /// "hit", "miss", "corrupt", "mismatch" or "disabled"; "none" if no census was needed.
    std::string cache = "none";
    std::vector<std::string> warnings;
    double wall_time = 0.0;

    bool operator==(const Provenance&) const = default;
};

struct Report {
    std::string schema{kReportSchema};
    std::string command;
    nlohmann::ordered_json input;
    nlohmann::ordered_json result;
    Provenance provenance;

    bool operator==(const Report&) const = default;
};

Report run(const RunConfig& config);

std::string emit_json(const Report& report);
/// Inverse of emit_json. DomainError on malformed input.
Report parse_report_json(std::string_view text);

/// Header row plus data rows.
std::string emit_csv(const Report& report);

/// Two-column whitespace-separated series with '#' header lines.
/// DomainError if the command's payload has no (abscissa, ordinate) form.
std::string emit_plot_series(const Report& report);

std::string emit(const Report& report, Format format);

/// Exit code for an exception: 2 domain, 3 capacity, 4 I/O, 1 otherwise.
int exit_code_for(const std::exception& error);
/// One-line machine-parseable error: error code=<n> kind=<kind> message="<text>"
std::string error_line(const std::exception& error);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

}  // namespace champlab
