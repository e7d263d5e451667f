#include "champlab/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "champlab/census_cache.hpp"
#include "champlab/champion_model.hpp"
#include "champlab/errors.hpp"
#include "champlab/gap_census.hpp"
#include "champlab/singular_series.hpp"
#include "champlab/tuple_averages.hpp"

namespace champlab {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::census, "census"},   {Command::champion, "champion"}, {Command::pairs, "pairs"},
    {Command::triples, "triples"}, {Command::sseries, "sseries"},   {Command::tuple, "tuple"},
    {Command::average, "average"}, {Command::model, "model"},       {Command::intervals, "intervals"},
    {Command::compare, "compare"},
};

ojson real_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

template <typename T>
void need(const std::optional<T>& field, const char* flag, Command c) {
    if (!field) {
        throw DomainError(std::string(command_name(c)) + " requires " + flag);
    }
}

SieveConfig sieve_config(const RunConfig& config) {
    SieveConfig sc;
    sc.threads = config.threads;
    return sc;
}

std::string zero_reason(const SingularValue& v) {
    if (!v.is_zero()) return "";
    if (!v.note.empty()) return v.note;
    return "covers every residue mod " + std::to_string(*v.zero_witness);
}

ojson primes_json(const std::vector<std::uint64_t>& primes) {
    ojson a = ojson::array();
    for (auto p : primes) a.push_back(p);
    return a;
}

GapCensus obtain_census(const RunConfig& config, Provenance& prov) {
    const std::uint64_t x = *config.x;
    const auto dir = resolve_cache_dir(config);
    if (!dir) {
        prov.cache = "disabled";
        return census(x, sieve_config(config));
    }
    const auto file = census_cache_file(*dir, x);
    CacheLoad load = load_census_cache(file, x);
    switch (load.status) {
        case CacheStatus::hit:
            prov.cache = "hit";
            return std::move(*load.census);
        case CacheStatus::missing:
            prov.cache = "miss";
            break;
        case CacheStatus::corrupt:
        case CacheStatus::mismatch: {
            prov.cache = load.status == CacheStatus::corrupt ? "corrupt" : "mismatch";
            std::string w = "cache file " + file.string() + " ignored (" + load.detail + "); recomputed";
            std::cerr << "warning: " << w << '\n';
            prov.warnings.push_back(std::move(w));
            break;
        }
    }
    GapCensus result = census(x, sieve_config(config));
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) throw IoError("cannot create cache directory " + dir->string() + ": " + ec.message());
    write_census_cache(file, result);
    return result;
}

ojson census_json(const GapCensus& c) {
    ojson counts = ojson::object();
    for (const auto& [d, n] : c.counts) counts[std::to_string(d)] = n;
    return ojson{{"x", c.x},
                 {"total_primes", c.total_primes},
                 {"n_star", c.n_star},
                 {"champions", c.champions},
                 {"counts", std::move(counts)}};
}

ojson run_census(const RunConfig& config, Provenance& prov) { return census_json(obtain_census(config, prov)); }

ojson run_champion(const RunConfig& config, Provenance& prov) {
    const GapCensus c = obtain_census(config, prov);
    const ModelScan scan = model_scan(std::log(static_cast<double>(c.x)));
    return ojson{{"x", c.x},
                 {"champions", c.champions},
                 {"n_star", c.n_star},
                 {"model_argmax", scan.argmax_d},
                 {"model_ties", scan.ties}};
}

ojson run_pairs(const RunConfig& config) {
    const TupleCounter counter(*config.x, sieve_config(config));
    std::vector<std::uint64_t> ds;
    if (config.d) {
        ds.push_back(*config.d);
    } else {
        const std::uint64_t hi = config.d_max.value_or(30);
        for (std::uint64_t d = 2; d <= hi; d += 2) ds.push_back(d);
    }
    ojson rows = ojson::array();
    for (auto d : ds) {
        const PairComparison pc = compare_pair(counter, d);
        rows.push_back(ojson{{"d", d},
                             {"count", pc.count},
                             {"sigma", pc.sigma},
                             {"li2", pc.li2},
                             {"x_over_log2", pc.x_over_log2},
                             {"ratio_li2", real_or_null(pc.ratio_li2)},
                             {"ratio_log2", real_or_null(pc.ratio_log2)}});
    }
    return ojson{{"x", *config.x}, {"rows", std::move(rows)}};
}

ojson run_triples(const RunConfig& config) {
    const TupleCounter counter(*config.x, sieve_config(config));
    if (config.d1) {
        const SieveBoundCheck check = sieve_bound_check(counter, {*config.d1, *config.d2});
        return ojson{{"x", *config.x},
                     {"d1", *config.d1},
                     {"d2", *config.d2},
                     {"offsets", check.tuple.offsets.to_string()},
                     {"count", check.tuple.count},
                     {"sigma", check.sigma},
                     {"li3", check.li_k},
                     {"ratio_li3", real_or_null(check.ratio_li)},
                     {"sieve_bound", check.bound},
                     {"bound_holds", check.holds}};
    }
    const GapCensus c = census(*config.x, sieve_config(config));
    const ExclusionChain ch = counter.exclusion_chain(*config.d, *config.D, c);
    return ojson{{"x", ch.x},
                 {"d", ch.d},
                 {"D", ch.D},
                 {"pi2", ch.pi2},
                 {"sum_pi3", ch.sum_pi3},
                 {"sum_pi3_truncated", ch.sum_pi3_truncated},
                 {"sum_pi4", ch.sum_pi4},
                 {"lower", ch.lower},
                 {"upper", ch.upper},
                 {"census_count", ch.census_count},
                 {"holds", ch.holds}};
}

ojson run_sseries(const RunConfig& config) {
    const OffsetSet dset = config.offsets ? parse_offset_set(*config.offsets)
                                          : OffsetSet({0, *config.d});
    ojson out{{"offsets", dset.to_string()}};
    if (config.y_trunc) {
        const SingularValue v = sigma_truncated(dset, *config.y_trunc);
        const TruncatedRoutes routes = sigma_truncated_routes(dset, *config.y_trunc);
        out["truncation_y"] = *config.y_trunc;
        out["value"] = v.value;
        out["zero"] = v.is_zero();
        out["reason"] = zero_reason(v);
        out["direct"] = routes.direct;
        out["via_primorial"] = routes.via_primorial;
        out["route_rel_diff"] = routes.rel_diff;
        return out;
    }
    const SingularValue v = (!config.offsets && dset.size() == 2) ? sigma_pair(*config.d)
                                                                   : sigma(dset, config.tolerance);
    out["value"] = v.value;
    out["zero"] = v.is_zero();
    out["reason"] = zero_reason(v);
    out["exact_primes"] = primes_json(v.exact_primes);
    out["tail_cutoff"] = v.tail_cutoff;
    out["tail_bound"] = v.tail_bound;
    return out;
}

ojson run_tuple(const RunConfig& config) {
    const OffsetSet dset = parse_offset_set(*config.offsets).normalized();
    if (dset.size() < 2) throw DomainError("tuple needs at least two offsets");
    const TupleCounter counter(*config.x, sieve_config(config));
    std::vector<std::uint64_t> shifts;
    bool even = true;
    for (auto o : dset.offsets()) {
        if (o == dset.back()) continue;
        shifts.push_back(dset.back() - o);
        even = even && (dset.back() - o) % 2 == 0;
    }
    ojson out{{"x", *config.x}, {"offsets", dset.to_string()}, {"k", dset.size()}};
    if (!even) {
        const SingularValue v = sigma(dset, config.tolerance);
        out["count"] = counter.count(shifts);
        out["sigma"] = v.value;
        out["reason"] = zero_reason(v);
        return out;
    }
    const SieveBoundCheck check = sieve_bound_check(counter, shifts);
    out["count"] = check.tuple.count;
    out["sigma"] = check.sigma;
    out["li_k"] = check.li_k;
    out["ratio_li"] = real_or_null(check.ratio_li);
    out["sieve_bound"] = check.bound;
    out["bound_holds"] = check.holds;
    return out;
}

ojson run_average(const RunConfig& config) {
    AverageOptions opts;
    opts.threads = config.threads;
    opts.rel_tolerance = config.tolerance;
    if (config.offsets) {
        const OffsetSet dset = parse_offset_set(*config.offsets);
        const WindowSum w = window_sum(dset, *config.H, *config.h, opts);
        return ojson{{"offsets", dset.to_string()},
                     {"H", *config.H},
                     {"h", *config.h},
                     {"sum", w.sum},
                     {"main_term", w.main},
                     {"ratio", real_or_null(w.sum / w.main)},
                     {"collisions", w.collisions}};
    }
    const AverageReport r = average(*config.k, *config.d, *config.D, opts);
    return ojson{{"k", r.k},
                 {"d", r.d},
                 {"D", r.D},
                 {"sum", r.sum},
                 {"main_term", r.main_term},
                 {"ratio", real_or_null(r.ratio)},
                 {"remainder", r.remainder},
                 {"terms_evaluated", r.terms_evaluated},
                 {"terms_screened", r.terms_screened}};
}

ojson run_model(const RunConfig& config) {
    const double log_x = config.log_x ? *config.log_x : std::log(static_cast<double>(*config.x));
    const ModelScan scan = model_scan(log_x, config.d_max);
    ojson values = ojson::array();
    for (const auto& [d, m] : scan.values) values.push_back(ojson::array({d, m}));
    ojson out{{"log_x", log_x},
              {"d_min", scan.d_min},
              {"d_max", scan.d_max},
              {"d_scanned", scan.d_scanned},
              {"argmax", scan.argmax_d},
              {"ties", scan.ties},
              {"values", std::move(values)}};
    try {
        const ChampionWindows tw = champion_windows(log_x, 1.1, 0.8, 0.9, 1.2);
        const auto& ladder = default_ladder();
        auto decimals = [&](const std::vector<unsigned>& ks) {
            ojson a = ojson::array();
            for (auto k : ks) a.push_back(ladder.at(k).decimal());
            return a;
        };
        out["windows"] = ojson{{"a", 1.1},
                               {"a_prime", 0.8},
                               {"b", 0.9},
                               {"b_prime", 1.2},
                               {"inner", ojson::array({tw.inner.lo, tw.inner.hi})},
                               {"inner_primorials", decimals(tw.inner_found)},
                               {"outer_lo_primorials", decimals(tw.outer_lo_found)},
                               {"outer_hi_primorials", decimals(tw.outer_hi_found)},
                               {"outcome", tw.outcome},
                               {"predicted", decimals(tw.predicted)}};
    } catch (const DomainError&) {
    } catch (const CapacityError&) {
    }
    return out;
}

ojson run_intervals(const RunConfig& config) {
    const double delta = config.delta.value_or(0.0);
    std::vector<unsigned> ks;
    if (config.k) {
        ks.push_back(*config.k);
    } else {
        for (unsigned k = 3; k <= 7; ++k) ks.push_back(k);
    }
    ojson rows = ojson::array();
    ojson logs = ojson::array();
    for (auto k : ks) {
        const LogInterval iv = transition_interval(k, delta);
        rows.push_back(ojson{{"k", k},
                             {"primorial", table_primorial(k).decimal()},
                             {"lo", iv.lo().str()},
                             {"hi", iv.hi().str()}});
        logs.push_back(ojson::array({k, iv.lo_log10, iv.hi_log10}));
    }
    return ojson{{"delta", delta}, {"rows", std::move(rows)}, {"log10_bounds", std::move(logs)}};
}

ojson run_compare(const RunConfig& config, Provenance& prov) {
    const GapCensus c = obtain_census(config, prov);
    const double log_x = std::log(static_cast<double>(c.x));
    std::uint64_t cap = config.d_max ? *config.d_max : static_cast<std::uint64_t>(std::floor(log_x * log_x));
    if (!c.counts.empty()) cap = std::min(cap, c.counts.rbegin()->first);
    ojson rows = ojson::array();
    for (std::uint64_t d = 2; d <= cap; d += 2) {
        const PredictedCount pred = predicted_gap_count(log_x, d);
        const std::uint64_t n = c.count(d);
        ojson row{{"d", d}, {"count", n}};
        row["predicted"] = pred.value ? real_or_null(*pred.value) : ojson(nullptr);
        row["log_predicted"] = real_or_null(pred.log_value);
        row["ratio"] = (pred.value && *pred.value > 0.0) ? real_or_null(static_cast<double>(n) / *pred.value)
                                                         : ojson(nullptr);
        rows.push_back(std::move(row));
    }
    return ojson{{"x", c.x}, {"champions", c.champions}, {"rows", std::move(rows)}};
}

ojson input_echo(const RunConfig& c) {
    ojson in = ojson::object();
    auto put = [&](const char* key, const auto& opt) {
        if (opt) in[key] = *opt;
    };
    put("x", c.x);
    put("d", c.d);
    put("d1", c.d1);
    put("d2", c.d2);
    put("D", c.D);
    put("k", c.k);
    put("delta", c.delta);
    put("y", c.y_trunc);
    put("logx", c.log_x);
    put("offsets", c.offsets);
    put("H", c.H);
    put("h", c.h);
    put("dmax", c.d_max);
    in["tolerance"] = c.tolerance;
    in["format"] = std::string(format_name(c.format));
    return in;
}

std::string csv_cell(const ojson& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ';';
            out += csv_cell(v[i]);
        }
        return out;
    }
    return csv_cell(ojson(v.dump()));
}

std::string csv_rows(const ojson& rows) {
    std::string out;
    if (rows.empty()) return out;
    bool first = true;
    for (const auto& [key, _] : rows.front().items()) {
        if (!first) out += ',';
        out += key;
        first = false;
    }
    out += '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& [_, val] : row.items()) {
            if (!first) out += ',';
            out += csv_cell(val);
            first = false;
        }
        out += '\n';
    }
    return out;
}

const ojson& field(const ojson& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DomainError(std::string("report is missing '") + key + "'");
    return *it;
}

}  // namespace

std::string_view command_name(Command c) {
    for (const auto& [cmd, name] : kCommands) {
        if (cmd == c) return name;
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (const auto& [cmd, n] : kCommands) {
        if (n == name) return cmd;
    }
    throw DomainError("unknown command '" + std::string(name) + "'");
}

std::string_view format_name(Format f) {
    switch (f) {
        case Format::csv: return "csv";
        case Format::json: return "json";
        case Format::plot: return "plot";
    }
    return "json";
}

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    if (name == "plot") return Format::plot;
    throw DomainError("unknown format '" + std::string(name) + "'");
}

void validate(const RunConfig& c) {
    if (!(c.tolerance > 0.0 && c.tolerance < 1e-2)) throw DomainError("tolerance must be in (0, 1e-2)");
    const Command cmd = c.command;
    switch (cmd) {
        case Command::census:
        case Command::champion:
        case Command::compare:
            need(c.x, "--x", cmd);
            if (*c.x < 3) throw DomainError("x must be >= 3");
            break;
        case Command::pairs:
            need(c.x, "--x", cmd);
            if (*c.x < 3) throw DomainError("x must be >= 3");
            if (c.d && (*c.d < 2 || *c.d % 2)) throw DomainError("d must be even and >= 2");
            if (c.d_max && *c.d_max < 2) throw DomainError("dmax must be >= 2");
            break;
        case Command::triples: {
            need(c.x, "--x", cmd);
            if (*c.x < 3) throw DomainError("x must be >= 3");
            const bool pattern = c.d1 || c.d2;
            const bool chain = c.d || c.D;
            if (pattern == chain) throw DomainError("triples takes either --d1/--d2 or --d/--D");
            if (pattern) {
                need(c.d1, "--d1", cmd);
                need(c.d2, "--d2", cmd);
                if (*c.d1 < 2 || *c.d1 % 2 || *c.d2 % 2 || *c.d1 >= *c.d2) {
                    throw DomainError("need even 2 <= d1 < d2");
                }
            } else {
                need(c.d, "--d", cmd);
                need(c.D, "--D", cmd);
                if (*c.d < 2 || *c.d % 2) throw DomainError("d must be even and >= 2");
                if (*c.D < 1 || *c.D > *c.d) throw DomainError("need 1 <= D <= d");
            }
            break;
        }
        case Command::sseries:
            if (c.d.has_value() == c.offsets.has_value()) throw DomainError("sseries takes exactly one of --d, --offsets");
            if (c.d && *c.d == 0) throw DomainError("d must be nonzero");
            if (c.y_trunc && *c.y_trunc < 2) throw DomainError("y must be >= 2");
            break;
        case Command::tuple:
            need(c.x, "--x", cmd);
            need(c.offsets, "--offsets", cmd);
            if (*c.x < 3) throw DomainError("x must be >= 3");
            break;
        case Command::average:
            if (c.offsets) {
                need(c.H, "--H", cmd);
                need(c.h, "--h", cmd);
                if (*c.H < 1 || *c.H > *c.h) throw DomainError("need 1 <= H <= h");
            } else {
                need(c.k, "--k", cmd);
                need(c.d, "--d", cmd);
                need(c.D, "--D", cmd);
                if (*c.k != 3 && *c.k != 4) throw DomainError("k must be 3 or 4");
                if (*c.d < 2 || *c.d % 2) throw DomainError("d must be even and >= 2");
                if (*c.D < 1 || *c.D > *c.d) throw DomainError("need 1 <= D <= d");
            }
            break;
        case Command::model:
            if (c.log_x.has_value() == c.x.has_value()) throw DomainError("model takes exactly one of --logx, --x");
            if (c.log_x && !(*c.log_x > 0.0 && std::isfinite(*c.log_x))) throw DomainError("logx must be positive");
            if (c.x && *c.x < 2) throw DomainError("x must be >= 2");
            if (c.d_max && *c.d_max < 2) throw DomainError("dmax must be >= 2");
            break;
        case Command::intervals:
            if (c.delta && !(*c.delta >= 0.0 && *c.delta < 0.5)) throw DomainError("delta must satisfy 0 <= delta < 1/2");
            if (c.k && *c.k < 2) throw DomainError("interval rows start at k = 2");
            break;
    }
}

std::optional<std::filesystem::path> resolve_cache_dir(const RunConfig& config) {
    if (config.cache_path) return config.cache_path;
    if (const char* env = std::getenv("CHAMPIONLAB_CACHE_DIR"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    return std::nullopt;
}

Report run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    validate(config);
    Report r;
    r.command = std::string(command_name(config.command));
    r.input = input_echo(config);
    r.provenance.version = std::string(kToolVersion);
    r.provenance.tolerances = ojson{{"series_rel", config.tolerance},
                                    {"twin_constant_abs", 1e-12},
                                    {"log_integral_rel", 1e-9},
                                    {"primorial_route_rel", 1e-12}};
    switch (config.command) {
        case Command::census: r.result = run_census(config, r.provenance); break;
        case Command::champion: r.result = run_champion(config, r.provenance); break;
        case Command::pairs: r.result = run_pairs(config); break;
        case Command::triples: r.result = run_triples(config); break;
        case Command::sseries: r.result = run_sseries(config); break;
        case Command::tuple: r.result = run_tuple(config); break;
        case Command::average: r.result = run_average(config); break;
        case Command::model: r.result = run_model(config); break;
        case Command::intervals: r.result = run_intervals(config); break;
        case Command::compare: r.result = run_compare(config, r.provenance); break;
    }
    r.provenance.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string emit_json(const Report& r) {
    ojson prov{{"version", r.provenance.version},
               {"tolerances", r.provenance.tolerances},
               {"cache", r.provenance.cache},
               {"warnings", r.provenance.warnings},
               {"wall_time", r.provenance.wall_time}};
    ojson doc{{"schema", r.schema},
              {"command", r.command},
              {"input", r.input},
              {"result", r.result},
              {"provenance", std::move(prov)}};
    return doc.dump(2) + "\n";
}

Report parse_report_json(std::string_view text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
    if (!doc.is_object()) throw DomainError("malformed report: not an object");
    Report r;
    try {
        r.schema = field(doc, "schema").get<std::string>();
        if (r.schema != kReportSchema) throw DomainError("unsupported report schema '" + r.schema + "'");
        r.command = field(doc, "command").get<std::string>();
        r.input = field(doc, "input");
        r.result = field(doc, "result");
        const ojson& prov = field(doc, "provenance");
        r.provenance.version = field(prov, "version").get<std::string>();
        r.provenance.tolerances = field(prov, "tolerances");
        r.provenance.cache = field(prov, "cache").get<std::string>();
        r.provenance.warnings = field(prov, "warnings").get<std::vector<std::string>>();
        r.provenance.wall_time = field(prov, "wall_time").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::string emit_csv(const Report& r) {
    const ojson& res = r.result;
    if (r.command == "census") {
        std::string out = "d,count\n";
        for (const auto& [d, n] : res.at("counts").items()) out += d + "," + csv_cell(n) + "\n";
        return out;
    }
    if (r.command == "model") {
        std::string out = "d,M\n";
        for (const auto& pair : res.at("values")) out += csv_cell(pair[0]) + "," + csv_cell(pair[1]) + "\n";
        return out;
    }
    if (r.command == "pairs" || r.command == "intervals" || r.command == "compare") {
        return csv_rows(res.at("rows"));
    }
    ojson flat = ojson::object();
    for (const auto& [key, val] : res.items()) {
        if (val.is_object()) continue;
        flat[key] = val;
    }
    return csv_rows(ojson::array({flat}));
}

std::string emit_plot_series(const Report& r) {
    const ojson& res = r.result;
    std::string out = "# champion-lab " + r.command + "\n";
    auto line = [&](const ojson& a, const ojson& b) { out += csv_cell(a) + " " + csv_cell(b) + "\n"; };
    if (r.command == "census") {
        out += "# x=" + csv_cell(res.at("x")) + "\n# d N(x,d)\n";
        for (const auto& [d, n] : res.at("counts").items()) out += d + " " + csv_cell(n) + "\n";
    } else if (r.command == "model") {
        out += "# log_x=" + csv_cell(res.at("log_x")) + "\n# d M(x,d)\n";
        for (const auto& pair : res.at("values")) line(pair[0], pair[1]);
    } else if (r.command == "pairs") {
        out += "# x=" + csv_cell(res.at("x")) + "\n# d ratio_li2\n";
        for (const auto& row : res.at("rows")) line(row.at("d"), row.at("ratio_li2"));
    } else if (r.command == "compare") {
        out += "# x=" + csv_cell(res.at("x")) + "\n# d ratio\n";
        for (const auto& row : res.at("rows")) line(row.at("d"), row.at("ratio"));
    } else if (r.command == "intervals") {
        out += "# delta=" + csv_cell(res.at("delta")) + "\n# k lo_log10\n";
        for (const auto& t : res.at("log10_bounds")) line(t[0], t[1]);
    } else {
        throw DomainError("the " + r.command + " report has no plottable series");
    }
    return out;
}

std::string emit(const Report& report, Format format) {
    switch (format) {
        case Format::csv: return emit_csv(report);
        case Format::plot: return emit_plot_series(report);
        case Format::json: break;
    }
    return emit_json(report);
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const CapacityError*>(&error)) return 3;
    if (dynamic_cast<const IoError*>(&error)) return 4;
    if (dynamic_cast<const DomainError*>(&error)) return 2;
    if (dynamic_cast<const std::invalid_argument*>(&error)) return 2;
    if (dynamic_cast<const std::out_of_range*>(&error)) return 2;
    return 1;
}

std::string error_line(const std::exception& error) {
    const int code = exit_code_for(error);
    const char* kind = code == 2 ? "domain" : code == 3 ? "capacity" : code == 4 ? "io" : "internal";
    std::string msg;
    for (const char* p = error.what(); *p != '\0'; ++p) {
        if (*p == '"' || *p == '\\') msg += '\\';
        msg += (*p == '\n' || *p == '\r') ? ' ' : *p;
    }
    return "error code=" + std::to_string(code) + " kind=" + kind + " message=\"" + msg + "\"";
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace champlab
