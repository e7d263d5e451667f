#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "champlab/errors.hpp"
#include "champlab/report.hpp"

namespace {

template <typename T>
void optional_flag(CLI::App& app, const std::string& flag, std::optional<T>& target, const std::string& help) {
    app.add_option_function<T>(flag, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace champlab;

    CLI::App app{"Prime gap census, singular series and jumping-champion model toolkit"};
    app.require_subcommand(1);
    // --h is a window bound, so help is long-form only
    app.set_help_flag("--help", "print help and exit");
    app.set_version_flag("--version", std::string(kToolVersion));

    RunConfig config;
    std::string format = "json";
    std::string cache;

    const char* names[] = {"census", "champion", "pairs", "triples", "sseries",
                           "tuple", "average", "model", "intervals", "compare"};
    const char* blurbs[] = {
        "gap histogram N(x,d) and champions",
        "empirical champion vs model argmax",
        "pi2(x,d) against S(d) li2(x)",
        "triple pattern counts (--d1 --d2) or exclusion bounds (--d --D)",
        "singular series of {0,d} or an offset set",
        "k-tuple count for an offset set",
        "singular series averages A_k(d,D) or window sums",
        "model M(x,d) scan",
        "transition intervals (table rows k)",
        "census vs two-term model prediction",
    };
    for (std::size_t i = 0; i < std::size(names); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
        optional_flag(*sub, "--x", config.x, "bound x");
        optional_flag(*sub, "--d", config.d, "gap or difference d");
        optional_flag(*sub, "--d1", config.d1, "first inner difference");
        optional_flag(*sub, "--d2", config.d2, "second inner difference");
        optional_flag(*sub, "--D", config.D, "truncation D");
        optional_flag(*sub, "--k", config.k, "tuple size or table row");
        optional_flag(*sub, "--delta", config.delta, "interval shrink delta in [0, 1/2)");
        optional_flag(*sub, "--y", config.y_trunc, "truncation point y of the singular series");
        optional_flag(*sub, "--logx", config.log_x, "log x for model scans");
        optional_flag(*sub, "--offsets", config.offsets, "offset set such as {0,2,6}");
        optional_flag(*sub, "--H", config.H, "window length H");
        optional_flag(*sub, "--h", config.h, "window bound h");
        optional_flag(*sub, "--dmax", config.d_max, "largest d scanned");
        sub->add_option("--tolerance", config.tolerance, "relative tolerance for singular series");
        sub->add_option("--format", format, "csv, json or plot")->check(CLI::IsMember({"csv", "json", "plot"}));
        sub->add_option("--cache", cache, "census cache directory");
        sub->add_option("--threads", config.threads, "worker threads (0 = all cores)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_line(DomainError(e.what())) << '\n';
        return 2;
    }

    try {
        config.command = parse_command(app.get_subcommands().front()->get_name());
        config.format = parse_format(format);
        if (!cache.empty()) config.cache_path = cache;
        const Report report = run(config);
        std::cout << emit(report, config.format);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << error_line(e) << '\n';
        return exit_code_for(e);
    }
}
