#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "champlab/census_cache.hpp"
#include "champlab/errors.hpp"
#include "champlab/report.hpp"

using namespace champlab;
namespace fs = std::filesystem;

namespace {

RunConfig make(Command c) {
    RunConfig r;
    r.command = c;
    r.threads = 1;
    return r;
}

std::vector<RunConfig> smoke_matrix() {
    std::vector<RunConfig> out;
    RunConfig c = make(Command::census);
    c.x = 200000;
    out.push_back(c);
    c = make(Command::champion);
    c.x = 1000000;
    out.push_back(c);
    c = make(Command::pairs);
    c.x = 300000;
    c.d_max = 12;
    out.push_back(c);
    c = make(Command::triples);
    c.x = 300000;
    c.d1 = 2;
    c.d2 = 6;
    out.push_back(c);
    c = make(Command::triples);
    c.x = 100000;
    c.d = 30;
    c.D = 15;
    out.push_back(c);
    c = make(Command::sseries);
    c.offsets = "{0,2,6,8}";
    out.push_back(c);
    c = make(Command::sseries);
    c.d = 30;
    c.y_trunc = 100;
    out.push_back(c);
    c = make(Command::tuple);
    c.x = 300000;
    c.offsets = "{0,4,6,10}";
    out.push_back(c);
    c = make(Command::average);
    c.k = 3;
    c.d = 210;
    c.D = 210;
    out.push_back(c);
    c = make(Command::average);
    c.offsets = "{0,2}";
    c.H = 40;
    c.h = 40;
    out.push_back(c);
    c = make(Command::model);
    c.log_x = 50;
    out.push_back(c);
    c = make(Command::intervals);
    out.push_back(c);
    c = make(Command::compare);
    c.x = 1000000;
    out.push_back(c);
    return out;
}

Report without_clock(Report r) {
    r.provenance.wall_time = 0.0;
    return r;
}

fs::path scratch_dir(const char* tag) {
    const fs::path dir = fs::temp_directory_path() /
                         ("champlab_report_" + std::string(tag) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("census report") {
    RunConfig c = make(Command::census);
    c.x = 100;
    const Report r = run(c);
    CHECK(r.schema == "champion-lab/1");
    CHECK(r.command == "census");
    CHECK(r.result["champions"] == nlohmann::ordered_json::array({2}));
    const auto& counts = r.result["counts"];
    CHECK(counts["1"] == 1);
    CHECK(counts["2"] == 8);
    CHECK(counts["4"] == 7);
    CHECK(counts["6"] == 7);
    CHECK(counts["8"] == 1);
    CHECK(counts.size() == 5);
    CHECK(r.provenance.cache != "hit");

    CHECK(emit_csv(r) == "d,count\n1,1\n2,8\n4,7\n6,7\n8,1\n");
    CHECK(emit_plot_series(r) == "# champion-lab census\n# x=100\n# d N(x,d)\n1 1\n2 8\n4 7\n6 7\n8 1\n");
}

TEST_CASE("intervals report") {
    RunConfig c = make(Command::intervals);
    c.k = 3;
    c.delta = 0.0;
    const Report r = run(c);
    CHECK(emit_csv(r) == "k,primorial,lo,hi\n3,6,4.67e4,2.32e8\n");
    CHECK(r.result["rows"][0]["primorial"].is_string());

    RunConfig all = make(Command::intervals);
    const std::string csv = emit_csv(run(all));
    CHECK(csv.find("7,30030,9.70e134460,") != std::string::npos);
}

TEST_CASE("odd pair series") {
    RunConfig c = make(Command::sseries);
    c.d = 7;
    const Report r = run(c);
    CHECK(r.result["value"] == 0.0);
    CHECK(r.result["zero"] == true);
    CHECK(r.result["reason"] == "odd d");
    CHECK_THROWS_AS(emit_plot_series(r), DomainError);
}

TEST_CASE("model plot series") {
    RunConfig c = make(Command::model);
    c.log_x = 50;
    const Report r = run(c);
    CHECK(r.result["argmax"] == 6);
    const std::string plot = emit_plot_series(r);
    std::istringstream in(plot);
    std::string line;
    int data = 0;
    std::uint64_t expect_d = 2;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) continue;
        std::istringstream fields(line);
        std::uint64_t d;
        double m;
        REQUIRE(static_cast<bool>(fields >> d >> m));
        CHECK(d == expect_d);
        expect_d += 2;
        ++data;
    }
    CHECK(data == static_cast<int>(r.result["values"].size()));
}

TEST_CASE("compare plot series") {
    RunConfig c = make(Command::compare);
    c.x = 100000;
    const Report r = run(c);
    const std::string plot = emit_plot_series(r);
    CHECK(plot.find("# d ratio\n2 ") != std::string::npos);
}

TEST_CASE("json round trip over the smoke matrix") {
    for (const RunConfig& c : smoke_matrix()) {
        const Report r = run(c);
        CAPTURE(r.command);
        const std::string text = emit_json(r);
        const Report back = parse_report_json(text);
        CHECK(back == r);
        CHECK(emit_json(back) == text);
    }
    CHECK_THROWS_AS(parse_report_json("{"), DomainError);
    CHECK_THROWS_AS(parse_report_json("{\"schema\":\"other/9\"}"), DomainError);
    CHECK_THROWS_AS(parse_report_json("[]"), DomainError);
}

TEST_CASE("thread count does not change any report") {
    for (RunConfig c : smoke_matrix()) {
        c.threads = 1;
        const Report one = without_clock(run(c));
        c.threads = 6;
        const Report many = without_clock(run(c));
        CAPTURE(one.command);
        CHECK(emit_json(one) == emit_json(many));
        CHECK(emit_csv(one) == emit_csv(many));
    }
}

TEST_CASE("warm cache equals cold run; corrupt cache is recomputed") {
    const fs::path dir = scratch_dir("cache");
    RunConfig c = make(Command::census);
    c.x = 300000;
    c.cache_path = dir;
    const Report cold = run(c);
    CHECK(cold.provenance.cache == "miss");
    CHECK(fs::exists(census_cache_file(dir, 300000)));
    const Report warm = run(c);
    CHECK(warm.provenance.cache == "hit");
    CHECK(warm.result == cold.result);

    {
        std::fstream f(census_cache_file(dir, 300000), std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(40);
        f.put('9');
    }
    const Report fixed = run(c);
    CHECK(fixed.provenance.cache == "corrupt");
    CHECK(fixed.provenance.warnings.size() == 1);
    CHECK(fixed.result == cold.result);
    CHECK(run(c).provenance.cache == "hit");
    fs::remove_all(dir);
}

TEST_CASE("cache directory from the environment") {
    const fs::path dir = scratch_dir("env");
    ::setenv("CHAMPIONLAB_CACHE_DIR", dir.c_str(), 1);
    RunConfig c = make(Command::compare);
    c.x = 20000;
    CHECK(resolve_cache_dir(c) == dir);
    CHECK(run(c).provenance.cache == "miss");
    CHECK(run(c).provenance.cache == "hit");
    c.cache_path = dir / "explicit";
    CHECK(resolve_cache_dir(c) == dir / "explicit");
    ::unsetenv("CHAMPIONLAB_CACHE_DIR");
    RunConfig plain = make(Command::census);
    plain.x = 100;
    CHECK_FALSE(resolve_cache_dir(plain).has_value());
    CHECK(run(plain).provenance.cache == "disabled");
    fs::remove_all(dir);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(run(make(Command::census)), DomainError);
    RunConfig c = make(Command::census);
    c.x = 2;
    CHECK_THROWS_AS(run(c), DomainError);
    c.x = 20'000'000'000ULL;
    CHECK_THROWS_AS(run(c), CapacityError);

    RunConfig t = make(Command::triples);
    t.x = 1000;
    CHECK_THROWS_AS(run(t), DomainError);
    t.d1 = 2;
    t.d2 = 6;
    t.d = 6;
    CHECK_THROWS_AS(run(t), DomainError);

    RunConfig a = make(Command::average);
    a.k = 5;
    a.d = 6;
    a.D = 6;
    CHECK_THROWS_AS(run(a), DomainError);

    RunConfig m = make(Command::model);
    CHECK_THROWS_AS(run(m), DomainError);
    m.log_x = -1;
    CHECK_THROWS_AS(run(m), DomainError);

    RunConfig iv = make(Command::intervals);
    iv.delta = 0.5;
    CHECK_THROWS_AS(run(iv), DomainError);
    iv.delta = 0.1;
    iv.k = 60;
    CHECK_THROWS_AS(run(iv), CapacityError);

    RunConfig s = make(Command::sseries);
    s.tolerance = 0.5;
    s.d = 2;
    CHECK_THROWS_AS(run(s), DomainError);
}

TEST_CASE("names and error lines") {
    for (auto c : {Command::census, Command::champion, Command::pairs, Command::triples, Command::sseries,
                   Command::tuple, Command::average, Command::model, Command::intervals, Command::compare}) {
        CHECK(parse_command(command_name(c)) == c);
    }
    CHECK_THROWS_AS(parse_command("nope"), DomainError);
    CHECK(parse_format("plot") == Format::plot);
    CHECK_THROWS_AS(parse_format("xml"), DomainError);

    CHECK(exit_code_for(DomainError("a")) == 2);
    CHECK(exit_code_for(CapacityError("a")) == 3);
    CHECK(exit_code_for(IoError("a")) == 4);
    CHECK(exit_code_for(std::runtime_error("a")) == 1);
    CHECK(error_line(CapacityError("too \"big\"\nreally")) ==
          "error code=3 kind=capacity message=\"too \\\"big\\\" really\"");
}

TEST_CASE("real formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 2.858248595719, 1e-300, 6.02e23}) {
        CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
    }
    CHECK(format_real(2.0) == "2");
}

}
