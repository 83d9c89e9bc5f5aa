#include "doctest.h"

#include "utaylor/cli.hpp"
#include "utaylor/error.hpp"
#include "utaylor/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using namespace utaylor;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("utaylor_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

const UniversalSeries& small_series() {
    static const UniversalSeries f = build_universal_disc(Schedule::default_disc(), BuildMode::strict, 2);
    return f;
}

int run(std::vector<std::string> args) { return run_cli(args); }

}  // namespace

TEST_CASE("FNV-1a reference values") {
    CHECK(hash_hex(fnv1a("")) == "cbf29ce484222325");
    CHECK(hash_hex(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(hash_hex(fnv1a("foobar")) == "85944171f73967e8");
}

TEST_CASE("hex doubles round-trip") {
    for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) CHECK(parse_double(hex_double(x)) == x);
    CHECK_THROWS_AS(parse_double("1.0x"), PreconditionError);
}

TEST_CASE("schedule text round-trips exactly") {
    for (const auto& s : {Schedule::default_disc(), Schedule::default_strip()}) {
        const std::string t = schedule_to_text(s);
        const Schedule r = parse_schedule(t);
        CHECK(schedule_to_text(r) == t);
        CHECK(schedule_hash(r) == schedule_hash(s));
        CHECK(r.A.all_samples() == s.A.all_samples());
        REQUIRE(r.steps.size() == s.steps.size());
        for (std::size_t i = 0; i < s.steps.size(); ++i) CHECK(r.steps[i].p == s.steps[i].p);
    }
}

TEST_CASE("schedule documents accept decimals, hex floats and rationals") {
    const Schedule s = parse_schedule(R"({
      "domain": "disc",
      "A": {"type": "disc", "center": ["4/5", 0], "radius": "0x1.999999999999ap-3"},
      "weight": {"kind": "power", "zeta": [1, 0], "exponent": 0.5},
      "steps": [{"K": {"type": "disc", "center": ["-1.02", "0"], "radius": "0.02"}, "p": [["0.5", 0], ["-1/2", 0]],
                 "tau": "1e-3"}],
      "max_degree": 50
    })");
    CHECK(s.max_degree == 50);
    CHECK(s.steps.size() == 1);
    CHECK(s.steps[0].tau.has_value());
    const auto& d = std::get<DiscShape>(s.A.shapes()[0]);
    CHECK(d.center.re == Real(4) / Real(5));
    CHECK(s.steps[0].p.coeff(1) == Complex(Real(-1) / Real(2)));

    const Schedule p = parse_schedule(R"({"preset": "strip", "steps": 2, "delta_floor": 0.5})");
    CHECK(p.domain == SeriesDomain::strip);
    CHECK(p.steps.size() == 2);
    CHECK(p.delta_floor == 0.5);

    CHECK_THROWS_AS(parse_schedule("{not json"), ScheduleError);
    CHECK_THROWS_AS(parse_schedule(R"({"domain": "disc"})"), ScheduleError);
    CHECK_THROWS_AS(parse_schedule(R"({"preset": "annulus"})"), ScheduleError);
}

TEST_CASE("series artifact round-trips bit-exactly") {
    SeriesArtifact a;
    a.series = small_series();
    a.schedule_text = schedule_to_text(Schedule::default_disc());
    a.config_text = R"({"command":"build"})";
    a.config_hash = hash_hex(fnv1a(a.config_text));
    a.seed = 42;
    const std::string t = artifact_to_text(a);
    CHECK(t.rfind("utaylor-series v1\n", 0) == 0);
    const SeriesArtifact b = artifact_from_text(t);
    CHECK(artifact_to_text(b) == t);
    REQUIRE(b.series.blocks.size() == a.series.blocks.size());
    for (std::size_t i = 0; i < a.series.blocks.size(); ++i) {
        CHECK(b.series.blocks[i].n == a.series.blocks[i].n);
        CHECK(b.series.blocks[i].qstar == a.series.blocks[i].qstar);
        CHECK(b.series.certificates[i].achieved_target_err == a.series.certificates[i].achieved_target_err);
        CHECK(b.series.certificates[i].relaxation_note == a.series.certificates[i].relaxation_note);
    }
    CHECK(b.seed == 42);

    CHECK_THROWS_AS(artifact_from_text("hello\n{}"), IoError);
    CHECK_THROWS_AS(artifact_from_text("utaylor-series v2\n{}"), IoError);
    CHECK_THROWS_AS(artifact_from_text("utaylor-series v1\n{\"format_version\": 1"), IoError);
    std::string cut = t.substr(0, t.size() / 2);
    CHECK_THROWS_AS(artifact_from_text(cut), IoError);
}

TEST_CASE("build is byte-identical across runs and verify passes") {
    const auto d1 = scratch("b1"), d2 = scratch("b2");
    CHECK(run({"build", "--kmax", "2", "--out", d1.string()}) == kExitOk);
    CHECK(run({"build", "--kmax", "2", "--out", d2.string()}) == kExitOk);
    for (const char* f : {"series.utl", "certificates.csv", "summary.txt"})
        CHECK(read_file((d1 / f).string()) == read_file((d2 / f).string()));
    const std::string csv = read_file((d1 / "certificates.csv").string());
    CHECK(csv.rfind("# config_hash=", 0) == 0);
    CHECK(csv.find("precision=256") != std::string::npos);

    const std::string art = (d1 / "series.utl").string();
    for (const char* suite : {"growth", "targets", "uk", "radial", "plessner"}) {
        const auto v1 = scratch(std::string("v1") + suite), v2 = scratch(std::string("v2") + suite);
        CHECK(run({"verify", art, "--suite", suite, "--out", v1.string(), "--grid", "512"}) == kExitOk);
        CHECK(run({"verify", art, "--suite", suite, "--out", v2.string(), "--grid", "512"}) == kExitOk);
        const std::string name = std::string("verify_") + suite;
        CHECK(read_file((v1 / (name + ".csv")).string()) == read_file((v2 / (name + ".csv")).string()));
        CHECK(read_file((v1 / (name + ".json")).string()) == read_file((v2 / (name + ".json")).string()));
    }
}

TEST_CASE("exit codes") {
    const auto d = scratch("codes");
    fs::create_directories(d);
    write_file((d / "tight.json").string(), R"({"preset": "disc", "max_degree": 2})");
    CHECK(run({"build", "--schedule", (d / "tight.json").string(), "--kmax", "2", "--out", (d / "t").string()}) ==
          kExitCertificate);
    CHECK(read_file((d / "t" / "summary.txt").string()).find("FAILED: step 1") != std::string::npos);
    CHECK(run({"build", "--schedule", (d / "tight.json").string(), "--kmax", "2", "--mode", "empirical", "--out",
               (d / "e").string()}) == kExitOk);

    write_file((d / "bad.json").string(), R"({"domain": "disc", "A": 3})");
    CHECK(run({"build", "--schedule", (d / "bad.json").string(), "--out", (d / "b").string()}) == kExitValidation);
    write_file((d / "inside.json").string(),
               R"({"preset": "disc", "steps": [{"K": {"type": "disc", "center": [0, 0], "radius": 0.1}, "p": [1]}]})");
    CHECK(run({"build", "--schedule", (d / "inside.json").string(), "--kmax", "1", "--out", (d / "i").string()}) ==
          kExitValidation);
    CHECK(run({"build", "--kmax", "0"}) == kExitValidation);
    CHECK(run({"verify", (d / "missing.utl").string()}) == kExitIo);
    write_file((d / "junk.utl").string(), "utaylor-series v1\n[1, 2");
    CHECK(run({"verify", (d / "junk.utl").string(), "--out", d.string()}) == kExitIo);
    CHECK(run({"frobnicate"}) == kExitValidation);
}

TEST_CASE("potential subcommands") {
    const auto d = scratch("pot");
    fs::create_directories(d);
    const auto out = (d / "r.json").string();
    CHECK(run({"potential", "minthin", "--a", "2", "--out", out}) == kExitOk);
    CHECK(read_file(out).find("\"minimally_thin\"") != std::string::npos);
    CHECK(run({"potential", "minthin", "--a", "0.5", "--out", out}) == kExitOk);
    CHECK(read_file(out).find("\"not_minimally_thin\"") != std::string::npos);
    CHECK(run({"potential", "hmeasure", "--walks", "10000", "--out", out}) == kExitOk);
    CHECK(read_file(out).find("\"estimate\": \"1\"") != std::string::npos);
    CHECK(run({"potential", "green-arc", "--R", "1e6", "--out", out}) == kExitOk);
    CHECK(read_file(out).find("\"pass\": true") != std::string::npos);
    CHECK(run({"potential", "tangent-disc", "--c", "0.5", "--out", out}) == kExitOk);
    CHECK(run({"potential", "poisson", "--z", "0.5,0", "--out", out}) == kExitOk);
    CHECK(read_file(out).find("\"value\": \"3\"") != std::string::npos);
    CHECK(run({"potential", "poisson", "--z", "1.5,0", "--out", out}) == kExitValidation);

    // Identical seeds give identical reports.
    const auto o2 = (d / "r2.json").string();
    CHECK(run({"potential", "hmeasure", "--phi", "re", "--z", "0.2,0.1", "--seed", "9", "--out", out}) == kExitOk);
    CHECK(run({"potential", "hmeasure", "--phi", "re", "--z", "0.2,0.1", "--seed", "9", "--out", o2}) == kExitOk);
    CHECK(read_file(out) == read_file(o2));
}

TEST_CASE("installed binary reports exit codes") {
    const char* bin = std::getenv("UTAYLOR_BIN");
    if (!bin) return;
    const auto d = scratch("bin");
    fs::create_directories(d);
    const std::string cmd = std::string(bin) + " verify " + (d / "none.utl").string() + " 2>/dev/null";
    const int st = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(st));
    CHECK(WEXITSTATUS(st) == kExitIo);
    const int ok = std::system((std::string(bin) + " schedule --preset disc > " + (d / "s.json").string()).c_str());
    CHECK(WEXITSTATUS(ok) == 0);
    CHECK(schedule_hash(load_schedule((d / "s.json").string())) == schedule_hash(Schedule::default_disc()));
}
