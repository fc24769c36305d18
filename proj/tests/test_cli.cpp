#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "canarc/cli.hpp"
#include "canarc/json_io.hpp"
#include "canarc/oracle.hpp"
#include "canarc/solver.hpp"

using namespace canarc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir() {
    const fs::path dir =
        fs::temp_directory_path() / "canarc-cli-test";
    fs::create_directories(dir);
    return dir;
}

int run_binary(const std::string& argline) {
    const std::string cmd =
        std::string(CANARC_CLI_BIN) + " " + argline + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("solve twice produces byte-identical JSON") {
    const fs::path dir = temp_dir();
    const fs::path f1 = dir / "det1.json", f2 = dir / "det2.json";
    const std::string args = "--points inf,1,0,-1 --class 1/0";
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/0",
                      "--out", f1.string()}) == 0);
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/0",
                      "--out", f2.string()}) == 0);
    CHECK(slurp(f1) == slurp(f2));

    // And through the installed binary as a separate process.
    const fs::path f3 = dir / "det3.json";
    REQUIRE(run_binary("solve --points inf,1,0,-1 --class 1/0 --out " +
                       f3.string()) == 0);
    CHECK(slurp(f1) == slurp(f3));
}

TEST_CASE("solve output round-trips through the parser") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "roundtrip.json";
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/2",
                      "--out", file.string()}) == 0);
    const std::string text = slurp(file);
    const CanonicalConfiguration config = from_json(text);
    CHECK(to_json(config) == text);
    CHECK(config.cls == IsotopyClass{1, 2});
    CHECK(config.arc0.front().is_infinity());
}

TEST_CASE("solve writes arcs matching the symmetric real case") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "real.json";
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/0",
                      "--out", file.string()}) == 0);
    const CanonicalConfiguration config = from_json(slurp(file));
    for (const auto& s : config.arc1.samples) {
        REQUIRE(!s.is_infinity());
        CHECK(s.value().real() <= 1e-8);
        CHECK(s.value().real() >= -1.0 - 1e-8);
        CHECK(std::abs(s.value().imag()) < 1e-8);
    }
}

TEST_CASE("cli error paths and exit codes") {
    // Duplicate points: invalid input, code 2.
    CHECK(run_binary("solve --points inf,1,1,2 --class 1/0") == 2);
    // Non-primitive class: code 2.
    CHECK(run_binary("solve --points inf,1,0,-1 --class 2/4") == 2);
    // Pairing mismatch: (1,0) induces 01|23.
    CHECK(run_binary("solve --points inf,1,0,-1 --class 1/0 "
                     "--pairing \"02|13\"") == 2);
    // Matching pairing is accepted.
    CHECK(run_binary("solve --points inf,1,0,-1 --class 1/0 "
                     "--pairing \"01|23\" --out /dev/null") == 0);
    // Missing file: code 2.
    CHECK(run_binary("verify /nonexistent.json") == 2);
    // Bad point syntax.
    CHECK(run_binary("solve --points inf,1,zebra,2 --class 1/0") == 2);
}

TEST_CASE("enumerate prints classes with pairings") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "enum.txt";
    const std::string cmd = std::string(CANARC_CLI_BIN) +
                            " enumerate --max-height 1 > " + file.string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string out = slurp(file);
    CHECK(out == "(1,0) 01|23\n(-1,1) 03|12\n(0,1) 02|13\n(1,1) 03|12\n");
}

TEST_CASE("verify exit code matches the report verdict") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "verify_me.json";
    const fs::path report = dir / "report.json";
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/0",
                      "--h", "0.002", "--out", file.string()}) == 0);
    const int code =
        cli::run({"verify", file.string(), "--tol", "0.01", "--resolution",
                  "256", "--report", report.string()});
    CHECK(code == 0);
    const std::string rep = slurp(report);
    CHECK(rep.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("verify(solve) passes for every class up to height 4 on the "
          "stock geometries at default tolerances") {
    const std::vector<std::array<SpherePoint, 4>> stock = {
        {SpherePoint::infinity(), SpherePoint::finite({1.0, 0.0}),
         SpherePoint::finite({-2.0 / 7.0, 0.0}),
         SpherePoint::finite({-5.0 / 7.0, 0.0})},
        {SpherePoint::infinity(), SpherePoint::finite({1.0, 0.0}),
         SpherePoint::finite({0.0, 0.0}), SpherePoint::finite({-1.0, 0.0})},
        {SpherePoint::infinity(), SpherePoint::finite({1.0, 0.0}),
         SpherePoint::finite({-0.5, -std::sqrt(3.0) / 2.0}),
         SpherePoint::finite({-0.5, std::sqrt(3.0) / 2.0})},
    };
    const SamplingBudget budget; // defaults
    const double tol = std::max(5e-3, 5.0 * budget.h);
    for (const auto& points : stock) {
        for (const auto& cls : enumerate_classes(4)) {
            CAPTURE(cls.r);
            CAPTURE(cls.s);
            const CanonicalConfiguration config =
                build_configuration(points, cls, budget);
            const VerificationReport report =
                verify_configuration(config, tol, 512);
            CHECK(report.pass());
        }
    }
}

TEST_CASE("render emits an SVG with two arcs and markers") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "render_me.json";
    const fs::path svg = dir / "figure.svg";
    REQUIRE(cli::run({"solve", "--points", "inf,1,0,-1", "--class", "1/1",
                      "--out", file.string()}) == 0);
    REQUIRE(cli::run({"render", file.string(), "--svg", svg.string()}) == 0);
    const std::string body = slurp(svg);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("polyline") != std::string::npos);
    CHECK(body.find("#1f77b4") != std::string::npos);
    CHECK(body.find("#d62728") != std::string::npos);
    CHECK(body.find("a0") != std::string::npos);
}

TEST_CASE("solve --svg writes the figure alongside the document") {
    const fs::path dir = temp_dir();
    const fs::path file = dir / "combo.json";
    const fs::path svg = dir / "combo.svg";
    REQUIRE(cli::run({"solve", "--points", "0,1,2,3", "--class", "1/0",
                      "--out", file.string(), "--svg", svg.string()}) == 0);
    CHECK(slurp(svg).find("</svg>") != std::string::npos);
    const CanonicalConfiguration config = from_json(slurp(file));
    CHECK(config.points[0] == SpherePoint::finite(Complex(0.0)));
}
