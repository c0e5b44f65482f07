#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI through the shell and captures stdout plus the exit code.
// The resolution override is scrubbed so tests control it explicitly.
RunResult run(const std::string& args, bool keep_stderr = false) {
    std::string cmd = "env -u SVCALC_DEFAULT_RESOLUTION " SVCALC_BIN_PATH " " + args;
    cmd += keep_stderr ? " 2>&1" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/svcalc_cli_" + name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("gallery list names every entry") {
    auto r = run("gallery list");
    CHECK(r.exit_code == 0);
    for (const char* name : {"constant", "interval_growth", "smooth_singleton", "strong_example",
                             "two_curves_2d", "two_powers"}) {
        CHECK(r.out.find(name) != std::string::npos);
    }
    auto j = run("gallery list --format json");
    CHECK(j.exit_code == 0);
    auto parsed = json::parse(j.out);
    REQUIRE(parsed.is_array());
    CHECK(parsed.size() == 6);
    CHECK(parsed[0]["name"] == "constant");
}

TEST_CASE("pairs on set literals") {
    auto r = run("pairs --a [0,3] --b [1]");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["haus"] == 2.0);
    CHECK(j["pairs"] == json::parse("[[[0.0],[1.0]],[[3.0],[1.0]]]"));
    CHECK(j["difference"] == json::parse("[[-1.0],[2.0]]"));

    auto same = run("pairs --a [0.5,1] --b [0.5,1]");
    REQUIRE(same.exit_code == 0);
    CHECK(json::parse(same.out)["haus"] == 0.0);
}

TEST_CASE("pairs dimension mismatch exits 2 with a message on stderr only") {
    auto quiet = run("pairs --a [0,3] --b [[1,2]]");
    CHECK(quiet.exit_code == 2);
    CHECK(quiet.out.empty());
    auto loud = run("pairs --a [0,3] --b [[1,2]]", true);
    CHECK(loud.exit_code == 2);
    CHECK(loud.out.find("dimension mismatch") != std::string::npos);
}

TEST_CASE("pairs via SVF evaluations") {
    auto r = run("pairs --svf two_powers --ax 0.5 --bx 0.75 --resolution 4");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["a"] == json::parse("[[0.25],[0.5]]"));
    CHECK(j["b"] == json::parse("[[0.5625],[0.75]]"));
}

TEST_CASE("dd respects the environment resolution default") {
    RunResult r;
    {
        std::string cmd = std::string("SVCALC_DEFAULT_RESOLUTION=8 ") + SVCALC_BIN_PATH +
                          " dd --svf interval_growth --x0 0 --x 0.5 --format csv 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        char buf[4096];
        std::size_t n = 0;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
        const int status = pclose(pipe);
        if (status != -1 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    }
    CHECK(r.exit_code == 0);
    CHECK(r.out == "c0\n0\n0.25\n0.5\n0.75\n1\n");
}

TEST_CASE("dd anchored at a point of the image") {
    auto r = run("dd --svf two_powers --x0 0.5 --x 0.75 --anchor [0.5] --resolution 4");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["quotients"] == json::parse("[[0.25],[1.0]]"));

    auto bad = run("dd --svf interval_growth --x0 0 --x 2.5 --resolution 4");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("derivative fields of the growing interval at the kink") {
    auto r = run("derivative --svf interval_growth --x0 0 --side right --resolution 64 "
                 "--conv-tol 1e-3");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j.contains("right"));
    CHECK_FALSE(j.contains("left"));
    const auto& anchors = j["right"]["anchors"];
    REQUIRE(anchors.size() == 65);
    CHECK(anchors.back()["y"] == json::parse("[1.0]"));
    CHECK(anchors.back()["derivative_points"] == json::parse("[[0.0],[1.0]]"));
    CHECK(j["right"]["converged"] == true);

    auto l = run("derivative --svf interval_growth --x0 0 --side left --resolution 64 "
                 "--conv-tol 1e-3");
    REQUIRE(l.exit_code == 0);
    auto lj = json::parse(l.out);
    CHECK(lj["left"]["anchors"].back()["derivative_points"] == json::parse("[[1.0]]"));

    auto both = run("derivative --svf interval_growth --x0 0 --resolution 64 --conv-tol 1e-3");
    REQUIRE(both.exit_code == 0);
    auto bj = json::parse(both.out);
    CHECK(bj.contains("right"));
    CHECK(bj.contains("left"));
}

TEST_CASE("derivative of two powers at the crossing point") {
    auto r = run("derivative --svf two_powers --x0 1 --side right --analytic --resolution 4");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    const auto& anchors = j["right"]["anchors"];
    REQUIRE(anchors.size() == 1);
    CHECK(anchors[0]["derivative_points"] == json::parse("[[1.0],[2.0]]"));
}

TEST_CASE("unconverged derivative exits 3 but still reports") {
    auto r = run("derivative --svf smooth_singleton --params {\\\"coeffs\\\":[0,0,1]} "
                 "--x0 0.5 --side right --resolution 4 --conv-tol 1e-15");
    CHECK(r.exit_code == 3);
    auto j = json::parse(r.out);
    CHECK(j["right"]["converged"] == false);
}

TEST_CASE("order with an analytic field reports exact quadratic decay") {
    const std::string cfg = write_temp("order.json", R"({
        "svf": {"name": "strong_example"},
        "x0": 0.0,
        "sides": ["right", "left"],
        "resolution": 1024,
        "ladder": {"h0": 0.25, "ratio": 0.5, "count": 4},
        "analytic": true
    })");
    auto r = run("order --config " + cfg);
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["fit"]["slope"] == 2.0);
    CHECK(j["error_curve"]["samples"][0]["err"] == 0.0625);

    // Byte-identical on a second run.
    auto again = run("order --config " + cfg);
    CHECK(again.out == r.out);

    // CSV keeps the curve rows and appends the fit as a comment.
    auto csv = run("order --config " + cfg + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("h,err\n", 0) == 0);
    CHECK(csv.out.find("# fit: {") != std::string::npos);
}

TEST_CASE("order of a constant is exact") {
    auto r = run("order --svf constant --params {\\\"points\\\":[1,2]} --x0 0 --resolution 4 "
                 "--conv-tol 1e-9");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    CHECK(j["fit"]["exact"] == true);
    CHECK(j["fit"]["slope"].is_null());
}

TEST_CASE("order of a smooth singleton is quadratic") {
    auto r = run("order --svf smooth_singleton --params {\\\"coeffs\\\":[0,0,0,1]} --x0 0.5 "
                 "--side right --resolution 4 --conv-tol 1e-3");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    const double slope = j["fit"]["slope"].get<double>();
    CHECK(slope > 1.9);
    CHECK(slope < 2.1);
}

TEST_CASE("alpha probe emits deviation samples and a first-order fit") {
    auto r = run("alpha --svf strong_example --x0 0 --side right --analytic --resolution 256 "
                 "--h0 0.25 --rungs 3");
    REQUIRE(r.exit_code == 0);
    auto j = json::parse(r.out);
    REQUIRE(j["deviation_samples"].size() == 3);
    CHECK(j["deviation_samples"][0]["dev"] == 0.25);
    CHECK(j["fit"]["slope"] == 1.0);

    auto bad = run("alpha --svf strong_example --x0 0 --side both --resolution 16");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "/tmp/svcalc_cli_out.json";
    std::remove(path.c_str());
    auto r = run("pairs --a [0,3] --b [1] --out " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto direct = run("pairs --a [0,3] --b [1]");
    CHECK(content == direct.out);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("dd --svf interval_growth --x0 0").exit_code == 2);        // missing --x
    CHECK(run("dd --x0 0 --x 0.5").exit_code == 2);                      // no svf
    CHECK(run("derivative --svf interval_growth --x0 0 --format csv --resolution 8")
              .exit_code == 2);
    CHECK(run("order --svf strong_example --x0 0 --resolution 1").exit_code == 2);
    CHECK(run("dd --svf interval_growth --x0 0 --x 0.5 --no-such-flag 1").exit_code == 2);
    CHECK(run("derivative --svf interval_growth --x0 0 --side upward --resolution 8")
              .exit_code == 2);
}

TEST_CASE("help exits 0") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("order --help").exit_code == 0);
}
