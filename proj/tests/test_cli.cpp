#include "gradiv/cli.hpp"
#include "gradiv/json_io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace gradiv;
namespace fs = std::filesystem;

namespace {

class Workspace {
public:
    Workspace() : dir_(fs::temp_directory_path() / ("gradiv_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

private:
    fs::path dir_;
};

struct Outcome {
    int status;
    std::string out;
    std::string err;
    io::Json report() const { return io::Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

const char* kWorkedCapacity = R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "2": 0.7, "1,2": 1}})";

} // namespace

TEST_CASE("cli: identical gradings diverge by zero") {
    Workspace ws;
    const auto f = ws.write("f.json", R"({"grades": [0, 0.3, 1]})");
    const auto r = run({"divergence", "discrete", "--f", f, "--g", f});
    REQUIRE(r.status == cli::kSuccess);
    const auto report = r.report();
    CHECK(report["command"] == "divergence discrete");
    CHECK(report["result"]["value"] == 0.0);
    CHECK(report["inputs_digest"].get<std::string>().rfind("sha256:", 0) == 0);
    CHECK(report.contains("elapsed_ms"));
}

TEST_CASE("cli: capacity entropy") {
    Workspace ws;
    const auto cap = ws.write("cap.json", kWorkedCapacity);
    const auto r = run({"entropy", "capacity", "--capacity", cap, "--method", "exhaustive"});
    REQUIRE(r.status == cli::kSuccess);
    const auto result = r.report()["result"];
    CHECK(std::abs(result["entropy"].get<double>() - 0.610864302054893463) <= 1e-12);
    CHECK(result["argmin_chain"] == io::Json::array({2, 1}));
    CHECK(result["method"] == "exhaustive");

    const auto greedy = run({"entropy", "capacity", "--capacity", cap, "--method", "greedy"});
    CHECK(greedy.report()["result"]["method"] == "greedy");
}

TEST_CASE("cli: exhaustive limit from the environment") {
    Workspace ws;
    const auto cap = ws.write("cap.json", kWorkedCapacity);
    ::setenv("GD_EXHAUSTIVE_LIMIT", "1", 1);
    const auto over = run({"entropy", "capacity", "--capacity", cap});
    const auto fallback = run({"entropy", "capacity", "--capacity", cap, "--method", "auto"});
    ::setenv("GD_EXHAUSTIVE_LIMIT", "banana", 1);
    const auto bad = run({"entropy", "capacity", "--capacity", cap});
    ::unsetenv("GD_EXHAUSTIVE_LIMIT");
    CHECK(over.status == cli::kInvalidInput);
    CHECK_FALSE(over.report().contains("result"));
    CHECK(fallback.status == cli::kSuccess);
    CHECK(fallback.report()["result"]["method"] == "greedy");
    CHECK(bad.status == cli::kInvalidInput);
}

TEST_CASE("cli: shannon, relative, partition") {
    Workspace ws;
    const auto u4 = ws.write("u4.json", R"({"weights": [0.25, 0.25, 0.25, 0.25]})");
    const auto r = run({"entropy", "shannon", "--dist", u4});
    REQUIRE(r.status == cli::kSuccess);
    CHECK(std::abs(r.report()["result"]["value"].get<double>() - std::log(4.0)) <= 1e-15);

    const auto f = ws.write("f.json", R"({"weights": [0.5, 0.5]})");
    const auto g = ws.write("g.json", R"({"weights": [1, 0]})");
    const auto inf = run({"entropy", "relative", "--f", f, "--g", g});
    CHECK(inf.status == cli::kSuccess);
    CHECK(inf.report()["result"]["value"] == "-inf");
    const auto strict = run({"entropy", "relative", "--f", f, "--g", g, "--strict"});
    CHECK(strict.status == cli::kComputationError);
    CHECK_FALSE(strict.report().contains("result"));
    CHECK(strict.report()["error"]["kind"] == "computation_error");

    const auto m = ws.write("m.json", R"({"masses": [2, 0.5]})");
    const auto p = run({"entropy", "partition", "--masses", m});
    CHECK(std::abs(p.report()["result"]["value"].get<double>() + 1.5 * std::log(2.0)) <= 1e-15);
}

TEST_CASE("cli: continuous commands") {
    Workspace ws;
    const auto p2 = ws.write("p2.json", R"({"family": "power", "params": {"p": 2}, "support": [0, 1]})");
    const auto u = ws.write("u.json", R"({"family": "uniform", "params": {}, "support": [0, 1]})");
    const auto d = run({"divergence", "continuous", "--f", p2, "--g", u});
    REQUIRE(d.status == cli::kSuccess);
    CHECK(std::abs(d.report()["result"]["value"].get<double>() - (0.5 - std::log(2.0))) <= 1e-9);

    const auto s = run({"divergence", "symmetric", "--f", p2, "--g", u, "--tol", "1e-11"});
    REQUIRE(s.status == cli::kSuccess);
    CHECK(std::abs(s.report()["result"]["value"].get<double>() + 0.5) <= 1e-9);

    const auto c = run({"entropy", "corrected", "--f", p2});
    CHECK(std::abs(c.report()["result"]["value"].get<double>() - (0.5 - std::log(2.0))) <= 1e-9);

    const auto shallow = ws.write("q.json", R"({"max_depth": 2})");
    const auto fail = run({"divergence", "continuous", "--f", u, "--g", p2, "--quad", shallow});
    CHECK(fail.status == cli::kComputationError);
}

TEST_CASE("cli: validation errors exit with status 1") {
    Workspace ws;
    const auto bad = ws.write("bad.json", R"({"grades": [1, 0]})");
    const auto good = ws.write("good.json", R"({"grades": [0, 1]})");
    const auto r = run({"divergence", "discrete", "--f", bad, "--g", good});
    CHECK(r.status == cli::kInvalidInput);
    CHECK(r.report()["error"]["kind"] == "invalid_input");
    CHECK_FALSE(r.err.empty());

    const auto missing = run({"divergence", "discrete", "--f", ws.write("x", ""), "--g", "/nonexistent/g.json"});
    CHECK(missing.status == cli::kInvalidInput);
}

TEST_CASE("cli: usage errors exit with status 64") {
    CHECK(run({"frobnicate"}).status == cli::kUsage);
    CHECK(run({}).status == cli::kUsage);
    CHECK(run({"entropy"}).status == cli::kUsage);
    CHECK(run({"entropy", "shannon"}).status == cli::kUsage);
    CHECK(run({"entropy", "capacity", "--capacity", "c.json", "--method", "random"}).status == cli::kUsage);
    const auto r = run({"bogus"});
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("cli: validate re-serializes canonically") {
    Workspace ws;
    const auto cap = ws.write("cap.json", kWorkedCapacity);
    const auto first = run({"validate", "--input", cap});
    REQUIRE(first.status == cli::kSuccess);
    const std::string canonical = first.report()["result"].dump();
    const auto again = run({"validate", "--input", ws.write("canon.json", canonical), "--kind", "capacity"});
    CHECK(again.report()["result"].dump() == canonical);
    CHECK(first.report()["command"] == "validate");

    const auto wrong = run({"validate", "--input", cap, "--kind", "grading"});
    CHECK(wrong.status == cli::kInvalidInput);
}

TEST_CASE("cli: results are deterministic") {
    Workspace ws;
    const auto cap = ws.write("cap.json", kWorkedCapacity);
    const auto a = run({"entropy", "capacity", "--capacity", cap, "--threads", "1"});
    const auto b = run({"entropy", "capacity", "--capacity", cap, "--threads", "4"});
    CHECK(a.report()["result"].dump() == b.report()["result"].dump());
    CHECK(a.report()["inputs_digest"] == b.report()["inputs_digest"]);
}
