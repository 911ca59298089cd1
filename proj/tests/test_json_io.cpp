#include "gradiv/error.hpp"
#include "gradiv/json_io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace gradiv;
using io::Json;

TEST_CASE("grading documents") {
    const auto s = io::grading_from_json(io::parse(R"({"grades": [0, 0.5, 1], "labels": ["a", "b", "c"]})"));
    CHECK(s.size() == 3);
    CHECK((*s.labels())[2] == "c");
    CHECK(io::to_json(s).dump() == R"({"grades":[0.0,0.5,1.0],"labels":["a","b","c"]})");
    CHECK_THROWS_AS((void)io::grading_from_json(io::parse(R"({"grades": [1, 0]})")), invalid_input);
    CHECK_THROWS_AS((void)io::grading_from_json(io::parse(R"({"grades": ["x", 1]})")), invalid_input);
    CHECK_THROWS_AS((void)io::grading_from_json(io::parse(R"({"grade": [0, 1]})")), invalid_input);
    CHECK_THROWS_AS((void)io::grading_from_json(io::parse(R"([0, 1])")), invalid_input);
    CHECK_THROWS_AS((void)io::parse("{not json"), invalid_input);
}

TEST_CASE("distribution and masses documents") {
    const auto d = io::distribution_from_json(io::parse(R"({"weights": [0.25, 0.75]})"));
    CHECK(d.size() == 2);
    CHECK_THROWS_AS((void)io::distribution_from_json(io::parse(R"({"weights": [0.25, 0.5]})")), invalid_input);
    const auto m = io::masses_from_json(io::parse(R"({"masses": [2, 0.5]})"));
    CHECK(m == std::vector<double>{2.0, 0.5});
    CHECK_THROWS_AS((void)io::masses_from_json(io::parse(R"({"masses": [-2]})")), invalid_input);
}

TEST_CASE("capacity documents") {
    const auto mu = io::capacity_from_json(
        io::parse(R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "2": 0.7, "1,2": 1}})"));
    CHECK(mu(0b11) == 1.0);
    CHECK(mu(0b10) == 0.7);
    CHECK(io::to_json(mu).dump() ==
          R"({"ground_size":2,"values":{"":0.0,"1":0.6,"2":0.7,"1,2":1.0}})");

    // unsorted and spaced keys name the same subset
    const auto loose = io::capacity_from_json(
        io::parse(R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "2": 0.7, "2, 1": 1}})"));
    CHECK(loose == mu);

    CHECK_THROWS_AS((void)io::capacity_from_json(io::parse(
                        R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "2": 0.7}})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::capacity_from_json(io::parse(
                        R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "2": 0.7, "1,2": 1, "2,1": 1}})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::capacity_from_json(io::parse(
                        R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "3": 0.7, "1,2": 1}})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::capacity_from_json(io::parse(
                        R"({"ground_size": 2, "values": {"": 0, "1": 0.6, "x": 0.7, "1,2": 1}})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::capacity_from_json(io::parse(
                        R"({"ground_size": 1.5, "values": {}})")),
                    invalid_input);
    CHECK(io::subset_key(0) == "");
    CHECK(io::subset_key(0b101) == "1,3");
}

TEST_CASE("continuous grading documents") {
    const auto f = io::continuous_from_json(
        io::parse(R"({"family": "power", "params": {"p": 2}, "support": [0, 1]})"));
    CHECK(f == ContinuousGrading::power(2.0));
    const auto pl = io::continuous_from_json(io::parse(
        R"({"family": "piecewise_linear_cdf", "params": {"knots": [[0, 0], [1, 0.5], [3, 1]]}, "support": [0, 3]})"));
    CHECK(pl.breakpoints() == std::vector<double>{1.0});
    CHECK_THROWS_AS((void)io::continuous_from_json(io::parse(
                        R"({"family": "normal", "params": {}, "support": [0, 1]})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::continuous_from_json(io::parse(
                        R"({"family": "beta", "params": {"alpha": 2}, "support": [0, 1]})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::continuous_from_json(io::parse(
                        R"({"family": "uniform", "params": {"p": 1}, "support": [0, 1]})")),
                    invalid_input);
    CHECK_THROWS_AS((void)io::continuous_from_json(io::parse(
                        R"({"family": "uniform", "support": [0]})")),
                    invalid_input);
}

TEST_CASE("quadrature documents keep defaults for missing fields") {
    const auto spec = io::quadrature_from_json(io::parse(R"({"abs_tol": 1e-6})"));
    CHECK(spec.abs_tol == 1e-6);
    CHECK(spec.rel_tol == QuadratureSpec{}.rel_tol);
    CHECK(spec.max_depth == 60);
    CHECK_THROWS_AS((void)io::quadrature_from_json(io::parse(R"({"abs_tol": -1})")), invalid_input);
    CHECK_THROWS_AS((void)io::quadrature_from_json(io::parse(R"({"max_depth": 2.5})")), invalid_input);
}

TEST_CASE("result serialization") {
    DivergenceResult r;
    r.value = -std::numeric_limits<double>::infinity();
    r.negative_infinity = true;
    r.terms_used = 2;
    const auto doc = io::to_json(r);
    CHECK(doc["value"] == "-inf");
    CHECK(doc["flags"] == Json::array({"negative_infinity"}));

    const CapacityEntropyReport rep{0.5, MaximalChain({2, 1}), 2, ChainMethod::exhaustive};
    CHECK(io::to_json(rep).dump() ==
          R"({"entropy":0.5,"argmin_chain":[2,1],"chains_examined":2,"method":"exhaustive"})");
}

TEST_CASE("numbers round-trip exactly") {
    auto rng = gradiv::testing::make_rng(40);
    std::uniform_real_distribution<double> any(-1e6, 1e6);
    for (int i = 0; i < 500; ++i) {
        const double x = any(rng) * gradiv::testing::log_uniform(rng, 1e-300, 1e300) / 1e6;
        const Json doc = Json::parse(Json(x).dump());
        REQUIRE(doc.get<double>() == x);
    }
}

TEST_CASE("property: canonical documents are fixed points") {
    const std::vector<std::string> inputs{
        R"({"grades": [0, 0.1, 0.30000000000000004]})",
        R"({"labels": ["x", "y"], "grades": [-1, 2]})",
        R"({"weights": [0.1, 0.2, 0.7]})",
        R"({"masses": [3, 0]})",
        R"({"ground_size": 2, "values": {"1,2": 1, "2": 0.7, "1": 0.6, "": 0}})",
        R"({"family": "triangular", "params": {"mode": 0.2}, "support": [0, 1]})",
        R"({"family": "truncated_normal", "params": {"sigma": 0.5, "mu": 0.3}, "support": [-1, 2]})",
        R"({"family": "uniform", "support": [0, 10]})",
        R"({"rel_tol": 1e-7})",
    };
    for (const auto& text : inputs) {
        CAPTURE(text);
        const Json doc = io::parse(text);
        const auto kind = io::detect_kind(doc);
        const Json once = io::canonicalize(doc, kind);
        const std::string dumped = once.dump();
        const Json twice = io::canonicalize(io::parse(dumped), kind);
        CHECK(twice.dump() == dumped);
    }
}

TEST_CASE("document kinds") {
    CHECK(io::detect_kind(io::parse(R"({"ground_size": 1})")) == io::DocumentKind::capacity);
    CHECK_THROWS_AS((void)io::detect_kind(io::parse(R"({"foo": 1})")), invalid_input);
    CHECK(io::document_kind_from_string("masses") == io::DocumentKind::masses);
    CHECK_THROWS_AS((void)io::document_kind_from_string("bogus"), invalid_input);
}
