#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace rr;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_curve(const std::string& name, const std::string& body) {
    std::string path = "/tmp/rrcli_test_" + name + ".curve";
    std::ofstream(path) << body;
    return path;
}

const char* kDiv = "2*[t;0]+3*[t;1]-[t-1;0]-[t-1;1]+[inf;0]";

}  // namespace

TEST_CASE("curve file parsing") {
    CurveInput ci = parse_curve_text("# example\nfield: 5\n\npolynomial x^3 - x^2 + t^2\n");
    CHECK(ci.model->n == 3);
    CHECK(!ci.prepared);
    CHECK_THROWS_WITH_AS(parse_curve_text("field 6\npolynomial x^2 - t\n"), doctest::Contains("not prime"), Error);
    CHECK_THROWS_WITH_AS(parse_curve_text("field 5\npolynomial x^2 - t +\n"), doctest::Contains("line 2"), Error);
    try {
        parse_curve_text("field 5\npolynomial 2*x^2 - t\n");
        FAIL("expected NotMonic");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotMonic);
    }
    CurveInput pc = parse_curve_text("field 7\npolynomial X1^3 + X0^2*X2 + X0*X2^2 + X0^3\n");
    CHECK(pc.prepared.has_value());
    CHECK(parse_center(5, "2*t - 2") == BasePrime::finite(parse_tpoly(5, "t - 1")));
    CHECK_THROWS_AS(parse_center(5, "t^2 - 1"), Error);
}

TEST_CASE("commands on the worked example") {
    std::string c = write_curve("ex", "field 5\npolynomial x^3 - x^2 + t^2\n");
    Run r = run({"--curve", c, "--json", "places", "--center", "t"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    REQUIRE(j["places"].size() == 3);
    for (auto& P : j["places"]) {
        CHECK(P["e"] == 1);
        CHECK(P["f"] == 1);
    }
    r = run({"--curve", c, "--json", "rr", "--divisor", kDiv});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["dim_for_r0"] == 4);
    std::vector<int> d;
    for (auto& p : j["pairs"]) d.push_back(p["d"]);
    std::sort(d.begin(), d.end());
    CHECK(d == std::vector<int>{0, 0, 1});
    r = run({"--curve", c, "--json", "genus"});
    j = nlohmann::json::parse(r.out);
    CHECK(j["genus"] == 0);
    CHECK(j["delta_curve"] == 1);
    r = run({"--curve", c, "valuate", "--element", "(x-1+t)*(x-t)/t", "--place", "[t;0]", "--place", "[t;1]"});
    CHECK(r.code == 0);
    CHECK(r.out == "[t;0]: 1\n[t;1]: 0\n");
    r = run({"--curve", c, "--json", "expand", "--divisor", kDiv, "--r", "1"});
    CHECK(nlohmann::json::parse(r.out)["dim"] == 7);
    r = run({"--curve", c, "validate", "--divisor", "-[t;0]", "--element", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "not a member\nviolated at [t;0]\n");
}

TEST_CASE("printed divisors re-parse and output is deterministic") {
    std::string c = write_curve("ex2", "field 5\npolynomial x^3 - x^2 + t^2\n");
    Run a = run({"--curve", c, "divisor-of", "--element", "(x - 1)*t/(x + t)"});
    REQUIRE(a.code == 0);
    std::string printed = a.out.substr(0, a.out.size() - 1);
    Run b = run({"--curve", c, "--json", "rr", "--divisor", printed});
    REQUIRE(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["divisor"] == printed);
    // degree-zero principal divisor: L(div b) = k/b has dimension 1
    CHECK(nlohmann::json::parse(b.out)["dim_for_r0"] == 1);
    Run b2 = run({"--curve", c, "--json", "rr", "--divisor", printed});
    CHECK(b.out == b2.out);
}

TEST_CASE("exit codes") {
    std::string c = write_curve("ex3", "field 5\npolynomial x^3 - x^2 + t^2\n");
    CHECK(run({"--curve", c, "rr", "--divisor", "[t;7]"}).code == 1);
    Run e = run({"--curve", c, "--json", "rr", "--divisor", "[t;7]"});
    CHECK(nlohmann::json::parse(e.out)["error"]["code"] == "UnknownPlace");
    CHECK(run({"--curve", c, "frobnicate"}).code == 2);
    CHECK(run({"rr"}).code == 2);
    CHECK(run({"--curve", c, "--precision-cap", "-3", "genus"}).code == 2);
    CHECK(run({"--curve", "/nonexistent/x.curve", "genus"}).code == 1);
    CHECK(run({"--curve", c, "rr", "--divisor", "2*[t;0] +"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}
