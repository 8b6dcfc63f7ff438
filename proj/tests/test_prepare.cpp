#include <doctest.h>

#include "rr/error.hpp"
#include "rr/rr_engine.hpp"

using namespace rr;

namespace {

Model curve(uint32_t p, const std::string& s) { return CurveModel::make(parse_bipoly(p, s)); }

}  // namespace

TEST_CASE("projective polynomial parsing and printing") {
    TriPoly F = parse_tripoly(5, "X2^3 - X2^2*X0 + X1^2*X0");
    CHECK(F.degree() == 3);
    CHECK(F.homogeneous());
    CHECK(parse_tripoly(5, to_string(F)).c == F.c);
    CHECK(!parse_tripoly(5, "X2^3 + X1").homogeneous());
    CHECK_THROWS_AS(parse_tripoly(5, "X3 + X1"), Error);
    CHECK(F.eval({0, 0, 1}) == 1);
    CHECK(F.eval({1, 0, 0}) == 0);
}

TEST_CASE("homogenized example keeps the identity transform") {
    PreparedCurve pc = prepare_curve(parse_tripoly(5, "X2^3 - X2^2*X0 + X1^2*X0"));
    CHECK(pc.identity);
    CHECK(!pc.swapped);
    CHECK(pc.model->f == parse_bipoly(5, "x^3 - x^2 + t^2"));
}

TEST_CASE("missing X2^n term is repaired by a projective transform") {
    // X1^3 + X0^2*X2 + X0*X2^2 + X0^3 over F7: F(0,0,1) = 0
    TriPoly F = parse_tripoly(7, "X1^3 + X0^2*X2 + X0*X2^2 + X0^3");
    REQUIRE(F.eval({0, 0, 1}) == 0);
    PreparedCurve pc = prepare_curve(F);
    CHECK(!pc.identity);
    std::array<uint32_t, 3> P{pc.T[0][1], pc.T[1][1], pc.T[2][1]};
    std::array<uint32_t, 3> Pp{pc.T[0][2], pc.T[1][2], pc.T[2][2]};
    CHECK(F.eval(P) != 0);
    CHECK(F.eval(Pp) != 0);
    CHECK(pc.model->n == 3);
    CHECK(pc.model->f.lc().is_one());
    CHECK(*curve_invariants(PlaceTable(pc.model)).genus == 1);
}

TEST_CASE("inseparable in X2 leads to swapped variables") {
    TriPoly F = parse_tripoly(2, "X0*X2^2 + X1^3 + X2^3 + X1*X0^2 + X0^3");
    PreparedCurve pc0 = prepare_curve(F);
    CHECK(pc0.model->n == 3);
    TriPoly G = parse_tripoly(2, "X2^4 + X1^4 + X0*X1^3 + X0^2*X2^2 + X0^3*X1");
    REQUIRE(G.eval({0, 1, 0}) != 0);
    REQUIRE(G.eval({0, 0, 1}) != 0);
    PreparedCurve pc = prepare_curve(G);
    CHECK(pc.swapped);
    CHECK(pc.model->f == parse_bipoly(2, "x^4 + x^3 + x + t^4 + t^2"));
    CHECK(pc.model->n == 4);
}

TEST_CASE("reducible and tiny-field inputs") {
    CHECK_THROWS_WITH_AS(prepare_curve(parse_tripoly(5, "(X2 - X1)*(X2^2 + X1*X0 + X0^2)")),
                         doctest::Contains("reducible"), Error);
    CHECK(!is_irreducible_curve(curve(5, "(x - t)*(x^2 + t*x + 1)")));
    CHECK(!is_irreducible_curve(curve(3, "(x^2 + t)*(x^2 + t + 1)")));
    CHECK(is_irreducible_curve(curve(5, "x^3 - x^2 + t^2")));
    CHECK(is_irreducible_curve(curve(7, "x^4 + t^2*x + t^3 + 1")));
    // the product of all seven F2-lines vanishes on every rational point
    TriPoly all = parse_tripoly(2, "X0*X1*X2*(X0 + X1)*(X0 + X2)*(X1 + X2)*(X0 + X1 + X2)");
    CHECK_THROWS_WITH_AS(prepare_curve(all), doctest::Contains("fewer than two"), Error);
}
