#include <doctest.h>

#include <cmath>
#include <random>

#include "rr/error.hpp"
#include "rr/field.hpp"
#include "rr/integral_bases.hpp"

using namespace rr;

namespace {

Model curve(uint32_t p, const std::string& s) { return CurveModel::make(parse_bipoly(p, s)); }
BiPoly B(uint32_t p, const std::string& s) { return parse_bipoly(p, s); }
Poly T(uint32_t p, const std::string& s) { return parse_tpoly(p, s); }

// v_P(b) >= -n_P at every place over the given primes.
bool in_ideal(const PlaceTable& tab, const Divisor& D, const FFElement& b, const std::vector<BasePrime>& primes) {
    for (auto& bp : primes)
        for (auto& P : tab.over(bp))
            if (valuation(P, b) < -D.at(key_of(P))) return false;
    return true;
}

// Brute force over F_p: no nonzero combination sum c_i b_i / pi lies in the local ideal.
bool brute_saturated(const PlaceTable& tab, const Divisor& D, const std::vector<FFElement>& basis,
                     const BasePrime& bp) {
    uint32_t p = tab.model()->p;
    size_t n = basis.size();
    RatFunc inv_pi = bp.infinite ? RatFunc(Poly::x(p)) : RatFunc(Poly::constant(p, 1), bp.p);
    std::vector<uint32_t> c(n, 0);
    for (;;) {
        size_t k = 0;
        while (k < n && ++c[k] == p) c[k++] = 0;
        if (k == n) return true;
        FFElement s(tab.model());
        for (size_t i = 0; i < n; ++i)
            if (c[i]) s = s + basis[i].scaled(RatFunc::constant(p, c[i]));
        s = s.scaled(inv_pi);
        if (in_ideal(tab, D, s, {bp})) return false;
    }
}

std::vector<BasePrime> random_primes(std::mt19937& rng, uint32_t p, int count) {
    std::vector<BasePrime> out;
    while (int(out.size()) < count) {
        int d = 1 + int(rng() % 3);
        Poly q(p);
        for (int i = 0; i < d; ++i) q.c.push_back(rng() % p);
        q.c.push_back(1);
        q.normalize();
        if (is_irreducible(q)) out.push_back(BasePrime::finite(q));
    }
    return out;
}

}  // namespace

TEST_CASE("finite basis of the worked example") {
    Model m = curve(5, "x^3 - x^2 + t^2");
    PlaceTable tab(m);
    Divisor D = parse_divisor(tab, "2*[t;0] + 3*[t;1] - [t-1;0] - [t-1;1] + [inf;0]");
    auto tb = triangular_basis_finite(tab, D);
    CHECK(tb.q == RatFunc(T(5, "t - 1")));
    REQUIRE(tb.den.size() == 3);
    CHECK(tb.den[0] == T(5, "1"));
    CHECK(tb.den[1] == T(5, "t^2"));
    CHECK(tb.den[2] == T(5, "t^4"));
    CHECK(tb.g[1] == B(5, "x - 1"));
    CHECK(tb.g[2] == B(5, "x^2 - (t + 1)*x + t*(1 + t - t^2)"));
    CHECK(tb.delta == 6);
    CHECK(tb.exp == 4);
}

TEST_CASE("infinite basis of the worked example") {
    Model m = curve(5, "x^3 - x^2 + t^2");
    PlaceTable tab(m);
    Divisor D = parse_divisor(tab, "2*[t;0] + 3*[t;1] - [t-1;0] - [t-1;1] + [inf;0]");
    auto tb = triangular_basis_infinity(tab, D);
    CHECK(tb.m == 0);
    CHECK(tb.mi == std::vector<int>{0, 0, 1});
    CHECK(tb.h[1] == B(5, "x"));
    CHECK(tb.h[2] == B(5, "x^2"));
    auto el = tb.elements(m);
    CHECK(el[1] == parse_element(m, "x/t"));
    CHECK(el[2] == parse_element(m, "x^2/t"));
}

TEST_CASE("maximal order of the example curve") {
    Model m = curve(5, "x^3 - x^2 + t^2");
    PlaceTable tab(m);
    auto tb = triangular_basis_finite(tab, Divisor{});
    CHECK(tb.q.is_one());
    CHECK(tb.den[1] == T(5, "1"));
    CHECK(tb.den[2] == T(5, "t"));
    CHECK(tb.g[2] == B(5, "x^2 - x"));
    CHECK(tb.delta == 1);
    // oracle: (x^2 - x)/t is integral at every place over t
    CHECK(in_ideal(tab, Divisor{}, parse_element(m, "(x^2 - x)/t"), {BasePrime::finite(T(5, "t"))}));
    CHECK(!in_ideal(tab, Divisor{}, parse_element(m, "(x^2 - x)/t^2"), {BasePrime::finite(T(5, "t"))}));
    auto ti = triangular_basis_infinity(tab, Divisor{});
    CHECK(ti.delta == 0);
}

TEST_CASE("smooth affine model has the trivial basis") {
    Model m = curve(5, "x^3 + x - t^3 - t - 1");
    PlaceTable tab(m);
    auto tb = triangular_basis_finite(tab, Divisor{});
    for (int i = 0; i < 3; ++i) {
        CHECK(tb.den[size_t(i)].is_one());
        CHECK(tb.g[size_t(i)].deg() == i);
    }
    CHECK(tb.delta == 0);
}

TEST_CASE("maxmin degree-one entry at t for the example") {
    Model m = curve(5, "x^3 - x^2 + t^2");
    PlaceTable tab(m);
    const auto& ps = tab.over(BasePrime::finite(T(5, "t")));
    auto lb = maxmin_local(ps, {2, 3, 0});
    CHECK(lb.w == std::vector<int>{0, 2, 4});
    CHECK(lb.h[1] == B(5, "x - 1"));
    CHECK(local_basis_saturated(ps, {2, 3, 0}, lb));
    // dropping the best degree-two entry breaks saturation
    LocalBasis weak = lb;
    weak.h[2] = B(5, "x^2 - x");
    weak.w[2] = 2;
    CHECK(!local_basis_saturated(ps, {2, 3, 0}, weak));
}

TEST_CASE("random curves and divisors: membership, shape, saturation oracle") {
    std::mt19937 rng(4242);
    const char* curves[][2] = {{"5", "x^3 - x^2 + t^2"},
                               {"3", "x^3 - x - t^2"},
                               {"2", "x^2 + x + t^3"},
                               {"2", "x^3 + t*x + t^2"},
                               {"7", "x^4 + t^2*x + t^3 + 1"},
                               {"3", "x^4 - t^3*x + t^2"},
                               {"5", "x^3 - t^2*(t - 1)^2"}};
    for (auto& c : curves) {
        uint32_t p = uint32_t(std::stoi(c[0]));
        Model m = curve(p, c[1]);
        PlaceTable tab(m);
        std::vector<BasePrime> pool = tab.discriminant_primes();
        pool.push_back(BasePrime::finite(T(p, "t + 1")));
        pool.push_back(BasePrime::at_infinity(p));
        for (int trial = 0; trial < 3; ++trial) {
            Divisor D;
            for (int k = 0; k < 3; ++k) {
                const auto& bp = pool[rng() % pool.size()];
                const auto& ps = tab.over(bp);
                D.add(key_of(ps[rng() % ps.size()]), int(rng() % 7) - 3);
            }
            auto nd = normalize(tab, D);
            auto tb = triangular_basis_finite(tab, D, nd);
            auto ti = triangular_basis_infinity(tab, D, nd);
            // shape
            for (size_t i = 0; i < tb.g.size(); ++i) {
                CHECK(tb.g[i].deg() == int(i));
                CHECK(tb.g[i].lc().is_one());
                CHECK(tb.den[i].lc() == 1);
                for (int j = 0; j < int(i); ++j) CHECK(tb.g[i].coef(j).deg() < tb.den[i].deg());
                if (i > 0) CHECK((tb.den[i] % tb.den[i - 1]).is_zero());
            }
            for (size_t i = 1; i < ti.mi.size(); ++i) CHECK(ti.mi[i - 1] <= ti.mi[i]);
            for (size_t i = 0; i < ti.h.size(); ++i)
                for (int j = 0; j < int(i); ++j) CHECK(ti.h[i].coef(j).deg() < ti.mi[i]);
            CHECK(tb.exp <= tb.delta);
            CHECK(tb.delta <= m->n * tb.exp);
            CHECK(ti.exp <= ti.delta);
            CHECK(ti.delta <= m->n * ti.exp);
            // membership at relevant primes and at random extra primes
            std::vector<BasePrime> fin = tab.discriminant_primes();
            for (auto& b : D.support_primes())
                if (!b.infinite) fin.push_back(b);
            auto extra = random_primes(rng, p, 10);
            auto elems = tb.elements(m);
            for (auto& b : elems) {
                CHECK(in_ideal(tab, D, b, fin));
                CHECK(in_ideal(tab, D, b, extra));
            }
            auto ielems = ti.elements(m);
            for (auto& b : ielems) CHECK(in_ideal(tab, D, b, {BasePrime::at_infinity(p)}));
            // brute-force saturation at every relevant degree-one prime and at infinity
            if (std::pow(double(p), m->n) <= 2500) {
                for (auto& bp : fin)
                    if (bp.p.deg() == 1) CHECK(brute_saturated(tab, D, elems, bp));
                CHECK(brute_saturated(tab, D, ielems, BasePrime::at_infinity(p)));
            }
        }
    }
}
