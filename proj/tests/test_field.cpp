#include <doctest.h>

#include <random>

#include "rr/error.hpp"
#include "rr/field.hpp"
#include "rr/linalg.hpp"

using namespace rr;

namespace {

Poly P(uint32_t p, std::vector<int64_t> c) {
    Poly r(p);
    PrimeField F(p);
    for (auto v : c) r.c.push_back(F.from_int(v));
    r.normalize();
    return r;
}

// Brute-force roots of a polynomial over F_p.
std::vector<uint32_t> roots(const Poly& g) {
    std::vector<uint32_t> r;
    for (uint32_t a = 0; a < g.p; ++a)
        if (g.eval(a) == 0) r.push_back(a);
    return r;
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
    Poly a = P(5, {1, 2, 3}), b = P(5, {4, 1});
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(gcd(a * b, b * b) == b.monic());
    auto g = xgcd(a, b);
    CHECK(g.s * a + g.t * b == g.g);
    CHECK(to_string(P(5, {0, 0, 1, -1})) == "-t^3 + t^2");
}

TEST_CASE("factor X^2+1 over F5") {
    auto fs = factor_poly(P(5, {1, 0, 1}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == P(5, {2, 1}));
    CHECK(fs[1].first == P(5, {3, 1}));
    CHECK(fs[0].second == 1);
    CHECK(fs[1].second == 1);
    // oracle: the roots are exactly -2 and -3
    CHECK(roots(P(5, {1, 0, 1})) == std::vector<uint32_t>{2, 3});
}

TEST_CASE("factor X^3 - X^2 over F5") {
    auto fs = factor_poly(P(5, {0, 0, -1, 1}));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == P(5, {0, 1}));
    CHECK(fs[0].second == 2);
    CHECK(fs[1].first == P(5, {-1, 1}));
    CHECK(fs[1].second == 1);
}

TEST_CASE("factor X - 1 over F5") {
    auto fs = factor_poly(P(5, {-1, 1}));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].first == P(5, {-1, 1}));
    CHECK(fs[0].second == 1);
}

TEST_CASE("factor zero polynomial fails") {
    CHECK_THROWS_AS(factor_poly(Poly(5)), Error);
}

TEST_CASE("random factorizations reproduce the input") {
    std::mt19937 rng(7);
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int trial = 0; trial < 40; ++trial) {
            int d = 1 + int(rng() % 8);
            Poly g(p);
            for (int i = 0; i < d; ++i) g.c.push_back(rng() % p);
            g.c.push_back(1 + rng() % (p - 1));
            g.normalize();
            auto fs = factor_poly(g);
            Poly prod = Poly::constant(p, g.lc());
            for (auto& [h, m] : fs) {
                CHECK(h.lc() == 1);
                prod *= pow(h, unsigned(m));
                if (h.deg() <= 3 && h.deg() >= 2) CHECK(roots(h).empty());
                // squarefree consistency: h does not divide the cofactor
                Poly co = g;
                for (int k = 0; k < m; ++k) co = co / h;
                CHECK(!(co % h).is_zero());
            }
            CHECK(prod == g);
            for (size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i].first != fs[i + 1].first);
        }
    }
}

TEST_CASE("factorization over an extension field") {
    // F25 = F5[z]/(z^2+z+2); X^2 - z splits? check the product identity
    Field F = std::make_shared<const FiniteField>(5, P(5, {2, 1, 1}));
    FPoly g = {F->neg(F->gen()), F->zero(), F->one()};
    g = fpoly::mul(*F, g, {F->one(), F->one()});
    auto fs = factor_univariate(*F, g);
    FPoly prod = {F->one()};
    for (auto& f : fs)
        for (int i = 0; i < f.mult; ++i) prod = fpoly::mul(*F, prod, f.poly);
    CHECK(prod == g);
    // X^2 + 1 over F25 splits (it already splits over F5)
    FPoly h = {F->one(), F->zero(), F->one()};
    CHECK(factor_univariate(*F, h).size() == 2);
    // X^2 - 2 over F5 is irreducible, but splits over F25
    CHECK(is_irreducible(P(5, {-2, 0, 1})));
    CHECK(factor_univariate(*F, {F->from_int(-2), F->zero(), F->one()}).size() == 2);
}

TEST_CASE("flatten trivial towers") {
    Field F5 = FiniteField::prime(5);
    auto fl = flatten_tower(F5);
    CHECK(fl.flat->degree() == 1);
    CHECK(fl.section(F5->from_int(3))[0] == F5->from_int(3));

    Field F25 = std::make_shared<const FiniteField>(5, P(5, {2, 1, 1}));
    auto fl2 = flatten_tower(F25);
    CHECK(fl2.flat == F25);
    FElem a = F25->element(17);
    CHECK(fl2.embed(fl2.section(a)) == a);
}

TEST_CASE("flatten a two-step tower of degrees 2 and 2 over F5") {
    Field F25 = std::make_shared<const FiniteField>(5, P(5, {2, 1, 1}));
    // Y^2 - z is irreducible over F25 when z is a nonsquare
    FPoly psi = {F25->neg(F25->gen()), F25->zero(), F25->one()};
    REQUIRE(is_irreducible(*F25, psi));
    ExtensionField E = make_extension(F25, psi);
    Flattening fl = flatten_tower(E);
    REQUIRE(fl.flat->degree() == 4);
    CHECK(is_irreducible(fl.flat->modulus()));
    const FiniteField& G = *fl.flat;
    // image of the base generator satisfies z^2+z+2
    FElem w = fl.embed_base(F25->gen());
    CHECK(G.add(G.add(G.mul(w, w), w), G.from_int(2)).is_zero());
    // image of Y satisfies Y^2 = z
    FElem y = fl.generator_image();
    CHECK(G.sub(G.mul(y, y), w).is_zero());
    // round trips on 100 random elements
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        FElem a = G.element(rng() % G.order());
        CHECK(fl.embed(fl.section(a)) == a);
        TowerElem t = {F25->element(rng() % 25), F25->element(rng() % 25)};
        fpoly::normalize(t);
        CHECK(fl.section(fl.embed(t)) == t);
    }
    // embedding is a ring homomorphism on tower products
    for (int i = 0; i < 20; ++i) {
        TowerElem s = {F25->element(rng() % 25), F25->element(rng() % 25)};
        TowerElem t = {F25->element(rng() % 25), F25->element(rng() % 25)};
        fpoly::normalize(s);
        fpoly::normalize(t);
        TowerElem st = fpoly::rem(*F25, fpoly::mul(*F25, s, t), psi);
        CHECK(G.mul(fl.embed(s), fl.embed(t)) == fl.embed(st));
    }
}

TEST_CASE("inverse over F_p times the matrix is the identity") {
    std::mt19937 rng(11);
    for (uint32_t p : {2u, 3u, 7u}) {
        for (int trial = 0; trial < 30; ++trial) {
            int n = 1 + int(rng() % 5);
            MatFp m(n, std::vector<uint32_t>(n));
            for (auto& row : m)
                for (auto& v : row) v = rng() % p;
            auto inv = inverse_fp(m, p);
            if (!inv) {
                CHECK(rank_fp(m, p) < n);
                continue;
            }
            for (int j = 0; j < n; ++j) {
                std::vector<uint32_t> col(n);
                for (int i = 0; i < n; ++i) col[i] = (*inv)[i][j];
                auto e = matvec_fp(m, col, p);
                for (int i = 0; i < n; ++i) CHECK(e[i] == (i == j ? 1u : 0u));
            }
        }
    }
}
