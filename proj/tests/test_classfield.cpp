#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/oracles.hpp"
#include "ynv/classgroup.hpp"
#include "ynv/errors.hpp"
#include "ynv/quadform.hpp"

#include <random>

using namespace ynv;

TEST_CASE("fundamental discriminants")
{
    CHECK(is_fundamental(4));
    CHECK(is_fundamental(23));
    CHECK_FALSE(is_fundamental(12));
    CHECK(is_fundamental(3));
    CHECK(is_fundamental(8));
    CHECK_FALSE(is_fundamental(27));
    CHECK_FALSE(is_fundamental(16));
    CHECK(is_fundamental(163));
}

TEST_CASE("form reduction")
{
    CHECK(reduce_form(QuadForm(1, 0, 1)) == QuadForm(1, 0, 1));
    CHECK(reduce_form(QuadForm(6, 1, 1)) == QuadForm(1, 1, 6));
    CHECK(reduce_form(QuadForm(2, -1, 3)) == QuadForm(2, -1, 3));
    CHECK_THROWS_AS(reduce_form(QuadForm(-1, 0, 1)), not_positive_definite_error);

    // transform witness: U^T M U = reduced, det U = +-1
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        i64 a = 1 + rng() % 30, b = (i64)(rng() % 61) - 30;
        i64 c = (b * b + 4 * a + 3 + (i64)(rng() % 200)) / (4 * a) + 1;
        QuadForm f(a, b, c);
        if (f.disc() >= 0) continue;
        Unimodular U;
        QuadForm r = reduce_form(f, &U);
        CHECK(r.is_reduced());
        CHECK(r.disc() == f.disc());
        // apply U to f
        i64 p = U.m[0], q = U.m[1], s = U.m[2], w = U.m[3];
        i64 a2 = f.a * p * p + f.b * p * s + f.c * s * s;
        i64 b2 = 2 * f.a * p * q + f.b * (p * w + q * s) + 2 * f.c * s * w;
        i64 c2 = f.a * q * q + f.b * q * w + f.c * w * w;
        CHECK(a2 == r.a);
        CHECK(b2 == r.b);
        CHECK(c2 == r.c);
        CHECK((U.det() == 1 || U.det() == -1));
    }
}

TEST_CASE("composition at d=23")
{
    QuadForm g(2, 1, 3), gi(2, -1, 3), e(1, 1, 6);
    CHECK(compose(e, g) == g);
    CHECK(compose(g, g) == gi);
    CHECK(compose(g, gi) == e);
    CHECK_THROWS_AS(compose(QuadForm(1, 0, 1), QuadForm(1, 1, 6)), disc_mismatch_error);
    CHECK_THROWS_AS(compose(QuadForm(2, 2, 2), QuadForm(2, 2, 2)), not_primitive_error);
}

TEST_CASE("class groups: small examples")
{
    ClassGroup g4(4);
    CHECK(g4.h() == 1);
    ClassGroup g23(23);
    CHECK(g23.h() == 3);
    CHECK(g23.exponent() == 3); // cyclic
    ClassGroup g15(15);
    CHECK(g15.h() == 2);
    CHECK_THROWS_AS(ClassGroup(12), not_fundamental_error);
    ClassGroup g12(12, true);
    CHECK(g12.h() == 1);
}

TEST_CASE("class numbers against brute-force oracle up to 3000")
{
    for (i64 d = 3; d <= 3000; ++d) {
        if (!is_fundamental(d)) continue;
        ClassGroup g(d);
        CHECK_MESSAGE(g.h() == oracles::class_number_bruteforce(d), "d=", d);
    }
}

TEST_CASE("group laws on a nontrivial group")
{
    ClassGroup g(479); // h(-479) = 25, noncyclic exponent? exercise laws regardless
    int n = (int)g.h();
    for (int i = 0; i < n; ++i) {
        CHECK(g.mul(0, i) == i);
        CHECK(g.mul(i, g.inv(i)) == 0);
        for (int j = 0; j < n; ++j) {
            CHECK(g.mul(i, j) == g.mul(j, i));
            for (int k = 0; k < n; ++k)
                CHECK(g.mul(g.mul(i, j), k) == g.mul(i, g.mul(j, k)));
        }
    }
}

TEST_CASE("characters: orthogonality and count")
{
    for (i64 d : {4, 15, 23, 163, 47, 71}) {
        auto g = std::make_shared<ClassGroup>(d);
        auto chars = characters(g);
        REQUIRE((i64)chars.size() == g->h());
        CHECK(chars[0].trivial());
        const CycField& F = g->field();
        for (size_t i = 0; i < chars.size(); ++i) {
            for (size_t j = 0; j < chars.size(); ++j) {
                Cyc s = Cyc::zero(F);
                for (int c = 0; c < g->h(); ++c)
                    s += chars[i].value(c) * chars[j].value(c).conj();
                if (i == j) {
                    CHECK(s == Cyc::integer(F, Rat(g->h())));
                } else {
                    CHECK(s.is_zero());
                }
            }
        }
        // multiplicativity of characters on the group
        for (const auto& chi : chars)
            for (int x = 0; x < g->h(); ++x)
                for (int y = 0; y < g->h(); ++y)
                    CHECK(chi.value(g->mul(x, y)) == chi.value(x) * chi.value(y));
    }
}

TEST_CASE("theta coefficients: d=4 trivial character")
{
    auto g = std::make_shared<ClassGroup>(4);
    auto chars = characters(g);
    ThetaSeries t = theta_coeffs(g, chars[0], 30);
    const CycField& F = g->field();
    CHECK(t.coeff(1) == Cyc::integer(F, 1));
    CHECK(t.coeff(2) == Cyc::integer(F, 1));
    CHECK(t.coeff(3).is_zero());
    CHECK(t.coeff(5) == Cyc::integer(F, 2));
    CHECK(t.coeff(25) == Cyc::integer(F, 3));
}

TEST_CASE("theta coefficients: d=23 cubic character")
{
    auto g = std::make_shared<ClassGroup>(23);
    auto chars = characters(g);
    const ClassCharacter* chi = nullptr;
    for (auto& c : chars)
        if (c.order() == 3) {
            chi = &c;
            break;
        }
    REQUIRE(chi != nullptr);
    ThetaSeries t = theta_coeffs(g, *chi, 20);
    const CycField& F = g->field();
    // 2 splits into the two non-principal inverse classes: zeta3 + zeta3^2 = -1
    CHECK(t.coeff(2) == Cyc::integer(F, -1));
    // 5 is inert in Q(sqrt(-23))
    CHECK(kronecker(-23, 5) == -1);
    CHECK(t.coeff(5).is_zero());
}

TEST_CASE("theta multiplicativity and Fourier inversion")
{
    for (i64 d : {23, 15, 47}) {
        auto g = std::make_shared<ClassGroup>(d);
        auto chars = characters(g);
        i64 nmax = 200;
        std::vector<ThetaSeries> thetas;
        for (auto& chi : chars) thetas.push_back(theta_coeffs(g, chi, nmax));
        for (auto& t : thetas) {
            for (i64 m = 2; m * m <= nmax; ++m)
                for (i64 n = m + 1; m * n <= nmax; ++n)
                    if (gcd64(m, n) == 1) CHECK(t.coeff(m) * t.coeff(n) == t.coeff(m * n));
        }
        // summing over chi recovers h * per-class ideal counts
        auto counts = representation_counts(*g, nmax);
        i64 w = unit_count(d);
        const CycField& F = g->field();
        for (i64 n = 1; n <= nmax; ++n) {
            for (int c = 0; c < g->h(); ++c) {
                Cyc s = Cyc::zero(F);
                for (size_t k = 0; k < chars.size(); ++k) {
                    Cyc t = thetas[k].coeff(n) * chars[k].value(c).conj();
                    s += t;
                }
                CHECK(s == Cyc::integer(F, Rat(g->h() * (counts[c][n] / w))));
            }
        }
    }
}

TEST_CASE("cyclotomic field basics")
{
    CycField F(12);
    CHECK(F.degree() == 4);
    Cyc z = Cyc::root(F, 1);
    Cyc p = Cyc::integer(F, 1);
    Cyc acc = Cyc::integer(F, 1);
    for (int i = 0; i < 12; ++i) acc = acc * z;
    CHECK(acc == p); // zeta^12 = 1
    Cyc s = Cyc::zero(F);
    for (int i = 0; i < 12; ++i) s += Cyc::root(F, i);
    CHECK(s.is_zero()); // sum of all 12th roots
    CHECK((Cyc::root(F, 5) * Cyc::root(F, 5).conj()) == p);
}
