#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ynv/errors.hpp"
#include "ynv/siegel.hpp"

#include <random>
#include <sstream>

using namespace ynv;

namespace {

// flagship pair shared across the suite
struct Flagship {
    PairCandidate pc;
    std::shared_ptr<YoshidaBuilder> yb;
    SiegelCoeffTable table;

    Flagship()
    {
        auto cands = select_pair(3, 14, false);
        REQUIRE(!cands.empty());
        pc = cands[0];
        yb = std::make_shared<YoshidaBuilder>(pc.f, pc.g, 2, 2);
        table = yb->build(200);
    }
};

Flagship& flagship()
{
    static Flagship F;
    return F;
}

} // namespace

TEST_CASE("reduce_T basics")
{
    CHECK(reduce_T(HalfIntMat(1, 0, 1)) == HalfIntMat(1, 0, 1));
    CHECK(reduce_T(HalfIntMat(6, 1, 1)) == HalfIntMat(1, 1, 6));
    CHECK_THROWS_AS(reduce_T(HalfIntMat(1, 5, 1)), not_positive_definite_error);

    std::mt19937 rng(99);
    for (int i = 0; i < 1000; ++i) {
        i64 a = 1 + rng() % 20, b = (i64)(rng() % 41) - 20;
        i64 c = (b * b) / (4 * a) + 1 + rng() % 30;
        HalfIntMat T(a, b, c);
        if (!T.positive_definite()) continue;
        Unimodular U;
        HalfIntMat R = reduce_T(T, &U);
        CHECK(R.disc() == T.disc()); // determinant invariance
        CHECK(R.b >= 0);
        CHECK(R.b <= R.a);
        CHECK(R.a <= R.c);
        CHECK(T.transformed(U) == R);
    }
}

TEST_CASE("reduced key enumeration is complete")
{
    auto keys = reduced_matrices_up_to(100);
    for (i64 a = 1; a <= 12; ++a)
        for (i64 b = 0; b <= a; ++b)
            for (i64 c = a; c <= 40; ++c) {
                HalfIntMat T(a, b, c);
                i64 d = -T.disc();
                bool expect = d > 0 && d <= 100;
                bool found = std::find(keys.begin(), keys.end(), T) != keys.end();
                CHECK(found == expect);
            }
}

TEST_CASE("flagship build: nonzero, exact, eigen")
{
    Flagship& F = flagship();
    CHECK(F.table.weight == 4);
    CHECK(F.table.level == 14);
    CHECK_FALSE(F.table.is_zero());

    Rat l2 = u_p(F.table, 2, F.yb.get());
    Rat l7 = u_p(F.table, 7, F.yb.get());
    CHECK(l2 * l2 == Rat(16));
    CHECK(l7 * l7 == Rat(49 * 49));
}

TEST_CASE("gl2 invariance by direct enumeration")
{
    Flagship& F = flagship();
    check_gl2_invariance(*F.yb, F.table, 150, 4242);
}

TEST_CASE("hecke T(q): eigenvalue identity and euler factorization")
{
    Flagship& F = flagship();
    for (i64 q : {3, 5}) {
        Rat lam = hecke_tq(F.table, q, F.yb.get());
        // Yoshida eigenvalue relation lambda(q) = a_q(f) + q^{k-1} a_q(g)
        CHECK(lam == F.pc.f.hecke.at(q) + Rat(q * q) * F.pc.g.hecke.at(q));
        auto spin = spin_euler_factor(F.table, q, F.yb.get());
        auto s0 = calibrate_spin_shift(spin, q, F.pc.f.hecke.at(q), F.pc.g.hecke.at(q), 3);
        REQUIRE(s0.has_value());
        CHECK(*s0 == 2);
    }
}

TEST_CASE("theta_pair_coeff against a box-enumeration oracle")
{
    QuatAlgebra A = build_algebra(2);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, 2));
    BrandtSystem bs(ord, 2);
    const ConnectingLattice& C = bs.connecting(0, 0);
    auto brute = [&](const HalfIntMat& T) {
        i64 count = 0;
        std::vector<std::array<i64, 4>> box;
        for (i64 a = -4; a <= 4; ++a)
            for (i64 b = -4; b <= 4; ++b)
                for (i64 c = -4; c <= 4; ++c)
                    for (i64 d = -4; d <= 4; ++d) {
                        std::array<i64, 4> v{a, b, c, d};
                        if (C.gram.q(v) <= 5) box.push_back(v);
                    }
        for (const auto& x1 : box)
            for (const auto& x2 : box)
                if (C.gram.q(x1) == T.a && C.gram.q(x2) == T.c &&
                    C.gram.polar(x1, x2) == T.b)
                    ++count;
        return count;
    };
    std::vector<Rat> kernel{Rat(1)};
    for (HalfIntMat T : {HalfIntMat(1, 0, 1), HalfIntMat(1, 1, 1), HalfIntMat(2, 1, 3),
                         HalfIntMat(1, 0, 2), HalfIntMat(2, 2, 2), HalfIntMat(1, 1, 5)}) {
        Rat got = theta_pair_coeff(A, C, Rat(1), kernel, 0, T);
        CHECK(got == Rat(brute(T)));
    }
}

TEST_CASE("fourier-jacobi slice agrees with table lookups")
{
    Flagship& F = flagship();
    JacobiSlice J = fourier_jacobi(F.table, 3);
    CHECK_FALSE(J.cmap.empty());
    for (const auto& [nr, v] : J.cmap) {
        auto [n, r] = nr;
        CHECK(v == F.table.value(HalfIntMat(n, r, 3)));
        CHECK(v == J.c(n, -r)); // c(n, r) = c(n, -r)
    }
    PrimeAnchor anc = prime_anchor(F.table);
    JacobiSlice Jp = fourier_jacobi(F.table, anc.p);
    CHECK_FALSE(Jp.is_zero());
}

TEST_CASE("prime anchor properties")
{
    Flagship& F = flagship();
    PrimeAnchor anc = prime_anchor(F.table);
    CHECK(is_prime(anc.p));
    CHECK(F.table.level % anc.p != 0);
    CHECK(anc.Tp.c == anc.p);
    CHECK(F.table.value(anc.Tp) != 0);
    CHECK(F.table.value(anc.Tp) == F.table.value(anc.T0));
}

TEST_CASE("ycf io: exact round trip and pinned header")
{
    Flagship& F = flagship();
    std::ostringstream os;
    write_ycf(F.table, os);
    std::istringstream is(os.str());
    SiegelCoeffTable t2 = read_ycf(is);
    CHECK(t2.weight == F.table.weight);
    CHECK(t2.level == F.table.level);
    CHECK(t2.disc_bound == F.table.disc_bound);
    CHECK(t2.provenance == F.table.provenance);
    CHECK(t2.coeffs == F.table.coeffs);
    std::string header = os.str().substr(0, os.str().find('\n'));
    CHECK(header.substr(0, 5) == "YCF1 ");
    CHECK(header.find("weight=4") != std::string::npos);
    CHECK(header.find("level=14") != std::string::npos);
    CHECK(header.find("bound=200") != std::string::npos);
    CHECK(header.find("prov=") != std::string::npos);
}

TEST_CASE("atkin-lehner mismatch raises")
{
    Flagship& F = flagship();
    EigenSystem bad = F.pc.g;
    bad.al_signs[2] = -bad.al_signs[2];
    CHECK_THROWS_AS(YoshidaBuilder(F.pc.f, bad, 2, 1), atkin_lehner_mismatch_error);
}

TEST_CASE("u_p input guards and scale invariance")
{
    Flagship& F = flagship();
    CHECK_THROWS_AS(u_p(F.table, 3, F.yb.get()), bad_input_error);
    SiegelCoeffTable scaled = F.table;
    for (auto& [T, v] : scaled.coeffs) v *= 7;
    CHECK(u_p(scaled, 2, nullptr) == u_p(F.table, 2, F.yb.get()));
    CHECK(hecke_tq(scaled, 3, nullptr) == hecke_tq(F.table, 3, F.yb.get()));
}

TEST_CASE("determinism across thread counts")
{
    Flagship& F = flagship();
    YoshidaBuilder yb1(F.pc.f, F.pc.g, 2, 1);
    SiegelCoeffTable t1 = yb1.build(120);
    YoshidaBuilder yb4(F.pc.f, F.pc.g, 2, 4);
    SiegelCoeffTable t4 = yb4.build(120);
    std::ostringstream o1, o4;
    write_ycf(t1, o1);
    write_ycf(t4, o4);
    CHECK(o1.str() == o4.str());
}
