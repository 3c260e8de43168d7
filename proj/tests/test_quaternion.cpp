#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/oracles.hpp"
#include "ynv/brandt.hpp"
#include "ynv/errors.hpp"

#include <iostream>

using namespace ynv;

TEST_CASE("hilbert symbols and algebra search")
{
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 3) == 1);
    CHECK(hilbert_symbol(-1, -11, 11) == -1);
    CHECK(hilbert_symbol(-1, -11, 2) == 1);

    QuatAlgebra A2 = build_algebra(2);
    CHECK(A2.a == -1);
    CHECK(A2.b == -1);
    CHECK(A2.ramified == std::vector<i64>{2});

    QuatAlgebra A11 = build_algebra(11);
    CHECK(A11.a == -1);
    CHECK(A11.b == -11);
    CHECK(A11.ramified == std::vector<i64>{11});

    CHECK_THROWS_AS(build_algebra(15), even_ramification_error);

    QuatAlgebra A30 = build_algebra(30);
    CHECK(A30.ramified == std::vector<i64>{2, 3, 5});
}

TEST_CASE("maximal orders: masses of small prime discriminants")
{
    // mass = (p-1)/24 with sum over classes of 1/|O^x|
    struct Case {
        i64 p;
        i64 h;
    } cases[] = {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 2}, {13, 1}};
    for (auto [p, hexp] : cases) {
        QuatAlgebra A = build_algebra(p);
        EichlerOrderData D = eichler_order(A, p);
        CHECK(D.mass == Rat(p - 1, 24));
        CHECK((i64)D.ideal_classes.size() == hexp);
        Rat s = 0;
        for (const auto& I : D.ideal_classes) s += Rat(1, I.units);
        CHECK(s == D.mass);
    }
}

TEST_CASE("hurwitz order units")
{
    QuatAlgebra A = build_algebra(2);
    EichlerOrderData D = eichler_order(A, 2);
    CHECK(D.ideal_classes[0].units == 24);
    CHECK(D.unit_halves[0] == 12);
    CHECK(D.order.discrd() == 2);
}

TEST_CASE("eichler orders with level: mass certificates")
{
    QuatAlgebra A = build_algebra(11);
    EichlerOrderData D22 = eichler_order(A, 22);
    CHECK(D22.mass == Rat(11 * 2, 24) * Rat(10, 11) * Rat(3, 2));
    Rat s = 0;
    for (const auto& I : D22.ideal_classes) s += Rat(1, I.units);
    CHECK(s == D22.mass);
    CHECK(D22.order.discrd() == 22);

    CHECK_THROWS_AS(eichler_order(A, 3), level_not_divisible_error);
}

TEST_CASE("brandt matrices weight 2 level 11")
{
    QuatAlgebra A = build_algebra(11);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, 11));
    BrandtSystem bs(ord, 2);
    int h = bs.classnumber();
    REQUIRE(h == 2);

    // B(1) = identity
    CHECK(bs.matrix(1) == QMat::identity(h));

    // row sums q+1 for primes q != 11
    for (i64 q : {2, 3, 5, 7, 13}) {
        const QMat& B = bs.matrix(q);
        for (int i = 0; i < h; ++i) {
            Rat s = 0;
            for (int j = 0; j < h; ++j) {
                s += B.at(i, j);
                CHECK(denominator(B.at(i, j)) == 1); // integrality
            }
            CHECK(s == Rat(q + 1));
        }
    }

    // multiplicativity and commutativity
    CHECK(bs.matrix(2) * bs.matrix(3) == bs.matrix(6));
    CHECK(bs.matrix(2) * bs.matrix(5) == bs.matrix(10));
    CHECK(bs.matrix(3) * bs.matrix(2) == bs.matrix(2) * bs.matrix(3));

    // mass-pairing symmetry E B = B^T E with E = diag(1/e_i)
    for (i64 n : {2, 3, 4, 5, 6, 7}) {
        const QMat& B = bs.matrix(n);
        QMat E(h, h);
        for (int i = 0; i < h; ++i) E.at(i, i) = Rat(1, ord->unit_halves[i]);
        CHECK(E * B == B.transpose() * E);
    }
}

TEST_CASE("level 11 weight 2 eigensystem matches eta(t)^2 eta(11t)^2")
{
    QuatAlgebra A = build_algebra(11);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, 11));
    BrandtSystem bs(ord, 2);
    EigenDecomposition dec = eigensystems(bs, 13);
    REQUIRE(dec.systems.size() == 2); // one cuspidal + Eisenstein
    const EigenSystem& f = dec.systems[0];
    CHECK(f.cuspidal);
    CHECK(f.hecke.at(2) == Rat(-2));
    CHECK(f.hecke.at(3) == Rat(-1));
    CHECK(f.hecke.at(5) == Rat(1));
    CHECK(f.al_signs.at(11) == -1); // a_11 = +1 -> AL sign -1

    auto eta = oracles::eta_square_11_square(50);
    // eigenvector against B(n) for all n <= 50
    QMat v((int)f.vec.size(), 1);
    for (size_t i = 0; i < f.vec.size(); ++i) v.at((int)i, 0) = f.vec[i];
    for (i64 n = 1; n <= 50; ++n) {
        QMat w = bs.matrix(n) * v;
        CHECK(w == v.scaled(Rat(eta[n])));
    }

    const EigenSystem& eis = dec.systems[1];
    CHECK_FALSE(eis.cuspidal);
    CHECK(eis.hecke.at(5) == Rat(6));
}

TEST_CASE("hecke_prime_values agrees with matrices (weight 2)")
{
    QuatAlgebra A = build_algebra(11);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, 11));
    BrandtSystem bs(ord, 2);
    EigenDecomposition dec = eigensystems(bs, 13);
    const EigenSystem& f = dec.systems[0];
    auto vals = hecke_prime_values(bs, f, 100);
    auto eta = oracles::eta_square_11_square(100);
    for (auto& [q, a] : vals) CHECK(a == Rat(eta[q]));
}

TEST_CASE("harmonic space dimensions")
{
    QuatAlgebra A = build_algebra(11);
    HarmonicSpace H0 = harmonic_space(A, 0);
    CHECK(H0.dim() == 1);
    HarmonicSpace H2 = harmonic_space(A, 2);
    CHECK(H2.dim() == 5);
    HarmonicSpace H4 = harmonic_space(A, 4);
    CHECK(H4.dim() == 9);
}

TEST_CASE("weight 6 level 11 harmonic brandt module")
{
    QuatAlgebra A = build_algebra(11);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, 11));
    BrandtSystem bs(ord, 6);
    // dim S_6^new(11) = 4
    CHECK(bs.module_dim() == 4);
    // Hecke commutativity and multiplicativity on the module
    CHECK(bs.matrix(2) * bs.matrix(3) == bs.matrix(3) * bs.matrix(2));
    CHECK(bs.matrix(2) * bs.matrix(3) == bs.matrix(6));
    // self-adjointness for the module pairing
    const QMat& P = bs.pairing();
    for (i64 q : {2, 3, 5}) {
        QMat M = P * bs.matrix(q);
        CHECK(M == M.transpose());
    }
    EigenDecomposition dec = eigensystems(bs, 13);
    std::cout << "weight6 level11: " << dec.systems.size() << " rational, "
              << dec.irrational.size() << " irrational blocks\n";
    for (auto& es : dec.systems) {
        std::cout << "  rational eigensystem:";
        for (i64 q : {2, 3, 5, 7, 11, 13}) {
            if (es.hecke.count(q)) std::cout << " a_" << q << "=" << es.hecke.at(q);
        }
        std::cout << "\n";
        // Ramanujan diagnostic |a_q| <= 2 q^{5/2} at good primes
        for (i64 q : {2, 3, 5, 7, 13}) {
            double bound = 2.0 * std::pow((double)q, 2.5);
            CHECK(std::abs((double)es.hecke.at(q)) <= bound + 1e-9);
        }
    }
    for (auto& ib : dec.irrational)
        std::cout << "  irrational block dim " << ib.dim << ": " << ib.charpoly_factors << "\n";
}

TEST_CASE("select_pair rejects and finds")
{
    // relaxed k=1 search in a small window: (11, 33) should be admissible
    auto cands = select_pair(1, 33, true);
    bool found_11_33 = false;
    for (auto& pc : cands) {
        CHECK(pc.M > 1);
        if (pc.N1 == 11 && pc.N2 == 33) {
            found_11_33 = true;
            CHECK(pc.admissible_M1 == std::vector<i64>{11});
        }
        // f = g never admitted
        if (pc.N1 == pc.N2) CHECK(pc.f.index != pc.g.index);
    }
    CHECK(found_11_33);
    CHECK_THROWS_AS(select_pair(1, 20, false), bad_input_error);
}
