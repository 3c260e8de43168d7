#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ynv/errors.hpp"
#include "ynv/halfint.hpp"

using namespace ynv;

namespace {

struct Pipeline {
    PairCandidate pc;
    std::shared_ptr<YoshidaBuilder> yb;
    SiegelCoeffTable table;
    PrimeAnchor anchor;
    JacobiSlice slice;
    HalfIntSeries h;

    Pipeline()
    {
        auto cands = select_pair(3, 14, false);
        REQUIRE(!cands.empty());
        pc = cands[0];
        yb = std::make_shared<YoshidaBuilder>(pc.f, pc.g, 2, 2);
        table = yb->build(200);
        anchor = prime_anchor(table);
        slice = fourier_jacobi(table, anchor.p);
        h = extract_h(slice, 200, table.weight, table.level);
    }
};

Pipeline& pipe()
{
    static Pipeline P;
    return P;
}

} // namespace

TEST_CASE("extraction consistency: slice route equals direct table route")
{
    Pipeline& P = pipe();
    for (i64 m = 1; m <= 200; ++m)
        CHECK(P.h.coeff(m) == h_coeff_from_table(P.table, P.anchor.p, m));
}

TEST_CASE("doubling identity at the anchor")
{
    Pipeline& P = pipe();
    i64 d0 = -P.anchor.Tp.disc();
    CHECK(d0 <= P.h.xmax);
    CHECK(P.h.coeff(d0) == 2 * P.table.value(P.anchor.Tp));
    CHECK(P.h.coeff(d0) != 0);
}

TEST_CASE("congruence support: c(m) = 0 when -m is a non-residue mod 4p")
{
    Pipeline& P = pipe();
    i64 p = P.anchor.p;
    for (i64 m = 1; m <= 200; ++m) {
        bool solvable = false;
        for (i64 mu = 0; mu < 2 * p && !solvable; ++mu)
            solvable = (mod64(mu * mu + m, 4 * p) == 0);
        if (!solvable) CHECK(P.h.coeff(m) == 0);
    }
}

TEST_CASE("fundamental scan: hits are odd squarefree with exact witnesses")
{
    Pipeline& P = pipe();
    ScanReport rep = fundamental_scan(P.h, P.table, 200);
    CHECK_FALSE(rep.hits.empty());
    for (i64 d : rep.hits) {
        CHECK(d % 2 == 1);
        CHECK(is_squarefree(d));
        CHECK(is_fundamental(d)); // odd squarefree hits have -d fundamental
        REQUIRE(rep.witness.count(d));
        const HalfIntMat& S = rep.witness.at(d);
        CHECK(-S.disc() == d);
        CHECK(P.table.value(S) != 0);
    }
    ScanReport rep100 = fundamental_scan(P.h, P.table, 100);
    for (i64 d : rep100.hits)
        CHECK(std::find(rep.hits.begin(), rep.hits.end(), d) != rep.hits.end());
    CHECK(rep100.hits.size() <= rep.hits.size());
}

TEST_CASE("normalization: linearity, zeros and growth diagnostic")
{
    Pipeline& P = pipe();
    auto a = normalize(P.h);
    for (i64 m = 1; m <= P.h.xmax; ++m)
        if (P.h.coeff(m) == 0) CHECK(a[m] == 0.0);
    HalfIntSeries doubled = P.h;
    for (auto& [m, v] : doubled.c) v *= 2;
    auto a2 = normalize(doubled);
    for (i64 m = 1; m <= P.h.xmax; ++m) CHECK(a2[m] == doctest::Approx(2.0 * a[m]));
    double slope = growth_exponent(P.h);
    MESSAGE("empirical growth exponent ", slope, " (reference 3/16 = 0.1875)");
    CHECK(std::isfinite(slope));
}

TEST_CASE("depth guards")
{
    Pipeline& P = pipe();
    CHECK_THROWS_AS(extract_h(P.slice, 1000, P.table.weight, P.table.level),
                    depth_exceeded_error);
    CHECK_THROWS_AS(fundamental_scan(P.h, P.table, 1000), depth_exceeded_error);
    JacobiSlice bad = P.slice;
    bad.index = 14; // not prime
    CHECK_THROWS_AS(extract_h(bad, 10, P.table.weight, P.table.level), bad_input_error);
}

TEST_CASE("theorem-3 hypothesis checker")
{
    CHECK(check_thm3_hypotheses(84, {}).ok); // 4 * 3 * 7
    Thm3Check c2 = check_thm3_hypotheses(32, {});
    CHECK_FALSE(c2.ok);
    REQUIRE(!c2.reasons.empty());
    CHECK(c2.reasons[0] == "16 divides the level");
    CHECK_FALSE(check_thm3_hypotheses(36, {{3, true}}).ok);
    CHECK(check_thm3_hypotheses(36, {{3, false}}).ok);
    CHECK_FALSE(check_thm3_hypotheses(8 * 3, {{2, false}}).ok);
    CHECK(check_thm3_hypotheses(8 * 3, {{2, true}}).ok);
    CHECK_FALSE(check_thm3_hypotheses(4 * 27, {}).ok);
    CHECK_THROWS_AS(check_thm3_hypotheses(6, {}), not_divisible_by_4_error);
}
