#ifndef YNV_HALFINT_HPP
#define YNV_HALFINT_HPP

#include "ynv/siegel.hpp"

namespace ynv {

// Coefficients c(m) of the half-integral weight form extracted from the
// index-p Fourier-Jacobi coefficient: c(m) = sum over mu in [0, 2p) with
// mu^2 = -m mod 4p of c((m + mu^2)/4p, mu).
struct HalfIntSeries {
    int weight_num = 0; // 2(k+1) - 1, i.e. weight (k+1) - 1/2
    i64 level = 0;      // 4 p N
    i64 p = 0;
    i64 xmax = 0;
    std::map<i64, Rat> c;

    const Rat& coeff(i64 m) const;
};

// From the Jacobi slice (folding mu into the stored band).
HalfIntSeries extract_h(const JacobiSlice& slice, i64 xmax, int table_weight, i64 level);
// Independent route: the mu-sum evaluated directly on the table.
Rat h_coeff_from_table(const SiegelCoeffTable& t, i64 p, i64 m);

// Diagnostic normalized coefficients a(n) n^{1/4 - kappa/2} as doubles.
std::vector<double> normalize(const HalfIntSeries& s);
// Least-squares slope of log|~a(d)| against log d over nonzero entries.
double growth_exponent(const HalfIntSeries& s);

struct ScanReport {
    i64 X = 0;
    std::vector<i64> hits; // odd squarefree d with c(d) != 0, ascending
    std::map<i64, HalfIntMat> witness;
};

ScanReport fundamental_scan(const HalfIntSeries& s, const SiegelCoeffTable& t, i64 X);

struct Thm3Check {
    bool ok = false;
    std::vector<std::string> reasons;
};

// Character described by its local components: primes p | level mapped to
// "is chi_p trivial".  Unlisted primes default to trivial.
Thm3Check check_thm3_hypotheses(i64 level, const std::map<i64, bool>& chi_trivial);

} // namespace ynv

#endif
