#ifndef YNV_TESTS_ORACLES_HPP
#define YNV_TESTS_ORACLES_HPP

#include "ynv/arith.hpp"

#include <vector>

namespace ynv::oracles {

// Independent class number count: direct triple loop over |b| <= a <= sqrt(d/3),
// counting primitive reduced forms of discriminant -d.  Deliberately written
// against the textbook inequalities rather than the production enumeration.
inline i64 class_number_bruteforce(i64 d)
{
    i64 count = 0;
    for (i64 a = 1; 3 * a * a <= d; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            i64 num = b * b + d;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (a == c || b == -a)) continue; // boundary convention
            if (gcd64(gcd64(a, b), c) != 1) continue;
            ++count;
        }
    }
    // a == sqrt(d/3) boundary: loop condition 3a^2 <= d already includes it
    return count;
}

// Coefficients of eta(tau)^2 eta(11 tau)^2 up to n terms (starts at q^1).
// Product expansion with exact integer arithmetic.
inline std::vector<i64> eta_square_11_square(int nmax)
{
    // eta(tau)^2 eta(11tau)^2 = q * prod (1-q^n)^2 (1-q^{11n})^2
    std::vector<i64> f(nmax + 1, 0);
    f[0] = 1;
    auto mul_factor = [&](int step) {
        // multiply by (1 - q^step)
        for (int i = nmax; i >= step; --i) f[i] -= f[i - step];
    };
    for (int n = 1; n <= nmax; ++n) {
        mul_factor(n);
        mul_factor(n);
        if (11 * n <= nmax) {
            mul_factor(11 * n);
            mul_factor(11 * n);
        }
    }
    std::vector<i64> a(nmax + 1, 0); // a[n] = coeff of q^n
    for (int i = 0; i + 1 <= nmax; ++i) a[i + 1] = f[i];
    return a;
}

} // namespace ynv::oracles

#endif
