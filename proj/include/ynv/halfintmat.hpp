#ifndef YNV_HALFINTMAT_HPP
#define YNV_HALFINTMAT_HPP

#include "ynv/quadform.hpp"

namespace ynv {

// T = (a, b/2; b/2, c), semi-integral positive definite.
struct HalfIntMat {
    i64 a = 1, b = 0, c = 1;

    HalfIntMat() = default;
    HalfIntMat(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {}

    i64 disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    i64 content() const { return gcd64(gcd64(a, b), c); }
    bool primitive() const { return content() == 1; }
    bool fundamental() const { return is_fundamental(-disc()); }
    // value of the associated quadratic form a x^2 + b x y + c y^2
    i64 eval(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }

    HalfIntMat scaled(i64 m) const { return HalfIntMat(m * a, m * b, m * c); }
    HalfIntMat transformed(const Unimodular& U) const; // U^T T U

    friend bool operator==(const HalfIntMat&, const HalfIntMat&) = default;
    friend bool operator<(const HalfIntMat& x, const HalfIntMat& y)
    {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    }
};

std::ostream& operator<<(std::ostream& os, const HalfIntMat& T);

// GL2(Z)-reduction: |b| <= a <= c with b >= 0; returns the reduced matrix,
// and if U is given sets U with U^T T U = reduced (det U = +-1).
HalfIntMat reduce_T(const HalfIntMat& T, Unimodular* U = nullptr);

// All GL2(Z)-reduced T with 0 < -disc(T) <= bound, sorted.
std::vector<HalfIntMat> reduced_matrices_up_to(i64 bound);

} // namespace ynv

#endif
