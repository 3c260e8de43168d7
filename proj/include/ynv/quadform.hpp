#ifndef YNV_QUADFORM_HPP
#define YNV_QUADFORM_HPP

#include "ynv/arith.hpp"

#include <array>
#include <iosfwd>

namespace ynv {

// Positive integer d with -d a quadratic field style discriminant
// (-d = 0 or 1 mod 4).
struct Discriminant {
    i64 d = 0;

    explicit Discriminant(i64 dd);
    bool fundamental() const;
};

bool is_fundamental(i64 d);

// 2x2 unimodular transform, entries (m00 m01; m10 m11).
struct Unimodular {
    std::array<i64, 4> m{1, 0, 0, 1};

    static Unimodular identity() { return {}; }
    Unimodular mul(const Unimodular& o) const;
    i64 det() const { return m[0] * m[3] - m[1] * m[2]; }
};

// Integral binary quadratic form a x^2 + b x y + c y^2, positive definite.
struct QuadForm {
    i64 a = 1, b = 0, c = 1;

    QuadForm() = default;
    QuadForm(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {}

    i64 disc() const { return b * b - 4 * a * c; }
    bool positive_definite() const { return a > 0 && disc() < 0; }
    bool primitive() const { return gcd64(gcd64(a, b), c) == 1; }
    bool is_reduced() const;
    i64 eval(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }

    friend bool operator==(const QuadForm& f, const QuadForm& g)
    {
        return f.a == g.a && f.b == g.b && f.c == g.c;
    }
    friend bool operator<(const QuadForm& f, const QuadForm& g)
    {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    }
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

// SL2(Z) Gauss reduction; if U is given, it is set so that f.U = reduced
// (i.e. the matrix identity U^T M_f U = M_reduced holds).
QuadForm reduce_form(const QuadForm& f, Unimodular* U = nullptr);

// Gauss composition of primitive forms of equal discriminant; result reduced.
QuadForm compose(const QuadForm& f1, const QuadForm& f2);

// Reduced representative of the inverse class.
QuadForm form_inverse(const QuadForm& f);

QuadForm principal_form(i64 d);

// All SL2(Z)-reduced primitive forms of discriminant -d, sorted, principal
// form first.
std::vector<QuadForm> reduced_forms(i64 d);

} // namespace ynv

#endif
