#include "ynv/quadform.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <ostream>

namespace ynv {

Discriminant::Discriminant(i64 dd) : d(dd)
{
    if (d < 3) throw bad_input_error("discriminant parameter d must be >= 3");
    i64 r = mod64(-d, 4);
    if (r != 0 && r != 1) throw bad_residue_error("-d must be 0 or 1 mod 4");
}

bool Discriminant::fundamental() const
{
    return is_fundamental(d);
}

bool is_fundamental(i64 d)
{
    if (d < 3) return false;
    if (mod64(d, 4) == 3) return is_squarefree(d);
    if (d % 4 == 0) {
        i64 m = d / 4;
        return is_squarefree(m) && (mod64(m, 4) == 1 || mod64(m, 4) == 2);
    }
    return false;
}

Unimodular Unimodular::mul(const Unimodular& o) const
{
    Unimodular r;
    r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
    r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
    r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
    r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
    return r;
}

bool QuadForm::is_reduced() const
{
    if (!(-a < b && b <= a && a <= c)) return false;
    if (a == c && b < 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f)
{
    return os << "(" << f.a << "," << f.b << "," << f.c << ")";
}

QuadForm reduce_form(const QuadForm& f, Unimodular* U)
{
    if (!(f.a > 0 && f.disc() < 0))
        throw not_positive_definite_error("reduce_form: form not positive definite");
    i64 a = f.a, b = f.b, c = f.c;
    Unimodular T = Unimodular::identity();
    auto floordiv = [](i64 x, i64 y) {
        i64 q = x / y, r = x % y;
        if (r != 0 && ((r < 0) != (y < 0))) --q;
        return q;
    };
    while (true) {
        // translation: bring b into (-a, a]
        if (b > a || b <= -a) {
            i64 q = floordiv(b + a - 1, 2 * a);
            // x -> x - q y
            c = a * q * q - b * q + c;
            b = b - 2 * a * q;
            T = T.mul(Unimodular{{1, -q, 0, 1}});
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            T = T.mul(Unimodular{{0, -1, 1, 0}});
            continue;
        }
        if (a == c && b < 0) {
            b = -b;
            T = T.mul(Unimodular{{0, -1, 1, 0}});
        }
        break;
    }
    if (U) *U = T;
    return QuadForm(a, b, c);
}

QuadForm principal_form(i64 d)
{
    i64 b0 = mod64(d, 2);
    return QuadForm(1, b0, (b0 * b0 + d) / 4);
}

QuadForm form_inverse(const QuadForm& f)
{
    return reduce_form(QuadForm(f.a, -f.b, f.c));
}

QuadForm compose(const QuadForm& f1q, const QuadForm& f2q)
{
    if (f1q.disc() != f2q.disc())
        throw disc_mismatch_error("compose: discriminants differ");
    if (!f1q.primitive() || !f2q.primitive())
        throw not_primitive_error("compose: forms must be primitive");
    QuadForm f1 = f1q, f2 = f2q;
    if (f1.a > f2.a) std::swap(f1, f2);
    i64 D = f1.disc();
    i64 s = (f1.b + f2.b) / 2;
    i64 n = f2.b - s; // (b2 - b1)/2
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        d = ext_gcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (d != 0 && s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = ext_gcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i64 v1 = f1.a / d1;
    i64 v2 = f2.a / d1;
    i64 r = mod64(y1 * y2 * n - x2 * f2.c, v1);
    i64 a3 = v1 * v2;
    i64 b3 = f2.b + 2 * v2 * r;
    i64 c3 = (b3 * b3 - D) / (4 * a3);
    return reduce_form(QuadForm(a3, b3, c3));
}

std::vector<QuadForm> reduced_forms(i64 d)
{
    std::vector<QuadForm> out;
    i64 bmax = isqrt64(d / 3);
    for (i64 b = mod64(d, 2); b <= bmax; b += 2) {
        i64 m4 = b * b + d;
        if (m4 % 4 != 0) continue;
        i64 m = m4 / 4; // = a*c
        for (i64 a = std::max<i64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            i64 c = m / a;
            QuadForm f(a, b, c);
            if (!f.primitive()) continue;
            out.push_back(f);
            if (b > 0 && b < a && a < c) out.push_back(QuadForm(a, -b, c));
        }
    }
    std::sort(out.begin(), out.end());
    QuadForm p = principal_form(d);
    auto it = std::find(out.begin(), out.end(), p);
    if (it != out.end()) std::rotate(out.begin(), it, it + 1);
    return out;
}

} // namespace ynv
