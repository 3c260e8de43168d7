#include "ynv/halfintmat.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <ostream>

namespace ynv {

std::ostream& operator<<(std::ostream& os, const HalfIntMat& T)
{
    return os << "[" << T.a << "," << T.b << "/2;" << T.c << "]";
}

HalfIntMat HalfIntMat::transformed(const Unimodular& U) const
{
    i64 p = U.m[0], q = U.m[1], r = U.m[2], s = U.m[3];
    i64 a2 = a * p * p + b * p * r + c * r * r;
    i64 b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
    i64 c2 = a * q * q + b * q * s + c * s * s;
    return HalfIntMat(a2, b2, c2);
}

HalfIntMat reduce_T(const HalfIntMat& T, Unimodular* U)
{
    if (!T.positive_definite())
        throw not_positive_definite_error("reduce_T: matrix not positive definite");
    Unimodular V;
    QuadForm r = reduce_form(QuadForm(T.a, T.b, T.c), &V);
    if (r.b < 0) {
        // mirror to the GL2(Z) representative with b >= 0
        r.b = -r.b;
        V = V.mul(Unimodular{{1, 0, 0, -1}});
    }
    if (U) *U = V;
    return HalfIntMat(r.a, r.b, r.c);
}

std::vector<HalfIntMat> reduced_matrices_up_to(i64 bound)
{
    std::vector<HalfIntMat> out;
    for (i64 a = 1; 3 * a * a <= bound; ++a) {
        for (i64 b = 0; b <= a; ++b) {
            for (i64 c = a; 4 * a * c - b * b <= bound; ++c) {
                if (4 * a * c - b * b <= 0) continue;
                out.push_back(HalfIntMat(a, b, c));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ynv
