#include "ynv/quatalg.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <set>

namespace ynv {

std::vector<i64> ramified_primes(i64 a, i64 b)
{
    std::set<i64> cand{2};
    for (i64 p : prime_factors(a)) cand.insert(p);
    for (i64 p : prime_factors(b)) cand.insert(p);
    std::vector<i64> out;
    for (i64 p : cand)
        if (hilbert_symbol(a, b, p) == -1) out.push_back(p);
    return out;
}

QuatAlgebra build_algebra(i64 M1)
{
    if (M1 < 2 || !is_squarefree(M1))
        throw bad_input_error("build_algebra: M1 must be squarefree >= 2");
    std::vector<i64> target = prime_factors(M1);
    if (target.size() % 2 == 0)
        throw even_ramification_error("build_algebra: M1 must have an odd number of prime factors");
    i64 bound = 4 * M1 * M1 + 64;
    // smallest-prime-factor sieve for fast factoring of candidates
    std::vector<i64> spf(bound + 1, 0);
    for (i64 i = 2; i <= bound; ++i)
        if (spf[i] == 0)
            for (i64 j = i; j <= bound; j += i)
                if (spf[j] == 0) spf[j] = i;
    auto factors = [&](i64 n) {
        std::vector<i64> out;
        while (n > 1) {
            i64 p = spf[n];
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
        return out;
    };
    // diagonal sweep so the smallest pair is found first
    for (i64 s = 2; s <= 2 * bound; ++s) {
        for (i64 ia = 1; ia < s && ia <= bound; ++ia) {
            i64 ib = s - ia;
            if (ib < 1 || ib > bound) continue;
            // odd ramified primes must divide ab
            bool ok = true;
            for (i64 p : target)
                if (p != 2 && ia % p != 0 && ib % p != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            i64 a = -ia, b = -ib;
            std::vector<i64> cand;
            cand.push_back(2);
            for (i64 p : factors(ia))
                if (p != 2) cand.push_back(p);
            for (i64 p : factors(ib))
                if (p != 2 && (ia % p != 0)) cand.push_back(p);
            std::sort(cand.begin(), cand.end());
            std::vector<i64> ram;
            for (i64 p : cand)
                if (hilbert_symbol(a, b, p) == -1) ram.push_back(p);
            if (ram == target) {
                QuatAlgebra A;
                A.a = a;
                A.b = b;
                A.ramified = ram;
                return A;
            }
        }
    }
    throw error(errc::internal, "build_algebra: no Hilbert pair found in search bound");
}

Quat operator+(const Quat& x, const Quat& y)
{
    Quat r;
    for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
}

Quat operator-(const Quat& x, const Quat& y)
{
    Quat r;
    for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] - y.c[i];
    return r;
}

Quat Quat::scaled(const Rat& s) const
{
    Quat r = *this;
    for (auto& v : r.c) v *= s;
    return r;
}

Quat qmul(const QuatAlgebra& A, const Quat& x, const Quat& y)
{
    const Rat &x0 = x.c[0], &x1 = x.c[1], &x2 = x.c[2], &x3 = x.c[3];
    const Rat &y0 = y.c[0], &y1 = y.c[1], &y2 = y.c[2], &y3 = y.c[3];
    Rat a = A.a, b = A.b;
    Quat z;
    z.c[0] = x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3;
    z.c[1] = x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2;
    z.c[2] = x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1;
    z.c[3] = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
    return z;
}

Quat qconj(const Quat& x)
{
    return Quat(x.c[0], -x.c[1], -x.c[2], -x.c[3]);
}

Rat qtrd(const Quat& x)
{
    return 2 * x.c[0];
}

Rat qnrd(const QuatAlgebra& A, const Quat& x)
{
    return x.c[0] * x.c[0] - A.a * x.c[1] * x.c[1] - A.b * x.c[2] * x.c[2] +
           A.a * A.b * x.c[3] * x.c[3];
}

Lat Lat::from_generators(const std::vector<Quat>& gens)
{
    // clear denominators, HNF, restore scale
    Int den = 1;
    for (const Quat& g : gens)
        for (const Rat& v : g.c) den = boost::multiprecision::lcm(den, Int(denominator(v)));
    IMat M((int)gens.size(), 4);
    for (int i = 0; i < (int)gens.size(); ++i)
        for (int j = 0; j < 4; ++j) {
            Rat scaled = gens[i].c[j] * Rat(den);
            M.at(i, j) = Int(numerator(scaled));
        }
    IMat H = hnf_rowspan(M);
    if (H.rows != 4) throw error(errc::internal, "Lat: generators do not have rank 4");
    Lat L;
    L.B_ = QMat(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) L.B_.at(i, j) = Rat(H.at(i, j), den);
    L.Binv_ = inverse(L.B_);
    for (int i = 0; i < 4; ++i)
        L.basis_[i] = Quat(L.B_.at(i, 0), L.B_.at(i, 1), L.B_.at(i, 2), L.B_.at(i, 3));
    return L;
}

bool Lat::contains(const Quat& x) const
{
    // coords = x * Binv (row vector times matrix)
    for (int j = 0; j < 4; ++j) {
        Rat c = 0;
        for (int i = 0; i < 4; ++i) c += x.c[i] * Binv_.at(i, j);
        if (denominator(c) != 1) return false;
    }
    return true;
}

bool Lat::contains(const Lat& other) const
{
    for (const Quat& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

Rat Lat::index_in(const Lat& sub) const
{
    Rat r = det(sub.B_) / det(B_);
    return r < 0 ? -r : r;
}

Lat Lat::sum(const Lat& other) const
{
    std::vector<Quat> gens(basis_.begin(), basis_.end());
    gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
    return from_generators(gens);
}

Lat Lat::scaled(const Rat& s) const
{
    std::vector<Quat> gens;
    for (const Quat& b : basis_) gens.push_back(b.scaled(s));
    return from_generators(gens);
}

Lat lat_mul(const QuatAlgebra& A, const Lat& X, const Lat& Y)
{
    std::vector<Quat> gens;
    for (const Quat& x : X.basis())
        for (const Quat& y : Y.basis()) gens.push_back(qmul(A, x, y));
    return Lat::from_generators(gens);
}

Lat lat_mul_conj(const QuatAlgebra& A, const Lat& X, const Lat& Y)
{
    std::vector<Quat> gens;
    for (const Quat& x : X.basis())
        for (const Quat& y : Y.basis()) gens.push_back(qmul(A, x, qconj(y)));
    return Lat::from_generators(gens);
}

Lat dual_of_rowspan(const QMat& rows)
{
    // lattice R generated by the rows; dual = rows of (basis^{-1})^T
    Int den = 1;
    for (const Rat& v : rows.a) den = boost::multiprecision::lcm(den, Int(denominator(v)));
    IMat M(rows.rows, rows.cols);
    for (int i = 0; i < rows.rows; ++i)
        for (int j = 0; j < rows.cols; ++j) M.at(i, j) = Int(numerator(rows.at(i, j) * Rat(den)));
    IMat H = hnf_rowspan(M);
    if (H.rows != 4) throw error(errc::internal, "dual_of_rowspan: rank != 4");
    QMat B(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) B.at(i, j) = Rat(H.at(i, j), den);
    QMat D = inverse(B).transpose();
    std::vector<Quat> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(Quat(D.at(i, 0), D.at(i, 1), D.at(i, 2), D.at(i, 3)));
    return Lat::from_generators(gens);
}

namespace {

// rows expressing the map x -> coords of (x * j_k or j_k * x) in J-basis
QMat idealizer_constraints(const QuatAlgebra& A, const Lat& J, bool left)
{
    QMat rows(16, 4);
    int r = 0;
    for (const Quat& jk : J.basis()) {
        // column c of the 4x4 matrix sending x-coords to J-coords
        for (int out = 0; out < 4; ++out) {
            // row: functional x -> (coords in J of x*jk)[out]
            for (int e = 0; e < 4; ++e) {
                Quat be;
                be.c[e] = 1;
                Quat prod = left ? qmul(A, be, jk) : qmul(A, jk, be);
                Rat coord = 0;
                for (int t = 0; t < 4; ++t) coord += prod.c[t] * J.basis_inverse().at(t, out);
                rows.at(r, e) = coord;
            }
            ++r;
        }
    }
    return rows;
}

} // namespace

Lat left_idealizer(const QuatAlgebra& A, const Lat& J)
{
    return dual_of_rowspan(idealizer_constraints(A, J, true));
}

Lat right_idealizer(const QuatAlgebra& A, const Lat& J)
{
    return dual_of_rowspan(idealizer_constraints(A, J, false));
}

} // namespace ynv
