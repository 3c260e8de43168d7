#include "ynv/order.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace ynv {

i64 GramLattice::q(const std::array<i64, 4>& v) const
{
    i128 s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += (i128)G[i][j] * v[i] * v[j];
    return (i64)(s / 2);
}

i64 GramLattice::polar(const std::array<i64, 4>& u, const std::array<i64, 4>& v) const
{
    i128 s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += (i128)G[i][j] * u[i] * v[j];
    return (i64)s;
}

namespace {

// Cholesky in long double for Fincke-Pohst bounds; exactness is restored by
// verifying q(v) with integer arithmetic before accepting a vector.
struct Chol {
    long double q[4][4]; // q[i][i] = d_i, q[i][j>i] = l_ij
};

Chol cholesky(const GramLattice& L)
{
    Chol c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.q[i][j] = (long double)L.G[i][j] / 2.0L;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            long double t = c.q[i][j] / c.q[i][i];
            for (int k = j; k < 4; ++k) c.q[j][k] -= t * c.q[i][k];
            c.q[i][j] = t;
        }
    }
    return c;
}

} // namespace

GramLattice lll_gram(const GramLattice& G, std::array<std::array<i64, 4>, 4>& U)
{
    // exact LLL (delta = 3/4) operating on the Gram matrix
    std::array<std::array<Rat, 4>, 4> g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = Rat(G.G[i][j], 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) U[i][j] = (i == j) ? 1 : 0;

    auto row_op = [&](int dst, int src, i64 q) {
        // basis_dst -= q * basis_src
        for (int j = 0; j < 4; ++j) U[dst][j] -= q * U[src][j];
        for (int j = 0; j < 4; ++j) g[dst][j] -= Rat(q) * g[src][j];
        for (int j = 0; j < 4; ++j) g[j][dst] -= Rat(q) * g[j][src];
    };
    auto swap_rows = [&](int a, int b) {
        std::swap(U[a], U[b]);
        std::swap(g[a], g[b]);
        for (int j = 0; j < 4; ++j) std::swap(g[j][a], g[j][b]);
    };
    // Gram-Schmidt data recomputed on demand (4x4, cheap)
    auto gso = [&](std::array<Rat, 4>& B, std::array<std::array<Rat, 4>, 4>& mu) {
        std::array<std::array<Rat, 4>, 4> r{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j <= i; ++j) {
                Rat s = g[i][j];
                for (int k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * B[k];
                if (j < i)
                    mu[i][j] = s / B[j];
                else
                    B[i] = s;
            }
        }
        (void)r;
    };
    std::array<Rat, 4> B{};
    std::array<std::array<Rat, 4>, 4> mu{};
    gso(B, mu);
    int kpos = 1;
    int guard = 0;
    while (kpos < 4 && ++guard < 10000) {
        // size-reduce row kpos against previous rows
        for (int j = kpos - 1; j >= 0; --j) {
            Rat m = mu[kpos][j];
            Int num = numerator(m), den = denominator(m);
            // nearest integer
            Int twice = 2 * num;
            Int qn = (twice + (num >= 0 ? den : -den)) / (2 * den);
            i64 q = (i64)qn;
            if (q != 0) {
                row_op(kpos, j, q);
                gso(B, mu);
            }
        }
        if (B[kpos] >= (Rat(3, 4) - mu[kpos][kpos - 1] * mu[kpos][kpos - 1]) * B[kpos - 1]) {
            ++kpos;
        } else {
            swap_rows(kpos, kpos - 1);
            gso(B, mu);
            kpos = std::max(1, kpos - 1);
        }
    }
    GramLattice out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat v = g[i][j] * 2;
            out.G[i][j] = (i64)Int(numerator(v));
        }
    return out;
}

namespace {

std::vector<std::array<i64, 4>> short_vectors_raw(const GramLattice& L, i64 n, bool half)
{
    std::vector<std::array<i64, 4>> out;
    if (n < 0) return out;
    if (n == 0) return out; // zero vector excluded
    Chol C = cholesky(L);
    const long double eps = 1e-9L;
    long double bound = (long double)n + 0.5L;
    std::array<i64, 4> v{};
    // enumerate x3 outer ... x0 inner (indices 3..0)
    std::function<void(int, long double, std::array<long double, 4>)> rec =
        [&](int i, long double rem, std::array<long double, 4> center) {
            // rem = remaining quadratic budget, center[i] = -sum l_ij x_j
            long double di = C.q[i][i];
            long double radius = std::sqrt(std::max(0.0L, rem / di)) + eps;
            i64 lo = (i64)std::ceil((long double)-radius + center[i] - eps);
            i64 hi = (i64)std::floor(radius + center[i] + eps);
            for (i64 x = lo; x <= hi; ++x) {
                v[i] = x;
                long double diff = (long double)x - center[i];
                long double used = di * diff * diff;
                if (used > rem + 1.0L) continue;
                if (i == 0) {
                    i64 qv = L.q(v);
                    if (qv != n) continue;
                    bool zero = (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0);
                    if (zero) continue;
                    if (half) {
                        int lead = 3;
                        while (lead >= 0 && v[lead] == 0) --lead;
                        if (v[lead] < 0) continue;
                    }
                    out.push_back(v);
                } else {
                    std::array<long double, 4> c2 = center;
                    for (int t = 0; t < i; ++t) c2[t] -= C.q[t][i] * (long double)x * 0; // filled below
                    // recompute centers properly: center[t] for t<i gets -l_{t,i} * x contribution
                    for (int t = 0; t < i; ++t) c2[t] = center[t] - C.q[t][i] * (long double)x;
                    rec(i - 1, rem - used, c2);
                }
            }
        };
    rec(3, bound, {0.0L, 0.0L, 0.0L, 0.0L});
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::array<i64, 4>> short_vectors(const GramLattice& L, i64 n, bool half)
{
    std::array<std::array<i64, 4>, 4> U;
    GramLattice R = lll_gram(L, U);
    auto ws = short_vectors_raw(R, n, false);
    std::vector<std::array<i64, 4>> out;
    out.reserve(ws.size());
    for (const auto& w : ws) {
        std::array<i64, 4> v{};
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i) v[k] += w[i] * U[i][k];
        if (half) {
            int lead = 3;
            while (lead >= 0 && v[lead] == 0) --lead;
            if (v[lead] < 0) continue;
        }
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> theta_counts(const GramLattice& Lin, i64 bound)
{
    std::array<std::array<i64, 4>, 4> U;
    GramLattice L = lll_gram(Lin, U);
    std::vector<i64> counts(bound + 1, 0);
    counts[0] = 1;
    Chol C = cholesky(L);
    const long double eps = 1e-9L;
    std::array<i64, 4> v{};
    std::function<void(int, long double, std::array<long double, 4>)> rec =
        [&](int i, long double rem, std::array<long double, 4> center) {
            long double di = C.q[i][i];
            long double radius = std::sqrt(std::max(0.0L, rem / di)) + eps;
            i64 lo = (i64)std::ceil((long double)-radius + center[i] - eps);
            i64 hi = (i64)std::floor(radius + center[i] + eps);
            for (i64 x = lo; x <= hi; ++x) {
                v[i] = x;
                long double diff = (long double)x - center[i];
                long double used = di * diff * diff;
                if (used > rem + 1.0L) continue;
                if (i == 0) {
                    if (v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0) continue;
                    i64 qv = L.q(v);
                    if (qv >= 1 && qv <= bound) counts[qv] += 1;
                } else {
                    std::array<long double, 4> c2 = center;
                    for (int t = 0; t < i; ++t) c2[t] = center[t] - C.q[t][i] * (long double)x;
                    rec(i - 1, rem - used, c2);
                }
            }
        };
    rec(3, (long double)bound + 0.5L, {0.0L, 0.0L, 0.0L, 0.0L});
    return counts;
}

i64 Order::discrd() const
{
    QMat T(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            T.at(i, j) = qtrd(qmul(A, lattice.basis()[i], lattice.basis()[j]));
    Rat d = det(T);
    if (d < 0) d = -d;
    if (denominator(d) != 1) throw error(errc::internal, "discrd: non-integral trace Gram");
    Int n = numerator(d);
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) throw error(errc::internal, "discrd: trace Gram determinant not a square");
    return (i64)r;
}

bool Order::is_order() const
{
    if (!lattice.contains(Quat::one())) return false;
    for (const Quat& x : lattice.basis()) {
        if (denominator(qtrd(x)) != 1) return false;
        if (denominator(qnrd(A, x)) != 1) return false;
        for (const Quat& y : lattice.basis())
            if (!lattice.contains(qmul(A, x, y))) return false;
    }
    return true;
}

Lat ring_closure(const QuatAlgebra& A, std::vector<Quat> gens, int max_iter)
{
    gens.push_back(Quat::one());
    Lat L = Lat::from_generators(gens);
    for (int it = 0; it < max_iter; ++it) {
        std::vector<Quat> g2(L.basis().begin(), L.basis().end());
        for (const Quat& x : L.basis())
            for (const Quat& y : L.basis()) g2.push_back(qmul(A, x, y));
        Lat L2 = Lat::from_generators(g2);
        if (L2 == L) return L;
        L = L2;
    }
    throw error(errc::internal, "ring_closure did not stabilize");
}

namespace {

// multiplication table of O/pO in the order basis
struct FpAlgebra {
    i64 p;
    // prod[i][j] = coords of e_i e_j mod p
    std::array<std::array<std::array<i64, 4>, 4>, 4> prod;
    std::array<i64, 4> trd; // trd(e_i) mod p
    std::array<std::array<i64, 4>, 4> trd_pair; // trd(e_i e_j) mod p
};

FpAlgebra fp_algebra(const Order& O, i64 p)
{
    FpAlgebra F;
    F.p = p;
    const auto& B = O.lattice;
    for (int i = 0; i < 4; ++i) {
        Rat t = qtrd(B.basis()[i]);
        F.trd[i] = mod64((i64)Int(numerator(t)), p); // trd integral on orders
        for (int j = 0; j < 4; ++j) {
            Quat pr = qmul(O.A, B.basis()[i], B.basis()[j]);
            Rat tp = qtrd(pr);
            F.trd_pair[i][j] = mod64((i64)Int(numerator(tp)), p);
            // coords of pr in basis
            for (int c = 0; c < 4; ++c) {
                Rat coord = 0;
                for (int t2 = 0; t2 < 4; ++t2) coord += pr.c[t2] * B.basis_inverse().at(t2, c);
                if (denominator(coord) != 1)
                    throw error(errc::internal, "fp_algebra: order not closed");
                Int num = numerator(coord) % p;
                i64 v = (i64)num;
                F.prod[i][j][c] = mod64(v, p);
            }
        }
    }
    return F;
}

std::array<i64, 4> fp_mul(const FpAlgebra& F, const std::array<i64, 4>& x,
                          const std::array<i64, 4>& y)
{
    std::array<i64, 4> z{};
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y[j] == 0) continue;
            i64 f = mul_mod(x[i], y[j], F.p);
            for (int c = 0; c < 4; ++c) z[c] = mod64(z[c] + f * F.prod[i][j][c], F.p);
        }
    }
    return z;
}

bool fp_nilpotent(const FpAlgebra& F, std::array<i64, 4> x)
{
    for (int k = 0; k < 3; ++k) x = fp_mul(F, x, x); // x^8
    return x == std::array<i64, 4>{0, 0, 0, 0};
}

// basis vectors (as F_p coordinate arrays) of rad(O/pO)
std::vector<std::array<i64, 4>> radical_basis_modp(const Order& O, i64 p)
{
    FpAlgebra F = fp_algebra(O, p);
    if (p != 2) {
        // rad = kernel of the reduced-trace pairing mod p.  For odd p every
        // x in the kernel has trd(x) = nrd(x) = 0 mod p, hence x^2 = 0, so
        // the kernel is a nil ideal; conversely trd vanishes on the radical.
        std::array<std::array<i64, 4>, 4> A{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) A[i][j] = F.trd_pair[i][j];
        std::vector<int> pivot_col;
        int r = 0;
        for (int c = 0; c < 4 && r < 4; ++c) {
            int pr = -1;
            for (int i = r; i < 4; ++i)
                if (A[i][c] % p != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(A[pr], A[r]);
            i64 inv = pow_mod(A[r][c], p - 2, p);
            for (int j = 0; j < 4; ++j) A[r][j] = mul_mod(A[r][j], inv, p);
            for (int i = 0; i < 4; ++i) {
                if (i == r || A[i][c] % p == 0) continue;
                i64 f = mod64(A[i][c], p);
                for (int j = 0; j < 4; ++j) A[i][j] = mod64(A[i][j] - f * A[r][j], p);
            }
            pivot_col.push_back(c);
            ++r;
        }
        std::vector<std::array<i64, 4>> ker;
        std::vector<bool> is_piv(4, false);
        for (int c : pivot_col) is_piv[c] = true;
        for (int c = 0; c < 4; ++c) {
            if (is_piv[c]) continue;
            std::array<i64, 4> v{};
            v[c] = 1;
            for (size_t i = 0; i < pivot_col.size(); ++i)
                v[pivot_col[i]] = mod64(-A[i][c], p);
            ker.push_back(v);
        }
        return ker;
    }
    // p = 2: brute force the largest nil ideal over the 16 elements
    std::vector<std::array<i64, 4>> all;
    for (int m = 0; m < 16; ++m)
        all.push_back({(i64)(m & 1), (i64)((m >> 1) & 1), (i64)((m >> 2) & 1), (i64)((m >> 3) & 1)});
    std::vector<std::array<i64, 4>> rad_elts;
    for (const auto& x : all) {
        bool ok = true;
        for (const auto& a : all) {
            for (const auto& b : all) {
                if (!fp_nilpotent(F, fp_mul(F, fp_mul(F, a, x), b))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) rad_elts.push_back(x);
    }
    // extract an F_2 basis
    std::vector<std::array<i64, 4>> basis;
    std::vector<std::array<i64, 4>> reduced;
    for (auto v : rad_elts) {
        auto w = v;
        for (const auto& b : reduced) {
            int lead = 0;
            while (lead < 4 && b[lead] == 0) ++lead;
            if (lead < 4 && w[lead]) {
                for (int j = 0; j < 4; ++j) w[j] ^= b[j];
            }
        }
        if (w != std::array<i64, 4>{0, 0, 0, 0}) {
            reduced.push_back(w);
            basis.push_back(v);
        }
    }
    return basis;
}

} // namespace

Lat radical_preimage(const Order& O, i64 p)
{
    auto rad = radical_basis_modp(O, p);
    std::vector<Quat> gens;
    for (const Quat& b : O.lattice.basis()) gens.push_back(b.scaled(p));
    for (const auto& v : rad) {
        Quat x;
        for (int i = 0; i < 4; ++i) {
            Quat t = O.lattice.basis()[i].scaled(Rat(v[i]));
            x = x + t;
        }
        gens.push_back(x);
    }
    return Lat::from_generators(gens);
}

namespace {

// v_p of an integer
int valuation(i64 n, i64 p)
{
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// idempotent-based splitting of O/pO = M2(F_p)
SplitData split_order_mod_p_impl(const Order& O, i64 p)
{
    FpAlgebra F = fp_algebra(O, p);
    auto lift = [&](const std::array<i64, 4>& v) {
        Quat x;
        for (int i = 0; i < 4; ++i) x = x + O.lattice.basis()[i].scaled(Rat(v[i]));
        return x;
    };
    auto to_modp = [&](const Quat& x) {
        std::array<i64, 4> v{};
        for (int c = 0; c < 4; ++c) {
            Rat coord = 0;
            for (int t = 0; t < 4; ++t) coord += x.c[t] * O.lattice.basis_inverse().at(t, c);
            if (denominator(coord) != 1) throw error(errc::internal, "split: not in order");
            v[c] = mod64((i64)Int(numerator(coord) % p), p);
        }
        return v;
    };
    std::array<i64, 4> e{};
    bool found = false;
    std::array<i64, 4> one_v = to_modp(Quat::one());
    if (p == 2) {
        // 16 elements: brute-force a nontrivial idempotent
        for (int m = 1; m < 16 && !found; ++m) {
            std::array<i64, 4> ev{(i64)(m & 1), (i64)((m >> 1) & 1), (i64)((m >> 2) & 1),
                                  (i64)((m >> 3) & 1)};
            if (fp_mul(F, ev, ev) != ev) continue;
            if (ev == one_v) continue;
            e = ev;
            found = true;
        }
    } else {
        // search an element whose reduced char poly splits with distinct roots
        i64 cap = std::min<i64>(p, 23);
        for (i64 c0 = 0; c0 < cap && !found; ++c0)
            for (i64 c1 = 0; c1 < cap && !found; ++c1)
                for (i64 c2 = 0; c2 < cap && !found; ++c2)
                    for (i64 c3 = 0; c3 < cap && !found; ++c3) {
                        std::array<i64, 4> x{c0, c1, c2, c3};
                        Quat xq = lift(x);
                        Rat tr = qtrd(xq), nr = qnrd(O.A, xq);
                        i64 t = mod64((i64)Int(numerator(tr) % p), p);
                        i64 n = mod64((i64)Int(numerator(nr) % p), p);
                        i64 disc = mod64(t * t - 4 * n, p);
                        if (disc == 0) continue;
                        if (jacobi(disc, p) != 1) continue;
                        i64 sq = -1;
                        for (i64 s = 1; s < p; ++s)
                            if (mod64(s * s, p) == disc) {
                                sq = s;
                                break;
                            }
                        if (sq < 0) continue;
                        i64 inv2 = pow_mod(2, p - 2, p);
                        i64 l1 = mul_mod(mod64(t + sq, p), inv2, p);
                        i64 l2 = mul_mod(mod64(t - sq, p), inv2, p);
                        if (l1 == l2) continue;
                        i64 dinv = pow_mod(mod64(l1 - l2, p), p - 2, p);
                        std::array<i64, 4> ev{};
                        for (int i = 0; i < 4; ++i)
                            ev[i] = mod64((x[i] - l2 * one_v[i]) * dinv, p);
                        if (fp_mul(F, ev, ev) != ev) continue;
                        bool is0 = (ev == std::array<i64, 4>{0, 0, 0, 0});
                        if (is0 || ev == one_v) continue;
                        e = ev;
                        found = true;
                    }
    }
    if (!found) throw error(errc::internal, "split_order_mod_p: no idempotent found");
    std::array<i64, 4> onem_e{};
    for (int i = 0; i < 4; ++i) onem_e[i] = mod64(one_v[i] - e[i], p);
    // e21 = (1-e) * y * e != 0 for some basis y; rank 1 with column space
    // complementary to e, so {e, e + v e21, e21} hits all of P^1
    std::array<i64, 4> e21{};
    bool got = false;
    for (int bi = 0; bi < 4 && !got; ++bi) {
        std::array<i64, 4> y{};
        y[bi] = 1;
        auto cand = fp_mul(F, fp_mul(F, onem_e, y), e);
        if (cand != std::array<i64, 4>{0, 0, 0, 0}) {
            e21 = cand;
            got = true;
        }
    }
    if (!got) throw error(errc::internal, "split_order_mod_p: e21 not found");
    SplitData S;
    S.e11 = lift(e);
    S.e21 = lift(e21);
    return S;
}

// Eichler suborder of level p inside an order maximal at p: preimage of the
// Borel {y : (1-e) y e = 0 mod p}.
Order borel_suborder(const Order& O, i64 p)
{
    SplitData S = split_order_mod_p_impl(O, p);
    FpAlgebra F = fp_algebra(O, p);
    auto to_modp = [&](const Quat& x) {
        std::array<i64, 4> v{};
        for (int c = 0; c < 4; ++c) {
            Rat coord = 0;
            for (int t = 0; t < 4; ++t) coord += x.c[t] * O.lattice.basis_inverse().at(t, c);
            v[c] = mod64((i64)Int(numerator(coord) % p), p);
        }
        return v;
    };
    std::array<i64, 4> e = to_modp(S.e11);
    std::array<i64, 4> one = to_modp(Quat::one());
    std::array<i64, 4> f{};
    for (int i = 0; i < 4; ++i) f[i] = mod64(one[i] - e[i], p);
    // kernel of y -> f y e over F_p, as subspace of O/pO
    std::vector<std::array<i64, 4>> keep;
    // build matrix rows: for each basis e_i: f e_i e coords
    std::array<std::array<i64, 4>, 4> M{};
    for (int i = 0; i < 4; ++i) {
        std::array<i64, 4> y{};
        y[i] = 1;
        M[i] = fp_mul(F, fp_mul(F, f, y), e);
    }
    // solve c: sum c_i M[i] = 0 mod p => kernel of M^T
    std::array<std::array<i64, 4>, 4> A{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A[j][i] = M[i][j];
    std::vector<int> pivot_col;
    int r = 0;
    std::array<std::array<i64, 4>, 4> W = A;
    for (int c = 0; c < 4 && r < 4; ++c) {
        int pr = -1;
        for (int i = r; i < 4; ++i)
            if (W[i][c] % p != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(W[pr], W[r]);
        i64 inv = pow_mod(W[r][c], p - 2, p);
        for (int j = 0; j < 4; ++j) W[r][j] = mul_mod(mod64(W[r][j], p), inv, p);
        for (int i = 0; i < 4; ++i) {
            if (i == r || W[i][c] % p == 0) continue;
            i64 fac = mod64(W[i][c], p);
            for (int j = 0; j < 4; ++j) W[i][j] = mod64(W[i][j] - fac * W[r][j], p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(4, false);
    for (int c : pivot_col) is_piv[c] = true;
    for (int c = 0; c < 4; ++c) {
        if (is_piv[c]) continue;
        std::array<i64, 4> v{};
        v[c] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = mod64(-W[i][c], p);
        keep.push_back(v);
    }
    std::vector<Quat> gens;
    for (const Quat& b : O.lattice.basis()) gens.push_back(b.scaled(p));
    for (const auto& v : keep) {
        Quat x;
        for (int i = 0; i < 4; ++i) x = x + O.lattice.basis()[i].scaled(Rat(v[i]));
        gens.push_back(x);
    }
    Order out;
    out.A = O.A;
    out.lattice = Lat::from_generators(gens);
    if (!out.is_order()) throw error(errc::internal, "borel_suborder: result not an order");
    return out;
}

} // namespace

Order eichler_order_lattice(const QuatAlgebra& A, i64 N)
{
    Order O;
    O.A = A;
    O.lattice = ring_closure(A, {Quat(0, 1, 0, 0), Quat(0, 0, 1, 0), Quat(0, 0, 0, 1)});
    // radical idealizer chain at every prime dividing the discriminant
    bool changed = true;
    while (changed) {
        changed = false;
        i64 dr = O.discrd();
        for (i64 p : prime_factors(dr)) {
            while (valuation(O.discrd(), p) > 1) {
                Lat J = radical_preimage(O, p);
                Lat O2 = left_idealizer(A, J);
                if (O2 == O.lattice) break; // hereditary at p
                O.lattice = O2;
                changed = true;
            }
        }
    }
    if (!O.is_order()) throw error(errc::internal, "saturation produced a non-order");
    // hereditary -> maximal at primes not wanted in the level
    i64 dr = O.discrd();
    for (i64 p : prime_factors(dr)) {
        bool ram = std::find(A.ramified.begin(), A.ramified.end(), p) != A.ramified.end();
        if (ram || N % p == 0) continue;
        // adjoin x = lift(v)/p for v in the radical mod p
        auto rad = radical_basis_modp(O, p);
        bool fixed = false;
        std::vector<std::array<i64, 4>> combos;
        // all nonzero F_p combinations of the radical basis
        std::vector<i64> idx(rad.size(), 0);
        while (true) {
            std::array<i64, 4> v{};
            bool nz = false;
            for (size_t t = 0; t < rad.size(); ++t)
                for (int c = 0; c < 4; ++c) {
                    v[c] = mod64(v[c] + idx[t] * rad[t][c], p);
                }
            for (int c = 0; c < 4; ++c) nz = nz || (v[c] != 0);
            if (nz) combos.push_back(v);
            size_t t = 0;
            for (; t < rad.size(); ++t) {
                if (++idx[t] < p) break;
                idx[t] = 0;
            }
            if (t == rad.size()) break;
        }
        for (const auto& v : combos) {
            Quat x;
            for (int i = 0; i < 4; ++i) x = x + O.lattice.basis()[i].scaled(Rat(v[i]));
            x = x.scaled(Rat(1, p));
            if (denominator(qtrd(x)) != 1 || denominator(qnrd(A, x)) != 1) continue;
            Order cand;
            cand.A = A;
            try {
                std::vector<Quat> gens(O.lattice.basis().begin(), O.lattice.basis().end());
                gens.push_back(x);
                cand.lattice = ring_closure(A, gens, 8);
            } catch (const error&) {
                continue;
            }
            if (!cand.is_order()) continue;
            if (valuation(cand.discrd(), p) == 0) {
                O = cand;
                fixed = true;
                break;
            }
        }
        if (!fixed) throw error(errc::internal, "could not make order maximal at p");
    }
    // maximal -> Eichler at level primes
    for (i64 p : prime_factors(N)) {
        bool ram = std::find(A.ramified.begin(), A.ramified.end(), p) != A.ramified.end();
        if (ram) continue;
        if (valuation(O.discrd(), p) == 1) continue; // already hereditary at p
        O = borel_suborder(O, p);
    }
    if (O.discrd() != N) throw error(errc::internal, "eichler order has wrong discriminant");
    return O;
}

Rat eichler_mass(i64 M1, i64 N)
{
    i64 M = N / M1;
    Rat mass(M1 * M, 24);
    for (i64 p : prime_factors(M1)) mass *= Rat(p - 1, p);
    for (i64 p : prime_factors(M)) mass *= Rat(p + 1, p);
    return mass;
}

GramLattice gram_of(const QuatAlgebra& A, const Lat& L, const Rat& scale)
{
    GramLattice G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat v = qtrd(qmul(A, L.basis()[i], qconj(L.basis()[j]))) / scale;
            if (denominator(v) != 1)
                throw error(errc::internal, "gram_of: non-integral normalized Gram");
            Int n = numerator(v);
            G.G[i][j] = (i64)n;
        }
    return G;
}

namespace {

// shortest vector (by normalized nrd) of a right ideal; used to keep class
// representatives small
Quat shortest_element(const QuatAlgebra& A, const Lat& L, const Rat& scale)
{
    GramLattice G = gram_of(A, L, scale);
    for (i64 n = 1;; ++n) {
        auto vs = short_vectors(G, n);
        if (!vs.empty()) {
            const auto& v = vs[0];
            Quat x;
            for (int i = 0; i < 4; ++i) x = x + L.basis()[i].scaled(Rat(v[i]));
            return x;
        }
        if (n > 1000000) throw error(errc::internal, "shortest_element: runaway");
    }
}

RightIdeal make_ideal(const QuatAlgebra& A, Lat lat, Rat nrd)
{
    RightIdeal I;
    I.lattice = std::move(lat);
    I.nrd = std::move(nrd);
    I.left_order = left_idealizer(A, I.lattice);
    // unit count: vectors of normalized norm 1 in the left order
    GramLattice G = gram_of(A, I.left_order, Rat(1));
    I.units = (i64)short_vectors(G, 1, false).size();
    return I;
}

// reduce the class representative: I -> (conj(z)/nrd(I)) * I with z shortest
RightIdeal reduce_ideal(const QuatAlgebra& A, const RightIdeal& I)
{
    Quat z = shortest_element(A, I.lattice, I.nrd);
    Rat nz = qnrd(A, z) / I.nrd;
    if (nz == 1) {
        // already principal-equivalent to the order itself; reduce anyway
    }
    Quat factor = qconj(z).scaled(Rat(1) / I.nrd);
    std::vector<Quat> gens;
    for (const Quat& b : I.lattice.basis()) gens.push_back(qmul(A, factor, b));
    Lat L = Lat::from_generators(gens);
    return make_ideal(A, L, nz);
}

} // namespace

bool ideals_isomorphic(const QuatAlgebra& A, const RightIdeal& I, const RightIdeal& J)
{
    Lat prod = lat_mul_conj(A, I.lattice, J.lattice);
    GramLattice G = gram_of(A, prod, I.nrd * J.nrd);
    return !short_vectors(G, 1).empty();
}

SplitData split_order_mod_p(const Order& O, i64 p)
{
    return split_order_mod_p_impl(O, p);
}

EichlerOrderData eichler_order(const QuatAlgebra& A, i64 N)
{
    i64 M1 = 1;
    for (i64 p : A.ramified) M1 *= p;
    if (N % M1 != 0)
        throw level_not_divisible_error("eichler_order: ramified part M1 must divide N");
    if (!is_squarefree(N)) throw bad_input_error("eichler_order: N must be squarefree");
    EichlerOrderData D;
    D.A = A;
    D.level = N;
    D.order = eichler_order_lattice(A, N);
    D.mass = eichler_mass(M1, N);

    std::vector<RightIdeal> reps;
    reps.push_back(make_ideal(A, D.order.lattice, Rat(1)));
    Rat mass_sum(0);
    auto add_mass = [&](const RightIdeal& I) { mass_sum += Rat(1, I.units); };
    add_mass(reps[0]);

    // neighbor BFS at the smallest primes not dividing N
    std::vector<i64> qs;
    for (i64 q = 2; (int)qs.size() < 5; ++q)
        if (is_prime(q) && N % q != 0) qs.push_back(q);

    for (i64 q : qs) {
        if (mass_sum == D.mass) break;
        SplitData S = split_order_mod_p(D.order, q);
        // P^1(F_q) lifts: e11 + v*e21 and e21 for (0 : 1)
        std::vector<Quat> line_lifts;
        for (i64 v = 0; v < q; ++v) {
            Quat l = S.e11 + S.e21.scaled(Rat(v));
            line_lifts.push_back(l);
        }
        line_lifts.push_back(S.e21); // (0 : 1)
        size_t frontier = 0;
        while (frontier < reps.size() && mass_sum != D.mass) {
            RightIdeal I = reps[frontier++];
            // local generator of I/qI: g with gO + qI = I
            Quat g;
            bool gfound = false;
            auto try_gen = [&](const std::array<i64, 4>& co) {
                Quat cand;
                for (int i = 0; i < 4; ++i)
                    cand = cand + I.lattice.basis()[i].scaled(Rat(co[i]));
                std::vector<Quat> gens;
                for (const Quat& w : D.order.lattice.basis()) gens.push_back(qmul(A, cand, w));
                for (const Quat& b : I.lattice.basis()) gens.push_back(b.scaled(q));
                if (Lat::from_generators(gens) == I.lattice) {
                    g = cand;
                    gfound = true;
                }
            };
            for (i64 c0 = 0; c0 < q && !gfound; ++c0)
                for (i64 c1 = 0; c1 < q && !gfound; ++c1)
                    for (i64 c2 = 0; c2 < q && !gfound; ++c2)
                        for (i64 c3 = 0; c3 < q && !gfound; ++c3)
                            if (c0 || c1 || c2 || c3) try_gen({c0, c1, c2, c3});
            if (!gfound) continue; // try next ideal / prime
            for (const Quat& l : line_lifts) {
                Quat gl = qmul(A, g, l);
                std::vector<Quat> gens;
                for (const Quat& w : D.order.lattice.basis()) gens.push_back(qmul(A, gl, w));
                for (const Quat& b : I.lattice.basis()) gens.push_back(b.scaled(q));
                Lat Jl = Lat::from_generators(gens);
                RightIdeal J = make_ideal(A, Jl, I.nrd * q);
                J = reduce_ideal(A, J);
                bool known = false;
                for (const RightIdeal& R : reps)
                    if (ideals_isomorphic(A, R, J)) {
                        known = true;
                        break;
                    }
                if (!known) {
                    reps.push_back(J);
                    add_mass(J);
                    if (mass_sum == D.mass) break;
                }
            }
        }
        if (mass_sum == D.mass) break;
    }
    if (mass_sum != D.mass)
        throw incomplete_class_set_error("ideal class enumeration did not meet the mass certificate");
    D.ideal_classes = reps;
    for (const RightIdeal& I : reps) {
        if (I.units % 2 != 0) throw error(errc::internal, "odd unit group order");
        D.unit_halves.push_back(I.units / 2);
    }
    return D;
}

} // namespace ynv
