#include "ynv/brandt.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace ynv {

namespace {

std::vector<std::array<int, 3>> monomials_of_degree(int nu)
{
    std::vector<std::array<int, 3>> out;
    for (int a = nu; a >= 0; --a)
        for (int b = nu - a; b >= 0; --b) out.push_back({a, b, nu - a - b});
    return out;
}

int monomial_index(const std::vector<std::array<int, 3>>& mons, int a, int b, int c)
{
    for (size_t i = 0; i < mons.size(); ++i)
        if (mons[i][0] == a && mons[i][1] == b && mons[i][2] == c) return (int)i;
    return -1;
}

Rat factorial(int n)
{
    Rat r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

HarmonicSpace harmonic_space(const QuatAlgebra& A, int nu)
{
    HarmonicSpace H;
    H.nu = nu;
    H.monomials = monomials_of_degree(nu);
    int nm = (int)H.monomials.size();
    // nrd on the trace-zero part is d1 x1^2 + d2 x2^2 + d3 x3^2
    Rat d[3] = {Rat(-A.a), Rat(-A.b), Rat(A.a * A.b)};
    if (nu >= 2) {
        auto lower = monomials_of_degree(nu - 2);
        QMat L((int)lower.size(), nm);
        for (int m = 0; m < nm; ++m) {
            const auto& e = H.monomials[m];
            for (int t = 0; t < 3; ++t) {
                if (e[t] < 2) continue;
                std::array<int, 3> f = e;
                f[t] -= 2;
                int idx = monomial_index(lower, f[0], f[1], f[2]);
                L.at(idx, m) += Rat(e[t] * (e[t] - 1)) / d[t];
            }
        }
        H.basis = kernel(L);
    } else {
        H.basis = QMat::identity(nm);
    }
    // left inverse (basis has full column rank)
    QMat Vt = H.basis.transpose();
    H.basis_linv = inverse(Vt * H.basis) * Vt;
    // invariant pairing <x^a, x^b> = delta * prod a_i! / d_i^{a_i}
    H.pairing = QMat(nm, nm);
    for (int m = 0; m < nm; ++m) {
        const auto& e = H.monomials[m];
        Rat v = factorial(e[0]) * factorial(e[1]) * factorial(e[2]);
        for (int t = 0; t < 3; ++t)
            for (int r = 0; r < e[t]; ++r) v /= d[t];
        H.pairing.at(m, m) = v;
    }
    return H;
}

namespace {

// coordinates over (i,j,k) of conj(z) * i_t * z for t = 1..3 (columns)
std::array<std::array<Rat, 3>, 3> conj_action(const QuatAlgebra& A, const Quat& z)
{
    std::array<std::array<Rat, 3>, 3> R{};
    for (int t = 0; t < 3; ++t) {
        Quat xt;
        xt.c[t + 1] = 1;
        Quat w = qmul(A, qmul(A, qconj(z), xt), z);
        // trace part vanishes; keep pure coordinates
        for (int s = 0; s < 3; ++s) R[s][t] = w.c[s + 1];
    }
    return R;
}

// polynomial composition matrix on monomials of degree nu: P -> P(R x),
// where (R x)_t = sum_s R[t][s] x_s.
QMat compose_matrix(const std::vector<std::array<int, 3>>& mons,
                    const std::array<std::array<Rat, 3>, 3>& R)
{
    int nm = (int)mons.size();
    int nu = mons[0][0] + mons[0][1] + mons[0][2];
    QMat M(nm, nm);
    if (nu == 0) return QMat::identity(1);
    // expand prod_t (sum_s R[t][s] x_s)^{e_t} for each monomial e
    for (int m = 0; m < nm; ++m) {
        const auto& e = mons[m];
        std::map<std::array<int, 3>, Rat> poly;
        poly[{0, 0, 0}] = 1;
        for (int t = 0; t < 3; ++t) {
            for (int rep = 0; rep < e[t]; ++rep) {
                std::map<std::array<int, 3>, Rat> nxt;
                for (const auto& [mon, co] : poly) {
                    for (int s = 0; s < 3; ++s) {
                        if (R[t][s] == 0) continue;
                        std::array<int, 3> m2 = mon;
                        m2[s] += 1;
                        nxt[m2] += co * R[t][s];
                    }
                }
                poly = std::move(nxt);
            }
        }
        for (const auto& [mon, co] : poly) {
            int idx = monomial_index(mons, mon[0], mon[1], mon[2]);
            if (idx < 0) throw error(errc::internal, "compose_matrix: degree mismatch");
            M.at(idx, m) = co;
        }
    }
    return M;
}

} // namespace

BrandtSystem::BrandtSystem(std::shared_ptr<const EichlerOrderData> ord, int weight)
    : ord_(std::move(ord)), weight_(weight)
{
    if (weight_ < 2 || weight_ % 2 != 0)
        throw bad_input_error("BrandtSystem: weight must be even and >= 2");
    harm_ = harmonic_space(ord_->A, nu());
    int h = classnumber();
    conn_.resize(h * h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            const RightIdeal& Ii = ord_->ideal_classes[i];
            const RightIdeal& Ij = ord_->ideal_classes[j];
            Lat prod = lat_mul_conj(ord_->A, Ii.lattice, Ij.lattice);
            ConnectingLattice C;
            C.gram = gram_of(ord_->A, prod, Ii.nrd * Ij.nrd);
            Int den = 1;
            for (const Quat& b : prod.basis())
                for (const Rat& v : b.c) den = boost::multiprecision::lcm(den, Int(denominator(v)));
            C.den = (i64)den;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    Rat v = prod.basis()[r].c[c] * Rat(C.den);
                    C.basis[r][c] = (i64)Int(numerator(v));
                }
            conn_[i * h + j] = C;
        }
    // invariant bases per class
    inv_basis_.resize(h);
    int nm = (int)harm_.monomials.size();
    for (int i = 0; i < h; ++i) {
        if (nu() == 0) {
            inv_basis_[i] = QMat::identity(1);
            continue;
        }
        const RightIdeal& Ii = ord_->ideal_classes[i];
        GramLattice G = gram_of(ord_->A, Ii.left_order, Rat(1));
        auto units_half = short_vectors(G, 1, true);
        QMat acc(nm, nm);
        for (const auto& uv : units_half) {
            Quat u;
            for (int t = 0; t < 4; ++t)
                u = u + Ii.left_order.basis()[t].scaled(Rat(uv[t]));
            acc = acc + compose_matrix(harm_.monomials, conj_action(ord_->A, u));
        }
        acc = acc.scaled(Rat(1, (i64)units_half.size()));
        // image of the projector restricted to harmonics
        QMat PV = acc * harm_.basis;
        // column space basis of PV
        QMat PVt = PV.transpose();
        std::vector<int> piv = rref(PVt);
        QMat Vi(nm, (int)piv.size());
        for (int r = 0; r < (int)piv.size(); ++r)
            for (int c = 0; c < nm; ++c) Vi.at(c, r) = PVt.at(r, c);
        inv_basis_[i] = Vi;
    }
    module_dim_ = 0;
    for (int i = 0; i < h; ++i) module_dim_ += inv_basis_[i].cols;
    // mass pairing
    pairing_ = QMat(module_dim_, module_dim_);
    int off = 0;
    for (int i = 0; i < h; ++i) {
        QMat Pi = inv_basis_[i].transpose() * harm_.pairing * inv_basis_[i];
        Pi = Pi.scaled(Rat(1, ord_->unit_halves[i]));
        for (int r = 0; r < Pi.rows; ++r)
            for (int c = 0; c < Pi.cols; ++c) pairing_.at(off + r, off + c) = Pi.at(r, c);
        off += Pi.rows;
    }
}

QMat BrandtSystem::compute_matrix(i64 n) const
{
    int h = classnumber();
    std::vector<int> offs(h + 1, 0);
    for (int i = 0; i < h; ++i) offs[i + 1] = offs[i] + inv_basis_[i].cols;
    QMat B(module_dim_, module_dim_);
    int nm = (int)harm_.monomials.size();
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) {
            const ConnectingLattice& C = connecting(i, j);
            auto shell = short_vectors(C.gram, n, true);
            if (shell.empty()) continue;
            QMat amb(nm, nm);
            for (const auto& v : shell) {
                Quat z; // true (unscaled) lattice element: sum v_k basis_k / den
                for (int t = 0; t < 4; ++t) {
                    Quat bt(Rat(C.basis[t][0], C.den), Rat(C.basis[t][1], C.den),
                            Rat(C.basis[t][2], C.den), Rat(C.basis[t][3], C.den));
                    z = z + bt.scaled(Rat(v[t]));
                }
                amb = amb + compose_matrix(harm_.monomials, conj_action(ord_->A, z));
            }
            // both signs of z act identically (even degree): factor 2;
            // weight by 1/(2 e_j) = 1/|O_l(I_j)^x|; remove the ideal-norm
            // part (nrd_i nrd_j)^nu of the transport so blocks compose
            Rat scale = Rat(2, 2 * ord_->unit_halves[j]);
            Rat nz = ord_->ideal_classes[i].nrd * ord_->ideal_classes[j].nrd;
            for (int t = 0; t < nu(); ++t) scale /= nz;
            QMat mono_block = (amb * inv_basis_[j]).scaled(scale);
            const QMat& Vi = inv_basis_[i];
            QMat Vi_linv = inverse(Vi.transpose() * Vi) * Vi.transpose();
            QMat restr = Vi_linv * mono_block;
            // output must lie in the invariant subspace of class i
            if (!(Vi * restr - mono_block).is_zero())
                throw error(errc::internal, "Brandt block leaves the invariant subspace");
            for (int r = 0; r < restr.rows; ++r)
                for (int c = 0; c < restr.cols; ++c) B.at(offs[i] + r, offs[j] + c) = restr.at(r, c);
        }
    }
    return B;
}

const QMat& BrandtSystem::matrix(i64 n)
{
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(n, compute_matrix(n)).first->second;
}

std::string EigenSystem::label() const
{
    std::ostringstream os;
    os << level << "." << weight << "." << index;
    return os.str();
}

namespace {

std::vector<Int> charpoly_integer(const QMat& m)
{
    std::vector<Rat> cp = charpoly(m);
    std::vector<Int> out;
    Int den = 1;
    for (const Rat& c : cp) den = boost::multiprecision::lcm(den, Int(denominator(c)));
    if (den != 1) {
        // eigenvalues are algebraic integers; a nontrivial denominator in the
        // charpoly of a restriction signals a basis artifact, keep rationals
        // by scaling (roots unchanged only for monic...), so instead refuse.
        throw error(errc::internal, "charpoly has non-integral coefficients");
    }
    for (const Rat& c : cp) out.push_back(Int(numerator(c)));
    return out;
}

// integer roots of the charpoly of R, scanned inside a Gershgorin disc of R
std::vector<i64> integer_roots_of(const QMat& R)
{
    std::vector<Int> cp = charpoly_integer(R);
    int low = 0;
    while (low < (int)cp.size() && cp[low] == 0) ++low;
    std::vector<i64> roots;
    if (low > 0) roots.push_back(0);
    if (low >= (int)cp.size() - 1) return roots;
    Int a0 = cp[low];
    if (a0 < 0) a0 = -a0;
    Rat rbound = 0;
    for (int i = 0; i < R.rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < R.cols; ++j) {
            Rat v = R.at(i, j);
            s += (v < 0 ? -v : v);
        }
        if (s > rbound) rbound = s;
    }
    i64 bound = (i64)Int(numerator(rbound) / denominator(rbound)) + 1;
    auto eval = [&](i64 x) {
        Int v = 0;
        for (int i = (int)cp.size() - 1; i >= 0; --i) v = v * x + cp[i];
        return v;
    };
    for (i64 c = 1; c <= bound; ++c) {
        if (a0 % c != 0) continue;
        if (eval(c) == 0) roots.push_back(c);
        if (eval(-c) == 0) roots.push_back(-c);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

QMat restrict_operator(const QMat& B, const QMat& V)
{
    QMat Vt = V.transpose();
    QMat Vlinv = inverse(Vt * V) * Vt;
    QMat BV = B * V;
    QMat R = Vlinv * BV;
    if (!(V * R - BV).is_zero())
        throw error(errc::internal, "subspace not operator-invariant");
    return R;
}

std::string poly_to_string(const std::vector<Int>& cp)
{
    std::ostringstream os;
    bool first = true;
    for (int i = (int)cp.size() - 1; i >= 0; --i) {
        if (cp[i] == 0) continue;
        if (!first) os << (cp[i] > 0 ? " + " : " - ");
        else if (cp[i] < 0)
            os << "-";
        Int a = boost::multiprecision::abs(cp[i]);
        if (a != 1 || i == 0) os << a;
        if (i >= 1) os << (a != 1 ? "*x" : "x");
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

} // namespace

EigenDecomposition eigensystems(BrandtSystem& bs, i64 qmax)
{
    const EichlerOrderData& ord = bs.order();
    i64 N = ord.level;
    int h = bs.classnumber();
    int dim = bs.module_dim();
    EigenDecomposition out;

    // start space: full module; for weight 2 remove the Eisenstein line
    QMat start;
    if (bs.weight() == 2) {
        QMat row(1, h);
        for (int i = 0; i < h; ++i) row.at(0, i) = Rat(1, ord.unit_halves[i]);
        start = kernel(row); // h x (h-1)
    } else {
        start = QMat::identity(dim);
    }

    std::vector<QMat> blocks;
    if (start.cols > 0) blocks.push_back(start);
    std::vector<i64> primes;
    for (i64 q = 2; q <= qmax; ++q)
        if (is_prime(q) && N % q != 0) primes.push_back(q);

    for (i64 q : primes) {
        if (blocks.empty()) break;
        bool all_one = true;
        for (auto& b : blocks) all_one = all_one && (b.cols == 1);
        if (all_one) break;
        const QMat& B = bs.matrix(q);
        std::vector<QMat> next;
        for (const QMat& V : blocks) {
            if (V.cols == 1) {
                next.push_back(V);
                continue;
            }
            QMat R = restrict_operator(B, V);
            std::vector<i64> roots = integer_roots_of(R);
            QMat covered(V.rows, 0);
            int covered_dim = 0;
            for (i64 r : roots) {
                QMat RmL = R;
                for (int i = 0; i < R.rows; ++i) RmL.at(i, i) -= r;
                QMat K = kernel(RmL);
                if (K.cols == 0) continue;
                next.push_back(V * K);
                covered_dim += K.cols;
            }
            if (covered_dim < V.cols) {
                // complement of the rational eigenspaces: image of prod (R - r)
                QMat P = QMat::identity(R.rows);
                for (i64 r : roots) {
                    QMat RmL = R;
                    for (int i = 0; i < R.rows; ++i) RmL.at(i, i) -= r;
                    P = P * RmL;
                }
                QMat Pt = P.transpose();
                std::vector<int> piv = rref(Pt);
                QMat img(R.rows, (int)piv.size());
                for (int c = 0; c < (int)piv.size(); ++c)
                    for (int r0 = 0; r0 < R.rows; ++r0) img.at(r0, c) = Pt.at(c, r0);
                next.push_back(V * img);
            }
        }
        blocks = std::move(next);
    }

    // classify blocks
    std::vector<EigenSystem> systems;
    for (const QMat& V : blocks) {
        if (V.cols == 1) {
            EigenSystem es;
            es.weight = bs.weight();
            es.level = N;
            es.cuspidal = true;
            es.vec.resize(V.rows);
            for (int i = 0; i < V.rows; ++i) es.vec[i] = V.at(i, 0);
            systems.push_back(std::move(es));
        } else {
            IrrationalBlock ib;
            ib.dim = V.cols;
            QMat R = restrict_operator(bs.matrix(primes.empty() ? 2 : primes[0]), V);
            ib.charpoly_factors = poly_to_string(charpoly_integer(R));
            out.irrational.push_back(std::move(ib));
        }
    }

    // eigenvalues at the processed primes, and at p | N
    std::vector<i64> level_primes = prime_factors(N);
    for (EigenSystem& es : systems) {
        QMat v((int)es.vec.size(), 1);
        for (int i = 0; i < (int)es.vec.size(); ++i) v.at(i, 0) = es.vec[i];
        auto eig_of = [&](i64 n) {
            const QMat& B = bs.matrix(n);
            QMat w = B * v;
            int piv = -1;
            for (int i = 0; i < v.rows; ++i)
                if (v.at(i, 0) != 0) {
                    piv = i;
                    break;
                }
            Rat lam = w.at(piv, 0) / v.at(piv, 0);
            if (!(w - v.scaled(lam)).is_zero())
                throw not_eigen_error("vector not an eigenvector of B(n)");
            return lam;
        };
        for (i64 q : primes) es.hecke[q] = eig_of(q);
        for (i64 p : level_primes) {
            Rat lam = eig_of(p);
            es.hecke[p] = lam;
            // newform-type U_p eigenvalue: |a_p| = p^{(w-2)/2}
            Rat target = 1;
            for (int t = 0; t < (bs.weight() - 2) / 2; ++t) target *= p;
            if (lam == target) es.al_signs[p] = -1;
            else if (lam == -target) es.al_signs[p] = +1;
        }
        // harmonic coefficient layout per class
        es.phi.assign(h, std::vector<Rat>(bs.harmonics().monomials.size(), Rat(0)));
        int off = 0;
        for (int i = 0; i < h; ++i) {
            const QMat& Vi = bs.invariant_bases()[i];
            for (int m = 0; m < Vi.rows; ++m) {
                Rat s = 0;
                for (int c = 0; c < Vi.cols; ++c) s += Vi.at(m, c) * es.vec[off + c];
                es.phi[i][m] = s;
            }
            off += Vi.cols;
        }
    }

    // canonical order: by Hecke values at the processed primes
    std::sort(systems.begin(), systems.end(), [&](const EigenSystem& x, const EigenSystem& y) {
        for (i64 q : primes) {
            auto a = x.hecke.at(q), b = y.hecke.at(q);
            if (a != b) return a < b;
        }
        return false;
    });
    for (size_t i = 0; i < systems.size(); ++i) systems[i].index = (int)i;
    out.systems = std::move(systems);

    // Eisenstein system for weight 2
    if (bs.weight() == 2) {
        EigenSystem eis;
        eis.weight = 2;
        eis.level = N;
        eis.cuspidal = false;
        eis.index = (int)out.systems.size();
        eis.vec.assign(h, Rat(1));
        eis.phi.assign(h, std::vector<Rat>{Rat(1)});
        for (i64 q : primes) {
            const QMat& B = bs.matrix(q);
            // verify row sums
            for (int i = 0; i < h; ++i) {
                Rat s = 0;
                for (int j = 0; j < h; ++j) s += B.at(i, j);
                if (s != Rat(q + 1))
                    throw error(errc::internal, "Eisenstein row-sum identity failed");
            }
            eis.hecke[q] = Rat(q + 1);
        }
        out.systems.push_back(std::move(eis));
    }
    return out;
}

std::map<i64, Rat> hecke_prime_values(BrandtSystem& bs, const EigenSystem& es, i64 nmax)
{
    const EichlerOrderData& ord = bs.order();
    int h = bs.classnumber();
    int nm = (int)bs.harmonics().monomials.size();
    const auto& mons = bs.harmonics().monomials;
    i64 N = ord.level;

    // pivot class/monomial
    int pi = -1, pm = -1;
    for (int i = 0; i < h && pi < 0; ++i)
        for (int m = 0; m < nm; ++m)
            if (es.phi[i][m] != 0) {
                pi = i;
                pm = m;
                break;
            }
    if (pi < 0) throw bad_input_error("hecke_prime_values: zero eigenvector");

    // integerized phi: phi[j][m] = phin[j][m] / phiden
    Int phiden = 1;
    for (int j = 0; j < h; ++j)
        for (int m = 0; m < nm; ++m)
            phiden = boost::multiprecision::lcm(phiden, Int(denominator(es.phi[j][m])));
    std::vector<std::vector<i64>> phin(h, std::vector<i64>(nm));
    for (int j = 0; j < h; ++j)
        for (int m = 0; m < nm; ++m)
            phin[j][m] = (i64)Int(numerator(es.phi[j][m] * Rat(phiden)));

    std::vector<i64> primes;
    for (i64 q = 2; q <= nmax; ++q)
        if (is_prime(q) && N % q != 0) primes.push_back(q);

    std::map<i64, Rat> out;
    int nu = bs.nu();
    // degree-2 monomial lookup for the unrolled kernel
    int idx2[3][3][3];
    if (nu == 2)
        for (int ea = 0; ea <= 2; ++ea)
            for (int eb = 0; eb + ea <= 2; ++eb) {
                int ec = 2 - ea - eb;
                idx2[ea][eb][ec] = monomial_index(mons, ea, eb, ec);
            }

    for (i64 q : primes) {
        // acc[m] accumulates sum over j of (1/|O_j^x|) sum_z (phi_j o R(z))[m],
        // scaled by den_ij^{2 nu}; track per-j scale exactly
        Rat total_pm = 0;
        int cm = (nm > 1) ? ((pm + 1) % nm) : pm;
        Rat total_cm = 0;
        for (int j = 0; j < h; ++j) {
            const ConnectingLattice& C = bs.connecting(pi, j);
            auto shell = short_vectors(C.gram, q, true);
            if (shell.empty()) continue;
            // i128 accumulators over monomials
            std::vector<i128> acc(nm, 0);
            bool trivial_kernel = (nu == 0);
            for (const auto& v : shell) {
                i64 zz[4];
                for (int c = 0; c < 4; ++c) {
                    i64 s = 0;
                    for (int t = 0; t < 4; ++t) s += v[t] * C.basis[t][c];
                    zz[c] = s;
                }
                if (trivial_kernel) {
                    acc[0] += phin[j][0];
                    continue;
                }
                // R(zz): columns t: pure coords of conj(zz) i_t zz (i128)
                i128 R[3][3];
                {
                    i64 a = ord.A.a, b = ord.A.b;
                    i64 x0 = zz[0], x1 = zz[1], x2 = zz[2], x3 = zz[3];
                    // conj(z) * i * z etc., expanded symbolically once:
                    // w = conj(z) x z with x = i_t; use quaternion mults in i128
                    auto mulq = [&](const i128* x, const i128* y, i128* dst) {
                        dst[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] -
                                 (i128)a * b * x[3] * y[3];
                        dst[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
                        dst[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
                        dst[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
                    };
                    i128 zc[4] = {x0, -x1, -x2, -x3};
                    i128 zv[4] = {x0, x1, x2, x3};
                    for (int t = 0; t < 3; ++t) {
                        i128 xt[4] = {0, 0, 0, 0};
                        xt[t + 1] = 1;
                        i128 tmp[4], w[4];
                        mulq(zc, xt, tmp);
                        mulq(tmp, zv, w);
                        for (int s = 0; s < 3; ++s) R[s][t] = w[s + 1];
                    }
                }
                // composed polynomial accumulation
                for (int m2 = 0; m2 < nm; ++m2) {
                    if (phin[j][m2] == 0) continue;
                    const auto& e = mons[m2];
                    if (nu == 2) {
                        int fac[2];
                        int wi = 0;
                        for (int t = 0; t < 3; ++t)
                            for (int r = 0; r < e[t]; ++r) fac[wi++] = t;
                        for (int s1 = 0; s1 < 3; ++s1) {
                            if (R[fac[0]][s1] == 0) continue;
                            for (int s2 = 0; s2 < 3; ++s2) {
                                if (R[fac[1]][s2] == 0) continue;
                                int ea = (s1 == 0) + (s2 == 0);
                                int eb = (s1 == 1) + (s2 == 1);
                                int ec = (s1 == 2) + (s2 == 2);
                                acc[idx2[ea][eb][ec]] +=
                                    (i128)phin[j][m2] * R[fac[0]][s1] * R[fac[1]][s2];
                            }
                        }
                    } else {
                        std::map<std::array<int, 3>, i128> poly;
                        poly[{0, 0, 0}] = phin[j][m2];
                        for (int t = 0; t < 3; ++t)
                            for (int rep = 0; rep < e[t]; ++rep) {
                                std::map<std::array<int, 3>, i128> nxt;
                                for (const auto& [mon, co] : poly)
                                    for (int s = 0; s < 3; ++s) {
                                        if (R[t][s] == 0) continue;
                                        std::array<int, 3> mm = mon;
                                        mm[s] += 1;
                                        nxt[mm] += co * R[t][s];
                                    }
                                poly = std::move(nxt);
                            }
                        for (const auto& [mon, co] : poly)
                            acc[monomial_index(mons, mon[0], mon[1], mon[2])] += co;
                    }
                }
            }
            // scale: both signs (x2), unit weight, denominator power, and the
            // ideal-norm part of the transport normalization
            Rat denpow = 1;
            for (int t = 0; t < 2 * nu; ++t) denpow *= C.den;
            Rat nz = ord.ideal_classes[pi].nrd * ord.ideal_classes[j].nrd;
            for (int t = 0; t < nu; ++t) denpow *= nz;
            Rat scale = Rat(2, 2 * ord.unit_halves[j]) / (denpow * Rat(phiden));
            auto to_rat = [](i128 v) {
                bool neg = v < 0;
                if (neg) v = -v;
                Int r = Int((unsigned long long)(v >> 64));
                r <<= 64;
                r += Int((unsigned long long)v);
                return Rat(neg ? -r : r);
            };
            total_pm += to_rat(acc[pm]) * scale;
            if (nm > 1) total_cm += to_rat(acc[cm]) * scale;
        }
        Rat aq = total_pm / es.phi[pi][pm];
        if (nm > 1 && es.phi[pi][cm] != 0) {
            Rat aq2 = total_cm / es.phi[pi][cm];
            if (aq2 != aq) throw not_eigen_error("hecke_prime_values: inconsistent eigenvalue");
        }
        out[q] = aq;
    }
    return out;
}

std::vector<std::vector<Rat>> isotypic_component(BrandtSystem& bs,
                                                 const std::map<i64, Rat>& prime_values,
                                                 const std::vector<i64>& probe_primes)
{
    int dim = bs.module_dim();
    QMat P = QMat::identity(dim);
    for (i64 q : probe_primes) {
        const QMat& B = bs.matrix(q);
        QMat BmL = B;
        Rat aq = prime_values.at(q);
        for (int i = 0; i < dim; ++i) BmL.at(i, i) -= aq;
        P = BmL * P;
    }
    QMat K = kernel(P);
    std::vector<std::vector<Rat>> out;
    for (int c = 0; c < K.cols; ++c) {
        std::vector<Rat> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = K.at(i, c);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<EigenSystem> newform_candidates(int w, i64 L)
{
    if (!is_squarefree(L) || L < 2) return {};
    auto ps = prime_factors(L);
    QuatAlgebra A = build_algebra(ps[0]);
    auto ord = std::make_shared<EichlerOrderData>(eichler_order(A, L));
    BrandtSystem bs(ord, w);
    if (bs.module_dim() == 0) return {};
    EigenDecomposition dec = eigensystems(bs, 40);
    std::vector<EigenSystem> out;
    for (EigenSystem& es : dec.systems) {
        if (!es.cuspidal) continue;
        bool newform = true;
        for (i64 p : ps) newform = newform && es.al_signs.count(p);
        if (newform) out.push_back(es);
    }
    for (size_t i = 0; i < out.size(); ++i) out[i].index = (int)i;
    return out;
}

std::vector<PairCandidate> select_pair(int k, i64 level_bound, bool allow_k1)
{
    if (k == 1 && !allow_k1)
        throw bad_input_error("select_pair: k = 1 requires the relaxation flag");
    if (k > 1 && k % 2 == 0)
        throw bad_input_error("select_pair: k must be odd");
    int w1 = 2 * k;
    std::map<std::pair<int, i64>, std::vector<EigenSystem>> cache;
    auto forms = [&](int w, i64 L) -> const std::vector<EigenSystem>& {
        auto key = std::make_pair(w, L);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, newform_candidates(w, L)).first;
        return it->second;
    };
    struct Key {
        i64 N, N1, N2;
        int fi, gi;
    };
    std::vector<std::pair<Key, PairCandidate>> found;
    for (i64 N1 = 2; N1 <= level_bound; ++N1) {
        if (!is_squarefree(N1)) continue;
        for (i64 N2 = 2; N2 <= level_bound; ++N2) {
            if (!is_squarefree(N2)) continue;
            i64 M = gcd64(N1, N2);
            if (M <= 1) continue;
            const auto& fs = forms(w1, N1);
            if (fs.empty()) continue;
            const auto& gs = forms(2, N2);
            if (gs.empty()) continue;
            for (const EigenSystem& f : fs) {
                for (const EigenSystem& g : gs) {
                    if (w1 == 2 && N1 == N2 && f.index == g.index) continue; // multiples
                    bool match = true;
                    for (i64 p : prime_factors(M))
                        match = match && (f.al_signs.at(p) == g.al_signs.at(p));
                    if (!match) continue;
                    PairCandidate pc;
                    pc.f = f;
                    pc.g = g;
                    pc.N1 = N1;
                    pc.N2 = N2;
                    pc.M = M;
                    for (i64 m1 = 2; m1 <= M; ++m1) {
                        if (M % m1 != 0) continue;
                        auto pf = prime_factors(m1);
                        if (!is_squarefree(m1)) continue;
                        if (pf.size() % 2 == 1) pc.admissible_M1.push_back(m1);
                    }
                    if (pc.admissible_M1.empty()) continue;
                    Key key{N1 / gcd64(N1, N2) * N2, N1, N2, f.index, g.index};
                    found.push_back({key, std::move(pc)});
                }
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        const Key &a = x.first, &b = y.first;
        if (a.N != b.N) return a.N < b.N;
        if (a.N1 != b.N1) return a.N1 < b.N1;
        if (a.N2 != b.N2) return a.N2 < b.N2;
        if (a.fi != b.fi) return a.fi < b.fi;
        return a.gi < b.gi;
    });
    std::vector<PairCandidate> out;
    for (auto& [key, pc] : found) out.push_back(std::move(pc));
    return out;
}

} // namespace ynv
