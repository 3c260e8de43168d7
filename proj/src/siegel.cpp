#include "ynv/siegel.hpp"

#include "ynv/errors.hpp"
#include "ynv/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace ynv {

const Rat& SiegelCoeffTable::value(const HalfIntMat& T) const
{
    HalfIntMat r = reduce_T(T);
    if (!in_range(r))
        throw insufficient_depth_error("coefficient outside the table disc bound");
    auto it = coeffs.find(r);
    if (it == coeffs.end())
        throw error(errc::internal, "table incomplete for in-range matrix");
    return it->second;
}

bool SiegelCoeffTable::is_zero() const
{
    for (const auto& [T, v] : coeffs)
        if (v != 0) return false;
    return true;
}

void write_ycf(const SiegelCoeffTable& t, std::ostream& os)
{
    os << "YCF1 weight=" << t.weight << " level=" << t.level << " bound=" << t.disc_bound
       << " prov=" << t.provenance << "\n";
    for (const auto& [T, v] : t.coeffs)
        os << T.a << " " << T.b << " " << T.c << " " << numerator(v) << " " << denominator(v)
           << "\n";
}

void write_ycf_file(const SiegelCoeffTable& t, const std::string& path)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw io_error_error("cannot open " + tmp);
        write_ycf(t, os);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error_error("atomic rename failed for " + path);
}

SiegelCoeffTable read_ycf(std::istream& is)
{
    SiegelCoeffTable t;
    std::string header;
    if (!std::getline(is, header)) throw io_error_error("empty ycf stream");
    std::istringstream hs(header);
    std::string magic, kv;
    hs >> magic;
    if (magic != "YCF1") throw io_error_error("bad ycf magic");
    while (hs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "weight") t.weight = std::stoi(val);
        else if (key == "level")
            t.level = std::stoll(val);
        else if (key == "bound")
            t.disc_bound = std::stoll(val);
        else if (key == "prov")
            t.provenance = val;
    }
    i64 a, b, c;
    std::string num, den;
    while (is >> a >> b >> c >> num >> den) {
        Rat v = Rat(Int(num), Int(den));
        t.coeffs[HalfIntMat(a, b, c)] = v;
    }
    return t;
}

SiegelCoeffTable read_ycf_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw io_error_error("cannot open " + path);
    return read_ycf(is);
}

// ---------------------------------------------------------------------------
// YoshidaBuilder

YoshidaBuilder::YoshidaBuilder(EigenSystem f, EigenSystem g, i64 M1, int threads)
    : f_(std::move(f)), g_(std::move(g)), M1_(M1), threads_(threads)
{
    if (g_.weight != 2) throw bad_input_error("g must have weight 2");
    if (f_.weight % 2 != 0 || f_.weight < 2) throw bad_input_error("f must have even weight");
    k_ = f_.weight / 2;
    i64 N1 = f_.level, N2 = g_.level;
    N_ = N1 / gcd64(N1, N2) * N2;
    i64 M = gcd64(N1, N2);
    if (M <= 1) throw bad_input_error("gcd(N1, N2) must exceed 1");
    if (M % M1_ != 0 || !is_squarefree(M1_) || prime_factors(M1_).size() % 2 == 0)
        throw bad_input_error("M1 must divide gcd(N1,N2), squarefree with an odd number of primes");
    for (i64 p : prime_factors(M)) {
        if (!f_.al_signs.count(p) || !g_.al_signs.count(p))
            throw atkin_lehner_mismatch_error("Atkin-Lehner sign undefined at p | gcd");
        if (f_.al_signs.at(p) != g_.al_signs.at(p))
            throw atkin_lehner_mismatch_error("Atkin-Lehner signs of f and g differ at p | gcd");
    }
    QuatAlgebra A = build_algebra(M1_);
    ord_ = std::make_shared<EichlerOrderData>(eichler_order(A, N_));
    bs_f_ = std::make_shared<BrandtSystem>(ord_, 2 * k_);
    bs_g_ = std::make_shared<BrandtSystem>(ord_, 2);
    realize_pair();
}

namespace {

std::vector<i64> probe_primes_for(const EigenSystem& es, i64 N, int count)
{
    std::vector<i64> out;
    for (const auto& [q, a] : es.hecke) {
        if (N % q != 0 && is_prime(q)) out.push_back(q);
        if ((int)out.size() == count) break;
    }
    return out;
}

std::vector<std::vector<Rat>> phi_layout(const BrandtSystem& bs, const std::vector<Rat>& vec)
{
    int h = bs.classnumber();
    int nm = (int)bs.harmonics().monomials.size();
    std::vector<std::vector<Rat>> phi(h, std::vector<Rat>(nm, Rat(0)));
    int off = 0;
    for (int i = 0; i < h; ++i) {
        const QMat& Vi = bs.invariant_bases()[i];
        for (int m = 0; m < Vi.rows; ++m) {
            Rat s = 0;
            for (int c = 0; c < Vi.cols; ++c) s += Vi.at(m, c) * vec[off + c];
            phi[i][m] = s;
        }
        off += Vi.cols;
    }
    return phi;
}

} // namespace

void YoshidaBuilder::realize_pair()
{
    auto probes_f = probe_primes_for(f_, N_, 3);
    auto probes_g = probe_primes_for(g_, N_, 3);
    if (probes_f.empty() || probes_g.empty())
        throw bad_input_error("eigensystems carry no usable Hecke data");
    auto comp_f = isotypic_component(*bs_f_, f_.hecke, probes_f);
    auto comp_g = isotypic_component(*bs_g_, g_.hecke, probes_g);
    if (comp_f.empty() || comp_g.empty())
        throw irrational_eigensystem_error("isotypic component not found on the level-N module");

    // candidate vectors: basis vectors, then simple sums
    auto candidates = [](const std::vector<std::vector<Rat>>& comp) {
        std::vector<std::vector<Rat>> out = comp;
        for (size_t i = 1; i < comp.size(); ++i) {
            std::vector<Rat> s = comp[0];
            for (size_t t = 0; t < s.size(); ++t) s[t] += comp[i][t];
            out.push_back(std::move(s));
        }
        return out;
    };
    auto fc = candidates(comp_f);
    auto gc = candidates(comp_g);
    // small-disc pretest for a nonzero lift
    auto probe_keys = reduced_matrices_up_to(60);
    for (const auto& fv : fc) {
        auto phi = phi_layout(*bs_f_, fv);
        for (const auto& gv : gc) {
            std::vector<Rat> vg(bs_g_->classnumber());
            auto phig = phi_layout(*bs_g_, gv);
            for (int j = 0; j < bs_g_->classnumber(); ++j) vg[j] = phig[j][0];
            for (const auto& T : probe_keys) {
                if (coefficient_with_vectors(T, phi, vg) != 0) {
                    phi_f_ = phi;
                    v_g_ = vg;
                    return;
                }
            }
        }
    }
    // fall back to the first candidates; build() raises ZeroLift if the
    // deeper table is still identically zero
    phi_f_ = phi_layout(*bs_f_, fc[0]);
    auto phig = phi_layout(*bs_g_, gc[0]);
    v_g_.resize(bs_g_->classnumber());
    for (int j = 0; j < bs_g_->classnumber(); ++j) v_g_[j] = phig[j][0];
}

namespace {

struct ShellVec {
    std::array<i64, 4> v;    // lattice coordinates
    std::array<i64, 4> zz;   // den * quaternion coordinates
};

std::vector<ShellVec> shell_with_coords(const ConnectingLattice& C, i64 n)
{
    auto vs = short_vectors(C.gram, n, true);
    std::vector<ShellVec> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
        ShellVec sv;
        sv.v = v;
        for (int c = 0; c < 4; ++c) {
            i64 s = 0;
            for (int t = 0; t < 4; ++t) s += v[t] * C.basis[t][c];
            sv.zz[c] = s;
        }
        out.push_back(sv);
    }
    return out;
}

// pure coordinates (over i,j,k) of x * conj(y) in i128
inline void pure_prod(i64 a, i64 b, const std::array<i64, 4>& x, const std::array<i64, 4>& y,
                      i128* w)
{
    // z = x * conj(y); conj(y) = (y0, -y1, -y2, -y3)
    i128 y0 = y[0], y1 = -y[1], y2 = -y[2], y3 = -y[3];
    w[0] = x[0] * y1 + x[1] * y0 - (i128)b * x[2] * y3 + (i128)b * x[3] * y2;
    w[1] = x[0] * y2 + x[2] * y0 + (i128)a * x[1] * y3 - (i128)a * x[3] * y1;
    w[2] = x[0] * y3 + x[3] * y0 + x[1] * y2 - x[2] * y1;
}

Rat i128_to_rat(i128 v)
{
    bool neg = v < 0;
    if (neg) v = -v;
    Int r = Int((unsigned long long)(v >> 64));
    r <<= 64;
    r += Int((unsigned long long)v);
    return Rat(neg ? -r : r);
}

// kernel-weighted pair sum over one connecting lattice; kernel given by
// integer monomial coefficients kc (degree nu); returns the raw i128-free sum
// as a rational including the sign-doubling factor 2.
Rat pair_sum(const QuatAlgebra& A, const ConnectingLattice& C, const HalfIntMat& T,
             const std::vector<i64>& kc, const std::vector<std::array<int, 3>>& mons, int nu)
{
    auto sh_a = shell_with_coords(C, T.a);
    if (sh_a.empty()) return Rat(0);
    auto sh_c = shell_with_coords(C, T.c);
    if (sh_c.empty()) return Rat(0);
    i128 acc = 0;
    for (const auto& x1 : sh_a) {
        for (const auto& x2 : sh_c) {
            i64 t = C.gram.polar(x1.v, x2.v);
            if (t != T.b && t != -T.b) continue;
            // half-shells for both variables: the sign choices contribute
            // [t=b] + [t=-b] per half-pair (the pair (x1,-x2) flips t and
            // leaves the even-degree kernel unchanged); the remaining global
            // factor 2 is applied at the end
            int mult = (t == T.b ? 1 : 0) + (t == -T.b ? 1 : 0);
            if (nu == 0) {
                acc += (i128)mult * kc[0];
                continue;
            }
            i128 w[3];
            pure_prod(A.a, A.b, x1.zz, x2.zz, w);
            i128 val = 0;
            for (size_t m = 0; m < mons.size(); ++m) {
                if (kc[m] == 0) continue;
                i128 term = kc[m];
                for (int t3 = 0; t3 < 3; ++t3)
                    for (int r = 0; r < mons[m][t3]; ++r) term *= w[t3];
                val += term;
            }
            acc += (i128)mult * val;
        }
    }
    return i128_to_rat(acc) * 2; // restore full pair set from the half-shells
}

} // namespace

Rat theta_pair_coeff(const QuatAlgebra& A, const ConnectingLattice& L, const Rat& nrd_scale,
                     const std::vector<Rat>& kernel_mono, int nu, const HalfIntMat& T)
{
    if (!T.positive_definite())
        throw not_positive_definite_error("theta_pair_coeff: T not positive definite");
    auto mons = [&] {
        std::vector<std::array<int, 3>> m;
        for (int a = nu; a >= 0; --a)
            for (int b = nu - a; b >= 0; --b) m.push_back({a, b, nu - a - b});
        return m;
    }();
    Int kd = 1;
    for (const Rat& c : kernel_mono) kd = boost::multiprecision::lcm(kd, Int(denominator(c)));
    std::vector<i64> kc(kernel_mono.size());
    for (size_t i = 0; i < kernel_mono.size(); ++i)
        kc[i] = (i64)Int(numerator(kernel_mono[i] * Rat(kd)));
    Rat raw = pair_sum(A, L, T, kc, mons, nu);
    // undo kernel integer clearing, basis denominator and norm scaling
    Rat scale = Rat(1) / Rat(kd);
    for (int t = 0; t < 2 * nu; ++t) scale /= L.den;
    for (int t = 0; t < nu; ++t) scale /= nrd_scale;
    return raw * scale;
}

Rat YoshidaBuilder::coefficient_with_vectors(const HalfIntMat& T,
                                             const std::vector<std::vector<Rat>>& phi_f,
                                             const std::vector<Rat>& v_g) const
{
    if (!T.positive_definite())
        throw not_positive_definite_error("coefficient: T not positive definite");
    const QuatAlgebra& A = ord_->A;
    int h = (int)ord_->ideal_classes.size();
    int nu = k_ - 1;
    Rat total = 0;
    for (int i = 0; i < h; ++i) {
        bool fzero = true;
        for (const Rat& c : phi_f[i]) fzero = fzero && (c == 0);
        if (fzero) continue;
        for (int j = 0; j < h; ++j) {
            if (v_g[j] == 0) continue;
            const ConnectingLattice& C = bs_f_->connecting(i, j);
            Rat nn = ord_->ideal_classes[i].nrd * ord_->ideal_classes[j].nrd;
            Rat term = theta_pair_coeff(A, C, nn, phi_f[i], nu, T);
            if (term == 0) continue;
            term *= v_g[j];
            term /= Rat(4 * ord_->unit_halves[i] * ord_->unit_halves[j]);
            total += term;
        }
    }
    return total;
}

Rat YoshidaBuilder::coefficient(const HalfIntMat& T) const
{
    return coefficient_with_vectors(T, phi_f_, v_g_);
}

std::string YoshidaBuilder::provenance() const
{
    std::ostringstream os;
    os << "f=" << f_.label() << ";g=" << g_.label() << ";M1=" << M1_
       << ";kernel=theta-pair-kernel-v1";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(os.str()));
    return buf;
}

SiegelCoeffTable YoshidaBuilder::build(i64 B) const
{
    SiegelCoeffTable t;
    t.weight = k_ + 1;
    t.level = N_;
    t.disc_bound = B;
    t.provenance = provenance();
    std::vector<HalfIntMat> keys = reduced_matrices_up_to(B);
    std::vector<Rat> vals(keys.size());
    parallel_for(keys.size(), threads_, [&](std::size_t idx) { vals[idx] = coefficient(keys[idx]); });
    for (size_t i = 0; i < keys.size(); ++i) t.coeffs[keys[i]] = vals[i];
    if (t.is_zero()) throw zero_lift_error("built table is identically zero");
    // post-check: U(p)-eigenness at every p | N
    for (i64 p : prime_factors(N_)) u_p(t, p, this);
    return t;
}

// ---------------------------------------------------------------------------
// U(p)

Rat u_p(const SiegelCoeffTable& t, i64 p, const YoshidaBuilder* ctx)
{
    if (t.level % p != 0) throw bad_input_error("u_p: p must divide the level");
    bool have = false;
    Rat lambda = 0;
    int tested = 0;
    for (const auto& [T, v] : t.coeffs) {
        HalfIntMat pT = T.scaled(p);
        if (-pT.disc() > t.disc_bound) continue;
        const Rat& vp = t.value(pT);
        ++tested;
        if (!have && v != 0) {
            lambda = vp / v;
            have = true;
        }
    }
    if (tested == 0 && ctx == nullptr)
        throw insufficient_depth_error("u_p: no testable pair (T, pT) in range");
    if (!have && ctx != nullptr) {
        // on-demand: take the smallest nonzero keys
        int used = 0;
        for (const auto& [T, v] : t.coeffs) {
            if (v == 0) continue;
            Rat vp = ctx->coefficient(T.scaled(p));
            if (!have) {
                lambda = vp / v;
                have = true;
            } else if (vp != lambda * v)
                throw not_eigen_error("u_p: inconsistent eigenvalue (on-demand)");
            if (++used == 3) break;
        }
    }
    if (!have) throw insufficient_depth_error("u_p: no nonzero coefficient to test");
    // verify the full relation on everything in range
    for (const auto& [T, v] : t.coeffs) {
        HalfIntMat pT = T.scaled(p);
        if (-pT.disc() > t.disc_bound) continue;
        if (t.value(pT) != lambda * v)
            throw not_eigen_error("u_p: relation a(F,pT) = lambda a(F,T) fails");
    }
    return lambda;
}

// ---------------------------------------------------------------------------
// degree-2 Hecke operators via similitude cosets

namespace {

struct CosetFamily {
    // A = (a b; 0 d) Hermite, D = m A^{-T}; contribution uses
    // T = m A^{-T} T' A^{-1}
    i64 a, b, d;
    i64 xcount; // |X_A|
    std::vector<std::array<Rat, 3>> xs; // (x11, x12, x22) representatives
};

std::vector<CosetFamily> similitude_cosets(i64 m)
{
    std::vector<CosetFamily> fams;
    for (i64 a = 1; a <= m * m; ++a) {
        if ((m * m) % a != 0) continue;
        for (i64 d = 1; a * d <= m * m; ++d) {
            if ((m * m) % d != 0 || (m * m) % (a * d) != 0) continue;
            // D = m A^{-T} = m/(ad) * (d 0; -b a) must be integral
            for (i64 b = 0; b < d; ++b) {
                i64 ad = a * d;
                if ((m * d) % ad != 0) continue;
                if ((m * b) % ad != 0) continue;
                if ((m * a) % ad != 0) continue;
                CosetFamily F;
                F.a = a;
                F.b = b;
                F.d = d;
                // X symmetric with denominators dividing m, X*D integral
                Rat D11 = Rat(m * d, ad), D21 = Rat(-m * b, ad), D22 = Rat(m * a, ad);
                F.xcount = 0;
                for (i64 x11 = 0; x11 < m; ++x11)
                    for (i64 x12 = 0; x12 < m; ++x12)
                        for (i64 x22 = 0; x22 < m; ++x22) {
                            // X = (x11 x12; x12 x22)/m ; B = X D with
                            // D = (D11 0; D21 D22)
                            Rat b11 = (Rat(x11) * D11 + Rat(x12) * D21) / m;
                            Rat b12 = Rat(x12) * D22 / m;
                            Rat b21 = (Rat(x12) * D11 + Rat(x22) * D21) / m;
                            Rat b22 = Rat(x22) * D22 / m;
                            if (denominator(b11) != 1 || denominator(b12) != 1 ||
                                denominator(b21) != 1 || denominator(b22) != 1)
                                continue;
                            F.xcount++;
                            F.xs.push_back({Rat(x11, m), Rat(x12, m), Rat(x22, m)});
                        }
                fams.push_back(std::move(F));
            }
        }
    }
    return fams;
}

// a(T(m)F, T') given a coefficient oracle; k is the Siegel weight
Rat hecke_coefficient(i64 m, int k, const HalfIntMat& Tp,
                      const std::function<Rat(const HalfIntMat&)>& coeff)
{
    static std::map<i64, std::vector<CosetFamily>> coset_cache;
    auto it = coset_cache.find(m);
    if (it == coset_cache.end()) it = coset_cache.emplace(m, similitude_cosets(m)).first;
    const auto& fams = it->second;
    Rat total = 0;
    Rat m3 = Rat(m) * m * m;
    for (const CosetFamily& F : fams) {
        // T = m A^{-T} T' A^{-1}; A = (a b; 0 d), A^{-1} = (1/(ad)) (d -b; 0 a)
        i64 ad = F.a * F.d;
        // N = (d 0; -b a) * T', M = N * (d -b; 0 a), T = (m/(ad)^2) M
        Rat ta = Rat(Tp.a), tb2 = Rat(Tp.b, 2), tc = Rat(Tp.c);
        Rat N11 = Rat(F.d) * ta, N12 = Rat(F.d) * tb2;
        Rat N21 = Rat(-F.b) * ta + Rat(F.a) * tb2, N22 = Rat(-F.b) * tb2 + Rat(F.a) * tc;
        Rat M11 = N11 * F.d;
        Rat M12 = N11 * Rat(-F.b) + N12 * F.a;
        Rat M22 = N21 * Rat(-F.b) + N22 * F.a;
        Rat scale = Rat(m) / (Rat(ad) * Rat(ad));
        Rat Ta = M11 * scale, Tb2 = M12 * scale, Tc = M22 * scale;
        // semi-integrality
        if (denominator(Ta) != 1 || denominator(Tc) != 1) continue;
        Rat Tb = Tb2 * 2;
        if (denominator(Tb) != 1) continue;
        HalfIntMat T((i64)Int(numerator(Ta)), (i64)Int(numerator(Tb)), (i64)Int(numerator(Tc)));
        if (!T.positive_definite()) continue;
        // character sum: all X in X_A must pair integrally with T
        bool full = true;
        for (const auto& x : F.xs) {
            Rat tr = Rat(T.a) * x[0] + Rat(T.b) * x[1] + Rat(T.c) * x[2];
            if (denominator(tr) != 1) {
                full = false;
                break;
            }
        }
        if (!full) continue;
        // (det A)^k / m^3 * |X_A|
        Rat f = Rat(F.xcount);
        for (int t = 0; t < k; ++t) f *= ad;
        f /= m3;
        total += f * coeff(T);
    }
    return total;
}

std::function<Rat(const HalfIntMat&)> make_oracle(const SiegelCoeffTable& t,
                                                  const YoshidaBuilder* ctx, bool* complete)
{
    return [&t, ctx, complete](const HalfIntMat& T) -> Rat {
        HalfIntMat r = reduce_T(T);
        if (t.in_range(r)) return t.value(r);
        if (ctx) return ctx->coefficient(r);
        *complete = false;
        return Rat(0);
    };
}

Rat hecke_eigenvalue(const SiegelCoeffTable& t, i64 m, int k, const YoshidaBuilder* ctx)
{
    // ratio a(T(m)F, T')/a(F, T') over the smallest nonzero keys
    bool have = false;
    Rat lambda = 0;
    int checked = 0;
    for (const auto& [T, v] : t.coeffs) {
        if (v == 0) continue;
        bool complete = true;
        auto oracle = make_oracle(t, ctx, &complete);
        Rat num = hecke_coefficient(m, k, T, oracle);
        if (!complete) continue;
        Rat cand = num / v;
        if (!have) {
            lambda = cand;
            have = true;
        } else if (cand != lambda)
            throw not_eigen_error("hecke_tq: eigenvalue inconsistent across coefficients");
        if (++checked >= 3) break;
    }
    if (!have)
        throw insufficient_depth_error("hecke_tq: no testable coefficient with current depth");
    return lambda;
}

} // namespace

Rat hecke_tq(const SiegelCoeffTable& t, i64 q, const YoshidaBuilder* ctx)
{
    if (t.level % q == 0) throw bad_input_error("hecke_tq: q must be coprime to the level");
    return hecke_eigenvalue(t, q, t.weight, ctx);
}

std::vector<Rat> spin_euler_factor(const SiegelCoeffTable& t, i64 q, const YoshidaBuilder* ctx)
{
    Rat l1 = hecke_eigenvalue(t, q, t.weight, ctx);
    Rat l2 = hecke_eigenvalue(t, q * q, t.weight, ctx);
    int k = t.weight;
    auto qpow = [&](int e) {
        Rat r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    std::vector<Rat> P(5);
    P[0] = 1;
    P[1] = -l1;
    P[2] = l1 * l1 - l2 - qpow(2 * k - 4);
    P[3] = -l1 * qpow(2 * k - 3);
    P[4] = qpow(4 * k - 6);
    return P;
}

bool spin_matches_shift(const std::vector<Rat>& spin, i64 q, const Rat& aqf, const Rat& aqg,
                        int k, int s0)
{
    auto qpow = [&](int e) {
        Rat r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    // (1 - aqf X + q^{2k-1} X^2)(1 - q^{s0} aqg X + q^{2 s0 + 1} X^2)
    Rat bf = qpow(2 * k - 1);
    Rat ag = aqg * qpow(s0);
    Rat bg = qpow(2 * s0 + 1);
    std::vector<Rat> P(5);
    P[0] = 1;
    P[1] = -(aqf + ag);
    P[2] = bf + bg + aqf * ag;
    P[3] = -(aqf * bg + ag * bf);
    P[4] = bf * bg;
    return P == spin;
}

std::optional<int> calibrate_spin_shift(const std::vector<Rat>& spin, i64 q, const Rat& aqf,
                                        const Rat& aqg, int k)
{
    for (int s0 = 0; s0 <= 2 * k + 2; ++s0)
        if (spin_matches_shift(spin, q, aqf, aqg, k, s0)) return s0;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fourier-Jacobi / anchor

const Rat& JacobiSlice::c(i64 n, i64 r) const
{
    auto it = cmap.find({n, r});
    if (it != cmap.end()) return it->second;
    throw insufficient_depth_error("Jacobi coefficient outside stored band");
}

bool JacobiSlice::is_zero() const
{
    for (const auto& [nr, v] : cmap)
        if (v != 0) return false;
    return true;
}

JacobiSlice fourier_jacobi(const SiegelCoeffTable& t, i64 m)
{
    if (m < 1) throw bad_input_error("fourier_jacobi: index must be >= 1");
    JacobiSlice J;
    J.index = m;
    J.disc_bound = t.disc_bound;
    // stored band: (n, r) with |r| <= m and 0 < 4nm - r^2 <= B; every Jacobi
    // coefficient folds into this band via r -> r mod 2m
    i64 nmax = (t.disc_bound + m * m) / (4 * m) + 1;
    for (i64 n = 1; n <= nmax; ++n) {
        for (i64 r = -m; r <= m; ++r) {
            i64 d = 4 * n * m - r * r;
            if (d <= 0 || d > t.disc_bound) continue;
            J.cmap[{n, r}] = t.value(HalfIntMat(n, r, m));
        }
    }
    return J;
}

PrimeAnchor prime_anchor(const SiegelCoeffTable& t, i64 search_bound)
{
    // primitive nonzero keys by |disc|, then lex
    std::vector<HalfIntMat> prim;
    for (const auto& [T, v] : t.coeffs)
        if (v != 0 && T.primitive()) prim.push_back(T);
    if (prim.empty()) {
        // Lemma-2.1 path: divide out level-supported content of nonzero keys
        for (const auto& [T, v] : t.coeffs) {
            if (v == 0) continue;
            i64 g = T.content();
            if (g <= 1) continue;
            bool level_supported = true;
            for (i64 p : prime_factors(g)) level_supported = level_supported && (t.level % p == 0);
            if (!level_supported) continue;
            HalfIntMat T0(T.a / g, T.b / g, T.c / g);
            if (t.value(T0) != 0 && T0.primitive()) prim.push_back(reduce_T(T0));
        }
    }
    std::sort(prim.begin(), prim.end(), [](const HalfIntMat& x, const HalfIntMat& y) {
        if (x.disc() != y.disc()) return -x.disc() < -y.disc();
        return x < y;
    });
    if (prim.empty()) throw anchor_not_found_error("no nonzero primitive coefficient in table");
    for (const HalfIntMat& T : prim) {
        // search coprime (x0, y0) with Q_T(y0, x0) prime, not dividing N
        for (i64 hgt = 1; hgt <= search_bound; ++hgt) {
            for (i64 x0 = -hgt; x0 <= hgt; ++x0) {
                for (i64 y0 = -hgt; y0 <= hgt; ++y0) {
                    if (std::max(std::abs(x0), std::abs(y0)) != hgt) continue;
                    if (gcd64(x0, y0) != 1) continue;
                    i64 p = T.eval(y0, x0);
                    if (p < 2 || !is_prime(p) || t.level % p == 0) continue;
                    // complete to A = (y1 y0; x1 x0) in SL2
                    i64 y1, x1neg;
                    ext_gcd(y0, x0, x1neg, y1); // x1neg*y0 + y1*x0 = 1
                    i64 x1 = -x1neg;
                    Unimodular A{{y1, y0, x1, x0}};
                    if (A.det() != 1) continue;
                    HalfIntMat Tp = T.transformed(A);
                    if (Tp.c != p) continue;
                    // keep the two mu-summands of the doubling identity
                    // distinct: r' must avoid 0 and p mod 2p
                    i64 rmod = mod64(Tp.b, 2 * p);
                    if (rmod == 0 || rmod == p) continue;
                    PrimeAnchor out;
                    out.p = p;
                    out.Tp = Tp;
                    out.T0 = T;
                    return out;
                }
            }
        }
    }
    throw anchor_not_found_error("no prime anchor within the search bound");
}

void check_gl2_invariance(const YoshidaBuilder& b, const SiegelCoeffTable& t, int count,
                          unsigned seed)
{
    std::mt19937 rng(seed);
    std::vector<HalfIntMat> keys;
    for (const auto& [T, v] : t.coeffs)
        if (-T.disc() <= std::min<i64>(t.disc_bound, 120)) keys.push_back(T);
    if (keys.empty()) throw bad_input_error("invariance check: no small keys");
    for (int it = 0; it < count; ++it) {
        const HalfIntMat& T = keys[rng() % keys.size()];
        // random unimodular word of bounded size
        Unimodular U;
        int words = 1 + rng() % 3;
        for (int w = 0; w < words; ++w) {
            switch (rng() % 3) {
                case 0: {
                    i64 q = (i64)(rng() % 5) - 2;
                    U = U.mul(Unimodular{{1, q, 0, 1}});
                    break;
                }
                case 1:
                    U = U.mul(Unimodular{{0, -1, 1, 0}});
                    break;
                default:
                    U = U.mul(Unimodular{{1, 0, 0, -1}});
                    break;
            }
        }
        HalfIntMat TU = T.transformed(U);
        Rat direct = b.coefficient(TU);
        if (direct != t.coeffs.at(T))
            throw error(errc::internal, "GL2(Z) invariance failed on a random transform");
    }
}

} // namespace ynv
