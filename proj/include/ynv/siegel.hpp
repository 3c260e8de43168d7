#ifndef YNV_SIEGEL_HPP
#define YNV_SIEGEL_HPP

#include "ynv/brandt.hpp"
#include "ynv/halfintmat.hpp"

#include <iosfwd>
#include <map>
#include <optional>

namespace ynv {

// Exact Fourier coefficient table of a degree-2 Siegel cusp form, keyed by
// GL2(Z)-reduced matrices (valid for even weight).
struct SiegelCoeffTable {
    int weight = 2; // k+1
    i64 level = 1;  // N
    i64 disc_bound = 0;
    std::map<HalfIntMat, Rat> coeffs;
    std::string provenance;

    bool in_range(const HalfIntMat& T) const { return -T.disc() <= disc_bound; }
    // value at arbitrary positive definite T (reduces first); throws
    // insufficient_depth when out of range
    const Rat& value(const HalfIntMat& T) const;
    bool is_zero() const;
};

void write_ycf(const SiegelCoeffTable& t, std::ostream& os);
void write_ycf_file(const SiegelCoeffTable& t, const std::string& path); // atomic
SiegelCoeffTable read_ycf(std::istream& is);
SiegelCoeffTable read_ycf_file(const std::string& path);

// Lattice-pair theta machinery for one admissible pair, realized on the
// Eichler order of level N = lcm(N1, N2) in the algebra ramified at M1.
class YoshidaBuilder {
  public:
    // f, g are newform-type eigensystems of exact levels N1 | N and N2 | N.
    YoshidaBuilder(EigenSystem f, EigenSystem g, i64 M1, int threads = 1);

    int k() const { return k_; }             // f has weight 2k, g weight 2
    int siegel_weight() const { return k_ + 1; }
    i64 level() const { return N_; }
    i64 ramified_part() const { return M1_; }
    const EigenSystem& f() const { return f_; }
    const EigenSystem& g() const { return g_; }
    std::shared_ptr<BrandtSystem> brandt_f() const { return bs_f_; }
    std::shared_ptr<BrandtSystem> brandt_g() const { return bs_g_; }

    // exact a(F,T) by direct lattice-pair enumeration (any pos.def. T)
    Rat coefficient(const HalfIntMat& T) const;

    // complete table for all reduced T with |disc| <= B (with post-checks)
    SiegelCoeffTable build(i64 B) const;

    std::string provenance() const;

  private:
    void realize_pair();
    Rat coefficient_with_vectors(const HalfIntMat& T, const std::vector<std::vector<Rat>>& phi_f,
                                 const std::vector<Rat>& v_g) const;

    EigenSystem f_, g_;
    i64 M1_, N_;
    int k_;
    int threads_;
    std::shared_ptr<const EichlerOrderData> ord_;
    std::shared_ptr<BrandtSystem> bs_f_, bs_g_;
    // realized vectors on the level-N module
    std::vector<std::vector<Rat>> phi_f_; // per class, monomial coeffs
    std::vector<Rat> v_g_;                // per class scalars
};

// Exposed for tests: kernel-weighted pair count for a single connecting
// lattice; kernel coefficients over the degree-nu monomials.
Rat theta_pair_coeff(const QuatAlgebra& A, const ConnectingLattice& L, const Rat& nrd_scale,
                     const std::vector<Rat>& kernel_mono, int nu, const HalfIntMat& T);

// U(p) eigenvalue via exact coefficient ratios a(F,pT)/a(F,T); the builder,
// when given, supplies out-of-range coefficients on demand.
Rat u_p(const SiegelCoeffTable& t, i64 p, const YoshidaBuilder* ctx = nullptr);

// Degree-2 Hecke eigenvalue at q coprime to the level, via the full
// similitude-q coset action on Fourier coefficients.
Rat hecke_tq(const SiegelCoeffTable& t, i64 q, const YoshidaBuilder* ctx = nullptr);

// Spin Euler factor 1 - l(q)X + ... X^4 from eigenvalues l(q), l(q^2).
std::vector<Rat> spin_euler_factor(const SiegelCoeffTable& t, i64 q,
                                   const YoshidaBuilder* ctx = nullptr);

// Calibrated shift s0 such that spin factor = (f factor) * (q^{s0}-shifted
// g factor); nullopt when no shift works.
std::optional<int> calibrate_spin_shift(const std::vector<Rat>& spin, i64 q, const Rat& aqf,
                                        const Rat& aqg, int k);
bool spin_matches_shift(const std::vector<Rat>& spin, i64 q, const Rat& aqf, const Rat& aqg,
                        int k, int s0);

struct JacobiSlice {
    i64 index = 1; // m
    i64 disc_bound = 0;
    std::map<std::pair<i64, i64>, Rat> cmap; // (n, r) -> c(n,r), r any sign
    const Rat& c(i64 n, i64 r) const;
    bool is_zero() const;
};

JacobiSlice fourier_jacobi(const SiegelCoeffTable& t, i64 m);

struct PrimeAnchor {
    i64 p;          // prime not dividing the level
    HalfIntMat Tp;  // (n', r'/2; r'/2, p) with a(F, Tp) != 0
    HalfIntMat T0;  // the primitive matrix it came from
};

PrimeAnchor prime_anchor(const SiegelCoeffTable& t, i64 search_bound = 50);

// Direct-enumeration invariance check on `count` random (T, A) pairs.
void check_gl2_invariance(const YoshidaBuilder& b, const SiegelCoeffTable& t, int count,
                          unsigned seed = 12345);

} // namespace ynv

#endif
