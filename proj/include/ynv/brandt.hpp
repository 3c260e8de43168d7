#ifndef YNV_BRANDT_HPP
#define YNV_BRANDT_HPP

#include "ynv/order.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace ynv {

// Harmonic polynomials of degree nu in the trace-zero coordinates (over i,j,k),
// harmonic with respect to the reduced norm form.
struct HarmonicSpace {
    int nu = 0;
    std::vector<std::array<int, 3>> monomials; // exponent triples, degree nu
    QMat basis;      // #monomials x dim, columns = harmonic basis polynomials
    QMat basis_linv; // dim x #monomials, left inverse of basis
    QMat pairing;    // #monomials x #monomials, invariant (apolar) pairing

    int dim() const { return basis.cols; }
};

HarmonicSpace harmonic_space(const QuatAlgebra& A, int nu);

// Integer data of the connecting lattice I_i * conj(I_j), normalized so that
// the reduced norm is integer valued with minimum 1 on unit elements.
struct ConnectingLattice {
    GramLattice gram;                          // polar matrix of normalized nrd
    std::array<std::array<i64, 4>, 4> basis;   // den * (lattice basis), integer quat coords
    i64 den = 1;                               // common denominator of the true basis
};

class BrandtSystem {
  public:
    BrandtSystem(std::shared_ptr<const EichlerOrderData> ord, int weight);

    const EichlerOrderData& order() const { return *ord_; }
    std::shared_ptr<const EichlerOrderData> order_ptr() const { return ord_; }
    int weight() const { return weight_; }
    int nu() const { return (weight_ - 2) / 2; }
    int classnumber() const { return (int)ord_->ideal_classes.size(); }
    const HarmonicSpace& harmonics() const { return harm_; }
    const ConnectingLattice& connecting(int i, int j) const { return conn_[i * classnumber() + j]; }

    // Hecke operator matrix on the weight-w Brandt module: h x h for w = 2,
    // otherwise on the invariant subspace basis (module_dim x module_dim).
    const QMat& matrix(i64 n);
    int module_dim() const { return module_dim_; }
    // class index and harmonic-coefficient layout of the module basis
    const std::vector<QMat>& invariant_bases() const { return inv_basis_; }

    // mass pairing on the module (diagonal for w=2: 1/e_i)
    const QMat& pairing() const { return pairing_; }

  private:
    QMat compute_matrix(i64 n) const;

    std::shared_ptr<const EichlerOrderData> ord_;
    int weight_;
    HarmonicSpace harm_;
    std::vector<ConnectingLattice> conn_;
    std::vector<QMat> inv_basis_; // per class: #monomials x dim_i
    int module_dim_ = 0;
    QMat pairing_;
    std::map<i64, QMat> cache_;
};

struct EigenSystem {
    int weight = 2;
    i64 level = 1;
    int index = 0;
    bool cuspidal = true;
    std::vector<Rat> vec;              // coordinates on the Brandt module basis
    std::vector<std::vector<Rat>> phi; // per class: harmonic poly coeffs over monomials
    std::map<i64, Rat> hecke;          // q -> a_q, primes stored during splitting
    std::map<i64, int> al_signs;       // p | level -> +-1 where defined

    std::string label() const; // "<level>.<weight>.<index>"
};

// Components that could not be split over Q within qmax.
struct IrrationalBlock {
    int dim;
    std::string charpoly_factors;
};

struct EigenDecomposition {
    std::vector<EigenSystem> systems;           // rational ones, cuspidal first
    std::vector<IrrationalBlock> irrational;
};

EigenDecomposition eigensystems(BrandtSystem& bs, i64 qmax);

// a_q for all primes q <= nmax with q coprime to the level, computed from the
// eigensystem by a single Brandt-row evaluation per prime.
std::map<i64, Rat> hecke_prime_values(BrandtSystem& bs, const EigenSystem& es, i64 nmax);

// Rational vectors spanning the isotypic component of an eigensystem inside a
// (possibly larger-level) Brandt module: kernel of prod_q (B(q) - a_q).
std::vector<std::vector<Rat>> isotypic_component(BrandtSystem& bs,
                                                 const std::map<i64, Rat>& prime_values,
                                                 const std::vector<i64>& probe_primes);

struct PairCandidate {
    EigenSystem f, g;
    i64 N1 = 1, N2 = 1;
    i64 M = 1;
    std::vector<i64> admissible_M1;
};

// Scan over squarefree levels N1, N2 <= level_bound for admissible pairs
// (weights (2k, 2), matching Atkin-Lehner signs on gcd, rational, f != g).
std::vector<PairCandidate> select_pair(int k, i64 level_bound, bool allow_k1 = false);

// Newform-type rational eigensystems of exact squarefree level L and weight w.
std::vector<EigenSystem> newform_candidates(int w, i64 L);

} // namespace ynv

#endif
