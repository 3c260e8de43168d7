#ifndef YNV_ORDER_HPP
#define YNV_ORDER_HPP

#include "ynv/quatalg.hpp"

#include <map>

namespace ynv {

// Integer Gram data for a 4-dim lattice with an integer-valued positive
// quadratic form q(v) = v^T G v / 2 (G = even-diagonal polar matrix).
struct GramLattice {
    std::array<std::array<i64, 4>, 4> G{};

    i64 q(const std::array<i64, 4>& v) const;
    i64 polar(const std::array<i64, 4>& u, const std::array<i64, 4>& v) const; // u^T G v
};

// LLL-reduce the Gram matrix (exact); U holds the unimodular change of basis
// with G' = U G U^T.
GramLattice lll_gram(const GramLattice& G, std::array<std::array<i64, 4>, 4>& U);

// All v (up to sign: first nonzero coordinate positive) with q(v) == n,
// deterministic order.  half=false enumerates both signs.
std::vector<std::array<i64, 4>> short_vectors(const GramLattice& L, i64 n, bool half = true);
// counts[n] = #vectors with q(v) = n, 0 <= n <= bound (both signs counted).
std::vector<i64> theta_counts(const GramLattice& L, i64 bound);

struct Order {
    QuatAlgebra A;
    Lat lattice;

    i64 discrd() const;
    bool is_order() const; // contains 1, closed, integral trd/nrd
};

// Ring closure of the lattice generated by gens (must stabilize).
Lat ring_closure(const QuatAlgebra& A, std::vector<Quat> gens, int max_iter = 32);

// Radical of O/pO, returned as the preimage lattice J (pO + lifted radical).
Lat radical_preimage(const Order& O, i64 p);

// Hereditary order of reduced discriminant N in the algebra ramified at M1;
// Eichler of level p at p | N/M1, maximal elsewhere.  N squarefree, M1 | N.
Order eichler_order_lattice(const QuatAlgebra& A, i64 N);

// A right ideal of a fixed Eichler order, with tracked reduced norm.
struct RightIdeal {
    Lat lattice;
    Rat nrd;      // exact reduced norm
    Lat left_order;
    i64 units = 0; // |O_l(I)^x|
};

struct EichlerOrderData {
    QuatAlgebra A;
    i64 level = 1; // N = reduced discriminant
    Order order;
    std::vector<RightIdeal> ideal_classes;
    std::vector<i64> unit_halves; // e_i = |O_l(I_i)^x| / 2
    Rat mass;                     // closed-form Eichler mass (sum 1/|O_i^x|)
};

Rat eichler_mass(i64 M1, i64 N); // (D*M/24) prod(1-1/p) prod(1+1/p)

// Full right ideal class enumeration with mass-formula certificate.
EichlerOrderData eichler_order(const QuatAlgebra& A, i64 N);

// Integer Gram of nrd on a lattice scaled by 1/scale (entries must be
// integral; throws otherwise).
GramLattice gram_of(const QuatAlgebra& A, const Lat& L, const Rat& scale);

// Are I, J isomorphic as right ideals? (min of normalized nrd on I*conj(J)
// equals 1).  Both must be ideals of the same order with tracked nrd.
bool ideals_isomorphic(const QuatAlgebra& A, const RightIdeal& I, const RightIdeal& J);

// Lifts of matrix units e11, e21 of a splitting O/pO = M2(F_p), p coprime to
// the discriminant of the order.  The right ideals of M2(F_p) are the
// column-space families (u e11 + v e21) M2, (u : v) in P^1.
struct SplitData {
    Quat e11, e21;
};
SplitData split_order_mod_p(const Order& O, i64 p);

} // namespace ynv

#endif
