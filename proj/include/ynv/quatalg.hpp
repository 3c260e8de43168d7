#ifndef YNV_QUATALG_HPP
#define YNV_QUATALG_HPP

#include "ynv/linalg.hpp"

#include <array>
#include <vector>

namespace ynv {

// Definite quaternion algebra (a,b / Q), a,b < 0, with basis 1,i,j,k,
// i^2 = a, j^2 = b, ij = k = -ji.
struct QuatAlgebra {
    i64 a = -1, b = -1;
    std::vector<i64> ramified; // finite ramified primes, ascending

    bool definite() const { return a < 0 && b < 0; }
};

// Ramified finite primes of (a,b/Q), from Hilbert symbols at 2 and p | ab.
std::vector<i64> ramified_primes(i64 a, i64 b);

// Smallest Hilbert pair (searched deterministically) ramified exactly at
// the primes of M1 and infinity; requires omega(M1) odd.
QuatAlgebra build_algebra(i64 M1);

// Quaternion with rational coordinates over 1,i,j,k.
struct Quat {
    std::array<Rat, 4> c{};

    Quat() = default;
    Quat(Rat x0, Rat x1, Rat x2, Rat x3) : c{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {}

    static Quat one() { return Quat(1, 0, 0, 0); }
    friend Quat operator+(const Quat& x, const Quat& y);
    friend Quat operator-(const Quat& x, const Quat& y);
    Quat scaled(const Rat& s) const;
};

Quat qmul(const QuatAlgebra& A, const Quat& x, const Quat& y);
Quat qconj(const Quat& x);
Rat qtrd(const Quat& x);
Rat qnrd(const QuatAlgebra& A, const Quat& x);

// Full-rank lattice in the algebra, stored as 4 basis rows (coordinates over
// 1,i,j,k); kept in a canonical HNF-normalized form so equality is literal.
class Lat {
  public:
    Lat() = default;
    // rows = generating vectors (any number >= 4 of rank 4)
    static Lat from_generators(const std::vector<Quat>& gens);

    const std::array<Quat, 4>& basis() const { return basis_; }
    const QMat& basis_matrix() const { return B_; }     // 4x4, rows = basis
    const QMat& basis_inverse() const { return Binv_; } // for membership tests

    bool contains(const Quat& x) const;
    bool contains(const Lat& other) const;
    // index [this : sub] for sub contained in this
    Rat index_in(const Lat& sub) const;
    friend bool operator==(const Lat& x, const Lat& y) { return x.B_ == y.B_; }

    Lat sum(const Lat& other) const;
    Lat scaled(const Rat& s) const;

  private:
    std::array<Quat, 4> basis_;
    QMat B_, Binv_;
};

// Lattice spanned by all products x*y, x in X-basis, y in Y-basis.
Lat lat_mul(const QuatAlgebra& A, const Lat& X, const Lat& Y);
// Lattice spanned by products x * conj(y).
Lat lat_mul_conj(const QuatAlgebra& A, const Lat& X, const Lat& Y);
// Left idealizer {x in B : x J <= J}.
Lat left_idealizer(const QuatAlgebra& A, const Lat& J);
// {x : J x <= J}
Lat right_idealizer(const QuatAlgebra& A, const Lat& J);
// Dual lattice of the row span of a rational matrix of constraints:
// {x : <row_i, x> in Z for all i}.  rows must have rank 4.
Lat dual_of_rowspan(const QMat& rows);

} // namespace ynv

#endif
