#ifndef YNV_CYCLOTOMIC_HPP
#define YNV_CYCLOTOMIC_HPP

#include "ynv/arith.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace ynv {

// The field Q(zeta_E), realized as Q[x]/Phi_E(x).  Elements carry exact
// rational coordinates in the power basis 1, zeta, ..., zeta^{deg-1}, so
// zero-tests are exact.
class CycField {
  public:
    explicit CycField(i64 E);

    i64 order() const { return E_; }
    int degree() const { return deg_; }
    const std::vector<Int>& cyclotomic_poly() const { return phi_; }

    // Coordinates of zeta^k (any k, reduced mod E) in the power basis.
    const std::vector<Rat>& power(i64 k) const;

  private:
    i64 E_;
    int deg_;
    std::vector<Int> phi_;                  // monic, ascending degree
    std::vector<std::vector<Rat>> powers_;  // zeta^k for 0 <= k < E
};

// Integer coefficients of Phi_n, ascending.
std::vector<Int> cyclotomic_polynomial(i64 n);

class Cyc {
  public:
    Cyc() : F_(nullptr) {}
    explicit Cyc(const CycField& F) : F_(&F), c_(F.degree()) {}

    static Cyc zero(const CycField& F) { return Cyc(F); }
    static Cyc integer(const CycField& F, const Rat& v);
    static Cyc root(const CycField& F, i64 k); // zeta^k

    const CycField& field() const { return *F_; }
    bool is_zero() const;
    bool is_rational(Rat* value = nullptr) const;

    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);
    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    Cyc& operator*=(const Rat& r);
    friend bool operator==(const Cyc& a, const Cyc& b);

    Cyc conj() const;            // complex conjugation (zeta -> zeta^{-1})
    Cyc norm_sq() const;         // z * conj(z)
    std::complex<double> to_complex() const;

    const std::vector<Rat>& coords() const { return c_; }
    std::string str() const;     // "c0 + c1*z + ..." for reports

  private:
    const CycField* F_;
    std::vector<Rat> c_;
};

} // namespace ynv

#endif
