#ifndef YNV_LINALG_HPP
#define YNV_LINALG_HPP

#include "ynv/arith.hpp"

#include <vector>

namespace ynv {

// Small dense exact matrices; rows-major.  Sizes here are tiny (<= ~40), so
// simplicity wins over asymptotics.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(r * c) {}
    Rat& at(int i, int j) { return a[i * cols + j]; }
    const Rat& at(int i, int j) const { return a[i * cols + j]; }

    static QMat identity(int n);
    QMat transpose() const;
    friend QMat operator*(const QMat& x, const QMat& y);
    friend QMat operator+(const QMat& x, const QMat& y);
    friend QMat operator-(const QMat& x, const QMat& y);
    friend bool operator==(const QMat& x, const QMat& y) = default;
    QMat scaled(const Rat& s) const;
    bool is_zero() const;
};

Rat det(const QMat& m);
QMat inverse(const QMat& m); // throws on singular
// Reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMat& m);
// Basis of the kernel {x : m x = 0}, as columns of the returned matrix.
QMat kernel(const QMat& m);
// Solve m x = b (m square, invertible).
std::vector<Rat> solve(const QMat& m, const std::vector<Rat>& b);
// Characteristic polynomial, ascending coefficients (Faddeev-LeVerrier).
std::vector<Rat> charpoly(const QMat& m);

// Hermite normal form of the row span of an integer matrix (full column
// rank n expected): returns n x n upper-triangular basis with positive
// diagonal and entries above each pivot reduced.
struct IMat {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(r * c) {}
    Int& at(int i, int j) { return a[i * cols + j]; }
    const Int& at(int i, int j) const { return a[i * cols + j]; }
};

IMat hnf_rowspan(const IMat& m);

} // namespace ynv

#endif
