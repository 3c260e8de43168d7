#include "ynv/linalg.hpp"

#include "ynv/errors.hpp"

namespace ynv {

QMat QMat::identity(int n)
{
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::transpose() const
{
    QMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat operator*(const QMat& x, const QMat& y)
{
    QMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

QMat operator+(const QMat& x, const QMat& y)
{
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

QMat operator-(const QMat& x, const QMat& y)
{
    QMat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

QMat QMat::scaled(const Rat& s) const
{
    QMat r = *this;
    for (auto& v : r.a) v *= s;
    return r;
}

bool QMat::is_zero() const
{
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

Rat det(const QMat& m)
{
    QMat w = m;
    int n = w.rows;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (w.at(r, c) != 0) {
                p = r;
                break;
            }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(w.at(p, j), w.at(c, j));
            d = -d;
        }
        d *= w.at(c, c);
        Rat inv = Rat(1) / w.at(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (w.at(r, c) == 0) continue;
            Rat f = w.at(r, c) * inv;
            for (int j = c; j < n; ++j) w.at(r, j) -= f * w.at(c, j);
        }
    }
    return d;
}

std::vector<int> rref(QMat& m)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = Rat(1) / m.at(r, c);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

QMat kernel(const QMat& m)
{
    QMat w = m;
    std::vector<int> piv = rref(w);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv) is_piv[c] = true;
    int k = m.cols - (int)piv.size();
    QMat K(m.cols, k);
    int col = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_piv[c]) continue;
        K.at(c, col) = 1;
        for (size_t r = 0; r < piv.size(); ++r) K.at(piv[r], col) = -w.at((int)r, c);
        ++col;
    }
    return K;
}

QMat inverse(const QMat& m)
{
    int n = m.rows;
    QMat w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
        w.at(i, n + i) = 1;
    }
    std::vector<int> piv = rref(w);
    for (int i = 0; i < n; ++i)
        if ((int)piv.size() <= i || piv[i] != i) throw error(errc::internal, "singular matrix");
    QMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = w.at(i, n + j);
    return r;
}

std::vector<Rat> solve(const QMat& m, const std::vector<Rat>& b)
{
    QMat inv = inverse(m);
    std::vector<Rat> x(m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) x[i] += inv.at(i, j) * b[j];
    return x;
}

std::vector<Rat> charpoly(const QMat& m)
{
    // Faddeev-LeVerrier: x^n + c_{n-1} x^{n-1} + ... + c_0
    int n = m.rows;
    QMat M(n, n);
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    QMat I = QMat::identity(n);
    for (int k = 1; k <= n; ++k) {
        M = m * M + I.scaled(c[n - k + 1]);
        QMat AM = m * M;
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += AM.at(i, i);
        c[n - k] = -tr / k;
    }
    return c;
}

IMat hnf_rowspan(const IMat& m)
{
    IMat w = m;
    int rows = w.rows, cols = w.cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (w.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(w.at(p, j), w.at(r, j));
        for (int i = r + 1; i < rows; ++i) {
            while (w.at(i, c) != 0) {
                Int q = w.at(r, c) / w.at(i, c);
                for (int j = 0; j < cols; ++j) w.at(r, j) -= q * w.at(i, j);
                for (int j = 0; j < cols; ++j) std::swap(w.at(r, j), w.at(i, j));
            }
        }
        if (w.at(r, c) < 0)
            for (int j = 0; j < cols; ++j) w.at(r, j) = -w.at(r, j);
        ++r;
    }
    std::vector<int> pivcol;
    for (int i = 0; i < r; ++i) {
        int c = 0;
        while (c < cols && w.at(i, c) == 0) ++c;
        pivcol.push_back(c);
    }
    // reduce entries above each pivot, left to right, so later reductions
    // never disturb already-canonical columns
    for (int i = 0; i < (int)pivcol.size(); ++i) {
        int c = pivcol[i];
        for (int k = 0; k < i; ++k) {
            if (w.at(k, c) == 0) continue;
            Int q = w.at(k, c) / w.at(i, c);
            if (w.at(k, c) - q * w.at(i, c) < 0) q -= 1;
            if (q != 0)
                for (int j = 0; j < cols; ++j) w.at(k, j) -= q * w.at(i, j);
        }
    }
    IMat out(r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = w.at(i, j);
    return out;
}

} // namespace ynv
