#include "ynv/cyclotomic.hpp"

#include "ynv/errors.hpp"

#include <cmath>
#include <sstream>

namespace ynv {

namespace {

// Exact division of integer polynomials (ascending coeffs); remainder must
// vanish, which holds for x^n - 1 divided by products of cyclotomics.
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den)
{
    int dn = (int)num.size() - 1;
    int dd = (int)den.size() - 1;
    std::vector<Int> q(dn - dd + 1);
    for (int k = dn - dd; k >= 0; --k) {
        Int c = num[k + dd] / den[dd];
        q[k] = c;
        for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    for (const Int& c : num)
        if (c != 0) throw error(errc::internal, "poly_divide_exact: nonzero remainder");
    return q;
}

} // namespace

std::vector<Int> cyclotomic_polynomial(i64 n)
{
    std::vector<Int> poly(n + 1);
    poly[0] = -1;
    poly[n] = 1; // x^n - 1
    for (i64 d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        poly = poly_divide_exact(poly, cyclotomic_polynomial(d));
    }
    return poly;
}

CycField::CycField(i64 E) : E_(E)
{
    if (E < 1) throw bad_input_error("cyclotomic order must be >= 1");
    phi_ = cyclotomic_polynomial(E);
    deg_ = (int)phi_.size() - 1;
    // powers_[k] = coords of zeta^k; computed by repeated shift + reduction
    powers_.resize(E);
    std::vector<Rat> cur(deg_);
    if (deg_ == 0) throw error(errc::internal, "degenerate cyclotomic field");
    cur[0] = 1;
    powers_[0] = cur;
    for (i64 k = 1; k < E; ++k) {
        // multiply by x
        std::vector<Rat> nxt(deg_);
        Rat top = cur[deg_ - 1];
        for (int i = deg_ - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0) {
            for (int i = 0; i < deg_; ++i) nxt[i] -= top * Rat(phi_[i]);
        }
        powers_[k] = nxt;
        cur = nxt;
    }
}

const std::vector<Rat>& CycField::power(i64 k) const
{
    return powers_[mod64(k, E_)];
}

Cyc Cyc::integer(const CycField& F, const Rat& v)
{
    Cyc z(F);
    z.c_[0] = v;
    return z;
}

Cyc Cyc::root(const CycField& F, i64 k)
{
    Cyc z(F);
    z.c_ = F.power(k);
    return z;
}

bool Cyc::is_zero() const
{
    if (!F_) return true;
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyc::is_rational(Rat* value) const
{
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    if (value) *value = c_.empty() ? Rat(0) : c_[0];
    return true;
}

Cyc& Cyc::operator+=(const Cyc& o)
{
    if (!F_) return *this = o;
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o)
{
    if (!F_) {
        Cyc z(o.field());
        return *this = (z -= o);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyc operator*(const Cyc& a, const Cyc& b)
{
    const CycField& F = a.field();
    int d = F.degree();
    Cyc out(F);
    // convolve, reducing powers >= d via precomputed tables
    std::vector<Rat> conv(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c_[j] == 0) continue;
            conv[i + j] += a.c_[i] * b.c_[j];
        }
    }
    for (int k = 0; k < (int)conv.size(); ++k) {
        if (conv[k] == 0) continue;
        if (k < d) {
            out.c_[k] += conv[k];
        } else {
            const std::vector<Rat>& pk = F.power(k);
            for (int i = 0; i < d; ++i) out.c_[i] += conv[k] * pk[i];
        }
    }
    return out;
}

Cyc& Cyc::operator*=(const Rat& r)
{
    for (Rat& x : c_) x *= r;
    return *this;
}

bool operator==(const Cyc& a, const Cyc& b)
{
    Cyc d = a;
    d -= b;
    return d.is_zero();
}

Cyc Cyc::conj() const
{
    const CycField& F = *F_;
    Cyc out(F);
    for (int i = 0; i < F.degree(); ++i) {
        if (c_[i] == 0) continue;
        const std::vector<Rat>& p = F.power(-(i64)i);
        for (int j = 0; j < F.degree(); ++j) out.c_[j] += c_[i] * p[j];
    }
    return out;
}

Cyc Cyc::norm_sq() const
{
    return (*this) * conj();
}

std::complex<double> Cyc::to_complex() const
{
    if (!F_) return {0.0, 0.0};
    std::complex<double> z(0, 0);
    double t = 2.0 * M_PI / (double)F_->order();
    for (int i = 0; i < F_->degree(); ++i) {
        if (c_[i] == 0) continue;
        double v = (double)c_[i];
        z += v * std::complex<double>(std::cos(t * i), std::sin(t * i));
    }
    return z;
}

std::string Cyc::str() const
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i];
        if (i >= 1) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

} // namespace ynv
