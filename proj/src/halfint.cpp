#include "ynv/halfint.hpp"

#include "ynv/errors.hpp"

#include <cmath>

namespace ynv {

const Rat& HalfIntSeries::coeff(i64 m) const
{
    auto it = c.find(m);
    if (it == c.end()) throw depth_exceeded_error("half-integral coefficient beyond xmax");
    return it->second;
}

HalfIntSeries extract_h(const JacobiSlice& slice, i64 xmax, int table_weight, i64 level)
{
    i64 p = slice.index;
    if (!is_prime(p)) throw bad_input_error("extract_h: slice index must be prime");
    if (level % p == 0) throw bad_input_error("extract_h: slice index divides the level");
    if (xmax > slice.disc_bound)
        throw depth_exceeded_error("extract_h: xmax exceeds the table disc bound");
    HalfIntSeries h;
    h.weight_num = 2 * table_weight - 1;
    h.level = 4 * p * level;
    h.p = p;
    h.xmax = xmax;
    for (i64 m = 1; m <= xmax; ++m) {
        Rat sum = 0;
        for (i64 mu = 0; mu <= 2 * p - 1; ++mu) {
            if (mod64(mu * mu + m, 4 * p) != 0) continue;
            i64 n = (m + mu * mu) / (4 * p);
            if (n <= 0) continue;
            // fold mu into the stored band |r| <= p: r = mu or mu - 2p
            i64 r = (mu <= p) ? mu : mu - 2 * p;
            i64 nn = (m + r * r) / (4 * p);
            sum += slice.c(nn, r);
        }
        h.c[m] = sum;
    }
    return h;
}

Rat h_coeff_from_table(const SiegelCoeffTable& t, i64 p, i64 m)
{
    Rat sum = 0;
    for (i64 mu = 0; mu <= 2 * p - 1; ++mu) {
        if (mod64(mu * mu + m, 4 * p) != 0) continue;
        i64 n = (m + mu * mu) / (4 * p);
        if (n <= 0) continue;
        sum += t.value(HalfIntMat(n, mu, p));
    }
    return sum;
}

std::vector<double> normalize(const HalfIntSeries& s)
{
    // weight kappa + 1/2 with kappa = (weight_num - 1)/2
    double kappa = (s.weight_num - 1) / 2.0;
    std::vector<double> out(s.xmax + 1, 0.0);
    for (const auto& [m, v] : s.c)
        out[m] = (double)v * std::pow((double)m, 0.25 - kappa / 2.0);
    return out;
}

double growth_exponent(const HalfIntSeries& s)
{
    auto a = normalize(s);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (i64 m = 1; m <= s.xmax; ++m) {
        if (a[m] == 0.0) continue;
        double x = std::log((double)m), y = std::log(std::fabs(a[m]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScanReport fundamental_scan(const HalfIntSeries& s, const SiegelCoeffTable& t, i64 X)
{
    if (X > s.xmax) throw depth_exceeded_error("fundamental_scan: X exceeds xmax");
    ScanReport rep;
    rep.X = X;
    i64 p = s.p;
    for (i64 d = 1; d <= X; d += 2) {
        if (!is_squarefree(d)) continue;
        auto it = s.c.find(d);
        if (it == s.c.end() || it->second == 0) continue;
        rep.hits.push_back(d);
        // witness: a single nonzero mu-summand if one exists
        bool found = false;
        for (i64 mu = 0; mu <= 2 * p - 1 && !found; ++mu) {
            if (mod64(mu * mu + d, 4 * p) != 0) continue;
            i64 n = (d + mu * mu) / (4 * p);
            if (n <= 0) continue;
            HalfIntMat S(n, mu, p);
            if (t.value(S) != 0) {
                rep.witness[d] = S;
                found = true;
            }
        }
        if (!found) {
            // cancellation-free recovery: scan reduced matrices of disc -d
            for (const auto& [T, v] : t.coeffs) {
                if (-T.disc() == d && v != 0) {
                    rep.witness[d] = T;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw error(errc::internal, "nonzero c(d) without a nonzero table witness");
    }
    return rep;
}

Thm3Check check_thm3_hypotheses(i64 level, const std::map<i64, bool>& chi_trivial)
{
    if (level % 4 != 0)
        throw not_divisible_by_4_error("check_thm3_hypotheses: level must be divisible by 4");
    auto trivial_at = [&](i64 q) {
        auto it = chi_trivial.find(q);
        return it == chi_trivial.end() ? true : it->second;
    };
    Thm3Check out;
    out.ok = true;
    if (level % 16 == 0) {
        out.ok = false;
        out.reasons.push_back("16 divides the level");
    } else if (level % 8 == 0 && !trivial_at(2)) {
        out.ok = false;
        out.reasons.push_back("8 divides the level but chi_2 is nontrivial");
    }
    for (i64 q : prime_factors(level)) {
        if (q == 2) continue;
        if (level % (q * q * q) == 0) {
            out.ok = false;
            out.reasons.push_back("level divisible by the cube of " + std::to_string(q));
        } else if (level % (q * q) == 0 && trivial_at(q)) {
            out.ok = false;
            out.reasons.push_back("square of " + std::to_string(q) +
                                  " divides the level with trivial local character");
        }
    }
    return out;
}

} // namespace ynv
