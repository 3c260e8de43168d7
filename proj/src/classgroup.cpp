#include "ynv/classgroup.hpp"

#include "ynv/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ynv {

namespace {

// Cyclic decomposition of an abelian group given by a Cayley table:
// returns generators g_j (element indices) and their orders e_j such that
// the product map prod g_j^{k_j} is a bijection.  e_0 is the exponent and
// e_{j+1} | e_j.  Works by recursion on the quotient modulo <g_0>.
struct AbelianBasis {
    std::vector<int> gens;
    std::vector<i64> orders;
};

i64 element_order(const std::vector<std::vector<int>>& cay, int x)
{
    i64 n = 1;
    int y = x;
    while (y != 0) {
        y = cay[y][x];
        ++n;
    }
    return n;
}

int power(const std::vector<std::vector<int>>& cay, int x, i64 e)
{
    int r = 0;
    for (i64 i = 0; i < e; ++i) r = cay[r][x];
    return r;
}

AbelianBasis abelian_basis(const std::vector<std::vector<int>>& cay)
{
    int n = (int)cay.size();
    AbelianBasis out;
    if (n == 1) return out;
    // element of maximal order (= exponent, since the group is abelian and
    // orders here are computed exactly)
    i64 emax = 1;
    int g0 = 0;
    std::vector<i64> ords(n);
    for (int x = 0; x < n; ++x) {
        ords[x] = element_order(cay, x);
        if (ords[x] > emax) {
            emax = ords[x];
            g0 = x;
        }
    }
    // lcm check: for abelian groups max order = exponent
    for (int x = 0; x < n; ++x) {
        if (emax % ords[x] != 0)
            throw error(errc::internal, "abelian_basis: max order is not the exponent");
    }
    out.gens.push_back(g0);
    out.orders.push_back(emax);
    if (emax == n) return out;

    // quotient by <g0>
    std::vector<int> coset(n, -1);
    std::vector<int> reps;
    for (int x = 0; x < n; ++x) {
        if (coset[x] >= 0) continue;
        int rep = (int)reps.size();
        int y = x;
        for (i64 k = 0; k < emax; ++k) {
            coset[y] = rep;
            y = cay[y][g0];
        }
        reps.push_back(x);
    }
    int m = (int)reps.size();
    std::vector<std::vector<int>> qcay(m, std::vector<int>(m));
    // relabel so that the identity coset is 0
    int id_cos = coset[0];
    std::vector<int> relab(m);
    for (int i = 0; i < m; ++i) relab[i] = (i == id_cos) ? 0 : (i < id_cos ? i + 1 : i);
    std::vector<int> reps2(m);
    for (int i = 0; i < m; ++i) reps2[relab[i]] = reps[i];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            qcay[relab[i]][relab[j]] = relab[coset[cay[reps[i]][reps[j]]]];

    AbelianBasis sub = abelian_basis(qcay);
    for (size_t t = 0; t < sub.gens.size(); ++t) {
        i64 e = sub.orders[t];
        int lift = reps2[sub.gens[t]];
        // lift^e lies in <g0>; adjust by g0^{-s/e} to get exact order e
        int p = power(cay, lift, e);
        i64 s = 0;
        int y = 0;
        while (y != p) {
            y = cay[y][g0];
            ++s;
        }
        if (s % e != 0) throw error(errc::internal, "abelian_basis: lift adjustment failed");
        i64 adj = mod64(-(s / e), emax);
        int g = cay[lift][power(cay, g0, adj)];
        out.gens.push_back(g);
        out.orders.push_back(e);
    }
    return out;
}

} // namespace

ClassGroup::ClassGroup(i64 d, bool allow_nonfundamental)
    : d_(Discriminant(d).d)
{
    if (!allow_nonfundamental && !is_fundamental(d))
        throw not_fundamental_error("class_group: -d is not a fundamental discriminant");
    elements_ = reduced_forms(d);
    int n = (int)elements_.size();
    for (int i = 0; i < n; ++i) index_[elements_[i]] = i;
    cayley_.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            QuadForm p = compose(elements_[i], elements_[j]);
            auto it = index_.find(p);
            if (it == index_.end())
                throw error(errc::internal, "class group not closed under composition");
            cayley_[i][j] = cayley_[j][i] = it->second;
        }
    }
    inverse_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (cayley_[i][j] == 0) {
                inverse_[i] = j;
                break;
            }
        }
    }
    AbelianBasis basis = abelian_basis(cayley_);
    gens_ = basis.gens;
    gen_orders_ = basis.orders;
    exponent_ = gen_orders_.empty() ? 1 : gen_orders_[0];
    // decomposition table by direct product enumeration
    decomp_.assign(n, {});
    std::vector<i64> idx(gens_.size(), 0);
    int count = 0;
    while (true) {
        int x = 0;
        for (size_t j = 0; j < gens_.size(); ++j) x = cayley_[x][power(cayley_, gens_[j], idx[j])];
        decomp_[x] = idx;
        ++count;
        size_t j = 0;
        for (; j < gens_.size(); ++j) {
            if (++idx[j] < gen_orders_[j]) break;
            idx[j] = 0;
        }
        if (j == gens_.size()) break;
    }
    if (count != n || (n > 1 && decomp_[1].empty()))
        throw error(errc::internal, "cyclic decomposition is not a bijection");
    if (gens_.empty()) decomp_[0] = {};
    field_ = std::make_shared<CycField>(exponent_);
}

int ClassGroup::index_of(const QuadForm& reduced) const
{
    auto it = index_.find(reduced);
    if (it == index_.end()) throw bad_input_error("form not in class group");
    return it->second;
}

ClassCharacter::ClassCharacter(std::shared_ptr<const ClassGroup> g, std::vector<i64> exps_E,
                               int index)
    : group_(std::move(g)), exps_(std::move(exps_E)), index_(index)
{
    i64 E = group_->exponent();
    order_ = 1;
    for (i64 e : exps_) {
        i64 oe = E / gcd64(E, e == 0 ? E : e);
        order_ = order_ / gcd64(order_, oe) * oe;
    }
}

i64 ClassCharacter::exponent_base_h(int i) const
{
    i64 E = group_->exponent();
    i64 h = group_->h();
    return mod64(exps_[i] * (h / E), h);
}

Cyc ClassCharacter::value(int i) const
{
    return Cyc::root(group_->field(), exps_[i]);
}

Cyc ClassCharacter::value_inv(int i) const
{
    return Cyc::root(group_->field(), -exps_[i]);
}

std::vector<ClassCharacter> characters(std::shared_ptr<const ClassGroup> g)
{
    const auto& gens = g->generators();
    const auto& ords = g->generator_orders();
    i64 E = g->exponent();
    int n = (int)g->h();
    std::vector<std::vector<i64>> exp_vectors;
    std::vector<i64> idx(gens.size(), 0);
    while (true) {
        std::vector<i64> exps(n);
        for (int x = 0; x < n; ++x) {
            const auto& dx = g->decomposition()[x];
            i64 e = 0;
            for (size_t j = 0; j < gens.size(); ++j)
                e = mod64(e + dx[j] * idx[j] * (E / ords[j]), E);
            exps[x] = e;
        }
        exp_vectors.push_back(std::move(exps));
        size_t j = 0;
        for (; j < gens.size(); ++j) {
            if (++idx[j] < ords[j]) break;
            idx[j] = 0;
        }
        if (j == gens.size()) break;
    }
    // canonical order: trivial character first, then lexicographic on the
    // value-exponent vector
    std::sort(exp_vectors.begin(), exp_vectors.end());
    std::vector<ClassCharacter> out;
    out.reserve(exp_vectors.size());
    for (size_t i = 0; i < exp_vectors.size(); ++i)
        out.emplace_back(g, exp_vectors[i], (int)i);
    // record inverse pairing
    for (size_t i = 0; i < out.size(); ++i) {
        std::vector<i64> invv(n);
        for (int x = 0; x < n; ++x) invv[x] = mod64(-out[i].exponent(x), E);
        for (size_t j = 0; j < out.size(); ++j) {
            bool eq = true;
            for (int x = 0; x < n && eq; ++x) eq = (out[j].exponent(x) == invv[x]);
            if (eq) {
                out[i].set_inverse_index((int)j);
                break;
            }
        }
    }
    if ((i64)out.size() != g->h())
        throw error(errc::internal, "character count != h");
    return out;
}

i64 unit_count(i64 d)
{
    if (d == 3) return 6;
    if (d == 4) return 4;
    return 2;
}

std::vector<std::vector<i64>> representation_counts(const ClassGroup& g, i64 nmax)
{
    std::vector<std::vector<i64>> counts(g.h(), std::vector<i64>(nmax + 1, 0));
    i64 d = g.d();
    for (i64 ci = 0; ci < g.h(); ++ci) {
        const QuadForm& f = g.elements()[ci];
        // 4a*f(x,y) = (2ax+by)^2 + d y^2
        i64 ymax = isqrt64(4 * f.a * nmax / d);
        for (i64 y = -ymax; y <= ymax; ++y) {
            // x range: solve a x^2 + (by) x + (c y^2 - nmax) <= 0
            double B = (double)f.b * y;
            double disc = B * B - 4.0 * f.a * ((double)f.c * y * y - (double)nmax);
            if (disc < 0) continue;
            i64 x0 = (i64)((-B - std::sqrt(disc)) / (2.0 * f.a)) - 2;
            i64 x1 = (i64)((-B + std::sqrt(disc)) / (2.0 * f.a)) + 2;
            for (i64 x = x0; x <= x1; ++x) {
                i64 v = f.eval(x, y);
                if (v >= 0 && v <= nmax) counts[ci][v]++;
            }
        }
    }
    return counts;
}

ThetaSeries theta_coeffs(std::shared_ptr<const ClassGroup> g, const ClassCharacter& chi,
                         i64 nmax)
{
    if (nmax < 1) throw bad_input_error("theta_coeffs: nmax must be >= 1");
    auto counts = representation_counts(*g, nmax);
    i64 w = unit_count(g->d());
    ThetaSeries T;
    T.group = g;
    T.chi_index = chi.index();
    T.nmax = nmax;
    T.r.assign(nmax + 1, Cyc::zero(g->field()));
    for (i64 ci = 0; ci < g->h(); ++ci) {
        Cyc val = chi.value((int)ci);
        for (i64 n = 1; n <= nmax; ++n) {
            if (counts[ci][n] == 0) continue;
            if (counts[ci][n] % w != 0)
                throw error(errc::internal, "representation count not divisible by unit count");
            Cyc t = val;
            t *= Rat(counts[ci][n] / w);
            T.r[n] += t;
        }
    }
    return T;
}

int ramified_prime_class(const ClassGroup& g, i64 p)
{
    if (g.d() % p != 0 && !(p == 2 && g.d() % 4 == 0))
        throw bad_input_error("ramified_prime_class: p does not ramify");
    auto counts = representation_counts(g, p);
    for (i64 ci = 0; ci < g.h(); ++ci)
        if (counts[ci][p] > 0) return (int)ci;
    throw error(errc::internal, "no class represents the ramified prime");
}

} // namespace ynv
