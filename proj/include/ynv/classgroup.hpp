#ifndef YNV_CLASSGROUP_HPP
#define YNV_CLASSGROUP_HPP

#include "ynv/cyclotomic.hpp"
#include "ynv/quadform.hpp"

#include <map>
#include <memory>
#include <vector>

namespace ynv {

// The form class group Cl_K of K = Q(sqrt(-d)), with its Cayley table and a
// cyclic decomposition used to build the character group.
class ClassGroup {
  public:
    // Requires -d fundamental unless allow_nonfundamental (testing only).
    explicit ClassGroup(i64 d, bool allow_nonfundamental = false);

    i64 d() const { return d_; }
    i64 h() const { return (i64)elements_.size(); }
    i64 exponent() const { return exponent_; }
    const std::vector<QuadForm>& elements() const { return elements_; }
    const std::vector<std::vector<int>>& cayley() const { return cayley_; }

    int index_of(const QuadForm& reduced) const;
    int mul(int i, int j) const { return cayley_[i][j]; }
    int inv(int i) const { return inverse_[i]; }
    int identity() const { return 0; }

    // cyclic decomposition: element i = prod_j gen_j^{decomp_[i][j]}
    const std::vector<int>& generators() const { return gens_; }
    const std::vector<i64>& generator_orders() const { return gen_orders_; }
    const std::vector<std::vector<i64>>& decomposition() const { return decomp_; }

    const CycField& field() const { return *field_; }

  private:
    i64 d_;
    std::vector<QuadForm> elements_;
    std::map<QuadForm, int> index_;
    std::vector<std::vector<int>> cayley_;
    std::vector<int> inverse_;
    i64 exponent_ = 1;
    std::vector<int> gens_;
    std::vector<i64> gen_orders_;
    std::vector<std::vector<i64>> decomp_;
    std::shared_ptr<CycField> field_;
};

class ClassCharacter {
  public:
    ClassCharacter(std::shared_ptr<const ClassGroup> g, std::vector<i64> exps_E, int index);

    const ClassGroup& group() const { return *group_; }
    int index() const { return index_; }
    i64 order() const { return order_; }
    bool trivial() const { return order_ == 1; }
    bool real() const { return order_ <= 2; } // chi^2 = 1

    // exponent k with chi(element i) = zeta_E^k
    i64 exponent(int i) const { return exps_[i]; }
    // same value written to base zeta_h (spec JSON encoding)
    i64 exponent_base_h(int i) const;
    Cyc value(int i) const;
    Cyc value_inv(int i) const;

    // index of the inverse character in the canonical character list
    int inverse_index() const { return inverse_index_; }
    void set_inverse_index(int k) { inverse_index_ = k; }

  private:
    std::shared_ptr<const ClassGroup> group_;
    std::vector<i64> exps_;
    int index_;
    i64 order_;
    int inverse_index_ = -1;
};

// All h characters; index 0 is trivial; exact cyclotomic values.
std::vector<ClassCharacter> characters(std::shared_ptr<const ClassGroup> g);

// Weight-1 theta series attached to an ideal class character.
struct ThetaSeries {
    std::shared_ptr<const ClassGroup> group;
    int chi_index;
    i64 nmax;
    std::vector<Cyc> r; // r[n] for 1 <= n <= nmax; r[0] unused

    const Cyc& coeff(i64 n) const { return r[n]; }
};

// Per-class representation counts: counts[cls][n] = #{(x,y) : f_cls(x,y)=n}
// for 0 <= n <= nmax.
std::vector<std::vector<i64>> representation_counts(const ClassGroup& g, i64 nmax);

i64 unit_count(i64 d); // 6, 4 or 2

ThetaSeries theta_coeffs(std::shared_ptr<const ClassGroup> g, const ClassCharacter& chi,
                         i64 nmax);

// Class of the unique prime ideal above a ramified prime p | d.
int ramified_prime_class(const ClassGroup& g, i64 p);

} // namespace ynv

#endif
