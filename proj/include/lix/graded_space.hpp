#pragma once

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lix/rational.hpp"

namespace lix {

// Symbolic infinity for filtration weights (the weight of the zero element).
inline constexpr int kWeightInfinity = std::numeric_limits<int>::max();

std::string weight_str(int w);  // "inf" for kWeightInfinity

struct BasisVector {
    std::string id;
    int degree = 0;  // cohomological degree, shifted convention
    int weight = 1;  // filtration weight, >= 1
};

/* Finite-dimensional graded vector space with a basis-aligned descending
 * filtration F_p = span{ b : b.weight >= p }. F_1 is the whole space and
 * F_N = 0 for N = nilpotencyBound. */
class GradedSpace {
public:
    explicit GradedSpace(std::vector<BasisVector> basis);

    int dim() const { return static_cast<int>(basis_.size()); }
    const BasisVector& at(int i) const { return basis_[i]; }
    const std::vector<BasisVector>& basis() const { return basis_; }
    int nilpotency_bound() const { return nilpotency_bound_; }

    int index_of(const std::string& id) const;  // -1 when absent
    bool has_id(const std::string& id) const { return index_of(id) >= 0; }

    // Basis indices sorted by (weight, index); used for weight-pruned
    // tuple enumeration.
    const std::vector<int>& indices_by_weight() const { return by_weight_; }

    // All degrees d with at least one basis vector, ascending.
    std::vector<int> occupied_degrees() const;

private:
    std::vector<BasisVector> basis_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> by_weight_;
    int nilpotency_bound_ = 1;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr build_space(std::vector<BasisVector> basis);

/* Sparse element: basis index -> nonzero coefficient. Zero coefficients are
 * never stored. Immutable by convention; all operations return new values. */
class Element {
public:
    Element() = default;
    explicit Element(SpacePtr space) : space_(std::move(space)) {}

    static Element basis(const SpacePtr& space, int index, Rational coeff = Rational(1));
    static Element zero(const SpacePtr& space) { return Element(space); }

    const SpacePtr& space() const { return space_; }
    const std::map<int, Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Rational coeff(int index) const;
    void set_coeff(int index, const Rational& r);  // erases on zero
    void add_coeff(int index, const Rational& r);

    friend bool operator==(const Element& a, const Element& b);

private:
    SpacePtr space_;
    std::map<int, Rational> c_;
};

Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Rational& c, const Element& x);
Element neg(const Element& x);

// Keeps exactly the support with weight >= p.
Element proj_filtration(const Element& x, int p);
// Keeps exactly the support in cohomological degree d.
Element proj_degree(const Element& x, int d);

// max{ p : x in F_p }; kWeightInfinity for x = 0.
int filtration_weight(const Element& x);

// Degree of a homogeneous element; throws WrongDegree on mixed support.
// Zero is homogeneous of every degree; `fallback` is returned for it.
int homogeneous_degree(const Element& x, int fallback = 0);
bool is_homogeneous_of_degree(const Element& x, int d);

/* Column-sparse linear map between graded spaces, homogeneous of degree
 * `degree_shift`. Columns keyed by domain basis index. */
struct LinearMap {
    SpacePtr domain;
    SpacePtr codomain;
    int degree_shift = 0;
    std::map<int, Element> columns;

    Element apply(const Element& x) const;
    Element apply_basis(int index) const;
    bool is_zero() const { return columns.empty(); }
    void set_column(int index, const Element& value);  // drops zero columns
};

LinearMap compose(const LinearMap& f, const LinearMap& g);  // f after g

// Per-degree dimension of ker d / im d for a degree +1 differential.
// Throws NotADifferential when d has the wrong shift or d(d(b)) != 0.
std::map<int, int> compute_cohomology(const SpacePtr& space, const LinearMap& d);

}  // namespace lix
