#pragma once

#include <map>
#include <string>
#include <vector>

#include "lix/graded_space.hpp"
#include "lix/koszul.hpp"

namespace lix {

/* Symmetric multilinear brackets mu_0..mu_maxArity of degree +1 (shifted
 * convention), stored sparsely on index-sorted basis tuples. Symmetry is a
 * storage normal form; evaluation on unsorted tuples reconstructs the
 * Koszul sign. The arity-0 entry (empty tuple) is the curvature. */
class BracketSet {
public:
    BracketSet() = default;
    explicit BracketSet(int max_arity) : max_arity_(max_arity) {}

    int max_arity() const { return max_arity_; }

    // `args` need not be sorted: the value is normalized onto the sorted
    // key with the Koszul sign of the sort. Storing a nonzero entry on a
    // tuple with a repeated odd-degree vector throws (that symmetric word
    // is zero).
    void set_entry(const SpacePtr& space, std::vector<int> args, Element value);

    // Value on an index-sorted tuple; zero element when absent.
    Element entry(const SpacePtr& space, const std::vector<int>& sorted_args) const;

    const std::map<std::vector<int>, Element>& entries(int arity) const;
    std::vector<int> arities_present() const;

private:
    int max_arity_ = 0;
    std::map<int, std::map<std::vector<int>, Element>> entries_;
    static const std::map<std::vector<int>, Element> kEmpty;
};

struct CurvedAlgebra {
    SpacePtr space;
    BracketSet brackets;

    const Element curvature() const { return brackets.entry(space, {}); }
};

/* Multilinear graded-symmetric evaluation of mu_n on general elements.
 * n > maxArity gives zero. Throws ArityMismatch when |args| != n. */
Element eval_bracket(const CurvedAlgebra& alg, int n, const std::vector<Element>& args);

// Evaluation on a basis tuple (any order).
Element eval_bracket_basis(const CurvedAlgebra& alg, const std::vector<int>& args);

struct RelationViolation {
    int n = 0;
    std::vector<int> tuple;  // basis indices, sorted
    Element defect;
};

struct RelationReport {
    std::vector<RelationViolation> violations;
    // Relations for n > vacuous_above hold for structural reasons and were
    // not enumerated (weight nilpotency when the brackets are filtration
    // compatible, bracket arity bounds otherwise).
    int vacuous_above = 0;
    int checked_up_to = 0;
    bool filtration_compatible = false;

    bool pass() const { return violations.empty(); }
};

/* Evaluates the curved relation sum over (i,j)-unshuffles for every n up to
 * maxRelationArity on every sorted basis tuple that can carry a nonzero
 * defect. Violations are data, not errors. */
RelationReport check_relations(const CurvedAlgebra& alg, int max_relation_arity);

struct FiltrationViolation {
    int arity = 0;
    std::vector<int> tuple;
    int value_weight = 0;
    int required_weight = 0;
};

struct FiltrationReport {
    std::vector<FiltrationViolation> violations;
    bool pass() const { return violations.empty(); }
};

// Weight additivity of every stored entry: weight(value) >= sum of argument
// weights (>= 1 for the curvature).
FiltrationReport check_filtration_compatibility(const CurvedAlgebra& alg);

// Every entry homogeneous of degree (argument degree sum) + 1. Stored
// entries are allowed to violate this so the checkers can diagnose broken
// inputs; valid algebras satisfy it.
struct DegreeViolation {
    int arity = 0;
    std::vector<int> tuple;
};
std::vector<DegreeViolation> check_degree_homogeneity(const CurvedAlgebra& alg);

// M(x) = sum_k 1/k! mu_k(x,..,x) for homogeneous degree-0 x; finite by
// nilpotency. Throws WrongDegree otherwise.
Element mc_defect(const CurvedAlgebra& alg, const Element& x);

bool is_maurer_cartan(const CurvedAlgebra& alg, const Element& x);

// Twisted algebra on the same space: mu_n^beta = sum_k 1/k! mu_{k+n}(beta^k, -).
// Assumes the input brackets are filtration compatible (CurvedAlgebra
// invariant); beta must be homogeneous of degree 0.
CurvedAlgebra twist(const CurvedAlgebra& alg, const Element& beta);

// filtration_weight(mu_0); kWeightInfinity when flat.
int curvature_filtration(const CurvedAlgebra& alg);

}  // namespace lix
