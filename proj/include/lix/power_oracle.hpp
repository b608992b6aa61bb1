#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lix/curved_algebra.hpp"

namespace lix {

/* Square-zero polynomial coefficient ring K[eps_1..eps_m]/(eps_i^2) with
 * graded generators. Monomials are square-free generator subsets, encoded
 * as bitmasks over the generator list. */
class EpsilonRing {
public:
    EpsilonRing() = default;
    explicit EpsilonRing(std::vector<std::pair<std::string, int>> generators);

    static EpsilonRing trivial() { return EpsilonRing(); }

    int generator_count() const { return static_cast<int>(gens_.size()); }
    int generator_degree(int i) const { return gens_[i].second; }
    const std::string& generator_name(int i) const { return gens_[i].first; }

    using Monomial = std::uint64_t;  // bit i set <=> eps_i present

    int monomial_degree(Monomial m) const;

    // Product of two monomials with the Koszul sign of merging the
    // generator words; {0, sign*monomial} or nullopt-like zero flag.
    struct Product {
        bool zero = true;
        int sign = 1;
        Monomial monomial = 0;
    };
    Product multiply(Monomial a, Monomial b) const;

    // Ring extended by one generator appended at the end.
    EpsilonRing extended(const std::string& name, int degree) const;

    std::string monomial_str(Monomial m) const;

private:
    std::vector<std::pair<std::string, int>> gens_;
};

/* Element of g (x) R: square-free monomial -> coefficient element in g.
 * The total degree of a term is element degree + monomial degree. */
class ExtendedElement {
public:
    ExtendedElement() = default;
    ExtendedElement(SpacePtr space, const EpsilonRing* ring)
        : space_(std::move(space)), ring_(ring) {}

    static ExtendedElement from_element(const Element& x, const EpsilonRing* ring);

    const std::map<EpsilonRing::Monomial, Element>& terms() const { return terms_; }
    const SpacePtr& space() const { return space_; }
    const EpsilonRing* ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }

    Element term(EpsilonRing::Monomial m) const;
    void add_term(EpsilonRing::Monomial m, const Element& v);

    // True when every term has elt degree + monomial degree == d.
    bool is_homogeneous_of_total_degree(int d) const;

    friend bool operator==(const ExtendedElement& a, const ExtendedElement& b);

private:
    SpacePtr space_;
    const EpsilonRing* ring_ = nullptr;
    std::map<EpsilonRing::Monomial, Element> terms_;
};

ExtendedElement ext_add(const ExtendedElement& a, const ExtendedElement& b);
ExtendedElement ext_scale(const Rational& c, const ExtendedElement& a);

/* M^R(x) for x of total degree 0: the brackets extended to g (x) R with the
 * Koszul convention that a generator of degree g moving past an element of
 * degree d costs (-1)^{gd}. Restricting to the trivial ring recovers
 * mc_defect. */
ExtendedElement eval_MR(const CurvedAlgebra& alg, const EpsilonRing& ring,
                        const ExtendedElement& x);

/* mu_n recovered by graded polarisation: the eps_1..eps_n coefficient of
 * M^R over K[eps_i]/(eps_i^2) with deg eps_i = -deg x_i, normalized by the
 * constant ordering sign. Must equal eval_bracket exactly. */
Element polarize(const CurvedAlgebra& alg, int n, const std::vector<int>& args);

/* DM^R(x)[v] = sum_{n>=1} n/n! mu_n(v, x, .., x) for total-degree-0 x. */
ExtendedElement directional_derivative(const CurvedAlgebra& alg, const EpsilonRing& ring,
                                       const ExtendedElement& x, const ExtendedElement& v);

struct MasterEquationFailure {
    int sample = 0;
    bool first_form = true;  // false: the one-extra-odd-variable form
    std::string defect;      // rendered nonzero defect, monomial by monomial
};

struct MasterEquationReport {
    std::vector<MasterEquationFailure> failures;
    int samples_checked = 0;
    bool pass() const { return failures.empty(); }
};

/* Checks both master-equation forms on every sample:
 *   (1) DM^R(x)[M^R(x)] = 0
 *   (2) M^{R(x)R'}(x(x)1 + M^R(x)(x)eps) = M^R(x)(x)1, deg eps = -1. */
MasterEquationReport check_master_equation(const CurvedAlgebra& alg, const EpsilonRing& ring,
                                           const std::vector<ExtendedElement>& samples);

/* Runs the full oracle: polarize == eval_bracket on every stored entry, and
 * the master equation on the polarization-complete sample set (one
 * degree-compensating sample sum_i b_{t_i} (x) eps_i per sorted basis tuple,
 * tuple sizes up to the same cutoff check_relations enumerates). Passing is
 * equivalent to check_relations passing. */
struct OracleReport {
    bool polarize_matches = true;
    std::vector<std::pair<int, std::vector<int>>> polarize_mismatches;  // (arity, tuple)
    std::vector<std::pair<int, MasterEquationReport>> master_failures;  // (arity, report)
    bool pass() const { return polarize_matches && master_failures.empty(); }
};
OracleReport run_oracle(const CurvedAlgebra& alg);

}  // namespace lix
