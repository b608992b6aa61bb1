#pragma once

#include <optional>
#include <vector>

#include "lix/curved_algebra.hpp"
#include "lix/linalg.hpp"

namespace lix {

/* One subquotient E_r^{p,q} of the filtration: numerator
 *   Z = { z in F_p g^{p+q} : mu_1(z) in F_{p+r} }
 * modulo
 *   B = { x in F_{p+1} g^{p+q} : mu_1(x) in F_{p+r} }
 *     + mu_1(F_{p-r+1} g^{p+q-1}) cap F_p.
 * Pages exist for r <= rmax+1 where mu_0 in F_{2 rmax + 1}. */
struct PageEntry {
    int r = 0, p = 0, q = 0;
    std::vector<Element> representatives;  // quotient basis lifted to Z
    std::vector<Element> relations;        // echelon basis of B
    int numerator_dim = 0;
    int dimension = 0;  // numerator_dim - dim(B cap Z)
    bool denominator_inside_numerator = true;
};

// Largest r with 2r+1 <= curvature filtration; kWeightInfinity when flat.
int page_bound_rmax(const CurvedAlgebra& alg);

// Throws PageBeyondCurvatureBound for r > rmax+1 on curved algebras.
PageEntry page(const CurvedAlgebra& alg, int r, int p, int q);

/* d_s^{p,q} : E_s^{p,q} -> E_s^{p+s, q-s+1} induced by mu_1, as a matrix in
 * the representative bases. Defined for s < rmax+1; at s = rmax+1 the
 * differential is the zero map by convention. */
struct PageDifferential {
    PageEntry source;
    PageEntry target;
    RatMatrix matrix;  // matrix[i][j]: coefficient of target rep i in d(source rep j)
    bool lands_in_target = true;
};

PageDifferential page_differential(const CurvedAlgebra& alg, int s, int p, int q);

struct PageStructureIssue {
    int s = 0, p = 0, q = 0;
    std::string what;
};

struct PageStructureReport {
    std::vector<PageStructureIssue> issues;
    std::optional<std::string> bound_error;  // requested pages beyond the curvature bound
    int pages_verified = 0;
    bool pass() const { return issues.empty() && !bound_error; }
};

/* For all s < upTo on every occupied (p,q): the denominator inclusion, that
 * d_s lands in the stated target, d_s^2 = 0, and
 * dim E_{s+1}^{p,q} = dim H^{p,q}(E_s, d_s). */
PageStructureReport verify_page_structure(const CurvedAlgebra& alg, int up_to);

// True iff every occupied E_{r+1}^{p,q} with p+q = n vanishes.
bool vanishing_in_total_degree(const CurvedAlgebra& alg, int r, int n);

/* Obstruction lift: given x in F_p g^{p+q} with mu_1(x) in F_{p+r+1}, find
 * y in F_{p-r} g^{p+q-1} with mu_1(y) in F_p and x - mu_1(y) in F_{p+1}.
 * One exact solve; columns in basis order, constraint rows lowest weight
 * first, free variables zero. nullopt = no lift (the class of x survives
 * on E_{r+1}). Throws PreconditionViolated when the memberships fail. The
 * returned lift is re-verified against all three conditions. */
std::optional<Element> lift_obstruction(const CurvedAlgebra& alg, const Element& x, int p, int r);

}  // namespace lix
