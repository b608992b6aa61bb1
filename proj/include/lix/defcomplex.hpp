#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lix/ainfty.hpp"
#include "lix/curved_algebra.hpp"
#include "lix/mc_solver.hpp"

namespace lix {

/* Convolution complex Hom(T^c(A), B) truncated at weightCap, materialized
 * as a flat curved algebra. A hom component of coalgebra weight k (word
 * length k+1) has filtration weight k+1; brackets add filtration weights.
 *
 * Brackets, with D_A the bar differential of A:
 *   {f}_1 = m_1^B
 f - (-1)^{|f|} f
 D_A
 *   {f_1..f_m}_m (v) = sum over orderings sigma and splittings v = bl_1..bl_m of
 *       Koszul(sigma) * apply-sign * m_m^B(f_{sigma(1)}(bl_1), .., f_{sigma(m)}(bl_m))
 * The full symmetrization (no 1/m!) is what makes the Maurer-Cartan
 * equation literally the commutation defect of the induced coalgebra
 * morphism with the bar differentials. */
struct DefComplex {
    AInftyAlgebra source;  // A
    AInftyAlgebra target;  // B
    int weight_cap = 1;
    BarCoalgebra bar;      // bar words of A

    SpacePtr hom_space;
    std::vector<std::pair<Word, int>> hom_basis;  // (A word, B target index)
    std::map<std::pair<Word, int>, int> hom_index;

    CurvedAlgebra algebra;  // flat; brackets materialized sparsely

    // f applied to a basis word of A; result in the target space.
    Element apply(const Element& f, const Word& word) const;
    // Component of f of coalgebra weight k as a map on words, restricted to
    // the elementary homs of that weight.
    Element weight_component(const Element& f, int k) const;
    // The weight-0 part as a linear map A -> B.
    LinearMap weight0_map(const Element& f) const;
};

/* Builds the materialized deformation complex. Throws TruncationMismatch
 * when either algebra is truncated below weight_cap. */
DefComplex def_complex(const AInftyAlgebra& A, const AInftyAlgebra& B, int weight_cap);

/* Degree-0 linear map A -> B as the weight-0 concentrated element. */
Element hom_from_linear(const DefComplex& D, const LinearMap& f);

/* Twist of the complex by hom_from_linear(f); the curvature is the
 * Maurer-Cartan defect of the untwisted complex at that element. */
CurvedAlgebra twist_by_map(const DefComplex& D, const LinearMap& f);

/* Both routes: (i) the Maurer-Cartan equation in the materialized complex,
 * (ii) commutation of the induced coalgebra morphism rho(F) with the bar
 * differentials through the truncation. A disagreement between the two is
 * an internal-consistency failure and throws. */
bool is_infinity_morphism(const DefComplex& D, const Element& F);

/* Weight-0 part induces an isomorphism on cohomology. Throws NotAMorphism
 * unless F passes is_infinity_morphism. */
bool is_infinity_quasi_iso(const DefComplex& D, const Element& F);

struct InfinityMorphism {
    Element def_element;   // degree 0, Maurer-Cartan in the def complex
    LinearMap weight0;     // cached chain map A -> B
};

struct FormalityVerdict {
    bool formal = false;
    bool curvature_in_F3 = false;
    bool one_bracket_raises_filtration = false;
    bool page_identification_ok = false;
    bool acyclic_total_degree_1 = false;
    std::optional<MCCertificate> certificate;
    std::optional<InfinityMorphism> morphism;   // weight-0 part is the identity
    std::optional<Obstruction> obstruction;     // surviving page class, if any
    int obstruction_hom_weight = -1;            // coalgebra weight p-1 of the class
    std::string note;
    // the complex the morphism and obstruction live over
    std::shared_ptr<const DefComplex> complex;
};

/* Intrinsic-formality pipeline: twists Def(H_htt -> H) by the identity,
 * checks the curvature filtration and the one-bracket filtration jump,
 * decides E_{r+1} vanishing in total degree 1, and on success runs the
 * Maurer-Cartan solver and re-verifies the reconstructed morphism. H must
 * be strict with zero differential; H_htt must extend it in weight one
 * (same arity-2 table) on the same basis, else NotTransferredStructure. */
FormalityVerdict intrinsic_formality_check(const AInftyAlgebra& H, const AInftyAlgebra& H_htt,
                                           int r, int weight_cap);

/* dim-level identification used by the formality pipeline: E_1 layers of
 * the twisted complex against the weight layers of Def(H -> H), and E_2
 * dims against the pages of Def(H -> H) twisted by the identity. */
bool check_page_identification(const CurvedAlgebra& twisted, const DefComplex& def_HH,
                               const CurvedAlgebra& twisted_HH);

}  // namespace lix
