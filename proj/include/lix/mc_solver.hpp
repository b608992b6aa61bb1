#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lix/curved_algebra.hpp"
#include "lix/specseq.hpp"

namespace lix {

struct TwistStep {
    int k = 0;                 // curvature filtration attacked at this step
    Element twist_element;     // alpha_k in F_{k-r}; the twist applied is -alpha_k
    int curvature_before = 0;
    int curvature_after = 0;   // kWeightInfinity when the step flattens the algebra
};

/* Proof object for one Maurer-Cartan element: the element, the twist trace
 * that produced it, and the page parameter used. Replayable without any
 * solver state. */
struct MCCertificate {
    Element alpha;
    std::vector<TwistStep> steps;
    int r_used = 0;
};

struct Obstruction {
    int k = 0;          // iteration where the lift failed
    int p = 0, q = 0;   // page coordinates of the surviving class (p = k, p+q = 1)
    Element class_representative;  // the curvature whose class survives on E_{r+1}
};

struct CurvatureStepResult {
    std::optional<Element> alpha;          // set on success
    std::optional<CurvedAlgebra> twisted;  // twist by -alpha
    std::optional<Obstruction> obstructed;
    bool ok() const { return alpha.has_value(); }
};

/* One curvature-raising step: lifts mu_0 at (p = k, total degree 1) and
 * twists by -alpha. Requires curvature_filtration >= k >= 2r+1; on success
 * the twisted curvature lies in F_{k+1}. */
CurvatureStepResult curvature_step(const CurvedAlgebra& alg, int r, int k);

enum class SolveStatus {
    Success,
    CurvatureTooLow,     // mu_0 not in F_{2r+1}
    Obstructed,          // a page class survived; carries the obstruction
};

struct SolveResult {
    SolveStatus status = SolveStatus::Success;
    std::optional<MCCertificate> certificate;
    std::optional<Obstruction> obstruction;
    bool ok() const { return status == SolveStatus::Success; }
};

/* Iterated twisting per the curvature trace: from k = curvature filtration
 * upward until flat. Terminates in at most nilpotencyBound steps because the
 * curvature weight strictly increases. Throws RelationCheckFailed when the
 * input fails check_relations. */
SolveResult solve_mc(const CurvedAlgebra& alg, int r);

/* Replays the certificate: re-twists step by step, re-checks every recorded
 * curvature weight, the per-step weight bounds, alpha = -sum of the twist
 * elements, filtration_weight(alpha) >= r+1, and mc_defect(alg, alpha) = 0.
 * Pure; independent of the solver. */
bool verify_certificate(const CurvedAlgebra& alg, const MCCertificate& cert);

}  // namespace lix
