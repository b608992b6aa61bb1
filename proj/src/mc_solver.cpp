#include "lix/mc_solver.hpp"

#include "lix/error.hpp"

namespace lix {

CurvatureStepResult curvature_step(const CurvedAlgebra& alg, int r, int k) {
    int c = curvature_filtration(alg);
    if (k < 2 * r + 1 || c < k)
        throw Error(ErrorCode::PreconditionViolated,
                    "curvature step needs curvature filtration >= k >= 2r+1");

    CurvatureStepResult out;
    Element mu0 = alg.curvature();
    auto lift = lift_obstruction(alg, mu0, k, r);
    if (!lift) {
        out.obstructed = Obstruction{k, k, 1 - k, mu0};
        return out;
    }
    CurvedAlgebra twisted = twist(alg, neg(*lift));
    if (curvature_filtration(twisted) < k + 1)
        throw Error(ErrorCode::Internal, "twisted curvature did not climb past F_k");
    out.alpha = *lift;
    out.twisted = std::move(twisted);
    return out;
}

SolveResult solve_mc(const CurvedAlgebra& alg, int r) {
    RelationReport relations = check_relations(alg, 2 * alg.brackets.max_arity() - 1);
    if (!relations.pass())
        throw Error(ErrorCode::RelationCheckFailed,
                    std::to_string(relations.violations.size()) +
                        " curved relation(s) violated; not an admissible input");

    SolveResult out;
    int c0 = curvature_filtration(alg);
    if (c0 == kWeightInfinity) {
        out.certificate = MCCertificate{Element::zero(alg.space), {}, r};
        return out;
    }
    if (c0 < 2 * r + 1) {
        out.status = SolveStatus::CurvatureTooLow;
        return out;
    }

    MCCertificate cert;
    cert.r_used = r;
    Element alpha = Element::zero(alg.space);
    CurvedAlgebra current = alg;
    while (true) {
        int k = curvature_filtration(current);
        if (k == kWeightInfinity) break;
        CurvatureStepResult step = curvature_step(current, r, k);
        if (!step.ok()) {
            out.status = SolveStatus::Obstructed;
            out.obstruction = step.obstructed;
            return out;
        }
        int after = curvature_filtration(*step.twisted);
        cert.steps.push_back({k, *step.alpha, k, after});
        alpha = sub(alpha, *step.alpha);
        current = std::move(*step.twisted);
    }
    cert.alpha = alpha;

    if (!mc_defect(alg, cert.alpha).is_zero())
        throw Error(ErrorCode::Internal, "accumulated twist is not Maurer-Cartan");
    out.certificate = std::move(cert);
    return out;
}

bool verify_certificate(const CurvedAlgebra& alg, const MCCertificate& cert) {
    try {
        CurvedAlgebra current = alg;
        Element acc = Element::zero(alg.space);
        for (const TwistStep& step : cert.steps) {
            if (step.k != step.curvature_before) return false;
            if (curvature_filtration(current) != step.curvature_before) return false;
            if (filtration_weight(step.twist_element) < step.k - cert.r_used) return false;
            current = twist(current, neg(step.twist_element));
            int after = curvature_filtration(current);
            if (after != step.curvature_after) return false;
            if (after <= step.curvature_before) return false;
            acc = sub(acc, step.twist_element);
        }
        if (curvature_filtration(current) != kWeightInfinity) return false;
        if (!(cert.alpha == acc)) return false;
        if (cert.r_used + 1 > filtration_weight(cert.alpha)) return false;
        return mc_defect(alg, cert.alpha).is_zero();
    } catch (const Error&) {
        return false;
    }
}

}  // namespace lix
