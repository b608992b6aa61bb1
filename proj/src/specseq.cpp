#include "lix/specseq.hpp"

#include <algorithm>

#include "lix/error.hpp"

namespace lix {

namespace {

// Basis indices in degree `deg` with weight in [min_w, max_w_excl).
std::vector<int> slice(const GradedSpace& sp, int deg, int min_w,
                       int max_w_excl = kWeightInfinity) {
    std::vector<int> out;
    for (int i = 0; i < sp.dim(); ++i) {
        const auto& b = sp.at(i);
        if (b.degree == deg && b.weight >= min_w && b.weight < max_w_excl) out.push_back(i);
    }
    return out;
}

Element mu1(const CurvedAlgebra& alg, int i) { return eval_bracket_basis(alg, {i}); }

Element mu1_apply(const CurvedAlgebra& alg, const Element& x) {
    Element out(alg.space);
    for (const auto& [i, c] : x.coeffs()) out = add(out, scale(c, mu1(alg, i)));
    return out;
}

RatRow coords(const Element& x, const std::vector<int>& ambient) {
    RatRow row(ambient.size());
    for (size_t k = 0; k < ambient.size(); ++k) row[k] = x.coeff(ambient[k]);
    return row;
}

Element from_coords(const SpacePtr& sp, const RatRow& row, const std::vector<int>& ambient) {
    Element e(sp);
    for (size_t k = 0; k < ambient.size(); ++k)
        if (!row[k].is_zero()) e.set_coeff(ambient[k], row[k]);
    return e;
}

/* Kernel of proj_{weight < w_bound} o mu_1 restricted to the span of
 * `domain` indices, as elements. */
std::vector<Element> mu1_kernel_slice(const CurvedAlgebra& alg, const std::vector<int>& domain,
                                      int target_deg, int w_bound) {
    std::vector<int> rows = slice(*alg.space, target_deg, 1, w_bound);
    RatMatrix m(rows.size(), RatRow(domain.size()));
    for (size_t c = 0; c < domain.size(); ++c) {
        Element im = mu1(alg, domain[c]);
        for (size_t r = 0; r < rows.size(); ++r) m[r][c] = im.coeff(rows[r]);
    }
    std::vector<Element> out;
    for (const RatRow& v : kernel_basis(m, static_cast<int>(domain.size()))) {
        Element e(alg.space);
        for (size_t c = 0; c < domain.size(); ++c)
            if (!v[c].is_zero()) e.set_coeff(domain[c], v[c]);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

int page_bound_rmax(const CurvedAlgebra& alg) {
    int c = curvature_filtration(alg);
    if (c == kWeightInfinity) return kWeightInfinity;
    return (c - 1) / 2;
}

static void require_page_defined(const CurvedAlgebra& alg, int r) {
    int rmax = page_bound_rmax(alg);
    if (rmax != kWeightInfinity && r > rmax + 1)
        throw Error(ErrorCode::PageBeyondCurvatureBound,
                    "page " + std::to_string(r) + " needs curvature filtration >= " +
                        std::to_string(2 * (r - 1) + 1) + ", have " +
                        weight_str(curvature_filtration(alg)));
}

PageEntry page(const CurvedAlgebra& alg, int r, int p, int q) {
    require_page_defined(alg, r);
    PageEntry out;
    out.r = r;
    out.p = p;
    out.q = q;
    int deg = p + q;
    const auto& sp = *alg.space;

    std::vector<int> ambient = slice(sp, deg, 1);

    // Z = { z in F_p : mu_1(z) in F_{p+r} }
    std::vector<Element> z_basis = mu1_kernel_slice(alg, slice(sp, deg, p), deg + 1, p + r);
    // B1 = { x in F_{p+1} : mu_1(x) in F_{p+r} }
    std::vector<Element> b1 = mu1_kernel_slice(alg, slice(sp, deg, p + 1), deg + 1, p + r);
    // B2 = mu_1(F_{p-r+1} deg-1) cap F_p
    std::vector<Element> b2;
    for (const Element& y : mu1_kernel_slice(alg, slice(sp, deg - 1, p - r + 1), deg, p)) {
        Element im = mu1_apply(alg, y);
        if (!im.is_zero()) b2.push_back(im);
    }

    SpanBuilder z_span(static_cast<int>(ambient.size()));
    for (const Element& z : z_basis) z_span.insert(coords(z, ambient));
    out.numerator_dim = z_span.dim();

    SpanBuilder b_span(static_cast<int>(ambient.size()));
    out.denominator_inside_numerator = true;
    for (const Element& b : b1) {
        RatRow row = coords(b, ambient);
        if (!z_span.contains(row)) out.denominator_inside_numerator = false;
        b_span.insert(std::move(row));
    }
    for (const Element& b : b2) {
        RatRow row = coords(b, ambient);
        if (!z_span.contains(row)) out.denominator_inside_numerator = false;
        b_span.insert(std::move(row));
    }

    for (const RatRow& row : b_span.rows())
        out.relations.push_back(from_coords(alg.space, row, ambient));

    int inter = intersection_dim(z_span.rows(), b_span.rows(),
                                 static_cast<int>(ambient.size()));
    out.dimension = out.numerator_dim - inter;

    // Representatives: numerator vectors extending the denominator span.
    SpanBuilder pick(static_cast<int>(ambient.size()));
    for (const RatRow& row : b_span.rows()) pick.insert(row);
    for (const Element& z : z_basis) {
        RatRow row = coords(z, ambient);
        if (pick.insert(row)) out.representatives.push_back(z);
    }
    return out;
}

PageDifferential page_differential(const CurvedAlgebra& alg, int s, int p, int q) {
    int rmax = page_bound_rmax(alg);
    if (rmax != kWeightInfinity && s >= rmax + 1)
        throw Error(ErrorCode::PageBeyondCurvatureBound,
                    "the differential on page " + std::to_string(s) +
                        " is not induced for curvature filtration " +
                        weight_str(curvature_filtration(alg)));
    PageDifferential out;
    out.source = page(alg, s, p, q);
    out.target = page(alg, s, p + s, q - s + 1);

    std::vector<int> ambient = slice(*alg.space, p + q + 1, 1);
    SpanBuilder z_target(static_cast<int>(ambient.size()));
    {
        // Rebuild the target numerator span for the landing check.
        std::vector<Element> tz = mu1_kernel_slice(alg, slice(*alg.space, p + q + 1, p + s),
                                                   p + q + 2, p + 2 * s);
        for (const Element& z : tz) z_target.insert(coords(z, ambient));
    }

    size_t reps = out.target.representatives.size();
    size_t rels = out.target.relations.size();
    out.matrix.assign(reps, RatRow(out.source.representatives.size()));

    // Columns of [reps | relations] for expressing classes.
    RatMatrix basis_cols(ambient.size(), RatRow(reps + rels));
    for (size_t j = 0; j < reps; ++j) {
        RatRow col = coords(out.target.representatives[j], ambient);
        for (size_t i = 0; i < ambient.size(); ++i) basis_cols[i][j] = col[i];
    }
    for (size_t j = 0; j < rels; ++j) {
        RatRow col = coords(out.target.relations[j], ambient);
        for (size_t i = 0; i < ambient.size(); ++i) basis_cols[i][reps + j] = col[i];
    }

    for (size_t c = 0; c < out.source.representatives.size(); ++c) {
        Element im = mu1_apply(alg, out.source.representatives[c]);
        RatRow row = coords(im, ambient);
        if (!z_target.contains(row)) out.lands_in_target = false;
        auto sol = solve(basis_cols, row);
        if (!sol) {
            out.lands_in_target = false;
            continue;
        }
        for (size_t r = 0; r < reps; ++r) out.matrix[r][c] = (*sol)[r];
    }
    return out;
}

namespace {

// All (p,q) that can carry a nonzero page entry.
std::vector<std::pair<int, int>> occupied_bidegrees(const CurvedAlgebra& alg) {
    std::vector<std::pair<int, int>> out;
    for (int deg : alg.space->occupied_degrees())
        for (int p = 1; p < alg.space->nilpotency_bound(); ++p)
            out.emplace_back(p, deg - p);
    return out;
}

}  // namespace

PageStructureReport verify_page_structure(const CurvedAlgebra& alg, int up_to) {
    PageStructureReport report;
    int rmax = page_bound_rmax(alg);
    int verified_to = up_to;
    if (rmax != kWeightInfinity && up_to > rmax + 1) {
        report.bound_error = "pages beyond " + std::to_string(rmax + 1) +
                             " are not defined for curvature filtration " +
                             weight_str(curvature_filtration(alg));
        verified_to = rmax + 1;
    }
    report.pages_verified = verified_to;

    for (int s = 0; s < verified_to; ++s) {
        for (auto [p, q] : occupied_bidegrees(alg)) {
            PageEntry e = page(alg, s, p, q);
            if (!e.denominator_inside_numerator)
                report.issues.push_back({s, p, q, "denominator is not inside the numerator"});
            if (e.numerator_dim == 0) continue;

            PageDifferential d = page_differential(alg, s, p, q);
            if (!d.lands_in_target)
                report.issues.push_back({s, p, q, "d_s does not land in E_s^{p+s,q-s+1}"});

            // d_s o d_s = 0 on the page
            PageDifferential d2 = page_differential(alg, s, p + s, q - s + 1);
            for (size_t i = 0; i < d2.matrix.size(); ++i) {
                for (size_t j = 0; j < d.source.representatives.size(); ++j) {
                    Rational acc(0);
                    for (size_t k = 0; k < d.matrix.size(); ++k)
                        acc += d2.matrix[i][k] * d.matrix[k][j];
                    if (!acc.is_zero()) {
                        report.issues.push_back({s, p, q, "d_s^2 is nonzero"});
                        i = d2.matrix.size();
                        break;
                    }
                }
            }

            // dim E_{s+1} = dim ker d_s - rank d_s(previous)
            int cols = static_cast<int>(d.source.representatives.size());
            int ker = cols - rank(d.matrix);
            PageDifferential din = page_differential(alg, s, p - s, q + s - 1);
            int expected = ker - rank(din.matrix);
            PageEntry next = page(alg, s + 1, p, q);
            if (next.dimension != expected)
                report.issues.push_back(
                    {s, p, q,
                     "dim E_{s+1} = " + std::to_string(next.dimension) +
                         " but H(E_s, d_s) has dimension " + std::to_string(expected)});
        }
    }
    return report;
}

bool vanishing_in_total_degree(const CurvedAlgebra& alg, int r, int n) {
    require_page_defined(alg, r + 1);
    for (int p = 1; p < alg.space->nilpotency_bound(); ++p)
        if (page(alg, r + 1, p, n - p).dimension != 0) return false;
    return true;
}

std::optional<Element> lift_obstruction(const CurvedAlgebra& alg, const Element& x, int p,
                                        int r) {
    if (p - r < 1)
        throw Error(ErrorCode::PreconditionViolated, "lift needs p - r >= 1");
    if (x.is_zero()) return Element::zero(alg.space);

    int deg;
    try {
        deg = homogeneous_degree(x);
    } catch (const Error&) {
        throw Error(ErrorCode::PreconditionViolated, "lift input must be homogeneous");
    }
    if (filtration_weight(x) < p)
        throw Error(ErrorCode::PreconditionViolated, "lift input is not in F_p");
    Element dx = mu1_apply(alg, x);
    if (filtration_weight(dx) < p + r + 1)
        throw Error(ErrorCode::PreconditionViolated, "mu_1(input) is not in F_{p+r+1}");

    const auto& sp = *alg.space;
    std::vector<int> unknowns = slice(sp, deg - 1, p - r);  // basis order

    // Constraint rows: weight <= p slice of the target degree, lowest
    // weight first.
    std::vector<int> rows = slice(sp, deg, 1, p + 1);
    std::stable_sort(rows.begin(), rows.end(),
                     [&](int a, int b) { return sp.at(a).weight < sp.at(b).weight; });

    RatMatrix m(rows.size(), RatRow(unknowns.size()));
    for (size_t c = 0; c < unknowns.size(); ++c) {
        Element im = mu1(alg, unknowns[c]);
        for (size_t rr = 0; rr < rows.size(); ++rr) m[rr][c] = im.coeff(rows[rr]);
    }
    RatRow b(rows.size());
    for (size_t rr = 0; rr < rows.size(); ++rr) b[rr] = x.coeff(rows[rr]);

    auto sol = solve(m, b);
    if (!sol) return std::nullopt;

    Element y(alg.space);
    for (size_t c = 0; c < unknowns.size(); ++c)
        if (!(*sol)[c].is_zero()) y.set_coeff(unknowns[c], (*sol)[c]);

    // Self-check: all three membership conditions, exactly.
    Element dy = mu1_apply(alg, y);
    if (filtration_weight(y) < p - r || filtration_weight(dy) < p ||
        filtration_weight(sub(x, dy)) < p + 1)
        throw Error(ErrorCode::Internal, "obstruction lift failed its own conditions");
    return y;
}

}  // namespace lix
