#include "lix/defcomplex.hpp"

#include <algorithm>
#include <functional>

#include "lix/error.hpp"
#include "lix/linalg.hpp"
#include "lix/specseq.hpp"

namespace lix {

namespace {

int word_degree(const SpacePtr& sp, const Word& w) {
    int d = 0;
    for (int i : w) d += sp->at(i).degree;
    return d;
}

std::string hom_id(const SpacePtr& a, const Word& w, const SpacePtr& b, int target) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ".";
        s += a->at(w[k]).id;
    }
    return s + ">" + b->at(target).id;
}

// All ways to follow the next permutation of {0..m-1} in lexicographic order.
bool next_perm(std::vector<int>& p) { return std::next_permutation(p.begin(), p.end()); }

}  // namespace

Element DefComplex::apply(const Element& f, const Word& word) const {
    Element out(target.space);
    auto base = hom_index.lower_bound({word, 0});
    for (auto it = base; it != hom_index.end() && it->first.first == word; ++it)
        out.add_coeff(it->first.second, f.coeff(it->second));
    return out;
}

Element DefComplex::weight_component(const Element& f, int k) const {
    Element out(hom_space);
    for (const auto& [i, c] : f.coeffs())
        if (hom_space->at(i).weight == k + 1) out.set_coeff(i, c);
    return out;
}

LinearMap DefComplex::weight0_map(const Element& f) const {
    LinearMap m;
    m.domain = source.space;
    m.codomain = target.space;
    m.degree_shift = 0;
    for (int a = 0; a < source.space->dim(); ++a) m.set_column(a, apply(f, {a}));
    return m;
}

DefComplex def_complex(const AInftyAlgebra& A, const AInftyAlgebra& B, int weight_cap) {
    if (A.weight_cap < weight_cap || B.weight_cap < weight_cap)
        throw Error(ErrorCode::TruncationMismatch,
                    "both algebras must be truncated at or above the requested weight cap");

    DefComplex D;
    D.source = A;
    D.source.weight_cap = weight_cap;
    D.target = B;
    D.target.weight_cap = weight_cap;
    D.weight_cap = weight_cap;
    D.bar = bar_coalgebra(D.source);

    // Hom basis: one generator per (word of A, target of B), ordered by
    // (word length, word, target). The filtration weight of a coalgebra
    // weight k component is k + 1 = word length.
    std::vector<BasisVector> basis;
    for (size_t wi = 0; wi < D.bar.words.size(); ++wi) {
        const Word& w = D.bar.words[wi];
        for (int t = 0; t < B.space->dim(); ++t) {
            D.hom_index[{w, t}] = static_cast<int>(D.hom_basis.size());
            D.hom_basis.emplace_back(w, t);
            basis.push_back({hom_id(A.space, w, B.space, t),
                             B.space->at(t).degree - word_degree(A.space, w),
                             static_cast<int>(w.size())});
        }
    }
    D.hom_space = build_space(std::move(basis));

    int max_arity = 1;
    for (const auto& [n, table] : D.target.ops)
        if (n >= 2 && n <= weight_cap + 1 && !table.empty()) max_arity = std::max(max_arity, n);

    BracketSet brackets(max_arity);
    CurvedAlgebra alg{D.hom_space, std::move(brackets)};

    // Arity 1: {f}_1 = m_1^B o f - (-1)^{|f|} f o D_A, assembled hom by hom.
    LinearMap bar_d = bar_differential(D.source, D.bar);
    std::map<int, Element> columns;  // hom index -> {h}_1
    for (size_t hi = 0; hi < D.hom_basis.size(); ++hi) {
        const auto& [w, t] = D.hom_basis[hi];
        Element m1t = D.target.op(1, {t});
        if (m1t.is_zero()) continue;
        Element value(D.hom_space);
        for (const auto& [s, c] : m1t.coeffs())
            value.add_coeff(D.hom_index.at({w, s}), c);
        columns[static_cast<int>(hi)] = std::move(value);
    }
    for (size_t vi = 0; vi < D.bar.words.size(); ++vi) {
        Element dv = bar_d.apply_basis(static_cast<int>(vi));
        if (dv.is_zero()) continue;
        const Word& v = D.bar.words[vi];
        for (const auto& [wi, c] : dv.coeffs()) {
            const Word& w = D.bar.words[wi];
            for (int t = 0; t < B.space->dim(); ++t) {
                int hi = D.hom_index.at({w, t});
                int hdeg = D.hom_space->at(hi).degree;
                int sign = (hdeg & 1) ? 1 : -1;  // -(-1)^{|h|}
                auto [it, fresh] = columns.try_emplace(hi, D.hom_space);
                it->second.add_coeff(D.hom_index.at({v, t}), Rational(sign) * c);
            }
        }
    }
    for (auto& [hi, value] : columns) {
        if (value.is_zero()) continue;
        alg.brackets.set_entry(D.hom_space, {hi}, std::move(value));
    }

    // Arities m >= 2: the full symmetrization of the block convolution.
    // Entries exist only on tuples whose word lengths fit the truncation.
    std::vector<std::vector<int>> homs_by_len(weight_cap + 2);
    for (size_t hi = 0; hi < D.hom_basis.size(); ++hi)
        homs_by_len[D.hom_basis[hi].first.size()].push_back(static_cast<int>(hi));

    for (int m = 2; m <= max_arity; ++m) {
        if (D.target.ops.find(m) == D.target.ops.end()) continue;
        std::vector<int> tuple;
        std::function<void(int, int)> rec = [&](int min_hom, int len_used) {
            if (static_cast<int>(tuple.size()) == m) {
                // Symmetrized value over all m! orderings.
                Element value(D.hom_space);
                std::vector<int> degs(m), order(m);
                for (int k = 0; k < m; ++k) {
                    degs[k] = D.hom_space->at(tuple[k]).degree;
                    order[k] = k;
                }
                std::sort(order.begin(), order.end());
                do {
                    Permutation sigma;
                    sigma.images.resize(m);
                    for (int k = 0; k < m; ++k) sigma.images[k] = order[k] + 1;
                    int ks = koszul_sign(sigma, degs);

                    Word concat;
                    Word targets(m);
                    int sign = ks;
                    int block_deg_prefix = 0;
                    for (int k = 0; k < m; ++k) {
                        const auto& [w, t] = D.hom_basis[tuple[order[k]]];
                        if ((degs[order[k]] & 1) && (block_deg_prefix & 1)) sign = -sign;
                        concat.insert(concat.end(), w.begin(), w.end());
                        targets[k] = t;
                        block_deg_prefix += word_degree(A.space, w);
                    }
                    Element mt = D.target.op(m, targets);
                    for (const auto& [s, c] : mt.coeffs())
                        value.add_coeff(D.hom_index.at({concat, s}), Rational(sign) * c);
                } while (next_perm(order));
                if (!value.is_zero())
                    alg.brackets.set_entry(D.hom_space, tuple, std::move(value));
                return;
            }
            int remaining = m - static_cast<int>(tuple.size());
            for (int len = 1; len_used + len + (remaining - 1) <= weight_cap + 1; ++len) {
                for (int hi : homs_by_len[len]) {
                    if (hi < min_hom) continue;
                    tuple.push_back(hi);
                    rec(hi, len_used + len);
                    tuple.pop_back();
                }
            }
        };
        rec(0, 0);
    }

    D.algebra = std::move(alg);
    return D;
}

Element hom_from_linear(const DefComplex& D, const LinearMap& f) {
    if (f.degree_shift != 0)
        throw Error(ErrorCode::WrongDegree, "only degree-0 maps embed in weight 0");
    Element out(D.hom_space);
    for (const auto& [a, col] : f.columns) {
        if (!is_homogeneous_of_degree(col, D.source.space->at(a).degree))
            throw Error(ErrorCode::WrongDegree, "column '" + D.source.space->at(a).id +
                                                    "' is not degree preserving");
        for (const auto& [t, c] : col.coeffs())
            out.add_coeff(D.hom_index.at({Word{a}, t}), c);
    }
    return out;
}

CurvedAlgebra twist_by_map(const DefComplex& D, const LinearMap& f) {
    return twist(D.algebra, hom_from_linear(D, f));
}

namespace {

using TensorWord = std::map<Word, Rational>;  // words in the target algebra

void tensor_add(TensorWord& acc, const Word& w, const Rational& c) {
    auto it = acc.find(w);
    if (it == acc.end()) {
        if (!c.is_zero()) acc[w] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

/* rho(F)(v): sum over splittings of v into m consecutive blocks of the word
 * F(bl_1) (x) .. (x) F(bl_m). F has degree 0, so no Koszul signs appear. */
TensorWord rho_apply(const DefComplex& D, const Element& F, const Word& v) {
    TensorWord out;
    int n = static_cast<int>(v.size());
    std::function<void(int, Word, Rational)> rec = [&](int pos, Word acc, Rational coeff) {
        if (pos == n) {
            tensor_add(out, acc, coeff);
            return;
        }
        for (int blk = 1; pos + blk <= n; ++blk) {
            Word block(v.begin() + pos, v.begin() + pos + blk);
            Element img = D.apply(F, block);
            for (const auto& [t, c] : img.coeffs()) {
                Word next = acc;
                next.push_back(t);
                rec(pos + blk, std::move(next), coeff * c);
            }
        }
    };
    rec(0, {}, Rational(1));
    return out;
}

TensorWord rho_apply_element(const DefComplex& D, const Element& F, const BarCoalgebra& barA,
                             const Element& x) {
    TensorWord out;
    for (const auto& [wi, c] : x.coeffs())
        for (const auto& [word, cc] : rho_apply(D, F, barA.words[wi]))
            tensor_add(out, word, c * cc);
    return out;
}

TensorWord bar_apply_tensor(const LinearMap& dB, const BarCoalgebra& barB, const TensorWord& x) {
    TensorWord out;
    for (const auto& [word, c] : x) {
        int wi = barB.index_of(word);
        if (wi < 0) throw Error(ErrorCode::Internal, "word escaped the target truncation");
        Element img = dB.apply_basis(wi);
        for (const auto& [oi, cc] : img.coeffs()) tensor_add(out, barB.words[oi], c * cc);
    }
    return out;
}

}  // namespace

bool is_infinity_morphism(const DefComplex& D, const Element& F) {
    if (!is_homogeneous_of_degree(F, 0))
        throw Error(ErrorCode::WrongDegree, "candidate morphisms have degree 0");

    bool mc_route = mc_defect(D.algebra, F).is_zero();

    BarCoalgebra barB = bar_coalgebra(D.target);
    LinearMap dA = bar_differential(D.source, D.bar);
    LinearMap dB = bar_differential(D.target, barB);

    bool commutes = true;
    for (size_t vi = 0; vi < D.bar.words.size() && commutes; ++vi) {
        TensorWord lhs =
            rho_apply_element(D, F, D.bar, dA.apply_basis(static_cast<int>(vi)));
        TensorWord rhs = bar_apply_tensor(dB, barB, rho_apply(D, F, D.bar.words[vi]));
        commutes = lhs == rhs;
    }

    if (mc_route != commutes)
        throw Error(ErrorCode::Internal,
                    "Maurer-Cartan and commutation routes disagree on a morphism check");
    return mc_route;
}

namespace {

/* Weight-0 chain map induces an isomorphism on cohomology. */
bool induces_cohomology_iso(const AInftyAlgebra& A, const AInftyAlgebra& B,
                            const LinearMap& f) {
    LinearMap dA = A.differential();
    LinearMap dB = B.differential();
    std::map<int, int> hA = compute_cohomology(A.space, dA);
    std::map<int, int> hB = compute_cohomology(B.space, dB);
    for (const auto& [deg, dim] : hA)
        if (dim != (hB.count(deg) ? hB.at(deg) : 0)) return false;
    for (const auto& [deg, dim] : hB)
        if (dim != (hA.count(deg) ? hA.at(deg) : 0)) return false;

    // Rank of the induced map per degree must reach the full dimension.
    for (const auto& [deg, hdim] : hA) {
        if (hdim == 0) continue;
        // Cocycles of A in this degree.
        std::vector<int> dom, codom;
        for (int i = 0; i < A.space->dim(); ++i)
            if (A.space->at(i).degree == deg) dom.push_back(i);
        for (int i = 0; i < B.space->dim(); ++i)
            if (B.space->at(i).degree == deg) codom.push_back(i);

        RatMatrix dmat(B.space->dim(), RatRow(dom.size()));
        for (size_t c = 0; c < dom.size(); ++c) {
            Element im = dA.apply_basis(dom[c]);
            for (const auto& [j, cc] : im.coeffs()) dmat[j][c] = cc;
        }
        std::vector<RatRow> cocycles = kernel_basis(dmat, static_cast<int>(dom.size()));

        // Boundary span of B in this degree.
        SpanBuilder quotient(static_cast<int>(codom.size()));
        for (int i = 0; i < B.space->dim(); ++i) {
            if (B.space->at(i).degree != deg - 1) continue;
            Element im = dB.apply_basis(i);
            if (im.is_zero()) continue;
            RatRow row(codom.size());
            for (size_t k = 0; k < codom.size(); ++k) row[k] = im.coeff(codom[k]);
            quotient.insert(std::move(row));
        }

        int induced_rank = 0;
        for (const RatRow& z : cocycles) {
            Element zx(A.space);
            for (size_t c = 0; c < dom.size(); ++c)
                if (!z[c].is_zero()) zx.set_coeff(dom[c], z[c]);
            Element fz = f.apply(zx);
            RatRow row(codom.size());
            for (size_t k = 0; k < codom.size(); ++k) row[k] = fz.coeff(codom[k]);
            if (quotient.insert(std::move(row))) ++induced_rank;
        }
        if (induced_rank != hdim) return false;
    }
    return true;
}

}  // namespace

bool is_infinity_quasi_iso(const DefComplex& D, const Element& F) {
    if (!is_infinity_morphism(D, F))
        throw Error(ErrorCode::NotAMorphism, "not a morphism, quasi-isomorphism undefined");
    return induces_cohomology_iso(D.source, D.target, D.weight0_map(F));
}

bool check_page_identification(const CurvedAlgebra& twisted, const DefComplex& def_HH,
                               const CurvedAlgebra& twisted_HH) {
    for (int p = 1; p < twisted.space->nilpotency_bound(); ++p) {
        for (int deg : twisted.space->occupied_degrees()) {
            int q = deg - p;
            // E_1 layer of the twisted complex against the plain weight
            // layer of Def(H -> H): count of weight-p, degree-(p+q) homs.
            int layer = 0;
            for (int i = 0; i < def_HH.hom_space->dim(); ++i)
                if (def_HH.hom_space->at(i).weight == p &&
                    def_HH.hom_space->at(i).degree == deg)
                    ++layer;
            if (page(twisted, 1, p, q).dimension != layer) return false;
            if (page(twisted, 2, p, q).dimension != page(twisted_HH, 2, p, q).dimension)
                return false;
        }
    }
    return true;
}

FormalityVerdict intrinsic_formality_check(const AInftyAlgebra& H, const AInftyAlgebra& H_htt,
                                           int r, int weight_cap) {
    if (!H.is_strict())
        throw Error(ErrorCode::PreconditionViolated,
                    "the cohomology algebra must be strict (arity-2 products only)");
    // Transferred structures extend the product in weight one and carry no
    // differential.
    if (H.space->dim() != H_htt.space->dim())
        throw Error(ErrorCode::NotTransferredStructure, "underlying spaces differ");
    for (int i = 0; i < H.space->dim(); ++i) {
        const auto& a = H.space->at(i);
        const auto& b = H_htt.space->at(i);
        if (a.id != b.id || a.degree != b.degree || a.weight != b.weight)
            throw Error(ErrorCode::NotTransferredStructure, "underlying spaces differ");
    }
    auto has_arity = [](const AInftyAlgebra& X, int n) {
        auto it = X.ops.find(n);
        return it != X.ops.end() && !it->second.empty();
    };
    if (has_arity(H, 1) || has_arity(H_htt, 1))
        throw Error(ErrorCode::NotTransferredStructure,
                    "cohomology carries no differential; arity-1 maps must vanish");

    // Rebase the transferred structure onto H's space so elements interoperate.
    AInftyAlgebra htt = H_htt;
    htt.space = H.space;
    {
        std::map<int, std::map<Word, Element>> ops;
        for (const auto& [n, table] : H_htt.ops) {
            for (const auto& [w, v] : table) {
                Element moved(H.space);
                for (const auto& [i, c] : v.coeffs()) moved.set_coeff(i, c);
                if (!moved.is_zero()) ops[n][w] = std::move(moved);
            }
        }
        htt.ops = std::move(ops);
    }
    {
        auto h2 = H.ops.count(2) ? H.ops.at(2) : std::map<Word, Element>{};
        auto t2 = htt.ops.count(2) ? htt.ops.at(2) : std::map<Word, Element>{};
        if (h2 != t2)
            throw Error(ErrorCode::NotTransferredStructure,
                        "weight-one parts disagree: the transferred products must "
                        "coincide with the strict ones");
    }

    FormalityVerdict verdict;
    verdict.note = "";

    auto complex = std::make_shared<const DefComplex>(def_complex(htt, H, weight_cap));
    const DefComplex& D = *complex;
    verdict.complex = complex;
    LinearMap id;
    id.domain = H.space;
    id.codomain = H.space;
    id.degree_shift = 0;
    for (int i = 0; i < H.space->dim(); ++i)
        id.set_column(i, Element::basis(H.space, i));

    Element F_id = hom_from_linear(D, id);
    CurvedAlgebra twisted = twist(D.algebra, F_id);

    verdict.curvature_in_F3 = filtration_weight(twisted.curvature()) >= 3;

    verdict.one_bracket_raises_filtration = true;
    for (const auto& [tuple, value] : twisted.brackets.entries(1))
        if (filtration_weight(value) < twisted.space->at(tuple[0]).weight + 1)
            verdict.one_bracket_raises_filtration = false;

    if (!verdict.curvature_in_F3) {
        verdict.note = "curvature filtration below 3; input is not a transferred structure";
        return verdict;
    }
    if (filtration_weight(twisted.curvature()) < 2 * r + 1) {
        verdict.note = "curvature filtration below 2r+1; pages past r are undefined here";
        return verdict;
    }

    DefComplex def_HH = def_complex(H, H, weight_cap);
    CurvedAlgebra twisted_HH = twist_by_map(def_HH, id);
    verdict.page_identification_ok = check_page_identification(twisted, def_HH, twisted_HH);

    // Sufficient, not necessary: when it fails the solver still decides the
    // verdict, and an obstructed run carries the surviving curvature class.
    verdict.acyclic_total_degree_1 = vanishing_in_total_degree(twisted, r, 1);

    SolveResult solved = solve_mc(twisted, r);
    if (!solved.ok()) {
        verdict.obstruction = solved.obstruction;
        if (solved.obstruction) verdict.obstruction_hom_weight = solved.obstruction->p - 1;
        verdict.note = verdict.acyclic_total_degree_1
                           ? "solver hit an obstruction despite page vanishing"
                           : "deformation complex not acyclic in total degree 1";
        return verdict;
    }

    Element morphism = add(F_id, solved.certificate->alpha);
    if (!is_infinity_morphism(D, morphism))
        throw Error(ErrorCode::Internal, "solver output is not a morphism");
    if (!is_infinity_quasi_iso(D, morphism))
        throw Error(ErrorCode::Internal, "solver output is not a quasi-isomorphism");
    // alpha in F_2 keeps the weight-0 part equal to the identity.
    if (filtration_weight(solved.certificate->alpha) < 2)
        throw Error(ErrorCode::Internal, "twist alters the weight-0 part");

    verdict.formal = true;
    verdict.certificate = solved.certificate;
    verdict.morphism = InfinityMorphism{morphism, D.weight0_map(morphism)};
    return verdict;
}

}  // namespace lix
