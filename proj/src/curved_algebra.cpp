#include "lix/curved_algebra.hpp"

#include <algorithm>
#include <functional>

#include "lix/error.hpp"

namespace lix {

const std::map<std::vector<int>, Element> BracketSet::kEmpty;

namespace {

std::vector<int> degrees_of(const SpacePtr& space, const std::vector<int>& tuple) {
    std::vector<int> d(tuple.size());
    for (size_t k = 0; k < tuple.size(); ++k) d[k] = space->at(tuple[k]).degree;
    return d;
}

bool has_repeated_odd(const SpacePtr& space, const std::vector<int>& sorted_tuple) {
    for (size_t k = 0; k + 1 < sorted_tuple.size(); ++k)
        if (sorted_tuple[k] == sorted_tuple[k + 1] && (space->at(sorted_tuple[k]).degree & 1))
            return true;
    return false;
}

int weight_sum(const SpacePtr& space, const std::vector<int>& tuple) {
    int w = 0;
    for (int i : tuple) w += space->at(i).weight;
    return w;
}

/* Index-sorted n-tuples with total weight < weight_bound, ascending. The
 * suffix minimum of the weights prunes branches that cannot stay under the
 * bound. */
void for_each_bounded_tuple(const SpacePtr& space, int n, int weight_bound,
                            const std::function<void(const std::vector<int>&)>& fn) {
    int dim = space->dim();
    if (n == 0) {
        std::vector<int> empty;
        fn(empty);
        return;
    }
    std::vector<int> suffix_min(dim + 1, kWeightInfinity);
    for (int i = dim - 1; i >= 0; --i)
        suffix_min[i] = std::min(suffix_min[i + 1], space->at(i).weight);

    std::vector<int> tuple;
    std::function<void(int, int)> rec = [&](int start, int acc) {
        int remaining = n - static_cast<int>(tuple.size());
        if (remaining == 0) {
            fn(tuple);
            return;
        }
        for (int i = start; i < dim; ++i) {
            int lower = acc + space->at(i).weight + (remaining - 1) * suffix_min[i];
            if (lower >= weight_bound) {
                // weights along the suffix order are not monotone in general,
                // so only skip this branch
                if (suffix_min[i] == space->at(i).weight) break;
                continue;
            }
            tuple.push_back(i);
            rec(i, acc + space->at(i).weight);
            tuple.pop_back();
        }
    };
    rec(0, 0);
}

}  // namespace

void BracketSet::set_entry(const SpacePtr& space, std::vector<int> args, Element value) {
    int n = static_cast<int>(args.size());
    if (n > max_arity_)
        throw Error(ErrorCode::ArityMismatch, "entry arity exceeds maxArity");
    if (value.space() && value.space() != space)
        throw Error(ErrorCode::MixedSpaces, "bracket value over a different space");

    std::vector<int> degs = degrees_of(space, args);
    std::vector<int> word = args;
    int sign = sort_sign(word, degs);
    std::stable_sort(args.begin(), args.end());

    if (value.is_zero()) return;
    if (has_repeated_odd(space, args))
        throw Error(ErrorCode::PreconditionViolated,
                    "nonzero entry on a repeated odd-degree argument");

    auto& table = entries_[n];
    if (!table.emplace(args, scale(Rational(sign), value)).second)
        throw Error(ErrorCode::DuplicateId, "bracket entry repeats an argument tuple");
}

Element BracketSet::entry(const SpacePtr& space, const std::vector<int>& sorted_args) const {
    auto ait = entries_.find(static_cast<int>(sorted_args.size()));
    if (ait == entries_.end()) return Element::zero(space);
    auto it = ait->second.find(sorted_args);
    return it == ait->second.end() ? Element::zero(space) : it->second;
}

const std::map<std::vector<int>, Element>& BracketSet::entries(int arity) const {
    auto it = entries_.find(arity);
    return it == entries_.end() ? kEmpty : it->second;
}

std::vector<int> BracketSet::arities_present() const {
    std::vector<int> out;
    for (const auto& [n, table] : entries_)
        if (!table.empty()) out.push_back(n);
    return out;
}

Element eval_bracket_basis(const CurvedAlgebra& alg, const std::vector<int>& args) {
    int n = static_cast<int>(args.size());
    if (n > alg.brackets.max_arity()) return Element::zero(alg.space);
    std::vector<int> sorted = args;
    std::stable_sort(sorted.begin(), sorted.end());
    if (has_repeated_odd(alg.space, sorted)) return Element::zero(alg.space);
    int sign = sort_sign(args, degrees_of(alg.space, args));
    Element e = alg.brackets.entry(alg.space, sorted);
    return sign == 1 ? e : neg(e);
}

Element eval_bracket(const CurvedAlgebra& alg, int n, const std::vector<Element>& args) {
    if (static_cast<int>(args.size()) != n)
        throw Error(ErrorCode::ArityMismatch, "expected " + std::to_string(n) + " arguments");
    if (n > alg.brackets.max_arity()) return Element::zero(alg.space);
    for (const auto& a : args)
        if (a.space() && a.space() != alg.space)
            throw Error(ErrorCode::MixedSpaces, "bracket argument over a different space");

    Element out(alg.space);
    std::vector<int> tuple(n);
    std::function<void(int, Rational)> rec = [&](int k, Rational coeff) {
        if (k == n) {
            out = add(out, scale(coeff, eval_bracket_basis(alg, tuple)));
            return;
        }
        for (const auto& [i, c] : args[k].coeffs()) {
            tuple[k] = i;
            rec(k + 1, coeff * c);
        }
    };
    rec(0, Rational(1));
    return out;
}

std::vector<DegreeViolation> check_degree_homogeneity(const CurvedAlgebra& alg) {
    std::vector<DegreeViolation> out;
    for (int n : alg.brackets.arities_present()) {
        for (const auto& [tuple, value] : alg.brackets.entries(n)) {
            int deg = 1;
            for (int i : tuple) deg += alg.space->at(i).degree;
            if (!is_homogeneous_of_degree(value, deg)) out.push_back({n, tuple});
        }
    }
    return out;
}

FiltrationReport check_filtration_compatibility(const CurvedAlgebra& alg) {
    FiltrationReport report;
    for (int n : alg.brackets.arities_present()) {
        for (const auto& [tuple, value] : alg.brackets.entries(n)) {
            int required = n == 0 ? 1 : weight_sum(alg.space, tuple);
            int got = filtration_weight(value);
            if (got < required)
                report.violations.push_back({n, tuple, got, required});
        }
    }
    return report;
}

namespace {

Element relation_defect(const CurvedAlgebra& alg, const std::vector<int>& tuple) {
    int n = static_cast<int>(tuple.size());
    std::vector<int> degs = degrees_of(alg.space, tuple);
    Element defect(alg.space);
    for (int i = 0; i <= n; ++i) {
        int j = n - i;
        if (i > alg.brackets.max_arity() || j + 1 > alg.brackets.max_arity()) continue;
        for (const Permutation& sigma : unshuffles(i, j)) {
            int sign = koszul_sign(sigma, degs);
            std::vector<int> inner_args(i);
            for (int k = 1; k <= i; ++k) inner_args[k - 1] = tuple[sigma(k) - 1];
            Element inner = eval_bracket_basis(alg, inner_args);
            if (inner.is_zero()) continue;
            std::vector<Element> outer_args;
            outer_args.reserve(j + 1);
            outer_args.push_back(inner);
            for (int k = i + 1; k <= n; ++k)
                outer_args.push_back(Element::basis(alg.space, tuple[sigma(k) - 1]));
            Element term = eval_bracket(alg, j + 1, outer_args);
            defect = add(defect, scale(Rational(sign), term));
        }
    }
    return defect;
}

}  // namespace

RelationReport check_relations(const CurvedAlgebra& alg, int max_relation_arity) {
    RelationReport report;
    report.filtration_compatible = check_filtration_compatibility(alg).pass();

    int max_arity = alg.brackets.max_arity();
    // A relation term needs an inner bracket of arity i <= maxArity and an
    // outer one of arity j+1 <= maxArity, so n = i+j caps at 2*maxArity - 1.
    int structural = 2 * max_arity - 1;
    int bound = structural;
    if (report.filtration_compatible) {
        // Weight additivity makes every term of an n-tuple relation land in
        // F_{sum of weights} (>= n), so n >= nilpotencyBound is vacuous.
        bound = std::min(bound, alg.space->nilpotency_bound() - 1);
    }
    report.vacuous_above = bound;
    report.checked_up_to = std::min(max_relation_arity, bound);

    int weight_bound =
        report.filtration_compatible ? alg.space->nilpotency_bound() : kWeightInfinity;
    for (int n = 0; n <= report.checked_up_to; ++n) {
        for_each_bounded_tuple(alg.space, n, weight_bound, [&](const std::vector<int>& tuple) {
            Element defect = relation_defect(alg, tuple);
            if (!defect.is_zero()) report.violations.push_back({n, tuple, defect});
        });
    }
    return report;
}

Element mc_defect(const CurvedAlgebra& alg, const Element& x) {
    if (!is_homogeneous_of_degree(x, 0))
        throw Error(ErrorCode::WrongDegree, "Maurer-Cartan candidates must have degree 0");
    Element out(alg.space);
    for (int k = 0; k <= alg.brackets.max_arity(); ++k) {
        std::vector<Element> args(k, x);
        out = add(out, scale(Rational::inv_factorial(k), eval_bracket(alg, k, args)));
    }
    return out;
}

bool is_maurer_cartan(const CurvedAlgebra& alg, const Element& x) {
    return mc_defect(alg, x).is_zero();
}

CurvedAlgebra twist(const CurvedAlgebra& alg, const Element& beta) {
    if (!is_homogeneous_of_degree(beta, 0))
        throw Error(ErrorCode::WrongDegree, "twists are by degree-0 elements");
    int max_arity = alg.brackets.max_arity();
    BracketSet out(max_arity);
    int weight_bound = alg.space->nilpotency_bound();
    for (int n = 0; n <= max_arity; ++n) {
        for_each_bounded_tuple(alg.space, n, weight_bound, [&](const std::vector<int>& tuple) {
            Element value(alg.space);
            std::vector<Element> args;
            for (int k = 0; n + k <= max_arity; ++k) {
                args.assign(k, beta);
                for (int i : tuple) args.push_back(Element::basis(alg.space, i));
                value = add(value, scale(Rational::inv_factorial(k),
                                         eval_bracket(alg, n + k, args)));
            }
            if (!value.is_zero()) out.set_entry(alg.space, tuple, std::move(value));
        });
    }
    return CurvedAlgebra{alg.space, std::move(out)};
}

int curvature_filtration(const CurvedAlgebra& alg) {
    return filtration_weight(alg.curvature());
}

}  // namespace lix
