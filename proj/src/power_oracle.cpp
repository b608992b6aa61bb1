#include "lix/power_oracle.hpp"

#include <algorithm>
#include <functional>

#include "lix/error.hpp"

namespace lix {

EpsilonRing::EpsilonRing(std::vector<std::pair<std::string, int>> generators)
    : gens_(std::move(generators)) {
    if (gens_.size() > 62)
        throw Error(ErrorCode::PreconditionViolated, "epsilon ring limited to 62 generators");
}

int EpsilonRing::monomial_degree(Monomial m) const {
    int d = 0;
    for (int i = 0; i < generator_count(); ++i)
        if (m & (Monomial(1) << i)) d += gens_[i].second;
    return d;
}

EpsilonRing::Product EpsilonRing::multiply(Monomial a, Monomial b) const {
    Product out;
    if (a & b) return out;  // a generator squares to zero
    out.zero = false;
    out.monomial = a | b;
    // Koszul sign of merging the two ascending generator words: every pair
    // (i in a, j in b) with i > j transposes.
    int sign = 1;
    for (int i = 0; i < generator_count(); ++i) {
        if (!(a & (Monomial(1) << i)) || !(gens_[i].second & 1)) continue;
        for (int j = 0; j < i; ++j)
            if ((b & (Monomial(1) << j)) && (gens_[j].second & 1)) sign = -sign;
    }
    out.sign = sign;
    return out;
}

EpsilonRing EpsilonRing::extended(const std::string& name, int degree) const {
    auto gens = gens_;
    gens.emplace_back(name, degree);
    return EpsilonRing(std::move(gens));
}

std::string EpsilonRing::monomial_str(Monomial m) const {
    if (m == 0) return "1";
    std::string s;
    for (int i = 0; i < generator_count(); ++i)
        if (m & (Monomial(1) << i)) {
            if (!s.empty()) s += "*";
            s += gens_[i].first;
        }
    return s;
}

ExtendedElement ExtendedElement::from_element(const Element& x, const EpsilonRing* ring) {
    ExtendedElement out(x.space(), ring);
    if (!x.is_zero()) out.terms_[0] = x;
    return out;
}

Element ExtendedElement::term(EpsilonRing::Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Element::zero(space_) : it->second;
}

void ExtendedElement::add_term(EpsilonRing::Monomial m, const Element& v) {
    if (v.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = v;
    } else {
        it->second = add(it->second, v);
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool ExtendedElement::is_homogeneous_of_total_degree(int d) const {
    for (const auto& [m, v] : terms_) {
        int md = ring_->monomial_degree(m);
        for (const auto& [i, c] : v.coeffs())
            if (space_->at(i).degree + md != d) return false;
    }
    return true;
}

bool operator==(const ExtendedElement& a, const ExtendedElement& b) {
    return a.terms_ == b.terms_;
}

ExtendedElement ext_add(const ExtendedElement& a, const ExtendedElement& b) {
    ExtendedElement out = a;
    for (const auto& [m, v] : b.terms()) out.add_term(m, v);
    return out;
}

ExtendedElement ext_scale(const Rational& c, const ExtendedElement& a) {
    ExtendedElement out(a.space(), a.ring());
    for (const auto& [m, v] : a.terms()) out.add_term(m, scale(c, v));
    return out;
}

namespace {

struct Term {
    EpsilonRing::Monomial mono;
    Element value;
    int value_degree;  // parity is what matters
};

std::vector<Term> collect_terms(const ExtendedElement& x) {
    std::vector<Term> terms;
    for (const auto& [m, v] : x.terms()) {
        // Split the element by basis degree so every term is homogeneous.
        std::map<int, Element> by_degree;
        for (const auto& [i, c] : v.coeffs()) {
            auto [it, fresh] = by_degree.try_emplace(v.space()->at(i).degree, v.space());
            it->second.set_coeff(i, c);
        }
        for (auto& [d, e] : by_degree) terms.push_back({m, std::move(e), d});
    }
    return terms;
}

/* mu_n extended over the ring: evaluates on one ordered tuple of terms
 * (a_1 (x) r_1, ..., a_n (x) r_n) and accumulates into `out`.
 * Sign: (-1)^{sum_k |r_k| * (|a_{k+1}| + .. + |a_n|)} times the ring sign of
 * r_1 * ... * r_n. */
void mu_ext_tuple(const CurvedAlgebra& alg, const EpsilonRing& ring,
                  const std::vector<const Term*>& tuple, const Rational& scale_by,
                  ExtendedElement& out) {
    int n = static_cast<int>(tuple.size());
    int sign = 1;
    EpsilonRing::Monomial mono = 0;
    int deg_suffix = 0;
    for (int k = n - 1; k >= 0; --k) {
        int rdeg = ring.monomial_degree(tuple[k]->mono);
        if ((rdeg & 1) && (deg_suffix & 1)) sign = -sign;
        deg_suffix += tuple[k]->value_degree;
    }
    for (int k = 0; k < n; ++k) {
        auto prod = ring.multiply(mono, tuple[k]->mono);
        if (prod.zero) return;
        sign *= prod.sign;
        mono = prod.monomial;
    }
    std::vector<Element> args;
    args.reserve(n);
    for (int k = 0; k < n; ++k) args.push_back(tuple[k]->value);
    Element v = eval_bracket(alg, n, args);
    if (v.is_zero()) return;
    out.add_term(mono, scale(scale_by * Rational(sign), v));
}

void for_each_tuple(const std::vector<Term>& pool, int n,
                    const std::function<void(const std::vector<const Term*>&)>& fn) {
    std::vector<const Term*> tuple(n);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) {
            fn(tuple);
            return;
        }
        for (const Term& t : pool) {
            tuple[k] = &t;
            rec(k + 1);
        }
    };
    rec(0);
}

}  // namespace

ExtendedElement eval_MR(const CurvedAlgebra& alg, const EpsilonRing& ring,
                        const ExtendedElement& x) {
    if (!x.is_homogeneous_of_total_degree(0))
        throw Error(ErrorCode::WrongDegree, "M^R takes total-degree-0 input");
    std::vector<Term> terms = collect_terms(x);
    ExtendedElement out(alg.space, &ring);
    for (int n = 0; n <= alg.brackets.max_arity(); ++n) {
        Rational c = Rational::inv_factorial(n);
        for_each_tuple(terms, n, [&](const std::vector<const Term*>& tuple) {
            mu_ext_tuple(alg, ring, tuple, c, out);
        });
    }
    return out;
}

ExtendedElement directional_derivative(const CurvedAlgebra& alg, const EpsilonRing& ring,
                                       const ExtendedElement& x, const ExtendedElement& v) {
    if (!x.is_homogeneous_of_total_degree(0))
        throw Error(ErrorCode::WrongDegree, "DM^R expands around total-degree-0 points");
    std::vector<Term> xt = collect_terms(x);
    std::vector<Term> vt = collect_terms(v);
    ExtendedElement out(alg.space, &ring);
    for (int n = 1; n <= alg.brackets.max_arity(); ++n) {
        // n/n! mu_n(v, x, .., x)
        Rational c = Rational(n) * Rational::inv_factorial(n);
        std::vector<const Term*> tuple(n);
        std::function<void(int)> rec = [&](int k) {
            if (k == n) {
                mu_ext_tuple(alg, ring, tuple, c, out);
                return;
            }
            for (const Term& t : xt) {
                tuple[k] = &t;
                rec(k + 1);
            }
        };
        for (const Term& first : vt) {
            tuple[0] = &first;
            rec(1);
        }
    }
    return out;
}

Element polarize(const CurvedAlgebra& alg, int n, const std::vector<int>& args) {
    if (n > alg.brackets.max_arity())
        throw Error(ErrorCode::ArityMismatch, "polarize arity exceeds maxArity");
    if (static_cast<int>(args.size()) != n)
        throw Error(ErrorCode::ArityMismatch, "polarize needs one basis id per slot");
    if (n == 0) return alg.curvature();

    std::vector<std::pair<std::string, int>> gens;
    for (int k = 0; k < n; ++k)
        gens.emplace_back("eps" + std::to_string(k + 1), -alg.space->at(args[k]).degree);
    EpsilonRing ring(std::move(gens));

    ExtendedElement x(alg.space, &ring);
    for (int k = 0; k < n; ++k)
        x.add_term(EpsilonRing::Monomial(1) << k, Element::basis(alg.space, args[k]));

    ExtendedElement M = eval_MR(alg, ring, x);
    Element coeff = M.term((EpsilonRing::Monomial(1) << n) - 1);

    // Every ordering contributes the same constant sign
    // (-1)^{sum_{i<j} d_i d_j}; divide it back out.
    int sign = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((alg.space->at(args[i]).degree & 1) && (alg.space->at(args[j]).degree & 1))
                sign = -sign;
    return sign == 1 ? coeff : neg(coeff);
}

static std::string render_defect(const EpsilonRing& ring, const ExtendedElement& e) {
    std::string s;
    for (const auto& [m, v] : e.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + std::to_string(v.coeffs().size()) + " term element)*" + ring.monomial_str(m);
    }
    return s;
}

MasterEquationReport check_master_equation(const CurvedAlgebra& alg, const EpsilonRing& ring,
                                           const std::vector<ExtendedElement>& samples) {
    MasterEquationReport report;
    for (size_t s = 0; s < samples.size(); ++s) {
        const ExtendedElement& x = samples[s];
        ExtendedElement M = eval_MR(alg, ring, x);

        ExtendedElement defect1 = directional_derivative(alg, ring, x, M);
        if (!defect1.is_zero())
            report.failures.push_back({static_cast<int>(s), true, render_defect(ring, defect1)});

        // Second form over R (x) K[eps]/eps^2 with deg eps = -1: the input
        // x (x) 1 + M^R(x) (x) eps must reproduce M^R(x) (x) 1. Brackets of
        // the wrong degree leave M inhomogeneous; that is itself a failure.
        if (!M.is_homogeneous_of_total_degree(1)) {
            report.failures.push_back(
                {static_cast<int>(s), false, "M^R output is not of total degree 1"});
            ++report.samples_checked;
            continue;
        }
        EpsilonRing ext = ring.extended("eps_odd", -1);
        EpsilonRing::Monomial eps_bit = EpsilonRing::Monomial(1) << ring.generator_count();
        ExtendedElement input(alg.space, &ext);
        for (const auto& [m, v] : x.terms()) input.add_term(m, v);
        for (const auto& [m, v] : M.terms()) input.add_term(m | eps_bit, v);

        ExtendedElement lhs = eval_MR(alg, ext, input);
        ExtendedElement rhs(alg.space, &ext);
        for (const auto& [m, v] : M.terms()) rhs.add_term(m, v);
        if (!(lhs == rhs)) {
            ExtendedElement diff = ext_add(lhs, ext_scale(Rational(-1), rhs));
            report.failures.push_back({static_cast<int>(s), false, render_defect(ext, diff)});
        }
        ++report.samples_checked;
    }
    return report;
}

OracleReport run_oracle(const CurvedAlgebra& alg) {
    OracleReport report;
    const SpacePtr& sp = alg.space;

    for (int n : alg.brackets.arities_present()) {
        for (const auto& [tuple, value] : alg.brackets.entries(n)) {
            if (!(polarize(alg, n, tuple) == value)) {
                report.polarize_matches = false;
                report.polarize_mismatches.emplace_back(n, tuple);
            }
        }
    }

    bool compatible = check_filtration_compatibility(alg).pass();
    int max_arity = alg.brackets.max_arity();
    int bound = 2 * max_arity - 1;
    if (compatible) bound = std::min(bound, sp->nilpotency_bound() - 1);
    int weight_bound = compatible ? sp->nilpotency_bound() : kWeightInfinity;

    // n = 0: the plain master equation over the trivial ring at x = 0.
    {
        EpsilonRing trivial = EpsilonRing::trivial();
        std::vector<ExtendedElement> samples{ExtendedElement(sp, &trivial)};
        MasterEquationReport r0 = check_master_equation(alg, trivial, samples);
        if (!r0.pass()) report.master_failures.emplace_back(0, r0);
    }

    // One degree-compensating sample per sorted basis tuple, n up to the
    // same cutoff check_relations enumerates.
    std::function<void(int, int, std::vector<int>&)> rec = [&](int n, int start,
                                                               std::vector<int>& tuple) {
        if (static_cast<int>(tuple.size()) == n) {
            std::vector<std::pair<std::string, int>> gens;
            for (size_t k = 0; k < tuple.size(); ++k)
                gens.emplace_back("eps" + std::to_string(k + 1), -sp->at(tuple[k]).degree);
            EpsilonRing ring(std::move(gens));
            ExtendedElement x(sp, &ring);
            for (size_t k = 0; k < tuple.size(); ++k)
                x.add_term(EpsilonRing::Monomial(1) << k, Element::basis(sp, tuple[k]));
            MasterEquationReport r = check_master_equation(alg, ring, {x});
            if (!r.pass()) report.master_failures.emplace_back(n, r);
            return;
        }
        int acc = 0;
        for (int i : tuple) acc += sp->at(i).weight;
        for (int i = start; i < sp->dim(); ++i) {
            if (weight_bound != kWeightInfinity &&
                acc + sp->at(i).weight + (n - 1 - static_cast<int>(tuple.size())) >= weight_bound)
                continue;
            tuple.push_back(i);
            rec(n, i, tuple);
            tuple.pop_back();
        }
    };
    for (int n = 1; n <= bound; ++n) {
        std::vector<int> tuple;
        rec(n, 0, tuple);
    }
    return report;
}

}  // namespace lix
