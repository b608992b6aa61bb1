#include "lix/ainfty.hpp"

#include <algorithm>
#include <functional>

#include "lix/error.hpp"

namespace lix {

Element AInftyAlgebra::op(int arity, const Word& word) const {
    auto ait = ops.find(arity);
    if (ait == ops.end()) return Element::zero(space);
    auto it = ait->second.find(word);
    return it == ait->second.end() ? Element::zero(space) : it->second;
}

Element AInftyAlgebra::op_elements(int arity, const std::vector<Element>& letters) const {
    Element out(space);
    if (ops.find(arity) == ops.end()) return out;
    Word word(arity);
    std::function<void(int, Rational)> rec = [&](int k, Rational coeff) {
        if (k == arity) {
            out = add(out, scale(coeff, op(arity, word)));
            return;
        }
        for (const auto& [i, c] : letters[k].coeffs()) {
            word[k] = i;
            rec(k + 1, coeff * c);
        }
    };
    rec(0, Rational(1));
    return out;
}

int AInftyAlgebra::max_op_arity() const {
    int m = 0;
    for (const auto& [n, table] : ops)
        if (!table.empty()) m = std::max(m, n);
    return m;
}

LinearMap AInftyAlgebra::differential() const {
    LinearMap d;
    d.domain = space;
    d.codomain = space;
    d.degree_shift = 1;
    for (int i = 0; i < space->dim(); ++i) d.set_column(i, op(1, {i}));
    return d;
}

bool AInftyAlgebra::is_strict() const {
    for (const auto& [n, table] : ops)
        if (n != 2 && !table.empty()) return false;
    return true;
}

static std::string word_id(const SpacePtr& sp, const Word& w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ".";
        s += sp->at(w[k]).id;
    }
    return s;
}

BarCoalgebra bar_coalgebra(const AInftyAlgebra& A) {
    BarCoalgebra bar;
    bar.weight_cap = A.weight_cap;
    std::vector<BasisVector> basis;
    if (A.space->dim() == 0) {
        bar.word_space = build_space({});
        return bar;
    }
    for (int len = 1; len <= A.weight_cap + 1; ++len) {
        // words of fixed length, lexicographic in the letter indices
        Word w(len, 0);
        while (true) {
            int deg = 0;
            for (int i : w) deg += A.space->at(i).degree;
            bar.word_index[w] = static_cast<int>(bar.words.size());
            bar.words.push_back(w);
            basis.push_back({word_id(A.space, w), deg, len});
            int pos = len - 1;
            while (pos >= 0 && w[pos] == A.space->dim() - 1) --pos;
            if (pos < 0) break;
            ++w[pos];
            for (int k = pos + 1; k < len; ++k) w[k] = 0;
        }
    }
    bar.word_space = build_space(std::move(basis));
    return bar;
}

int BarCoalgebra::index_of(const Word& w) const {
    auto it = word_index.find(w);
    return it == word_index.end() ? -1 : it->second;
}

LinearMap bar_differential_d1(const AInftyAlgebra&, const BarCoalgebra& bar) {
    // The co-operadic co-differential vanishes for the associative cooperad;
    // this term is the seam for inhomogeneous generating sets.
    LinearMap d;
    d.domain = bar.word_space;
    d.codomain = bar.word_space;
    d.degree_shift = 1;
    return d;
}

LinearMap bar_differential_d2(const AInftyAlgebra& A, const BarCoalgebra& bar) {
    LinearMap d;
    d.domain = bar.word_space;
    d.codomain = bar.word_space;
    d.degree_shift = 1;
    int max_op = A.max_op_arity();
    for (size_t wi = 0; wi < bar.words.size(); ++wi) {
        const Word& w = bar.words[wi];
        int len = static_cast<int>(w.size());
        Element col(bar.word_space);
        int prefix_deg = 0;
        for (int start = 0; start < len; ++start) {
            for (int blk = 1; blk <= max_op && start + blk <= len; ++blk) {
                Word block(w.begin() + start, w.begin() + start + blk);
                Element collapsed = A.op(blk, block);
                if (collapsed.is_zero()) continue;
                int sign = (prefix_deg & 1) ? -1 : 1;
                for (const auto& [t, c] : collapsed.coeffs()) {
                    Word out;
                    out.reserve(len - blk + 1);
                    out.insert(out.end(), w.begin(), w.begin() + start);
                    out.push_back(t);
                    out.insert(out.end(), w.begin() + start + blk, w.end());
                    int oi = bar.index_of(out);
                    if (oi < 0)
                        throw Error(ErrorCode::Internal, "collapsed word left the truncation");
                    col.add_coeff(oi, Rational(sign) * c);
                }
            }
            prefix_deg += A.space->at(w[start]).degree;
        }
        if (!col.is_zero()) d.set_column(static_cast<int>(wi), col);
    }
    return d;
}

LinearMap bar_differential(const AInftyAlgebra& A, const BarCoalgebra& bar) {
    return bar_differential_d2(A, bar);  // d1 is identically zero here
}

StasheffReport validate_ainfty(const AInftyAlgebra& A) {
    StasheffReport report;
    report.checked_word_length = A.weight_cap + 1;
    BarCoalgebra bar = bar_coalgebra(A);
    LinearMap d = bar_differential(A, bar);
    for (size_t wi = 0; wi < bar.words.size(); ++wi) {
        Element dd = d.apply(d.apply_basis(static_cast<int>(wi)));
        if (!dd.is_zero()) report.violations.push_back({bar.words[wi], dd});
    }
    return report;
}

AInftyAlgebra build_ainfty(SpacePtr space, std::map<int, std::map<Word, Element>> ops,
                           int weight_cap) {
    if (weight_cap < 1)
        throw Error(ErrorCode::PreconditionViolated, "weightCap must be >= 1");
    AInftyAlgebra A{std::move(space), weight_cap, std::move(ops)};
    for (const auto& [n, table] : A.ops) {
        if (n < 1 || n > weight_cap + 1)
            throw Error(ErrorCode::PreconditionViolated,
                        "structure map arity " + std::to_string(n) +
                            " outside 1..weightCap+1");
        for (const auto& [word, value] : table) {
            if (static_cast<int>(word.size()) != n)
                throw Error(ErrorCode::PreconditionViolated, "word length differs from arity");
            int deg = 1;
            for (int i : word) deg += A.space->at(i).degree;
            if (!is_homogeneous_of_degree(value, deg))
                throw Error(ErrorCode::WrongDegree,
                            "structure maps must have degree +1 (shifted convention)");
        }
    }
    StasheffReport report = validate_ainfty(A);
    if (!report.pass())
        throw Error(ErrorCode::StasheffViolation,
                    "coderivation square fails on word '" +
                        word_id(A.space, report.violations.front().word) + "' (+" +
                        std::to_string(report.violations.size() - 1) + " more)");
    return A;
}

}  // namespace lix
