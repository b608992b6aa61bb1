#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lix/graded_space.hpp"

namespace lix {

using Word = std::vector<int>;  // basis indices of the underlying space

/* Arity- and weight-truncated A-infinity algebra in the shifted convention:
 * every structure map m_n : A^{(x)n} -> A has degree +1 and is given on
 * basis words. Words are meaningful up to length weightCap + 1. */
struct AInftyAlgebra {
    SpacePtr space;
    int weight_cap = 1;
    // arity -> (basis word -> value); absent entries are zero
    std::map<int, std::map<Word, Element>> ops;

    Element op(int arity, const Word& word) const;
    // Multilinear extension to words with general element letters.
    Element op_elements(int arity, const std::vector<Element>& letters) const;
    int max_op_arity() const;
    LinearMap differential() const;  // m_1 as a linear map A -> A
    bool is_strict() const;          // no ops outside arity 2
};

/* The truncated tensor coalgebra: one basis word per tuple of letters, word
 * lengths 1..weightCap+1. The coalgebra weight of a word is length - 1; the
 * GradedSpace weight stored here is the length (weights must be >= 1). */
struct BarCoalgebra {
    SpacePtr word_space;
    std::vector<Word> words;        // indexed like word_space basis
    std::map<Word, int> word_index;
    int weight_cap = 1;

    int index_of(const Word& w) const;  // -1 beyond the truncation
};

BarCoalgebra bar_coalgebra(const AInftyAlgebra& A);

/* Coderivation of the structure maps on the truncated tensor coalgebra:
 * d(a_1..a_n) = sum over consecutive blocks, with the Koszul sign of moving
 * the odd structure map past the prefix,
 *   (-1)^{|a_1|+..+|a_{i-1}|} (a_1 .. m_s(a_i..a_{i+s-1}) .. a_n).
 * The co-operadic co-differential part is zero for the associative case and
 * is kept as a separate (identically zero) term in the API. */
LinearMap bar_differential(const AInftyAlgebra& A, const BarCoalgebra& bar);
LinearMap bar_differential_d1(const AInftyAlgebra& A, const BarCoalgebra& bar);  // co-operadic part
LinearMap bar_differential_d2(const AInftyAlgebra& A, const BarCoalgebra& bar);  // block collapses

struct StasheffViolationEntry {
    Word word;
    Element defect;  // element of the bar word space
};

struct StasheffReport {
    std::vector<StasheffViolationEntry> violations;
    int checked_word_length = 0;  // relations beyond are truncation-vacuous
    bool pass() const { return violations.empty(); }
};

// d(d(word)) through the truncation, word by word.
StasheffReport validate_ainfty(const AInftyAlgebra& A);

/* Validated constructor; throws StasheffViolation naming the first bad word.
 * Also rejects ops whose degree is not +1. */
AInftyAlgebra build_ainfty(SpacePtr space, std::map<int, std::map<Word, Element>> ops,
                           int weight_cap);

}  // namespace lix
