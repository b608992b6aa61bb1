#pragma once

#include <vector>

#include "lix/rational.hpp"

namespace lix {

/* Permutations in one-line notation on {1..n}: images[k-1] = sigma(k). */
struct Permutation {
    std::vector<int> images;

    int n() const { return static_cast<int>(images.size()); }
    int operator()(int k) const { return images[k - 1]; }  // 1-based

    static Permutation identity(int n);
    Permutation inverse() const;
    // (a * b)(k) = a(b(k))
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    bool is_valid() const;
};

/* All sigma with sigma(1) < ... < sigma(i) and sigma(i+1) < ... < sigma(i+j),
 * in lexicographic order of the first block. |result| = binomial(i+j, i). */
std::vector<Permutation> unshuffles(int i, int j);

/* Shifted Koszul sign of sigma on arguments of the given degrees: the sign
 * epsilon with x_{sigma(1)} (.) ... (.) x_{sigma(n)} = epsilon * x_1 (.) ... (.) x_n
 * in the free graded-commutative algebra. Computed by bubble-sort
 * factorization (memoized); independent of the factorization. */
int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees);

/* Sign for sorting an index word: permutation that stably sorts `word`
 * ascending, with degrees[k] the degree attached to word[k]. Returns the
 * Koszul sign picked up by that sort. */
int sort_sign(std::vector<int> word, std::vector<int> degrees);

}  // namespace lix
