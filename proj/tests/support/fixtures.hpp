#pragma once

#include <string>
#include <vector>

#include "lix/ainfty.hpp"
#include "lix/curved_algebra.hpp"

namespace lixtest {

using namespace lix;

/* S1 and the three running curved algebras used across the suites. */

inline SpacePtr space_S1() {
    return build_space({{"e0", 0, 2}, {"e1", 1, 3}});
}

// mu_0 = e1, mu_1(e0) = e1
inline CurvedAlgebra algebra_A1() {
    SpacePtr s = space_S1();
    CurvedAlgebra alg{s, BracketSet(3)};
    alg.brackets.set_entry(s, {}, Element::basis(s, 1));
    alg.brackets.set_entry(s, {0}, Element::basis(s, 1));
    return alg;
}

// b:deg0 w2, e:deg0 w3, c:deg1 w3, d:deg1 w4; mu_0 = c, mu_1(b) = c,
// mu_1(e) = d, mu_2(b,b) = 2d
inline CurvedAlgebra algebra_A2() {
    SpacePtr s = build_space({{"b", 0, 2}, {"e", 0, 3}, {"c", 1, 3}, {"d", 1, 4}});
    CurvedAlgebra alg{s, BracketSet(3)};
    alg.brackets.set_entry(s, {}, Element::basis(s, 2));
    alg.brackets.set_entry(s, {0}, Element::basis(s, 2));
    alg.brackets.set_entry(s, {1}, Element::basis(s, 3));
    alg.brackets.set_entry(s, {0, 0}, Element::basis(s, 3, Rational(2)));
    return alg;
}

// a:deg0 w1, c:deg1 w3; mu_0 = c, mu_1(a) = c, mu_2(a,a) = 2c
inline CurvedAlgebra algebra_A3() {
    SpacePtr s = build_space({{"a", 0, 1}, {"c", 1, 3}});
    CurvedAlgebra alg{s, BracketSet(3)};
    alg.brackets.set_entry(s, {}, Element::basis(s, 1));
    alg.brackets.set_entry(s, {0}, Element::basis(s, 1));
    alg.brackets.set_entry(s, {0, 0}, Element::basis(s, 1, Rational(2)));
    return alg;
}

inline Element el(const SpacePtr& s, std::vector<std::pair<int, long>> coeffs) {
    Element e(s);
    for (auto [i, c] : coeffs) e.add_coeff(i, Rational(c));
    return e;
}

/* k[x]/x^2 as a shifted strict algebra: both generators in degree -1, the
 * unit e and the square-zero x. */
inline AInftyAlgebra ainfty_kx2(int weight_cap = 3) {
    SpacePtr s = build_space({{"e", -1, 1}, {"x", -1, 1}});
    std::map<int, std::map<Word, Element>> ops;
    ops[2][{0, 0}] = Element::basis(s, 0);
    ops[2][{0, 1}] = Element::basis(s, 1);
    ops[2][{1, 0}] = Element::basis(s, 1);
    return build_ainfty(s, std::move(ops), weight_cap);
}

/* Trivial products, one triple product into a degree-compensating line. */
inline AInftyAlgebra ainfty_m3_htt(int weight_cap = 3) {
    SpacePtr s = build_space({{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 1}});
    std::map<int, std::map<Word, Element>> ops;
    ops[3][{0, 0, 0}] = Element::basis(s, 2);
    return build_ainfty(s, std::move(ops), weight_cap);
}

inline AInftyAlgebra ainfty_m3_h(int weight_cap = 3) {
    SpacePtr s = build_space({{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 1}});
    return build_ainfty(s, {}, weight_cap);
}

}  // namespace lixtest
