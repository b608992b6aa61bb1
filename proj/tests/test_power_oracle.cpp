#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lix/error.hpp"
#include "lix/power_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebras.hpp"

using namespace lix;
using namespace lixtest;

TEST_CASE("eval_MR over the trivial ring is the maurer-cartan defect") {
    CurvedAlgebra a2 = algebra_A2();
    EpsilonRing trivial = EpsilonRing::trivial();
    Element x = neg(add(Element::basis(a2.space, 0), Element::basis(a2.space, 1)));
    ExtendedElement xe = ExtendedElement::from_element(x, &trivial);
    ExtendedElement M = eval_MR(a2, trivial, xe);
    CHECK(M.term(0) == mc_defect(a2, x));
    CHECK(M.terms().size() <= 1);

    // x = 0 gives the curvature
    ExtendedElement zero(a2.space, &trivial);
    CHECK(eval_MR(a2, trivial, zero).term(0) == a2.curvature());
}

TEST_CASE("eval_MR on an abelian algebra is mu_0 + mu_1") {
    SpacePtr s = build_space({{"u", 0, 1}, {"v", 1, 2}, {"w", 1, 1}});
    CurvedAlgebra alg{s, BracketSet(3)};
    alg.brackets.set_entry(s, {}, Element::basis(s, 2));
    alg.brackets.set_entry(s, {0}, Element::basis(s, 1));

    EpsilonRing ring({{"eps1", 0}, {"eps2", 0}});
    ExtendedElement x(s, &ring);
    x.add_term(1, Element::basis(s, 0, Rational(2)));
    x.add_term(2, Element::basis(s, 0, Rational(-3)));

    ExtendedElement M = eval_MR(alg, ring, x);
    CHECK(M.term(0) == Element::basis(s, 2));
    CHECK(M.term(1) == Element::basis(s, 1, Rational(2)));
    CHECK(M.term(2) == Element::basis(s, 1, Rational(-3)));
    CHECK(M.term(3).is_zero());
}

TEST_CASE("eval_MR picks up the polarized mu_2 coefficient") {
    CurvedAlgebra a2 = algebra_A2();
    EpsilonRing ring({{"eps1", 0}, {"eps2", 0}});
    ExtendedElement x(a2.space, &ring);
    x.add_term(1, Element::basis(a2.space, 0));  // b (x) eps1
    x.add_term(2, Element::basis(a2.space, 0));  // b (x) eps2
    ExtendedElement M = eval_MR(a2, ring, x);
    // 1/2 * 2 * mu_2(b,b) = 2d on the eps1 eps2 monomial
    CHECK(M.term(3) == Element::basis(a2.space, 3, Rational(2)));
}

TEST_CASE("polarize matches the stored entries") {
    CurvedAlgebra a1 = algebra_A1();
    CHECK(polarize(a1, 1, {0}) == Element::basis(a1.space, 1));

    CurvedAlgebra a2 = algebra_A2();
    CHECK(polarize(a2, 2, {0, 0}) == Element::basis(a2.space, 3, Rational(2)));
    CHECK(polarize(a2, 2, {0, 1}).is_zero());
    CHECK_THROWS_AS(polarize(a2, 4, {0, 0, 0, 0}), Error);
}

TEST_CASE("polarize equals eval_bracket on random raw algebras") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        CurvedAlgebra alg = random_raw(rng);
        for (int n : alg.brackets.arities_present())
            for (const auto& [tuple, value] : alg.brackets.entries(n))
                CHECK(polarize(alg, n, tuple) == value);
    }
}

TEST_CASE("directional derivative") {
    // abelian: DM(x)[v] = mu_1(v)
    SpacePtr s = build_space({{"u", 0, 1}, {"v", 1, 2}});
    CurvedAlgebra alg{s, BracketSet(2)};
    alg.brackets.set_entry(s, {0}, Element::basis(s, 1));
    EpsilonRing trivial = EpsilonRing::trivial();
    ExtendedElement x = ExtendedElement::from_element(Element::basis(s, 0), &trivial);
    ExtendedElement dm = directional_derivative(alg, trivial, x,
                                                ExtendedElement::from_element(
                                                    Element::basis(s, 0, Rational(5)),
                                                    &trivial));
    CHECK(dm.term(0) == Element::basis(s, 1, Rational(5)));

    // v = 0 gives 0
    ExtendedElement zero(s, &trivial);
    CHECK(directional_derivative(alg, trivial, x, zero).is_zero());

    // A2 at x = -b-e: DM(x)[v] = mu_1(v) + mu_2(x, v)
    CurvedAlgebra a2 = algebra_A2();
    Element xb = neg(add(Element::basis(a2.space, 0), Element::basis(a2.space, 1)));
    Element vv = Element::basis(a2.space, 0, Rational(3));
    ExtendedElement got = directional_derivative(
        a2, trivial, ExtendedElement::from_element(xb, &trivial),
        ExtendedElement::from_element(vv, &trivial));
    Element expected = add(eval_bracket(a2, 1, {vv}), eval_bracket(a2, 2, {xb, vv}));
    CHECK(got.term(0) == expected);
}

TEST_CASE("check_master_equation on A1 samples") {
    CurvedAlgebra a1 = algebra_A1();
    EpsilonRing trivial = EpsilonRing::trivial();
    std::vector<ExtendedElement> samples;
    samples.push_back(ExtendedElement(a1.space, &trivial));
    samples.push_back(
        ExtendedElement::from_element(neg(Element::basis(a1.space, 0)), &trivial));
    samples.push_back(ExtendedElement::from_element(Element::basis(a1.space, 0), &trivial));
    CHECK(check_master_equation(a1, trivial, samples).pass());

    CurvedAlgebra broken = a1;
    broken.brackets.set_entry(broken.space, {1}, Element::basis(broken.space, 1));
    MasterEquationReport rep = check_master_equation(broken, trivial, samples);
    REQUIRE_FALSE(rep.pass());
    CHECK(rep.failures.front().sample == 0);
}

TEST_CASE("abelian flat algebras always pass") {
    SpacePtr s = build_space({{"u", 0, 1}, {"v", 1, 2}});
    CurvedAlgebra alg{s, BracketSet(2)};
    alg.brackets.set_entry(s, {0}, Element::basis(s, 1));
    EpsilonRing trivial = EpsilonRing::trivial();
    std::vector<ExtendedElement> samples;
    samples.push_back(ExtendedElement::from_element(Element::basis(s, 0), &trivial));
    samples.push_back(ExtendedElement(s, &trivial));
    CHECK(check_master_equation(alg, trivial, samples).pass());
}

TEST_CASE("oracle equivalence on fixtures") {
    CHECK(run_oracle(algebra_A1()).pass());
    CHECK(run_oracle(algebra_A2()).pass());
    CHECK(run_oracle(algebra_A3()).pass());

    CurvedAlgebra broken = algebra_A1();
    broken.brackets.set_entry(broken.space, {1}, Element::basis(broken.space, 1));
    CHECK_FALSE(run_oracle(broken).pass());
}

TEST_CASE("oracle equivalence on random algebras, both directions") {
    Rng rng(22);
    int passes = 0, fails = 0;
    for (int trial = 0; trial < 30; ++trial) {
        CurvedAlgebra alg = [&]() {
            switch (trial % 3) {
                case 0: return random_curved_valid(rng, 4);
                case 1: return random_raw(rng, 4);
                default: return random_invalid_direct(rng);
            }
        }();
        bool relations = check_relations(alg, 2 * alg.brackets.max_arity() - 1).pass();
        bool master = run_oracle(alg).pass();
        CHECK(relations == master);
        (relations ? passes : fails)++;
    }
    // make sure both populations actually occurred
    CHECK(passes > 0);
    CHECK(fails > 0);
}

TEST_CASE("twist compatibility of the power series") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        CurvedAlgebra alg = random_curved_valid(rng, 3);
        Element beta = random_degree0(rng, alg.space);
        CurvedAlgebra tw = twist(alg, beta);

        EpsilonRing ring({{"eps1", 0}, {"eps2", 0}});
        ExtendedElement x(alg.space, &ring);
        Element a = random_degree0(rng, alg.space);
        Element b = random_degree0(rng, alg.space);
        x.add_term(1, a);
        x.add_term(2, b);

        ExtendedElement lhs = eval_MR(tw, ring, x);
        ExtendedElement shifted = x;
        shifted.add_term(0, beta);
        ExtendedElement rhs = eval_MR(alg, ring, shifted);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("epsilon ring multiplication") {
    EpsilonRing ring({{"a", -1}, {"b", 0}, {"c", 1}});
    auto p = ring.multiply(1, 1);
    CHECK(p.zero);  // a*a = 0
    p = ring.multiply(1, 2);
    CHECK_FALSE(p.zero);
    CHECK(p.sign == 1);
    CHECK(p.monomial == 3);
    // c * a = -(a * c): both odd
    auto ca = ring.multiply(4, 1);
    auto ac = ring.multiply(1, 4);
    CHECK(ca.sign == -ac.sign);
    CHECK(ca.monomial == ac.monomial);
    CHECK(ring.monomial_degree(5) == 0);  // a*c
}
