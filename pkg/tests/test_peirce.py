import math
import random

import pytest

from evanescent.magma import (
    T_FRESH,
    Variable,
    X,
    Y,
    Z,
    leaf,
    left_iterate,
    monomials_of_type,
    principal_power,
    product,
)
from evanescent.peirce import (
    EvanescenceError,
    PeircePolynomial,
    delta,
    is_evanescent,
    linearize,
    make_identity,
    peirce_recursive,
    peirce_tree,
)
from evanescent.poly import Polynomial
from evanescent.rationals import Q
from evanescent.syntax import parse, parse_monomial

from conftest import random_monomial, random_polynomial


def upoly(*coeffs):
    return PeircePolynomial(coeffs)


class TestPeircePolynomial:
    def test_basics(self):
        p = upoly(0, 1, 2)
        assert p.degree() == 2
        assert p.valuation() == 1
        assert p(1) == 3
        assert p(Q(1, 2)) == Q(1) == Q(1, 2) + 2 * Q(1, 4)
        assert upoly().is_zero
        assert upoly(0, 0) == upoly()

    def test_arith(self):
        assert upoly(1, 2) + upoly(0, -2) == upoly(1)
        assert upoly(0, 1) * upoly(0, 1) == upoly(0, 0, 1)
        assert upoly(1, 1).shift(2) == upoly(0, 0, 1, 1)
        assert upoly(2, 4).scale(Q(1, 2)) == upoly(1, 2)

    def test_to_string(self):
        assert upoly().to_string() == "0"
        assert upoly(0, 1, 0, 3).to_string() == "3t^3 + t"
        assert upoly(-1, Q(3, 4)).to_string() == "3/4t - 1"
        assert upoly(0, 0, 1).to_string("X") == "X^2"


def test_worked_example_both_algorithms():
    w = parse_monomial("((t1 t2) t2)(t3^2) ((t1^2 t3) t1)")
    expected = {1: upoly(0, 0, 1, 0, 3), 2: upoly(0, 0, 0, 1, 1), 3: upoly(0, 0, 0, 3)}
    for idx, want in expected.items():
        assert peirce_recursive(w, idx) == want
        assert peirce_tree(w, idx) == want


def test_leaf_cases():
    assert peirce_recursive(Polynomial.variable(X), X) == upoly(1)
    assert peirce_recursive(Polynomial.variable(X), Y) == upoly()
    assert peirce_tree(leaf(X), X) == upoly(1)


def test_plenary_square_heights():
    w = parse_monomial("x^2 x^2")
    assert peirce_tree(w, X) == upoly(0, 0, 4)


def test_principal_power_peirce():
    # d(x^k) = 2t^(k-1) + t^(k-2) + ... + t
    w = principal_power(X, 5)
    assert peirce_recursive(w, X) == upoly(0, 1, 1, 1, 2)


def test_left_iterate_peirce():
    w = left_iterate(X, 3, leaf(Y))
    assert peirce_recursive(w, Y) == upoly(0, 0, 0, 1)
    assert peirce_recursive(w, X) == upoly(0, 1, 1, 1)


def test_algorithms_agree_on_random_monomials(rng):
    for _ in range(2000):
        w = random_monomial(rng, max_degree=8)
        for v in (1, 2, 3):
            assert peirce_recursive(w, v) == peirce_tree(w, v)


def test_algorithms_agree_on_enumerated_types():
    for ty in [(6,), (5, 1), (4, 2), (3, 1, 1)]:
        for w in monomials_of_type(ty):
            for i in range(len(ty)):
                v = Variable(i + 1)
                assert peirce_recursive(w, v) == peirce_tree(w, v)


def test_corollary_properties(rng):
    for _ in range(400):
        w = random_monomial(rng, max_degree=8)
        for v in (X, Y, Z):
            p = peirce_recursive(w, v)
            # (a) natural coefficients
            assert all(c >= 0 and c == int(c) for c in p.coeffs)
            # (c) degree bound
            assert p.degree() <= w.degree - 1
            # (d) value at 1 counts occurrences
            assert p(1) == sum(c for i, c in w.counts if i == v.index)
        # (b) degree equals the maximal height of matching leaves
        heights = {}
        stack = [(w, 0)]
        while stack:
            node, h = stack.pop()
            if node.is_leaf:
                heights.setdefault(node.var.index, []).append(h)
            else:
                stack.append((node.left, h + 1))
                stack.append((node.right, h + 1))
        for idx, hs in heights.items():
            assert peirce_recursive(w, idx).degree() == max(hs)


def test_valuation_rule(rng):
    # val d(uv) = min(val d(u), val d(v)) + 1 when both factors contain
    # the variable, max(...) + 1 when exactly one does
    for _ in range(300):
        u = random_monomial(rng, max_degree=5)
        v = random_monomial(rng, max_degree=5)
        w = product(u, v)
        for var in (1, 2, 3):
            pu, pv = peirce_tree(u, var), peirce_tree(v, var)
            pw = peirce_tree(w, var)
            if pu.is_zero and pv.is_zero:
                assert pw.is_zero
                continue
            if pu.is_zero or pv.is_zero:
                expected = max(pu.valuation(), pv.valuation()) + 1
            else:
                expected = min(pu.valuation(), pv.valuation()) + 1
            assert pw.valuation() == expected


def test_product_rule(rng):
    for _ in range(200):
        f = random_polynomial(rng, max_degree=4)
        g = random_polynomial(rng, max_degree=4)
        for v in (1, 2, 3):
            lhs = peirce_recursive(f * g, v)
            rhs = (
                peirce_recursive(g, v).scale(f.at_ones())
                + peirce_recursive(f, v).scale(g.at_ones())
            ).shift()
            assert lhs == rhs


def test_evanescent_examples():
    good = is_evanescent(parse("x^2 x^2 - 2 x^3 + x^2"))
    assert good.is_peirce_evanescent and good.is_evanescent_identity

    bad = is_evanescent(parse("x^2 - x"))
    assert not bad.is_peirce_evanescent
    assert bad.peirce[X] == upoly(-1, 2)

    two_var = is_evanescent(parse("(x y)(x y) - 2 (x y) y + y^2"))
    assert two_var.is_evanescent_identity


def test_zero_polynomial_is_not_evanescent():
    rep = is_evanescent(Polynomial.zero())
    assert not rep.is_peirce_evanescent
    assert not rep.is_evanescent_identity


def test_evanescent_ideal(rng):
    f = parse("x^2 x^2 - 2 x^3 + x^2")
    for _ in range(40):
        g = random_polynomial(rng, max_degree=4)
        if not g:
            continue
        rep = is_evanescent(f * g)
        assert rep.is_peirce_evanescent


def test_substitution_with_coefficient_sum_one_preserves_evanescence():
    # the product rule d(FG) = t(F(1) dG + G(1) dF) gives the chain rule
    # d_j(f(h)) = sum_i d_i(f) d_j(h_i) whenever every h_i has
    # coefficient sum 1, so evanescent polynomials stay evanescent
    f = parse("x^2 x^2 - 2 x^3 + x^2")
    g = f.substitute({X: parse("1/2 (x^2 + x)")})
    assert peirce_recursive(g, X).is_zero
    assert is_evanescent(g).is_evanescent_identity


def test_chain_rule_for_normalized_substitution(rng):
    for _ in range(150):
        f = random_polynomial(rng, max_degree=4)
        bindings = {}
        usable = bool(f.variables())
        for v in f.variables():
            h = random_polynomial(rng, max_degree=3)
            total = h.at_ones()
            if not total:
                usable = False
                break
            bindings[v] = h.scale(1 / Q(total))
        if not usable:
            continue
        g = f.substitute(bindings)
        for j in (1, 2, 3):
            expected = PeircePolynomial()
            for v in f.variables():
                expected = expected + peirce_recursive(f, v) * peirce_recursive(
                    bindings[v], j
                )
            assert peirce_recursive(g, j) == expected


def test_unnormalized_substitution_breaks_evanescence():
    f = parse("x^2 x^2 - 2 x^3 + x^2")
    g = f.substitute({X: parse("2 x")})
    assert peirce_recursive(g, X) == upoly(0, -8, 32)
    assert not is_evanescent(g).is_peirce_evanescent


def test_delta_examples():
    t = Polynomial.variable(T_FRESH)
    x2 = parse("x^2")
    assert delta(x2, X, t) == Polynomial.monomial(
        product(leaf(X), leaf(T_FRESH)), 2
    )
    assert delta(parse("x y"), X, t) == Polynomial.monomial(
        product(leaf(T_FRESH), leaf(Y))
    )
    assert delta(parse("y"), X, t) == Polynomial.zero()


def test_linearize_components():
    x2 = parse("x^2")
    comps = linearize(x2, X)
    assert comps[0] == x2
    assert comps[1] == Polynomial.monomial(product(leaf(X), leaf(T_FRESH)), 2)
    assert comps[2] == Polynomial.monomial(product(leaf(T_FRESH), leaf(T_FRESH)))


def test_linearize_zeroth_is_identity(rng):
    for _ in range(50):
        f = random_polynomial(rng)
        assert linearize(f, X)[0] == f


def test_linearize_first_matches_delta(rng):
    t = Polynomial.variable(T_FRESH)
    for _ in range(100):
        w = random_monomial(rng, max_degree=6)
        f = Polynomial.monomial(w)
        comps = linearize(f, Y)
        if len(comps) > 1:
            assert comps[1] == delta(f, Y, t)


def test_iterated_delta_is_factorial_times_component(rng):
    # d applied k times equals k! times the k-th linearization component
    t = Polynomial.variable(T_FRESH)
    for _ in range(60):
        w = random_monomial(rng, variables=(1, 2), max_degree=6)
        f = Polynomial.monomial(w)
        comps = linearize(f, X)
        dk = f
        for k in range(1, len(comps)):
            dk = delta(dk, X, t)
            assert dk == comps[k].scale(math.factorial(k))


def test_make_identity_validates():
    ident = make_identity(parse("x^2 x^2 - 2 x^3 + x^2"), train=True, ty=(4,))
    assert ident.train and ident.type == (4,)
    with pytest.raises(EvanescenceError):
        make_identity(parse("x^2 - x"))
