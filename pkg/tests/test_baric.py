import json
import random

import pytest

from evanescent import baric
from evanescent.baric import (
    AlgebraError,
    BaricAlgebra,
    MutationSpec,
    VerificationResult,
    apply_univariate,
    char_poly,
    evaluate,
    left_mult_matrix,
    load_algebra,
    make_mutation,
    random_baric_algebra,
    random_mutation_algebra,
    rational_roots,
    spectrum_algebra,
    verify_identity,
    weighted_evaluate,
)
from evanescent.magma import X, Y
from evanescent.peirce import PeircePolynomial
from evanescent.poly import Polynomial, UnboundVariableError
from evanescent.rationals import ONE, Q, ZERO
from evanescent.syntax import parse

from conftest import random_polynomial


def test_one_dimensional_field():
    algebra, e = spectrum_algebra([])
    assert algebra.dim == 1
    assert algebra.mul(e, e) == e
    assert left_mult_matrix(algebra, e) == [[1]]


def test_mutation_scales_kernel_eigenvectors():
    lam = Q(3, 2)
    algebra, e = spectrum_algebra([lam])
    e1 = (ZERO, ONE)
    assert algebra.mul(e, e1) == (ZERO, lam)


def test_mutation_validation():
    with pytest.raises(AlgebraError):
        make_mutation(MutationSpec.make([[2, 0], [0, 1]], [1, 0]))  # w not fixed
    with pytest.raises(AlgebraError):
        make_mutation(MutationSpec.make([[1, 0], [0, 1]], [0, 0]))  # w = 0


def test_kernel_products_vanish():
    rng = random.Random(17)
    for dim in (2, 3, 4, 5):
        algebra = random_mutation_algebra(rng, dim)
        kernel = algebra.kernel_basis()
        for a in kernel:
            for b in kernel:
                assert algebra.mul(a, b) == algebra.zero_vector()


def test_constructor_validation():
    # non-commutative structure constants
    structure = [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(AlgebraError):
        BaricAlgebra(2, structure, [1, 0])
    # weight not a character
    structure = [[[1, 1], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises(AlgebraError):
        BaricAlgebra(2, structure, [1, 1])


def test_evaluate_basic():
    algebra, e = spectrum_algebra([2])
    v = (ONE, Q(7))
    assert evaluate(parse("x"), algebra, {X: v}) == v
    with pytest.raises(UnboundVariableError):
        evaluate(parse("x y"), algebra, {X: v})
    with pytest.raises(AlgebraError):
        evaluate(parse("x"), algebra, {X: (ONE,)})


def test_difference_square_identity_on_mutation():
    rng = random.Random(23)
    algebra = random_mutation_algebra(rng, 4)
    f = parse("(x - y)(x - y)")
    anchor = algebra.weight_one_anchor()
    kernel = algebra.kernel_basis()
    for trial in range(10):
        coeffs = [Q(rng.randint(-3, 3)) for _ in kernel]
        xv = list(anchor)
        yv = list(anchor)
        for c, k in zip(coeffs, kernel):
            for i in range(algebra.dim):
                xv[i] += c * k[i]
                yv[i] += (c + 1) * k[i]
        assert evaluate(f, algebra, {X: tuple(xv), Y: tuple(yv)}) == algebra.zero_vector()


def test_weighted_equals_plain_on_weight_one():
    rng = random.Random(4)
    algebra = random_mutation_algebra(rng, 3)
    f = parse("x^2 x^2 - 2 x^3 + x^2")
    anchor = algebra.weight_one_anchor()
    assert weighted_evaluate(f, algebra, {X: anchor}) == evaluate(f, algebra, {X: anchor})


def test_weighted_evaluate_scales():
    rng = random.Random(41)
    algebra = random_mutation_algebra(rng, 2)
    f = parse("x^2 x^2 - 2 x^3 + x^2")
    anchor = algebra.weight_one_anchor()
    scaled = tuple(3 * c for c in anchor)
    assert weighted_evaluate(f, algebra, {X: scaled}) == algebra.zero_vector()
    assert evaluate(f, algebra, {X: scaled}) != algebra.zero_vector()


def test_weighted_evaluate_homogeneous_is_scaled_plain(rng):
    algebra = random_mutation_algebra(rng, 3)
    f = parse("x^2 y^2 - (x y)(x y)")
    bindings = {X: (ONE, Q(1, 2), ZERO), Y: (Q(2), ZERO, ONE)}
    plain = evaluate(f, algebra, bindings)
    weighted = weighted_evaluate(f, algebra, bindings)
    assert plain == weighted  # full type terms carry no weight factors


def test_verify_identity_pass_and_fail():
    rng = random.Random(8)
    algebra = random_mutation_algebra(rng, 4)
    good = verify_identity(parse("x^2 x^2 - 2 x^3 + x^2"), algebra, trials=16, seed=1)
    assert good.passed and bool(good)

    algebra2, e = spectrum_algebra([2])
    bad = verify_identity(parse("x^2 - x"), algebra2, trials=64, seed=0)
    assert not bad.passed
    assert bad.counterexample is not None
    assert bad.mode in ("weight-1", "weighted")
    # the documented counterexample: x = e + e1
    v = (ONE, ONE)
    got = evaluate(parse("x^2 - x"), algebra2, {X: v})
    assert got != algebra2.zero_vector()


def test_verify_is_deterministic():
    rng = random.Random(9)
    algebra = random_mutation_algebra(rng, 3)
    f = parse("x^2 y^2 - (x y)(x y)")
    r1 = verify_identity(f, algebra, trials=8, seed=5)
    r2 = verify_identity(f, algebra, trials=8, seed=5)
    assert r1 == r2


def test_left_mult_matrix_validation():
    algebra, e = spectrum_algebra([2])
    with pytest.raises(AlgebraError):
        left_mult_matrix(algebra, (ZERO, ZERO))
    with pytest.raises(AlgebraError):
        left_mult_matrix(algebra, (ONE, ONE))  # not idempotent


def test_weight_of_idempotent_is_zero_or_one():
    for lambdas in ([], [Q(2)], [ZERO, Q(1, 2)]):
        algebra, e = spectrum_algebra(lambdas)
        left_mult_matrix(algebra, e)  # accepted as an idempotent
        assert algebra.omega(e) in (0, 1)


def test_spectrum_char_poly():
    algebra, e = spectrum_algebra([0, Q(1, 2)])
    cp = char_poly(left_mult_matrix(algebra, e))
    # X (X - 1/2)(X - 1)
    assert cp == PeircePolynomial([0, Q(1, 2), Q(-3, 2), 1])
    roots, remainder = rational_roots(cp)
    assert roots == [(ZERO, 1), (Q(1, 2), 1), (ONE, 1)]
    assert remainder.degree() == 0


def test_spectrum_round_trip():
    lambdas = [Q(-2), Q(1, 2), Q(3)]
    algebra, e = spectrum_algebra(lambdas)
    roots, remainder = rational_roots(char_poly(left_mult_matrix(algebra, e)))
    assert remainder.degree() == 0
    got = sorted([r for r, mult in roots for _ in range(mult)])
    assert got == sorted(lambdas + [ONE])


def test_rational_roots_partial_factorization():
    # (t - 1)(t^2 - 2) factors only partially over Q
    p = PeircePolynomial([2, -2, -1, 1])
    roots, remainder = rational_roots(p)
    assert roots == [(ONE, 1)]
    assert remainder == PeircePolynomial([-2, 0, 1])


def test_backcrossing_family_annihilator():
    # three-dimensional algebra with e idempotent, u in the 0-eigenspace,
    # v in the 1/2-eigenspace, v*v = u: satisfies
    # x^2 x^2 - a w(x) x^3 - (1-a) w(x)^2 x^2 for every a, and
    # 2 L^2 - L kills ker w
    dim = 3
    structure = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
    structure[0][0][0] = ONE          # e*e = e
    structure[0][2][2] = Q(1, 2)      # e*v = v/2
    structure[2][0][2] = Q(1, 2)
    structure[2][2][1] = ONE          # v*v = u
    algebra = BaricAlgebra(dim, structure, [1, 0, 0])
    e = (ONE, ZERO, ZERO)

    for a in (Q(0), Q(1), Q(3), Q(-1, 2)):
        f = parse("x^2 x^2") - parse("x^3").scale(a) - parse("x^2").scale(1 - a)
        result = verify_identity(f, algebra, trials=24, seed=7)
        assert result.passed

    L = left_mult_matrix(algebra, e)
    annihilator = PeircePolynomial([0, -1, 2])  # 2 X^2 - X
    for vec in algebra.kernel_basis():
        assert apply_univariate(annihilator, L, vec) == algebra.zero_vector()


def test_random_baric_algebra_is_valid():
    rng = random.Random(12)
    for dim in (2, 3, 4):
        algebra = random_baric_algebra(rng, dim)
        assert algebra.dim == dim  # constructor validation already ran


def test_load_algebra_mutation(tmp_path):
    spec = {
        "dim": 2,
        "mutation": {"matrix": [["1", "0"], ["0", "3"]], "weight": ["1", "0"]},
    }
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps(spec), encoding="utf-8")
    algebra = load_algebra(str(path))
    assert algebra.mul((ONE, ZERO), (ZERO, ONE)) == (ZERO, Q(3, 2))


def test_load_algebra_structure():
    obj = {
        "dim": 2,
        "weight": ["1", "0"],
        "structure": [[0, 0, 0, "1"], [0, 1, 1, "1/2"]],
    }
    algebra = load_algebra(obj)
    assert algebra.structure[0][1][1] == Q(1, 2)
    assert algebra.structure[1][0][1] == Q(1, 2)


def test_load_algebra_inconsistent():
    obj = {
        "dim": 2,
        "weight": ["1", "0"],
        "structure": [[0, 1, 1, "1"], [1, 0, 1, "2"]],
    }
    with pytest.raises(AlgebraError):
        load_algebra(obj)
