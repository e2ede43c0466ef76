"""Concrete finite-dimensional baric and mutation algebras.

A baric algebra is given by exact rational structure constants plus a
nonzero algebra character (the weight).  Mutation algebras carry the
product x*y = (w(y) M(x) + w(x) M(y)) / 2 for a linear map M fixing the
weight; they satisfy every evanescent identity.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .magma import Monomial, Variable
from .peirce import PeircePolynomial
from .poly import Polynomial, UnboundVariableError
from .rationals import ONE, Q, ZERO, qstr


class AlgebraError(ValueError):
    pass


class BaricAlgebra:
    """dim, structure constants c[i][j][k] (e_i e_j = sum c[i][j][k] e_k),
    and the weight functional on the basis."""

    __slots__ = ("dim", "structure", "weight")

    def __init__(self, dim, structure, weight):
        self.dim = int(dim)
        self.structure = tuple(
            tuple(tuple(Q(c) for c in row) for row in plane) for plane in structure
        )
        self.weight = tuple(Q(c) for c in weight)
        self._validate()

    def _validate(self):
        d = self.dim
        if len(self.structure) != d or len(self.weight) != d:
            raise AlgebraError("dimension mismatch in structure or weight")
        for i in range(d):
            if len(self.structure[i]) != d:
                raise AlgebraError("dimension mismatch in structure")
            for j in range(d):
                if len(self.structure[i][j]) != d:
                    raise AlgebraError("dimension mismatch in structure")
                if self.structure[i][j] != self.structure[j][i]:
                    raise AlgebraError("structure constants are not commutative")
        if not any(self.weight):
            raise AlgebraError("weight must be nonzero")
        for i in range(d):
            for j in range(d):
                got = sum(
                    (self.structure[i][j][k] * self.weight[k] for k in range(d)),
                    ZERO,
                )
                if got != self.weight[i] * self.weight[j]:
                    raise AlgebraError(
                        f"weight is not an algebra character at basis pair ({i}, {j})"
                    )

    def mul(self, a, b):
        d = self.dim
        out = [ZERO] * d
        for i in range(d):
            ai = a[i]
            if not ai:
                continue
            plane = self.structure[i]
            for j in range(d):
                bj = b[j]
                if not bj:
                    continue
                coeff = ai * bj
                row = plane[j]
                for k in range(d):
                    if row[k]:
                        out[k] += coeff * row[k]
        return tuple(out)

    def omega(self, vec):
        return sum((w * c for w, c in zip(self.weight, vec)), ZERO)

    def weight_one_anchor(self):
        for i, w in enumerate(self.weight):
            if w:
                vec = [ZERO] * self.dim
                vec[i] = ONE / w
                return tuple(vec)
        raise AlgebraError("weight must be nonzero")

    def kernel_basis(self):
        """Basis of ker(weight)."""
        pivot = next(i for i, w in enumerate(self.weight) if w)
        basis = []
        for i in range(self.dim):
            if i == pivot:
                continue
            vec = [ZERO] * self.dim
            vec[i] = ONE
            vec[pivot] = -self.weight[i] / self.weight[pivot]
            basis.append(tuple(vec))
        return basis

    def zero_vector(self):
        return (ZERO,) * self.dim


@dataclass(frozen=True)
class MutationSpec:
    """Linear map rows (M applied to e_j is the j-th column) plus weight."""

    dim: int
    matrix: tuple
    weight: tuple

    @classmethod
    def make(cls, matrix, weight):
        matrix = tuple(tuple(Q(c) for c in row) for row in matrix)
        weight = tuple(Q(c) for c in weight)
        return cls(dim=len(weight), matrix=matrix, weight=weight)


def make_mutation(spec: MutationSpec) -> BaricAlgebra:
    """Structure constants of the mutation product for a validated spec."""
    d = spec.dim
    m = spec.matrix
    w = spec.weight
    if len(m) != d or any(len(row) != d for row in m):
        raise AlgebraError("mutation matrix dimension mismatch")
    if not any(w):
        raise AlgebraError("weight must be nonzero")
    for j in range(d):
        if sum((w[k] * m[k][j] for k in range(d)), ZERO) != w[j]:
            raise AlgebraError("weight is not fixed by the mutation map")
    half = Q(1, 2)
    structure = [
        [
            [half * (w[j] * m[k][i] + w[i] * m[k][j]) for k in range(d)]
            for j in range(d)
        ]
        for i in range(d)
    ]
    return BaricAlgebra(d, structure, w)


def spectrum_algebra(lambdas):
    """Mutation algebra whose weight-1 idempotent has the given extra
    eigenvalues (1 is always present).  Returns (algebra, idempotent)."""
    lambdas = [Q(c) for c in lambdas]
    d = 1 + len(lambdas)
    matrix = [[ZERO] * d for _ in range(d)]
    matrix[0][0] = ONE
    for i, lam in enumerate(lambdas, start=1):
        matrix[i][i] = 2 * lam
    weight = [ONE] + [ZERO] * len(lambdas)
    algebra = make_mutation(MutationSpec.make(matrix, weight))
    e = tuple([ONE] + [ZERO] * len(lambdas))
    return algebra, e


def _check_bindings(f: Polynomial, algebra: BaricAlgebra, bindings: dict):
    vecs = {}
    for v, vec in bindings.items():
        v = v if isinstance(v, Variable) else Variable(v)
        vec = tuple(Q(c) for c in vec)
        if len(vec) != algebra.dim:
            raise AlgebraError(
                f"binding for {v.name} has dimension {len(vec)}, expected {algebra.dim}"
            )
        vecs[v] = vec
    for v in f.variables():
        if v not in vecs:
            raise UnboundVariableError(v)
    return vecs


def evaluate(f: Polynomial, algebra: BaricAlgebra, bindings: dict):
    """Plain homomorphic evaluation of every monomial."""
    vecs = _check_bindings(f, algebra, bindings)
    cache: dict[Monomial, tuple] = {}

    def walk(m: Monomial):
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf:
            res = vecs[m.var]
        else:
            res = algebra.mul(walk(m.left), walk(m.right))
        cache[m] = res
        return res

    total = list(algebra.zero_vector())
    for m, c in f.terms.items():
        vec = walk(m)
        for k in range(algebra.dim):
            total[k] += c * vec[k]
    return tuple(total)


def weighted_evaluate(f: Polynomial, algebra: BaricAlgebra, bindings: dict):
    """Weighted evaluation: each term is scaled by the product of
    w(binding)^(full degree - term degree) over the variables, so the
    whole expression is homogeneous of full type."""
    vecs = _check_bindings(f, algebra, bindings)
    full = {v: f.degree_in(v) for v in f.variables()}
    weights = {v: algebra.omega(vec) for v, vec in vecs.items()}
    cache: dict[Monomial, tuple] = {}

    def walk(m: Monomial):
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf:
            res = vecs[m.var]
        else:
            res = algebra.mul(walk(m.left), walk(m.right))
        cache[m] = res
        return res

    total = list(algebra.zero_vector())
    for m, c in f.terms.items():
        scale = c
        for v, d in full.items():
            deficit = d - sum(cnt for i, cnt in m.counts if i == v.index)
            if deficit:
                scale = scale * weights[v] ** deficit
        if not scale:
            continue
        vec = walk(m)
        for k in range(algebra.dim):
            total[k] += scale * vec[k]
    return tuple(total)


@dataclass(frozen=True)
class VerificationResult:
    passed: bool
    trials: int
    seed: int
    failed_trial: int | None = None
    mode: str | None = None
    counterexample: dict | None = None

    def __bool__(self):
        return self.passed


_DENOMINATORS = (1, 1, 2)


def _random_q(rng):
    return Q(rng.randint(-3, 3), rng.choice(_DENOMINATORS))


def _random_vector(rng, dim):
    return tuple(_random_q(rng) for _ in range(dim))


def verify_identity(
    f: Polynomial, algebra: BaricAlgebra, trials: int = 64, seed: int = 0
) -> VerificationResult:
    """Randomized refutation: weight-1 bindings through plain evaluation
    and general bindings through weighted evaluation.  A pass is
    evidence, not proof."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    variables = f.variables()
    anchor = algebra.weight_one_anchor()
    kernel = algebra.kernel_basis()
    zero = algebra.zero_vector()
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        bindings = {}
        for v in variables:
            vec = list(anchor)
            for b in kernel:
                c = _random_q(rng)
                if c:
                    for k in range(algebra.dim):
                        vec[k] += c * b[k]
            bindings[v] = tuple(vec)
        if evaluate(f, algebra, bindings) != zero:
            return VerificationResult(
                passed=False,
                trials=trials,
                seed=seed,
                failed_trial=trial,
                mode="weight-1",
                counterexample={v.name: bindings[v] for v in variables},
            )
        general = {v: _random_vector(rng, algebra.dim) for v in variables}
        if weighted_evaluate(f, algebra, general) != zero:
            return VerificationResult(
                passed=False,
                trials=trials,
                seed=seed,
                failed_trial=trial,
                mode="weighted",
                counterexample={v.name: general[v] for v in variables},
            )
    return VerificationResult(passed=True, trials=trials, seed=seed)


def left_mult_matrix(algebra: BaricAlgebra, e):
    """Matrix of x -> e*x in the algebra basis; e must be an idempotent."""
    e = tuple(Q(c) for c in e)
    if len(e) != algebra.dim:
        raise AlgebraError("idempotent has wrong dimension")
    if not any(e):
        raise AlgebraError("idempotent must be nonzero")
    if algebra.mul(e, e) != e:
        raise AlgebraError("element is not idempotent")
    columns = []
    for j in range(algebra.dim):
        basis_vec = [ZERO] * algebra.dim
        basis_vec[j] = ONE
        columns.append(algebra.mul(e, tuple(basis_vec)))
    return [
        [columns[j][k] for j in range(algebra.dim)] for k in range(algebra.dim)
    ]


def char_poly(matrix) -> PeircePolynomial:
    """Exact characteristic polynomial det(X I - M), monic, by the
    Faddeev-LeVerrier recursion."""
    d = len(matrix)
    m = [[Q(c) for c in row] for row in matrix]
    coeffs = [ONE]  # X^d downward
    mk = [row[:] for row in m]
    for k in range(1, d + 1):
        ck = -sum((mk[i][i] for i in range(d)), ZERO) / k
        coeffs.append(ck)
        if k == d:
            break
        for i in range(d):
            mk[i][i] += ck
        mk = [
            [
                sum((m[i][l] * mk[l][j] for l in range(d)), ZERO)
                for j in range(d)
            ]
            for i in range(d)
        ]
    return PeircePolynomial(list(reversed(coeffs)))


def apply_univariate(p: PeircePolynomial, matrix, vec):
    """p(M) applied to a vector."""
    d = len(matrix)
    acc = [ZERO] * d
    power = list(vec)
    for c in p.coeffs:
        if c:
            for k in range(d):
                acc[k] += c * power[k]
        power = [
            sum((matrix[i][j] * power[j] for j in range(d)), ZERO) for i in range(d)
        ]
    return tuple(acc)


def rational_roots(p: PeircePolynomial):
    """Rational roots with multiplicities plus the unfactored remainder."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    roots = []
    valuation = 0
    while coeffs and not coeffs[0]:
        coeffs.pop(0)
        valuation += 1
    if valuation:
        roots.append((ZERO, valuation))

    def divide_out(cs, root):
        # synthetic division by (t - root); remainder must be zero
        out = []
        acc = ZERO
        for c in reversed(cs):
            acc = acc * root + c
            out.append(acc)
        if out[-1]:
            return None
        return list(reversed(out[:-1]))

    denominators = 1
    for c in coeffs:
        denominators = _lcm(denominators, int(c.denominator))
    ints = [int(c * denominators) for c in coeffs]
    candidates = set()
    if ints:
        a0, an = ints[0], ints[-1]
        for num in _divisors(abs(a0)):
            for den in _divisors(abs(an)):
                candidates.add(Q(num, den))
                candidates.add(Q(-num, den))
    for cand in sorted(candidates):
        mult = 0
        while len(coeffs) > 1:
            nxt = divide_out(coeffs, cand)
            if nxt is None:
                break
            coeffs = nxt
            mult += 1
        if mult:
            roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, PeircePolynomial(coeffs)


def _lcm(a, b):
    from math import gcd

    return a * b // gcd(a, b)


def _divisors(n):
    if n == 0:
        return []
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


def random_mutation_algebra(rng: random.Random, dim: int) -> BaricAlgebra:
    """Random mutation algebra with weight (1, 0, ..., 0); the first row
    of M is pinned so the weight is fixed by M."""
    matrix = [[_random_q(rng) for _ in range(dim)] for _ in range(dim)]
    matrix[0] = [ONE] + [ZERO] * (dim - 1)
    weight = [ONE] + [ZERO] * (dim - 1)
    return make_mutation(MutationSpec.make(matrix, weight))


def random_baric_algebra(rng: random.Random, dim: int) -> BaricAlgebra:
    """Random commutative baric algebra with weight (1, 0, ..., 0); the
    e_0 coordinates of products are pinned by the character condition."""
    structure = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            column = [_random_q(rng) for _ in range(dim)]
            column[0] = ONE if i == 0 and j == 0 else ZERO
            for k in range(dim):
                structure[i][j][k] = column[k]
                structure[j][i][k] = column[k]
    weight = [ONE] + [ZERO] * (dim - 1)
    return BaricAlgebra(dim, structure, weight)


def load_algebra(source) -> BaricAlgebra:
    """Load an algebra from JSON: {"dim": d, "weight": [...],
    "structure": [[i, j, k, "p/q"], ...]} or {"dim": d,
    "mutation": {"matrix": [[...]], "weight": [...]}}.  Indices are
    0-based; rationals are "p/q" strings."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    elif hasattr(source, "read"):
        obj = json.load(source)
    else:
        obj = source
    dim = int(obj["dim"])
    if "mutation" in obj:
        mut = obj["mutation"]
        matrix = [[Q(str(c)) for c in row] for row in mut["matrix"]]
        weight = [Q(str(c)) for c in mut["weight"]]
        return make_mutation(MutationSpec.make(matrix, weight))
    weight = [Q(str(c)) for c in obj["weight"]]
    structure = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    seen = {}
    for entry in obj["structure"]:
        i, j, k, value = entry
        value = Q(str(value))
        for a, b in ((i, j), (j, i)):
            prev = seen.get((a, b, k))
            if prev is not None and prev != value:
                raise AlgebraError(
                    f"inconsistent structure entries for ({a}, {b}, {k})"
                )
            seen[(a, b, k)] = value
            structure[a][b][k] = value
    return BaricAlgebra(dim, structure, weight)
