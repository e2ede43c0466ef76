"""Exact polynomials over the free commutative nonassociative algebra.

A polynomial is a finite rational combination of canonical monomials;
multiplication is the bilinear extension of the magma product (it is
commutative but not associative).
"""

from __future__ import annotations

import itertools

from .magma import Monomial, Variable, leaf, product
from .rationals import ONE, Q, ZERO


class UnboundVariableError(KeyError):
    def __init__(self, variable):
        super().__init__(variable)
        self.variable = variable

    def __str__(self):
        return f"unbound variable {self.variable.name}"


class Polynomial:
    """Immutable map monomial -> nonzero rational coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for m, c in terms.items():
                c = Q(c)
                if c:
                    cleaned[m] = c
        self.terms = cleaned

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> "Polynomial":
        c = Q(coeff)
        return cls._raw({m: c} if c else {})

    @classmethod
    def variable(cls, v) -> "Polynomial":
        return cls.monomial(leaf(v))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out: dict[Monomial, object] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = product(m1, m2)
                    s = out.get(m, ZERO) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            return Polynomial._raw(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = Q(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({m: c * v for m, v in self.terms.items()})

    def coefficient(self, m: Monomial):
        return self.terms.get(m, ZERO)

    def items_ordered(self, reverse=False):
        return sorted(self.terms.items(), key=lambda mc: mc[0].key, reverse=reverse)

    def monomials(self):
        return sorted(self.terms, key=lambda m: m.key)

    def at_ones(self):
        """Coefficient sum, i.e. the value at (1, 1, ...)."""
        return sum(self.terms.values(), ZERO)

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(m.degree for m in self.terms)

    def degree_in(self, v) -> int:
        idx = v.index if isinstance(v, Variable) else v
        deg = 0
        for m in self.terms:
            for i, c in m.counts:
                if i == idx and c > deg:
                    deg = c
        return deg

    def variables(self) -> tuple[Variable, ...]:
        seen = set()
        for m in self.terms:
            for i, _ in m.counts:
                seen.add(i)
        return tuple(Variable(i) for i in sorted(seen))

    def is_homogeneous(self) -> bool:
        types = {m.counts for m in self.terms}
        return len(types) <= 1

    def homogeneous_type(self):
        """The common type vector, or None if mixed or zero."""
        from .magma import type_vector

        types = {type_vector(m) for m in self.terms}
        if len(types) == 1:
            return types.pop()
        return None

    def substitute(self, bindings: dict) -> "Polynomial":
        """Homomorphic image replacing every variable by a polynomial."""
        cache: dict[Monomial, Polynomial] = {}

        def walk(m: Monomial) -> Polynomial:
            got = cache.get(m)
            if got is not None:
                return got
            if m.is_leaf:
                try:
                    res = bindings[m.var]
                except KeyError:
                    raise UnboundVariableError(m.var) from None
            else:
                res = walk(m.left) * walk(m.right)
            cache[m] = res
            return res

        total = Polynomial.zero()
        for m, c in self.terms.items():
            total = total + walk(m).scale(c)
        return total

    def __repr__(self):
        from .syntax import format_polynomial

        return f"<{format_polynomial(self)}>"


def permutation_sign(perm) -> int:
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def standard_baric_identity(d: int) -> Polynomial:
    """Alternating-sum identity satisfied by (d+1)-dimensional algebras.

    sum over permutations s of sign(s) (t_{s(1)}^2 - t_{s(1)}) ... applied
    to t_{d+1}, with the factor chain bracketed left to right.
    """
    if not 1 <= d <= 5:
        raise ValueError("d must be between 1 and 5")
    sink = Polynomial.variable(Variable(d + 1))
    factors = {}
    for i in range(1, d + 1):
        ti = Polynomial.variable(Variable(i))
        factors[i] = ti * ti - ti
    total = Polynomial.zero()
    for perm in itertools.permutations(range(1, d + 1)):
        chain = factors[perm[0]]
        for i in perm[1:]:
            chain = chain * factors[i]
        total = total + (chain * sink).scale(permutation_sign(perm))
    return total
