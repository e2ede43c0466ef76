"""Peirce polynomials, linearizations, and evanescence predicates.

The Peirce polynomial of f in a variable v is the univariate image of f
under d(t_j) = [j == v], d(uv) = t*(d(u) + d(v)).  Equivalently it is
the height generating polynomial of the v-labelled leaves of each
monomial's tree; both algorithms are implemented.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .magma import Monomial, T_FRESH, Variable, degree_in
from .poly import Polynomial
from .rationals import ONE, Q, ZERO


class PeircePolynomial:
    """Univariate exact-rational polynomial in the formal variable t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [Q(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def term(cls, power: int, coeff=1):
        return cls((0,) * power + (coeff,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def valuation(self) -> int:
        """Least power with nonzero coefficient, -1 for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def coefficient(self, power: int):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return ZERO

    def __eq__(self, other):
        return isinstance(other, PeircePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PeircePolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PeircePolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, PeircePolynomial):
            if self.is_zero or other.is_zero:
                return PeircePolynomial()
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return PeircePolynomial(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Q(c)
        if not c:
            return PeircePolynomial()
        return PeircePolynomial([c * v for v in self.coeffs])

    def shift(self, k: int = 1):
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return PeircePolynomial((0,) * k + tuple(self.coeffs))

    def __call__(self, value):
        value = Q(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_string(self, sym: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if not c:
                continue
            if power == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                head = "" if mag == 1 else f"{mag}"
                body = f"{head}{sym}" if power == 1 else f"{head}{sym}^{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"<{self.to_string()}>"


_PEIRCE_CACHE: dict[tuple[Monomial, int], PeircePolynomial] = {}


def peirce_recursive(f, v) -> PeircePolynomial:
    """Peirce polynomial by the defining recursion d(uv) = t(d(u)+d(v))."""
    idx = v.index if isinstance(v, Variable) else v
    if isinstance(f, Monomial):
        return _peirce_monomial(f, idx)
    acc = PeircePolynomial()
    for m, c in f.terms.items():
        acc = acc + _peirce_monomial(m, idx).scale(c)
    return acc


def _peirce_monomial(m: Monomial, idx: int) -> PeircePolynomial:
    got = _PEIRCE_CACHE.get((m, idx))
    if got is not None:
        return got
    if m.is_leaf:
        res = PeircePolynomial.one() if m.var.index == idx else PeircePolynomial()
    else:
        res = (_peirce_monomial(m.left, idx) + _peirce_monomial(m.right, idx)).shift()
    _PEIRCE_CACHE[(m, idx)] = res
    return res


def peirce_tree(w, v) -> PeircePolynomial:
    """Peirce polynomial as sum of t^height over matching leaves."""
    idx = v.index if isinstance(v, Variable) else v
    if not isinstance(w, Monomial):
        acc = PeircePolynomial()
        for m, c in w.terms.items():
            acc = acc + peirce_tree(m, idx).scale(c)
        return acc
    counts: list[int] = []
    stack = [(w, 0)]
    while stack:
        node, h = stack.pop()
        if node.is_leaf:
            if node.var.index == idx:
                if h >= len(counts):
                    counts.extend([0] * (h + 1 - len(counts)))
                counts[h] += 1
        else:
            stack.append((node.left, h + 1))
            stack.append((node.right, h + 1))
    return PeircePolynomial(counts)


@dataclass(frozen=True, eq=False)
class EvanescenceReport:
    peirce: dict
    at_ones: object
    is_peirce_evanescent: bool
    is_evanescent_identity: bool


def is_evanescent(f: Polynomial) -> EvanescenceReport:
    """Full evanescence report for a polynomial.

    Peirce-evanescent means f != 0 with every Peirce polynomial zero;
    an evanescent identity additionally has coefficient sum zero.
    """
    ppolys = {v: peirce_recursive(f, v) for v in f.variables()}
    total = f.at_ones()
    pe = bool(f.terms) and all(p.is_zero for p in ppolys.values())
    return EvanescenceReport(
        peirce=ppolys,
        at_ones=total,
        is_peirce_evanescent=pe,
        is_evanescent_identity=pe and total == 0,
    )


def delta(f, v, h: Polynomial) -> Polynomial:
    """Derivation-style operator: sends v to h and obeys the product rule."""
    if isinstance(f, Monomial):
        f = Polynomial.monomial(f)
    idx = v.index if isinstance(v, Variable) else v
    cache: dict[Monomial, Polynomial] = {}

    def walk(m: Monomial) -> Polynomial:
        got = cache.get(m)
        if got is not None:
            return got
        if m.is_leaf:
            res = h if m.var.index == idx else Polynomial.zero()
        else:
            res = walk(m.left) * Polynomial.monomial(m.right) + Polynomial.monomial(
                m.left
            ) * walk(m.right)
        cache[m] = res
        return res

    total = Polynomial.zero()
    for m, c in f.terms.items():
        total = total + walk(m).scale(c)
    return total


def linearize(f: Polynomial, v) -> list[Polynomial]:
    """Components of f(..., v + t, ...) grouped by degree in the fresh t.

    Returns the list [L_0, ..., L_d] with d the degree of f in v; the
    fresh variable is the reserved index-0 symbol.
    """
    v = v if isinstance(v, Variable) else Variable(v)
    d = f.degree_in(v)
    bindings = {w: Polynomial.variable(w) for w in f.variables()}
    bindings[v] = Polynomial.variable(v) + Polynomial.variable(T_FRESH)
    expanded = f.substitute(bindings)
    comps = [dict() for _ in range(d + 1)]
    for m, c in expanded.terms.items():
        comps[degree_in(m, T_FRESH)][m] = c
    return [Polynomial._raw(t) for t in comps]


class EvanescenceError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, eq=False)
class Identity:
    """An evanescent identity with its cached verification data."""

    polynomial: Polynomial
    type: tuple | None
    train: bool
    report: EvanescenceReport = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, Identity) and self.polynomial == other.polynomial

    def __hash__(self):
        return hash(self.polynomial)


def make_identity(f: Polynomial, *, train: bool = False, ty=None) -> Identity:
    """Wrap a polynomial as an Identity, verifying evanescence."""
    report = is_evanescent(f)
    if not report.is_evanescent_identity:
        raise EvanescenceError("polynomial is not an evanescent identity", report)
    if ty is not None:
        ty = tuple(ty)
    return Identity(polynomial=f, type=ty, train=train, report=report)
