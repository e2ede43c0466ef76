"""Free commutative magma on the generators t1, t2, ...

Monomials are rooted binary trees with variable-labelled leaves, kept
in a canonical form and interned, so two equal monomials are the same
object.  The canonical total order compares (degree, type vector, then
recursively the two children); node children are stored smaller-first.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Variable:
    """Generator symbol.  Index 0 is reserved for linearization."""

    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be >= 0")

    @property
    def name(self) -> str:
        return var_name(self.index)

    def __repr__(self):
        return f"Variable({self.index})"


_ALIASES = {0: "t", 1: "x", 2: "y", 3: "z"}


def var_name(index: int) -> str:
    return _ALIASES.get(index) or f"t{index}"


X = Variable(1)
Y = Variable(2)
Z = Variable(3)
T_FRESH = Variable(0)


class Monomial:
    """Canonical commutative nonassociative word.

    Construct through :func:`leaf` and :func:`product` only; instances
    are interned, so ``==`` coincides with identity and hashing is by
    identity.
    """

    __slots__ = ("var", "left", "right", "degree", "counts", "key")

    def __init__(self, var, left, right, degree, counts, key):
        self.var = var
        self.left = left
        self.right = right
        self.degree = degree
        self.counts = counts  # sorted tuple of (index, multiplicity)
        self.key = key

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    @property
    def is_leaf(self) -> bool:
        return self.var is not None

    def __repr__(self):
        from .syntax import format_monomial

        return f"<{format_monomial(self)}>"


_LEAVES: dict[int, Monomial] = {}
_NODES: dict[tuple[Monomial, Monomial], Monomial] = {}


def _positional(counts) -> tuple[int, ...]:
    size = counts[-1][0] + 1
    vec = [0] * size
    for idx, c in counts:
        vec[idx] = c
    return tuple(vec)


def leaf(v) -> Monomial:
    """The degree-1 monomial for a variable (or a bare index)."""
    if isinstance(v, int):
        v = Variable(v)
    m = _LEAVES.get(v.index)
    if m is None:
        counts = ((v.index, 1),)
        key = (1, _positional(counts), (0, v.index))
        m = Monomial(v, None, None, 1, counts, key)
        _LEAVES[v.index] = m
    return m


def _merge_counts(a, b):
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ai, bi = a[i], b[j]
        if ai[0] == bi[0]:
            out.append((ai[0], ai[1] + bi[1]))
            i += 1
            j += 1
        elif ai[0] < bi[0]:
            out.append(ai)
            i += 1
        else:
            out.append(bi)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def product(u: Monomial, v: Monomial) -> Monomial:
    """Commutative magma product, in canonical (smaller child first) form."""
    if v.key < u.key:
        u, v = v, u
    m = _NODES.get((u, v))
    if m is None:
        counts = _merge_counts(u.counts, v.counts)
        degree = u.degree + v.degree
        key = (degree, _positional(counts), (1, u.key, v.key))
        m = Monomial(None, u, v, degree, counts, key)
        _NODES[(u, v)] = m
    return m


def children(w: Monomial) -> tuple[Monomial, Monomial]:
    """The unique decomposition of a monomial of degree >= 2."""
    if w.is_leaf:
        raise ValueError("a leaf has no decomposition")
    return (w.left, w.right)


def degree_in(w: Monomial, v) -> int:
    idx = v.index if isinstance(v, Variable) else v
    for i, c in w.counts:
        if i == idx:
            return c
    return 0


def variables(w: Monomial) -> tuple[Variable, ...]:
    return tuple(Variable(i) for i, _ in w.counts)


def type_vector(w: Monomial) -> tuple[int, ...]:
    """Multidegrees (|w|_1, ..., |w|_n), trailing zeros trimmed."""
    if w.counts[0][0] == 0:
        raise ValueError("type vector undefined for the reserved variable")
    vec = [0] * w.counts[-1][0]
    for i, c in w.counts:
        vec[i - 1] = c
    return tuple(vec)


def principal_power(v, k: int) -> Monomial:
    """Left-normed power: x^1 = x, x^(k+1) = x^k * x."""
    if k < 1:
        raise ValueError("principal power needs k >= 1")
    m = leaf(v)
    base = m
    for _ in range(k - 1):
        m = product(m, base)
    return m


def plenary_power(v, k: int) -> Monomial:
    """Repeated squaring: x^[1] = x, x^[k+1] = x^[k] * x^[k]."""
    if k < 1:
        raise ValueError("plenary power needs k >= 1")
    m = leaf(v)
    for _ in range(k - 1):
        m = product(m, m)
    return m


def left_iterate(v, r: int, f: Monomial) -> Monomial:
    """r-fold left multiplication: x^{0} f = f, x^{r} f = x (x^{r-1} f)."""
    if r < 0:
        raise ValueError("left iteration needs r >= 0")
    base = leaf(v)
    for _ in range(r):
        f = product(base, f)
    return f


def principal_power_of(w: Monomial):
    """(v, k) when w is the left-normed power v^k, else None."""
    if w.is_leaf:
        return (w.var, 1)
    if len(w.counts) != 1:
        return None
    l, r = w.left, w.right
    for a, b in ((l, r), (r, l)):
        if a.is_leaf:
            sub = principal_power_of(b)
            if sub is not None and sub[0] == a.var:
                return (a.var, sub[1] + 1)
    return None


def normalize_type(ty) -> tuple[int, ...]:
    ty = tuple(int(c) for c in ty)
    if any(c < 0 for c in ty):
        raise ValueError("type entries must be nonnegative")
    while ty and ty[-1] == 0:
        ty = ty[:-1]
    if not ty:
        raise ValueError("type must have positive total degree")
    return ty


@functools.cache
def _enumerate(ty: tuple[int, ...]) -> tuple[Monomial, ...]:
    if sum(ty) == 1:
        return (leaf(Variable(ty.index(1) + 1)),)
    out = set()
    seen = set()
    for sub in itertools.product(*(range(c + 1) for c in ty)):
        if not any(sub) or sub == ty:
            continue
        rest = tuple(a - b for a, b in zip(ty, sub))
        a = normalize_type(sub)
        b = normalize_type(rest)
        pair = (a, b) if a <= b else (b, a)
        if pair in seen:
            continue
        seen.add(pair)
        for u in _enumerate(pair[0]):
            for v in _enumerate(pair[1]):
                out.add(product(u, v))
    return tuple(sorted(out, key=lambda m: m.key))


def monomials_of_type(ty) -> tuple[Monomial, ...]:
    """All canonical monomials of exactly this type, canonically ordered."""
    return _enumerate(normalize_type(ty))


@functools.cache
def _w_pow(n: int) -> int:
    if n == 0:
        return 0
    if n == 1:
        return 1
    p = n // 2
    if n % 2:
        return sum(_w_pow(i) * _w_pow(n - i) for i in range(1, p + 1))
    s = sum(_w_pow(i) * _w_pow(n - i) for i in range(1, p))
    wp = _w_pow(p)
    return s + wp * (wp + 1) // 2


@functools.cache
def _w_n1(n: int) -> int:
    if n == 0:
        return 1
    return sum(_w_pow(n - i) * _w_n1(i) for i in range(n))


@functools.cache
def _w_n2(n: int) -> int:
    if n == 0:
        return 1
    total = sum(_w_pow(n - i) * _w_n2(i) for i in range(n))
    half = n // 2
    if n % 2:
        total += sum(_w_n1(n - i) * _w_n1(i) for i in range(half + 1))
    else:
        total += sum(_w_n1(n - i) * _w_n1(i) for i in range(half))
        w = _w_n1(half)
        total += w * (w + 1) // 2
    return total


@functools.cache
def _w_n11(n: int) -> int:
    if n == 0:
        return 1
    return sum(_w_pow(n - i) * _w_n11(i) for i in range(n)) + sum(
        _w_n1(n - i) * _w_n1(i) for i in range(n + 1)
    )


def w_number(ty) -> int:
    """Number of monomials of the given type.

    Recurrences cover the shapes [n], [n,1], [n,2], [n,1,1]; anything
    else falls back to the enumeration count.
    """
    ty = normalize_type(ty)
    if len(ty) == 1:
        return _w_pow(ty[0])
    if len(ty) == 2 and ty[1] == 1:
        return _w_n1(ty[0])
    if len(ty) == 2 and ty[1] == 2:
        return _w_n2(ty[0])
    if len(ty) == 3 and ty[1] == 1 and ty[2] == 1:
        return _w_n11(ty[0])
    return len(monomials_of_type(ty))
