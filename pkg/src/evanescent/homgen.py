"""Homogeneous evanescent identities via exact nullspace computation.

For a type, the coefficients of t^k in every Peirce polynomial of the
enumerated monomials, together with the coefficient-sum condition, form
a linear system over Q; its nullspace is exactly the space of
homogeneous evanescent identities of that type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .magma import Variable, monomials_of_type, normalize_type
from .peirce import Identity, PeircePolynomial, make_identity, peirce_tree
from .poly import Polynomial
from .rationals import ONE, Q, ZERO


class LinearSolveError(ValueError):
    pass


@dataclass
class ExactMatrix:
    rows: list
    row_labels: list
    col_labels: list

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)


def rref(rows):
    """Reduced row-echelon form over Q.

    Deterministic: scans columns left to right and picks the first row
    with a nonzero entry.  Returns (new rows, pivot column list).
    """
    m = [[Q(c) for c in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][col]
        m[r] = [c * inv for c in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(matrix) -> list[tuple]:
    """Deterministic basis of the right nullspace.

    Each vector is normalized so its first nonzero entry is 1; vectors
    are ordered by the position of that entry.
    """
    rows = matrix.rows if isinstance(matrix, ExactMatrix) else matrix
    if not rows:
        raise ValueError("nullspace of an empty matrix is undefined")
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [ZERO] * ncols
        vec[free] = ONE
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced[i][free]
        lead = next(i for i, c in enumerate(vec) if c)
        inv = ONE / vec[lead]
        vec = tuple(c * inv for c in vec)
        basis.append((lead, vec))
    basis.sort(key=lambda lv: (lv[0], lv[1]))
    return [vec for _, vec in basis]


def solve_unique(rows, rhs) -> tuple:
    """Solve A x = b requiring exactly one solution."""
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        raise LinearSolveError("inconsistent linear system")
    if len(pivots) < ncols:
        raise LinearSolveError("underdetermined linear system")
    solution = [ZERO] * ncols
    for i, pc in enumerate(pivots):
        solution[pc] = reduced[i][ncols]
    return tuple(solution)


class SpanChecker:
    """Membership test against the row span of a fixed set of vectors."""

    def __init__(self, vectors):
        self.ncols = len(vectors[0]) if vectors else 0
        self.reduced, self.pivots = rref(vectors) if vectors else ([], [])

    def residual(self, vec):
        vec = [Q(c) for c in vec]
        for row, pc in zip(self.reduced, self.pivots):
            factor = vec[pc]
            if factor:
                vec = [a - factor * b for a, b in zip(vec, row)]
        return tuple(vec)

    def contains(self, vec) -> bool:
        return not any(self.residual(vec))


def peirce_matrix(ty) -> ExactMatrix:
    """Coefficient matrix of the evanescence conditions for a type.

    One row per (variable, power of t) pair with powers 1..(degree-1),
    plus a final all-ones row for the coefficient-sum condition;
    columns follow the canonical enumeration of the type's monomials.
    """
    ty = normalize_type(ty)
    monomials = monomials_of_type(ty)
    total_degree = sum(ty)
    active = [Variable(i + 1) for i, c in enumerate(ty) if c]
    rows = []
    row_labels = []
    ppolys = {
        (v, m): peirce_tree(m, v) for v in active for m in monomials
    }
    for v in active:
        for power in range(1, total_degree):
            rows.append([ppolys[(v, m)].coefficient(power) for m in monomials])
            row_labels.append((v.name, power))
    rows.append([ONE] * len(monomials))
    row_labels.append(("sum", 0))
    return ExactMatrix(rows=rows, row_labels=row_labels, col_labels=list(monomials))


def homogeneous_nullspace(ty):
    """(monomials, nullspace basis vectors) for a type."""
    matrix = peirce_matrix(ty)
    return matrix.col_labels, nullspace(matrix)


def generate_homogeneous(ty) -> list[Identity]:
    """One verified Identity per nullspace basis vector."""
    ty = normalize_type(ty)
    monomials, basis = homogeneous_nullspace(ty)
    out = []
    for vec in basis:
        f = Polynomial({m: c for m, c in zip(monomials, vec) if c})
        out.append(make_identity(f, train=False, ty=ty))
    return out


def homogeneous_dimension(ty) -> int:
    return len(homogeneous_nullspace(ty)[1])
