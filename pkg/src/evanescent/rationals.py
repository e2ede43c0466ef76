"""Exact rational scalars used throughout the library.

gmpy2's mpq is preferred (much faster under heavy arithmetic);
fractions.Fraction is the fallback.  Both are always normalized,
hashable, and mix freely with ints.
"""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def qstr(q) -> str:
    """Exact serialization: "p" or "p/q"."""
    return str(q)


def parse_q(text):
    """Parse "p" or "p/q", optionally signed."""
    try:
        return Q(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc
