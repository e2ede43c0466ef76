"""Parser and canonical printer for monomials and polynomials.

Grammar (whitespace insignificant between tokens):

    poly        := ['+'|'-'] term (('+'|'-') term)*
    term        := [rational] factorchain
    factorchain := factor+              # juxtaposition, LEFT-associated
    factor      := varname power?
                 | varname '^{' int '}' factor
                 | '(' poly ')'
    power       := '^' int | '^[' int ']'
    varname     := 'x' | 'y' | 'z' | 't' digits
    rational    := int ['/' int]

'^k' is the left-normed principal power, '^[k]' the plenary power, and
'x^{r} f' applies r-fold left multiplication by x to the factor that
follows.  Juxtaposition associates to the LEFT: "a b c" parses as
"(a b) c".  The input "0" denotes the zero polynomial.
"""

from __future__ import annotations

import re

from .magma import (
    Monomial,
    Variable,
    children,
    leaf,
    plenary_power,
    principal_power,
    principal_power_of,
    var_name,
)
from .poly import Polynomial
from .rationals import ONE, Q, qstr


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"t\d+|[A-Za-z]+|\d+|[][(){}^+/-]|\S")
_VAR_RE = re.compile(r"^(x|y|z|t\d+)$")


def _tokenize(text: str):
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        value = match.group()
        if value.isspace():
            continue
        head = text[: match.start()]
        line = head.count("\n") + 1
        col = match.start() - (head.rfind("\n") + 1) + 1
        if value.isalpha() and len(value) > 1 and set(value) <= {"x", "y", "z"}:
            # juxtaposed single-letter variables, e.g. "xy"
            for offset, ch in enumerate(value):
                tokens.append((ch, line, col + offset))
        else:
            tokens.append((value, line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def next(self):
        if self.pos >= len(self.tokens):
            self.fail("unexpected end of input")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[0] != value:
            self.fail(f"expected {value!r}, found {tok[0]!r}", tok)
        return tok

    def fail(self, message, tok=None):
        if tok is None:
            if self.pos < len(self.tokens):
                tok = self.tokens[self.pos]
            else:
                line = self.text.count("\n") + 1
                tail = self.text.rfind("\n") + 1
                raise ParseError(message, line, len(self.text) - tail + 1)
        raise ParseError(message, tok[1], tok[2])

    def parse_int(self) -> int:
        tok = self.next()
        if not tok[0].isdigit():
            self.fail(f"expected an integer, found {tok[0]!r}", tok)
        return int(tok[0])

    def parse_poly(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -1
        total = self.parse_term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            term = self.parse_term()
            total = total + term.scale(-1 if op == "-" else 1)
        return total

    def parse_term(self) -> Polynomial:
        coeff = ONE
        tok = self.peek()
        if tok is not None and tok.isdigit():
            num = self.parse_int()
            if self.peek() == "/":
                self.next()
                den = self.parse_int()
                if den == 0:
                    self.fail("zero denominator")
                coeff = Q(num, den)
            else:
                coeff = Q(num)
        result = self.parse_factor()
        while self._at_factor():
            result = result * self.parse_factor()
        return result.scale(coeff)

    def _at_factor(self) -> bool:
        tok = self.peek()
        return tok is not None and (tok == "(" or _VAR_RE.match(tok))

    def parse_variable(self, tok) -> Variable:
        name = tok[0]
        if name == "x":
            return Variable(1)
        if name == "y":
            return Variable(2)
        if name == "z":
            return Variable(3)
        index = int(name[1:])
        if index == 0:
            self.fail("variable t0 is reserved", tok)
        return Variable(index)

    def parse_factor(self) -> Polynomial:
        tok = self.next()
        if tok[0] == "(":
            inner = self.parse_poly()
            self.expect(")")
            return inner
        if not _VAR_RE.match(tok[0]):
            if re.match(r"^[A-Za-z]", tok[0]):
                self.fail(f"unknown variable name {tok[0]!r}", tok)
            self.fail(f"expected a factor, found {tok[0]!r}", tok)
        v = self.parse_variable(tok)
        if self.peek() != "^":
            return Polynomial.variable(v)
        self.next()
        nxt = self.peek()
        if nxt == "{":
            self.next()
            r = self.parse_int()
            self.expect("}")
            arg = self.parse_factor()
            vpoly = Polynomial.variable(v)
            for _ in range(r):
                arg = vpoly * arg
            return arg
        if nxt == "[":
            self.next()
            k = self.parse_int()
            self.expect("]")
            if k < 1:
                self.fail("plenary power needs k >= 1", tok)
            return Polynomial.monomial(plenary_power(v, k))
        k = self.parse_int()
        if k < 1:
            self.fail("power needs k >= 1", tok)
        return Polynomial.monomial(principal_power(v, k))


def parse(text: str) -> Polynomial:
    """Parse a polynomial in the surface grammar."""
    if text.strip() == "0":
        return Polynomial.zero()
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError("empty input", 1, 1)
    result = parser.parse_poly()
    if parser.pos != len(parser.tokens):
        parser.fail("trailing input")
    return result


def parse_monomial(text: str) -> Monomial:
    """Parse input that must denote a single monomial with coefficient 1."""
    p = parse(text)
    if len(p.terms) != 1:
        raise ValueError("expected a single monomial")
    ((m, c),) = p.terms.items()
    if c != 1:
        raise ValueError("expected a monomial with coefficient 1")
    return m


def _chain_prefix(m: Monomial):
    """(r, v, core) for the maximal leading v-leaf chain v(v(...(v core)))."""
    v = None
    r = 0
    while not m.is_leaf:
        a, b = m.left, m.right
        if a.is_leaf and (v is None or a.var == v):
            v, m = a.var, b
        elif b.is_leaf and (v is None or b.var == v):
            v, m = b.var, a
        else:
            break
        r += 1
    return r, v, m


def format_monomial(m: Monomial) -> str:
    pp = principal_power_of(m)
    if pp is not None:
        v, k = pp
        return v.name if k == 1 else f"{v.name}^{k}"
    r, v, core = _chain_prefix(m)
    if r >= 2:
        return f"{v.name}^{{{r}}} {_wrap(core)}"
    a, b = children(m)
    if a.key < b.key:
        a, b = b, a
    return f"{_wrap(a)} {_wrap(b)}"


def _wrap(m: Monomial) -> str:
    s = format_monomial(m)
    if principal_power_of(m) is not None:
        return s
    return f"({s})"


def format_coefficient(c) -> str:
    return qstr(c)


def format_polynomial(f: Polynomial) -> str:
    """Canonical rendering: terms in descending canonical monomial order."""
    if not f.terms:
        return "0"
    parts = []
    for m, c in f.items_ordered(reverse=True):
        mono = format_monomial(m)
        mag = abs(c)
        body = mono if mag == 1 else f"{qstr(mag)} {mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def polynomial_to_json(f: Polynomial, ty=None) -> dict:
    """JSON-lines payload: exact coefficients plus grammar monomials."""
    obj = {
        "type": list(ty) if ty is not None else None,
        "terms": [
            {"coeff": qstr(c), "monomial": format_monomial(m)}
            for m, c in f.items_ordered(reverse=True)
        ],
    }
    return obj


def polynomial_from_json(obj) -> Polynomial:
    total = Polynomial.zero()
    for term in obj["terms"]:
        m = parse_monomial(term["monomial"])
        total = total + Polynomial.monomial(m, Q(term["coeff"]))
    return total
