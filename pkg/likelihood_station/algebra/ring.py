"""
Exact multivariate polynomials over the rationals.

Polynomials are sympy sparse ``PolyElement`` values over ``QQ``; this module
adds the pieces the likelihood pipelines need on top of them: named rings with
explicit monomial orders, a strict text grammar, linear coordinate changes and
float/exact evaluation at points.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Literal, Mapping, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict
from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from ..exceptions.custom import (
    DimensionMismatchError,
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
    UsageError,
)

Polynomial = PolyElement
Monomial = Tuple[int, ...]
Rational = Union[int, Fraction]

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

_BASE_ORDERS: Dict[str, MonomialOrder] = {"lex": lex, "grevlex": grevlex}


class BlockOrder(MonomialOrder):
    """
    Product of base orders on consecutive variable blocks.

    ``BlockOrder((("grevlex", 1), ("grevlex", 4)))`` compares the first
    variable by grevlex and breaks ties by grevlex on the remaining four, which
    makes it an elimination order for the first block.
    """

    alias = "block"
    is_global = True

    def __init__(self, blocks: Sequence[Tuple[str, int]]):
        self.blocks = tuple((kind, int(size)) for kind, size in blocks)
        self._slices = []
        start = 0
        for kind, size in self.blocks:
            self._slices.append((_BASE_ORDERS[kind], start, start + size))
            start += size

    def __call__(self, monomial):
        return tuple(order(monomial[a:b]) for order, a, b in self._slices)

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and other.blocks == self.blocks

    def __hash__(self):
        return hash((self.__class__, self.blocks))

    def __repr__(self):
        return f"BlockOrder({self.blocks!r})"

    def __str__(self):
        return "block(" + ",".join(f"{k}:{s}" for k, s in self.blocks) + ")"


class OrderSpec(BaseModel):
    """
    Declarative monomial order.

    ``kind="elimination"`` with ``block=k`` eliminates the first ``k`` ring
    variables. Variable permutations are expressed by the order of the ring's
    variable names, see ``PolynomialRing.reorder``.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["lex", "grevlex", "elimination"] = "grevlex"
    block: int = 0

    def key(self, nvars: int) -> MonomialOrder:
        if self.kind == "elimination":
            if not 0 < self.block < nvars:
                return grevlex
            return BlockOrder((("grevlex", self.block), ("grevlex", nvars - self.block)))
        return _BASE_ORDERS[self.kind]


GREVLEX = OrderSpec(kind="grevlex")
LEX = OrderSpec(kind="lex")


class PolynomialRing:
    """QQ[names] with a fixed monomial order; canonical variable order is declaration order."""

    def __init__(
        self,
        names: Sequence[str],
        order: Union[OrderSpec, MonomialOrder, str] = GREVLEX,
    ):
        names = tuple(names)
        if not names:
            raise DimensionMismatchError("number of ring variables", 1, 0)
        for name in names:
            if not IDENTIFIER.match(name):
                raise PolynomialSyntaxError(f"invalid variable name '{name}'", name, 0)
        if len(set(names)) != len(names):
            raise PolynomialSyntaxError("duplicate variable names", " ".join(names), 0)

        if isinstance(order, str):
            order = OrderSpec(kind=order)
        key = order.key(len(names)) if isinstance(order, OrderSpec) else order

        self.names: Tuple[str, ...] = names
        self.order: MonomialOrder = key
        self.sympy: PolyRing = PolyRing(list(names), QQ, key)
        self._index = {name: i for i, name in enumerate(names)}

    # -- basic accessors ---------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def gens(self) -> Tuple[Polynomial, ...]:
        return self.sympy.gens

    @property
    def zero(self) -> Polynomial:
        return self.sympy.zero

    @property
    def one(self) -> Polynomial:
        return self.sympy.one

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name, self.names) from None

    def var(self, name: str) -> Polynomial:
        return self.sympy.gens[self.index(name)]

    def constant(self, value: Rational) -> Polynomial:
        return self.sympy.ground_new(to_qq(value))

    def from_terms(self, terms: Mapping[Monomial, Rational]) -> Polynomial:
        return self.sympy.from_dict({tuple(m): to_qq(c) for m, c in terms.items() if c})

    def linear_form(self, coefficients: Sequence[Rational]) -> Polynomial:
        if len(coefficients) != self.ngens:
            raise DimensionMismatchError("linear form length", self.ngens, len(coefficients))
        poly = self.zero
        for gen, c in zip(self.gens, coefficients):
            if c:
                poly += gen * to_qq(c)
        return poly

    # -- ring changes ------------------------------------------------------

    def reorder(
        self,
        names: Sequence[str],
        order: Union[OrderSpec, MonomialOrder, str] = GREVLEX,
    ) -> "PolynomialRing":
        return PolynomialRing(names, order)

    def convert(self, f: Polynomial) -> Polynomial:
        """Map ``f`` from another named ring into this one, matching variables by name."""
        source_names = [str(s) for s in f.ring.symbols]
        positions = []
        for i, name in enumerate(source_names):
            if name in self._index:
                positions.append((i, self._index[name]))
        present = {i for i, _ in positions}
        terms = {}
        for monom, coeff in f.iterterms():
            for i, e in enumerate(monom):
                if e and i not in present:
                    raise RingMismatchError(source_names, self.names)
            target = [0] * self.ngens
            for i, j in positions:
                target[j] = monom[i]
            terms[tuple(target)] = coeff
        return self.sympy.from_dict(terms)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.sympy == other.sympy

    def __hash__(self):
        return hash(self.sympy)

    def __repr__(self):
        return f"PolynomialRing({', '.join(self.names)}; {self.order})"


def ring_of(f: Polynomial) -> PolynomialRing:
    """Recover the named ring of a polynomial."""
    return PolynomialRing([str(s) for s in f.ring.symbols], f.ring.order)


# --------------------------------------------------------------------------
# Coefficients
# --------------------------------------------------------------------------


def to_qq(value: Rational):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return to_qq(Fraction(value))
    # already a domain element
    return QQ.convert(value)


def to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def coefficient_l1_norm(f: Polynomial) -> float:
    return float(sum(abs(to_fraction(c)) for c in f.itercoeffs()))


def total_degree(f: Polynomial) -> int:
    if not f:
        return 0
    return max(sum(m) for m in f.itermonoms())


def is_homogeneous(f: Polynomial) -> bool:
    degrees = {sum(m) for m in f.itermonoms()}
    return len(degrees) <= 1


def content_free(f: Polynomial) -> Polynomial:
    """Scale ``f`` to coprime integer coefficients with positive leading coefficient."""
    if not f:
        return f
    fractions = [to_fraction(c) for c in f.itercoeffs()]
    denominator = math.lcm(*(q.denominator for q in fractions))
    numerators = [int(q * denominator) for q in fractions]
    g = math.gcd(*numerators)
    scale = Fraction(denominator, g)
    if to_fraction(f.LC) < 0:
        scale = -scale
    return f * to_qq(scale)


# --------------------------------------------------------------------------
# Parsing and printing
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))"
)


class _Parser:
    """Recursive descent over the grammar  expr := term (('+'|'-') term)*."""

    def __init__(self, text: str, ring: PolynomialRing):
        self.text = text
        self.ring = ring
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _offset(self, char_index: int) -> int:
        return len(self.text[:char_index].encode("utf-8"))

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        index = 0
        while index < len(text):
            if text[index].isspace():
                index += 1
                continue
            match = _TOKEN.match(text, index)
            if not match or match.end() == index:
                raise PolynomialSyntaxError(
                    f"unexpected character {text[index]!r}", text, self._offset(index)
                )
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            index = match.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def _peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def _advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _fail(self, message: str, token: Tuple[str, str, int]):
        raise PolynomialSyntaxError(message, self.text, self._offset(token[2]))

    def _expect(self, value: str):
        token = self._advance()
        if token[0] != "op" or token[1] != value:
            self._fail(f"expected '{value}'", token)

    def parse(self) -> Polynomial:
        result = self._expr()
        token = self._peek()
        if token[0] != "end":
            self._fail(f"unexpected {token[1]!r}", token)
        return result

    def _expr(self) -> Polynomial:
        result = self._term()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value in "+-":
                self._advance()
                rhs = self._term()
                result = result + rhs if value == "+" else result - rhs
            else:
                return result

    def _term(self) -> Polynomial:
        result = self._unary()
        while True:
            kind, value, _ = self._peek()
            if kind == "op" and value == "*":
                self._advance()
                result = result * self._unary()
            else:
                return result

    def _unary(self) -> Polynomial:
        kind, value, _ = self._peek()
        if kind == "op" and value in "+-":
            self._advance()
            operand = self._unary()
            return -operand if value == "-" else operand
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        kind, value, _ = self._peek()
        if kind == "op" and value == "^":
            self._advance()
            token = self._advance()
            if token[0] != "number":
                self._fail("exponent must be a non-negative integer", token)
            return base ** int(token[1])
        return base

    def _atom(self) -> Polynomial:
        token = self._advance()
        kind, value, _ = token
        if kind == "number":
            numerator = int(value)
            nxt = self._peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self._advance()
                den = self._advance()
                if den[0] != "number":
                    self._fail("denominator must be an integer literal", den)
                if int(den[1]) == 0:
                    self._fail("zero denominator", den)
                return self.ring.constant(Fraction(numerator, int(den[1])))
            return self.ring.constant(numerator)
        if kind == "ident":
            if value not in self.ring.names:
                raise UnknownVariableError(value, self.ring.names)
            return self.ring.var(value)
        if kind == "op" and value == "(":
            inner = self._expr()
            self._expect(")")
            return inner
        if kind == "end":
            self._fail("unexpected end of input", token)
        self._fail(f"unexpected {value!r}", token)


def parse_poly(text: str, ring: Union[PolynomialRing, Sequence[str]]) -> Polynomial:
    """
    Parse polynomial text.

    Args:
        text: integers, rationals ``a/b``, identifiers, ``+ - * ^`` and parentheses
        ring: target ring, or a variable list (grevlex ring is built)

    Returns:
        Polynomial in canonical sorted form
    """
    if not isinstance(ring, PolynomialRing):
        ring = PolynomialRing(ring)
    return _Parser(text, ring).parse()


def _format_coefficient(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_poly(f: Polynomial) -> str:
    """Print ``f`` in the text grammar, terms in descending monomial order."""
    if not f:
        return "0"
    names = [str(s) for s in f.ring.symbols]
    pieces: List[str] = []
    for monom, coeff in f.terms():
        q = to_fraction(coeff)
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        magnitude = abs(q)
        if not factors:
            body = _format_coefficient(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = _format_coefficient(magnitude) + "*" + "*".join(factors)
        sign = "-" if q < 0 else "+"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces)


# --------------------------------------------------------------------------
# Arithmetic and calculus
# --------------------------------------------------------------------------


def _check_same_ring(a: Polynomial, b: Polynomial) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(
            [str(s) for s in a.ring.symbols], [str(s) for s in b.ring.symbols]
        )


def poly_arith(op: str, a: Polynomial, b: Union[Polynomial, int]) -> Polynomial:
    """Exact ``add``, ``sub``, ``mul`` or ``pow`` in canonical form."""
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise UsageError(f"exponent must be a non-negative integer, got {b!r}")
        return a**b
    _check_same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


def differentiate(f: Polynomial, var: str) -> Polynomial:
    names = [str(s) for s in f.ring.symbols]
    if var not in names:
        raise UnknownVariableError(var, names)
    return f.diff(f.ring.gens[names.index(var)])


def gradient(f: Polynomial) -> List[Polynomial]:
    return [f.diff(x) for x in f.ring.gens]


def linear_substitute(
    f: Polynomial,
    matrix: Sequence[Sequence[Rational]],
    target: PolynomialRing,
) -> Polynomial:
    """
    Replace each variable of ``f`` by a linear form in the target ring.

    ``matrix[i][j]`` is the coefficient of target variable ``j`` in the form
    substituted for variable ``i`` of ``f``'s ring.
    """
    n = f.ring.ngens
    if len(matrix) != n:
        raise DimensionMismatchError("substitution rows", n, len(matrix))
    if target.ngens != n:
        raise DimensionMismatchError("target ring size", n, target.ngens)
    forms = []
    for row in matrix:
        if len(row) != n:
            raise DimensionMismatchError("substitution columns", n, len(row))
        forms.append(target.linear_form(row))

    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        if (i, e) not in powers:
            powers[(i, e)] = forms[i] ** e
        return powers[(i, e)]

    result = target.zero
    for monom, coeff in f.iterterms():
        term = target.constant(to_fraction(coeff))
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        result += term
    return result


def evaluate_point(f: Polynomial, point: Sequence) -> Union[Fraction, complex]:
    """
    Evaluate ``f`` at a point.

    Exact for int/Fraction coordinates; otherwise complex floats with
    compensated summation of real and imaginary parts.
    """
    n = f.ring.ngens
    if len(point) != n:
        raise DimensionMismatchError("point length", n, len(point))

    if all(isinstance(x, (int, Fraction)) for x in point):
        total = Fraction(0)
        for monom, coeff in f.iterterms():
            value = to_fraction(coeff)
            for x, e in zip(point, monom):
                if e:
                    value *= Fraction(x) ** e
            total += value
        return total

    z = [complex(x) for x in point]
    real_parts, imag_parts = [], []
    for monom, coeff in f.iterterms():
        value = complex(float(to_fraction(coeff)))
        for x, e in zip(z, monom):
            if e:
                value *= x**e
        real_parts.append(value.real)
        imag_parts.append(value.imag)
    return complex(math.fsum(real_parts), math.fsum(imag_parts))


# --------------------------------------------------------------------------
# Determinants
# --------------------------------------------------------------------------


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row; matrices here are at most 6x6."""
    size = len(rows)
    if size == 0:
        raise DimensionMismatchError("determinant size", 1, 0)
    if size == 1:
        return rows[0][0]
    if size == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    result = None
    for j, entry in enumerate(rows[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        result = term if result is None else result + term
    if result is None:
        return rows[0][0].ring.zero
    return result


def minors(
    rows: Sequence[Sequence[Polynomial]],
    size: int,
    row_sets: Iterable[Sequence[int]] = None,
) -> List[Polynomial]:
    """All nonzero ``size`` x ``size`` minors (optionally restricted to given row sets)."""
    nrows, ncols = len(rows), len(rows[0])
    if row_sets is None:
        row_sets = combinations(range(nrows), size)
    result = []
    for chosen_rows in row_sets:
        for chosen_cols in combinations(range(ncols), size):
            sub = [[rows[i][j] for j in chosen_cols] for i in chosen_rows]
            value = determinant(sub)
            if value:
                result.append(value)
    return result
