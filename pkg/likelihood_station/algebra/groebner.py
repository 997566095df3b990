"""
Groebner engine: reduced bases, normal forms, elimination, quotients and
saturations, dimension and colength.

Bases come from sympy's Buchberger implementation (Gebauer-Moeller pair
criteria) or its F5B variant, selected by ``GROEBNER_METHOD``.
"""

from __future__ import annotations

import time
from collections import deque
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.groebnertools import groebner as sympy_groebner
from sympy.polys.groebnertools import spoly
from sympy.polys.orderings import MonomialOrder

from ..config import settings
from ..exceptions.custom import (
    PositiveDimensionError,
    RingMismatchError,
    UnitIdealError,
    UsageError,
)
from ..logging_config import get_logger
from ..utils.timing import deadline
from .ring import (
    GREVLEX,
    Monomial,
    OrderSpec,
    Polynomial,
    PolynomialRing,
    ring_of,
    total_degree,
)

logger = get_logger(__name__)

AUX_VARIABLE = "t_aux"


class Ideal:
    """
    Ideal of a polynomial ring, with a lazily cached reduced Groebner basis
    for the ring's monomial order.
    """

    def __init__(
        self,
        generators: Iterable[Polynomial],
        ring: Optional[PolynomialRing] = None,
        gb: Optional[Sequence[Polynomial]] = None,
    ):
        generators = list(generators)
        if ring is None:
            if not generators:
                raise UsageError("an ideal without generators needs an explicit ring")
            ring = ring_of(generators[0])
        converted = []
        for g in generators:
            if g.ring != ring.sympy:
                g = ring.convert(g)
            if g:
                converted.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(converted)
        self._gb: Optional[Tuple[Polynomial, ...]] = tuple(gb) if gb is not None else None

    @property
    def gb(self) -> Tuple[Polynomial, ...]:
        if self._gb is None:
            self._gb = tuple(_reduced_basis(self.generators, self.ring, "groebner"))
        return self._gb

    def is_unit(self) -> bool:
        return len(self.gb) == 1 and self.gb[0] == self.ring.one

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self)

    def same_as(self, other: "Ideal") -> bool:
        """Equality of ideals, decided by comparing reduced bases."""
        if self.ring.names != other.ring.names:
            return False
        if self.ring != other.ring:
            other = other.in_ring(self.ring)
        return set(self.gb) == set(other.gb)

    def in_ring(self, ring: PolynomialRing) -> "Ideal":
        return Ideal([ring.convert(g) for g in self.generators], ring)

    def __add__(self, other: Union["Ideal", Iterable[Polynomial]]) -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else list(other)
        return Ideal(list(self.generators) + list(extra), self.ring)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        state = f"gb={len(self._gb)}" if self._gb is not None else "gb=?"
        return f"Ideal({len(self.generators)} generators in {self.ring!r}, {state})"


def _reduced_basis(
    generators: Sequence[Polynomial], ring: PolynomialRing, stage: str
) -> List[Polynomial]:
    if not generators:
        return []
    start = time.perf_counter()
    with deadline(stage):
        basis = sympy_groebner(list(generators), ring.sympy, method=settings.GROEBNER_METHOD)
    logger.debug(
        "groebner_basis",
        stage=stage,
        nvars=ring.ngens,
        generators=len(generators),
        size=len(basis),
        max_degree=max((total_degree(g) for g in basis), default=0),
        seconds=round(time.perf_counter() - start, 4),
    )
    return basis


def groebner_basis(
    I: Ideal,
    order: Union[OrderSpec, MonomialOrder, str, None] = None,
    stage: str = "groebner",
) -> Ideal:
    """
    Reduced Groebner basis of ``I``.

    Args:
        I: ideal
        order: monomial order; defaults to the ring's own order
        stage: label used for timeouts and logging

    Returns:
        Ideal carrying its cached reduced basis (monic, sorted descending)
    """
    ring = I.ring if order is None else I.ring.reorder(I.ring.names, order)
    if ring == I.ring:
        if I._gb is None:
            I._gb = tuple(_reduced_basis(I.generators, ring, stage))
        return I
    moved = I.in_ring(ring)
    moved._gb = tuple(_reduced_basis(moved.generators, ring, stage))
    return moved


def s_polynomials_reduce(I: Ideal) -> bool:
    """Buchberger criterion on the cached basis: every S-polynomial reduces to zero."""
    basis = list(I.gb)
    for f, g in combinations(basis, 2):
        if spoly(f, g, I.ring.sympy).rem(basis):
            return False
    return True


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    """Remainder of ``f`` against the reduced basis of ``I``; zero iff ``f`` is in ``I``."""
    if f.ring != I.ring.sympy:
        if set(str(s) for s in f.ring.symbols) - set(I.ring.names):
            raise RingMismatchError([str(s) for s in f.ring.symbols], I.ring.names)
        f = I.ring.convert(f)
    basis = I.gb
    if not basis:
        return f
    return f.rem(list(basis))


# --------------------------------------------------------------------------
# Elimination
# --------------------------------------------------------------------------


def _elimination_ideal(
    generators: Sequence[Polynomial],
    drop: Sequence[str],
    keep: Sequence[str],
    target: PolynomialRing,
    stage: str,
) -> Ideal:
    """Eliminate ``drop`` from the ideal of ``generators``; result lives in ``target``."""
    work = PolynomialRing(
        list(drop) + list(keep), OrderSpec(kind="elimination", block=len(drop))
    )
    moved = [work.convert(g) for g in generators]
    basis = _reduced_basis(moved, work, stage)
    nd = len(drop)
    survivors = [g for g in basis if all(not any(m[:nd]) for m in g.itermonoms())]
    converted = [target.convert(g) for g in survivors]
    seeded = None
    if _restricts_to(target, work, nd):
        seeded = sorted(converted, key=lambda g: target.order(g.LM), reverse=True)
    return Ideal(converted, target, gb=seeded)


def _restricts_to(target: PolynomialRing, work: PolynomialRing, nd: int) -> bool:
    # The kept block of the elimination order is grevlex in declaration order.
    return target.order == GREVLEX.key(target.ngens) and tuple(work.names[nd:]) == target.names


def eliminate(I: Ideal, keep: Sequence[str]) -> Ideal:
    """
    Generators of the intersection of ``I`` with the subring in ``keep``.

    The result lives in the grevlex ring on the kept variables (in ``I``'s
    variable order).
    """
    for name in keep:
        I.ring.index(name)
    kept = [name for name in I.ring.names if name in set(keep)]
    if len(kept) == I.ring.ngens:
        return I
    drop = [name for name in I.ring.names if name not in set(keep)]
    target = PolynomialRing(kept, GREVLEX)
    return _elimination_ideal(I.generators, drop, kept, target, "eliminate")


def _aux_ring(ring: PolynomialRing) -> Tuple[PolynomialRing, Polynomial]:
    name = AUX_VARIABLE
    while name in ring.names:
        name += "_"
    extended = PolynomialRing([name] + list(ring.names), GREVLEX)
    return extended, extended.gens[0]


# --------------------------------------------------------------------------
# Quotients and saturation
# --------------------------------------------------------------------------


def quotient_saturate(
    I: Ideal, f: Polynomial, mode: str = "infinity", stage: str = "saturate"
) -> Ideal:
    """
    Ideal quotient ``(I : f)`` (``mode="once"``) or saturation ``(I : f^inf)``.

    Saturation eliminates t from I + <t*f - 1>; the single quotient divides
    the generators of I intersected with <f> (t*I + (1-t)*<f>, t eliminated)
    by f.
    """
    if not f:
        raise UsageError("cannot take a quotient by the zero polynomial")
    if f.ring != I.ring.sympy:
        f = I.ring.convert(f)
    if f.is_ground:
        return I
    if not I.generators:
        return I

    extended, t = _aux_ring(I.ring)
    lifted = [extended.convert(g) for g in I.generators]
    fl = extended.convert(f)
    names = list(I.ring.names)

    if mode == "infinity":
        generators = lifted + [t * fl - 1]
        return _elimination_ideal(generators, [str(t)], names, I.ring, stage)

    if mode == "once":
        generators = [t * g for g in lifted] + [(1 - t) * fl]
        intersection = _elimination_ideal(generators, [str(t)], names, I.ring, stage)
        quotients = [g.exquo(f) for g in intersection.generators]
        return Ideal(quotients, I.ring)

    raise UsageError(f"unknown quotient mode {mode!r}; expected 'once' or 'infinity'")


def saturate_by_factors(
    I: Ideal, factors: Iterable[Polynomial], stage: str = "saturate"
) -> Tuple[Ideal, int]:
    """
    Saturate by a product given as its factors, one factor at a time,
    smallest degree first.

    Returns:
        (saturated ideal, number of factors whose saturation changed the ideal)
    """
    ordered = sorted(
        (f for f in factors if f and not f.is_ground),
        key=lambda f: (total_degree(f), len(f)),
    )
    changed = 0
    current = I
    for f in ordered:
        if current.is_unit():
            break
        result = quotient_saturate(current, f, "infinity", stage)
        if not result.same_as(current):
            changed += 1
            logger.debug("saturation_changed", stage=stage, factor_degree=total_degree(f))
        current = result
    return current, changed


def random_combination(
    ring: PolynomialRing, generators: Sequence[Polynomial], seed: int = 0
) -> Polynomial:
    """Seeded combination of ``generators`` with integer coefficients in [1, 10007]."""
    rng = np.random.default_rng(seed)
    coefficients = rng.integers(1, 10008, size=len(generators))
    h = ring.zero
    for c, g in zip(coefficients, generators):
        h += ring.convert(g) * int(c)
    return h


def saturation_elements(
    I: Ideal,
    generators: Sequence[Polynomial],
    method: Optional[str] = None,
    seed: int = 0,
) -> Optional[List[Polynomial]]:
    """
    Polynomials whose successive saturation realizes (I : <generators>^inf).

    Generators already in ``I`` are skipped. Returns None when every
    generator lies in ``I``, in which case the saturation is the unit ideal.
    """
    method = method or settings.Q_SATURATION
    if method not in ("combination", "sequential"):
        raise UsageError(f"unknown saturation method {method!r}")
    nonzero = [g for g in generators if g]
    if not nonzero:
        return []
    candidates = [g for g in nonzero if not I.contains(g)]
    if not candidates:
        return None
    if method == "sequential" or len(candidates) == 1:
        return candidates
    return [random_combination(I.ring, candidates, seed)]


def saturate_by_ideal(
    I: Ideal,
    generators: Sequence[Polynomial],
    method: Optional[str] = None,
    seed: int = 0,
    stage: str = "saturate_q",
) -> Tuple[Ideal, int]:
    """
    Saturate ``I`` by the ideal spanned by ``generators``.

    ``method="combination"`` saturates once by a seeded random integer
    combination of the generators, which equals the ideal saturation for all
    but a measure-zero set of coefficient choices. ``"sequential"`` saturates
    by each generator in turn.
    """
    elements = saturation_elements(I, generators, method, seed)
    if elements is None:
        logger.info("saturation_emptied_ideal", stage=stage)
        return Ideal([I.ring.one], I.ring, gb=[I.ring.one]), 1
    return saturate_by_factors(I, elements, stage)


# --------------------------------------------------------------------------
# Dimension and colength
# --------------------------------------------------------------------------


def _leading_monomials(I: Ideal) -> List[Monomial]:
    return [g.LM for g in I.gb]


def dimension_codim(I: Ideal) -> Tuple[int, int]:
    """
    Krull dimension of the quotient ring and the codimension of ``I``.

    Computed as the largest set of variables carrying no leading monomial of
    the reduced basis.
    """
    n = I.ring.ngens
    if I.is_zero():
        return n, 0
    if I.is_unit():
        raise UnitIdealError("dimension of the unit ideal")
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in _leading_monomials(I)]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = set(subset)
            if all(not support <= chosen for support in supports):
                return size, n - size
    return 0, n


def is_zero_dimensional(I: Ideal) -> bool:
    if I.is_unit():
        return False
    pure = set()
    for m in _leading_monomials(I):
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            pure.add(support[0])
    return len(pure) == I.ring.ngens


def standard_monomials(I: Ideal) -> List[Monomial]:
    """Monomials outside the leading-term ideal, ascending in the ring order."""
    if I.is_unit():
        raise UnitIdealError("standard monomials of the unit ideal")
    if not is_zero_dimensional(I):
        dim, _ = dimension_codim(I)
        raise PositiveDimensionError(dim, "standard monomials")

    leads = _leading_monomials(I)
    n = I.ring.ngens

    def divisible(m: Monomial) -> bool:
        return any(all(a >= b for a, b in zip(m, lead)) for lead in leads)

    start = (0,) * n
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for i in range(n):
            nxt = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if nxt not in seen and not divisible(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen, key=I.ring.order)


def colength_zero_dim(I: Ideal) -> int:
    """Vector-space dimension of the quotient by a zero-dimensional ideal."""
    return len(standard_monomials(I))
