"""
Kernels of polynomial matrices over a polynomial ring or modulo an ideal.

Submodules of free modules are encoded as ideals linear in tag variables: the
vector (v_1, ..., v_k) becomes v_1*F_1 + ... + v_k*F_k, every product of two
tags is added to the ideal, and a lex order on the tag block in front of the
ring order gives position-over-term module bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions.custom import DimensionMismatchError, RingMismatchError
from ..logging_config import get_logger
from ..utils.numeric import compile_polynomials
from .groebner import Ideal, _reduced_basis, normal_form
from .ring import (
    BlockOrder,
    Polynomial,
    PolynomialRing,
    determinant,
    minors,
    total_degree,
)

logger = get_logger(__name__)

Vector = Tuple[Polynomial, ...]


@dataclass
class PolyMatrix:
    """Rectangular grid of polynomials over one ring."""

    ring: PolynomialRing
    entries: List[List[Polynomial]]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionMismatchError("matrix must have at least one entry", 1, 0)
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DimensionMismatchError("row length", width, len(row))
            for entry in row:
                if entry.ring != self.ring.sympy:
                    raise RingMismatchError(
                        [str(s) for s in entry.ring.symbols], self.ring.names
                    )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> List[Polynomial]:
        return list(self.entries[i])

    def column(self, j: int) -> List[Polynomial]:
        return [row[j] for row in self.entries]

    def apply(self, v: Sequence[Polynomial]) -> List[Polynomial]:
        """Matrix-vector product A*v."""
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length", self.cols, len(v))
        result = []
        for row in self.entries:
            total = self.ring.zero
            for a, b in zip(row, v):
                if a and b:
                    total += a * b
            result.append(total)
        return result

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.cols)])

    def scale_columns(self, factors: Sequence[Polynomial]) -> "PolyMatrix":
        if len(factors) != self.cols:
            raise DimensionMismatchError("column factors", self.cols, len(factors))
        return PolyMatrix(
            self.ring, [[a * f for a, f in zip(row, factors)] for row in self.entries]
        )

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.cols != self.cols:
            raise DimensionMismatchError("stacked matrix width", self.cols, other.cols)
        return PolyMatrix(self.ring, [list(r) for r in self.entries + other.entries])

    def minors(self, size: int, row_sets=None) -> List[Polynomial]:
        return minors(self.entries, size, row_sets)

    def det(self) -> Polynomial:
        if self.rows != self.cols:
            raise DimensionMismatchError("square matrix", self.rows, self.cols)
        return determinant(self.entries)

    def evaluate(self, point: Sequence[complex]):
        """Entries evaluated at a point as a nested list of complex numbers."""
        flat = compile_polynomials([e for row in self.entries for e in row])
        values = flat.evaluate(np.asarray(point, dtype=complex))
        return values.reshape(self.rows, self.cols)


@dataclass
class KernelModule:
    """Submodule of R^k (or (R/P)^k) given by generating vectors."""

    ring: PolynomialRing
    rank: int
    generators: List[Vector] = field(default_factory=list)
    modulo: Optional[Ideal] = None

    def degree(self, v: Vector) -> int:
        return max((total_degree(c) for c in v if c), default=0)

    def verify(self, A: PolyMatrix) -> bool:
        """A*v reduces to zero (modulo P when present) for every generator."""
        for v in self.generators:
            for entry in A.apply(v):
                if self.modulo is not None:
                    entry = normal_form(entry, self.modulo)
                if entry:
                    return False
        return True

    def pairing(self, weights: Sequence[int], components: int) -> List[Polynomial]:
        """The polynomials sum_i w_i * v_i over the first ``components`` coordinates."""
        result = []
        for v in self.generators:
            total = self.ring.zero
            for w, c in zip(weights, v[:components]):
                if w and c:
                    total += c * int(w)
            if total:
                result.append(total)
        return result

    def __len__(self) -> int:
        return len(self.generators)


class _TagEncoding:
    """Polynomial ring with an optional leading auxiliary variable, tag variables and the base ring."""

    def __init__(self, base: PolynomialRing, row_tags: int, col_tags: int, aux: bool = False):
        taken = set(base.names)

        def fresh(stem: str) -> str:
            while stem in taken:
                stem += "_"
            taken.add(stem)
            return stem

        self.aux_names = [fresh("syzT")] if aux else []
        self.row_names = [fresh(f"syzE{i + 1}") for i in range(row_tags)]
        self.col_names = [fresh(f"syzF{j + 1}") for j in range(col_tags)]
        self.base = base
        blocks = []
        if aux:
            blocks.append(("grevlex", 1))
        blocks.append(("lex", row_tags + col_tags))
        blocks.append(("grevlex", base.ngens))
        names = self.aux_names + self.row_names + self.col_names + list(base.names)
        self.ring = PolynomialRing(names, BlockOrder(blocks))
        self.offset_rows = len(self.aux_names)
        self.offset_cols = self.offset_rows + row_tags
        self.offset_base = self.offset_cols + col_tags

    @property
    def aux(self) -> Polynomial:
        return self.ring.gens[0]

    def row_tag(self, i: int) -> Polynomial:
        return self.ring.gens[self.offset_rows + i]

    def col_tag(self, j: int) -> Polynomial:
        return self.ring.gens[self.offset_cols + j]

    def lift(self, f: Polynomial) -> Polynomial:
        return self.ring.convert(f)

    def encode(self, v: Sequence[Polynomial]) -> Polynomial:
        total = self.ring.zero
        for j, c in enumerate(v):
            if c:
                total += self.lift(c) * self.col_tag(j)
        return total

    def tag_products(self) -> List[Polynomial]:
        tags = [self.ring.gens[i] for i in range(self.offset_rows, self.offset_base)]
        return [a * b for i, a in enumerate(tags) for b in tags[i:]]

    def decode(self, g: Polynomial) -> Optional[Vector]:
        """Column-tag-linear, auxiliary-free and row-tag-free elements as vectors."""
        k = len(self.col_names)
        parts = [dict() for _ in range(k)]
        for monom, coeff in g.iterterms():
            if any(monom[: self.offset_cols]):
                return None
            tags = monom[self.offset_cols : self.offset_base]
            if sum(tags) != 1:
                return None
            j = tags.index(1)
            parts[j][monom[self.offset_base :]] = coeff
        return tuple(self.base.sympy.from_dict(p) for p in parts)


def _module_basis(
    encoding: _TagEncoding,
    generators: List[Polynomial],
    modulo: Optional[Ideal],
    stage: str,
) -> List[Polynomial]:
    extra = [encoding.lift(g) for g in modulo.generators] if modulo is not None else []
    return _reduced_basis(generators + encoding.tag_products() + extra, encoding.ring, stage)


def _decoded(encoding: _TagEncoding, basis: Sequence[Polynomial]) -> List[Vector]:
    vectors = []
    for g in basis:
        v = encoding.decode(g)
        if v is not None and any(v):
            vectors.append(v)
    return vectors


def kernel_of_matrix(A: PolyMatrix, modulo: Optional[Ideal] = None) -> KernelModule:
    """
    Generators of {v : A*v = 0}, or of the kernel over R/P when ``modulo`` is P.

    Args:
        A: m x k polynomial matrix
        modulo: ideal P; reducing by it is equivalent to appending the columns
            g_i * e_row and keeping the first k coordinates of the kernel

    Returns:
        KernelModule whose generators are a position-over-term Groebner basis
    """
    encoding = _TagEncoding(A.ring, A.rows, A.cols)
    columns = []
    for j in range(A.cols):
        image = encoding.col_tag(j)
        for i in range(A.rows):
            entry = A.entries[i][j]
            if entry:
                image += encoding.lift(entry) * encoding.row_tag(i)
        columns.append(image)

    basis = _module_basis(encoding, columns, modulo, "kernel")
    vectors = _decoded(encoding, basis)
    if modulo is not None:
        vectors = [v for v in vectors if any(normal_form(c, modulo) for c in v)]
    logger.debug("kernel_computed", shape=A.shape, generators=len(vectors))
    return KernelModule(A.ring, A.cols, vectors, modulo)


def module_contains(M: KernelModule, v: Sequence[Polynomial]) -> bool:
    """Membership of ``v`` in the submodule generated by ``M`` (modulo P when set)."""
    if not M.generators:
        if M.modulo is None:
            return not any(v)
        return all(not normal_form(c, M.modulo) for c in v)
    encoding = _TagEncoding(M.ring, 0, M.rank)
    basis = _module_basis(
        encoding, [encoding.encode(w) for w in M.generators], M.modulo, "module_membership"
    )
    return not encoding.encode(v).rem(list(basis))


def minimal_generators(M: KernelModule) -> KernelModule:
    """Drop generators lying in the span of the ones kept before them, lowest degree first."""
    ordered = sorted(M.generators, key=lambda v: (M.degree(v), sum(len(c) for c in v)))
    kept: List[Vector] = []
    for v in ordered:
        if not module_contains(KernelModule(M.ring, M.rank, kept, M.modulo), v):
            kept.append(v)
    logger.debug("minimal_generators", before=len(M.generators), after=len(kept))
    return KernelModule(M.ring, M.rank, kept, M.modulo)


def _saturate_module(M: KernelModule, f: Polynomial) -> KernelModule:
    encoding = _TagEncoding(M.ring, 0, M.rank, aux=True)
    t = encoding.aux
    fl = encoding.lift(f)
    generators = [encoding.encode(v) for v in M.generators]
    generators += [(t * fl - 1) * encoding.col_tag(j) for j in range(M.rank)]
    basis = _module_basis(encoding, generators, M.modulo, "presaturate")
    vectors = _decoded(encoding, basis)
    return KernelModule(M.ring, M.rank, vectors, M.modulo)


def presaturate_kernel(M: KernelModule, factors: Sequence[Polynomial]) -> KernelModule:
    """
    Module saturation (M : (f_1 * ... * f_s)^inf), factor by factor.

    The result contains M; pairing it with data gives an ideal that is
    already saturated by the factors.
    """
    current = M
    for f in sorted((f for f in factors if f and not f.is_ground), key=total_degree):
        current = _saturate_module(current, f)
    logger.debug("kernel_presaturated", before=len(M), after=len(current))
    return current
