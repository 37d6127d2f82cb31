"""Linear complex structures and Hermitian metrics on a Lie algebra."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_core import (
    ShapeError,
    format_rational,
    identity,
    inverse,
    leading_minors,
    mat_add,
    mat_mul,
    mat_vec,
    parse_rational,
    shape,
    to_matrix,
    transpose,
)
from .lie_algebra import LieAlgebra, Vector, bracket, random_invertible_integer_matrix, require_valid


class OddDimension(ValueError):
    pass


class InvalidComplexStructure(ValueError):
    pass


class InvalidMetric(ValueError):
    pass


class NotHermitian(ValueError):
    pass


def _matrix_to_json(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def _matrix_from_json(rows) -> tuple:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    return to_matrix([[parse_rational(x) for x in r] for r in rows])


@dataclass(frozen=True)
class LinearComplexStructure:
    """Constant endomorphism J; column j holds the coordinates of J e_j."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = to_matrix(self.matrix)
        rows, cols = shape(m)
        if rows != cols:
            raise ShapeError("J must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> Vector:
        return mat_vec(self.matrix, v)

    @classmethod
    def standard(cls, n: int) -> "LinearComplexStructure":
        """``J0 = [[0, -I], [I, 0]]`` on R^(2n): J e_i = e_(n+i)."""
        m = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            m[n + i][i] = 1
            m[i][n + i] = -1
        return cls(to_matrix(m))

    @classmethod
    def from_pairs(cls, dim: int, pairs: Sequence[tuple[int, int]]) -> "LinearComplexStructure":
        """J e_a = e_b and J e_b = -e_a for each (a, b)."""
        m = [[0] * dim for _ in range(dim)]
        for a, b in pairs:
            m[b][a] = 1
            m[a][b] = -1
        return cls(to_matrix(m))

    def to_json(self):
        return _matrix_to_json(self.matrix)

    @classmethod
    def from_json(cls, rows) -> "LinearComplexStructure":
        return cls(_matrix_from_json(rows))


@dataclass(frozen=True)
class InnerMetric:
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = to_matrix(self.gram)
        rows, cols = shape(m)
        if rows != cols:
            raise ShapeError("metric must be square")
        object.__setattr__(self, "gram", m)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((xi * gij * yj for i, xi in enumerate(x) if xi
                    for j, (gij, yj) in enumerate(zip(self.gram[i], y)) if gij and yj), Fraction(0))

    @classmethod
    def identity(cls, n: int) -> "InnerMetric":
        return cls(identity(n))

    def is_symmetric(self) -> bool:
        return self.gram == transpose(self.gram)

    def is_positive_definite(self) -> bool:
        return self.is_symmetric() and all(m > 0 for m in leading_minors(self.gram))

    def to_json(self):
        return _matrix_to_json(self.gram)

    @classmethod
    def from_json(cls, rows) -> "InnerMetric":
        return cls(_matrix_from_json(rows))


def require_metric(G: InnerMetric) -> None:
    if not G.is_positive_definite():
        raise InvalidMetric("metric must be symmetric positive definite")


def validate_j(J: LinearComplexStructure) -> bool:
    if J.dim % 2:
        raise OddDimension(f"complex structures need even dimension, got {J.dim}")
    minus_id = tuple(tuple(-x for x in r) for r in identity(J.dim))
    return mat_mul(J.matrix, J.matrix) == minus_id


def require_j(J: LinearComplexStructure, n: int | None = None) -> None:
    if n is not None and J.dim != n:
        raise ShapeError(f"J acts on dimension {J.dim}, expected {n}")
    if not validate_j(J):
        raise InvalidComplexStructure("J*J != -I")


def _sub(*vs: Vector) -> Vector:
    head, *rest = vs
    return tuple(a - sum(r[k] for r in rest) for k, a in enumerate(head))


def nijenhuis(g: LieAlgebra, J: LinearComplexStructure, x: Sequence, y: Sequence) -> Vector:
    """``[Jx,Jy] - J[x,Jy] - J[Jx,y] - [x,y]``."""
    if J.dim != g.dim:
        raise ShapeError("J and algebra dimensions differ")
    if len(x) != g.dim or len(y) != g.dim:
        raise ShapeError(f"vectors must have length {g.dim}")
    jx, jy = J(x), J(y)
    return _sub(
        bracket(g, jx, jy),
        J(bracket(g, x, jy)),
        J(bracket(g, jx, y)),
        bracket(g, x, y),
    )


@dataclass(frozen=True)
class Witness:
    check: str
    basis: tuple[int, ...]
    defect: tuple

    def to_json(self) -> dict:
        return {"check": self.check, "basis": list(self.basis), "defect": _defect_json(self.defect)}


def _defect_json(defect):
    out = []
    for x in defect:
        if isinstance(x, Fraction):
            out.append(format_rational(x))
        elif isinstance(x, int):
            out.append(format_rational(Fraction(x)))
        elif hasattr(x, "to_json"):
            out.append(x.to_json())
        else:
            out.append(_defect_json(x))
    return out


@dataclass(frozen=True)
class ClassificationVerdict:
    integrable: bool
    abelian: bool
    bi_invariant: bool
    witnesses: tuple[Witness, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "integrable": self.integrable,
            "abelian": self.abelian,
            "bi_invariant": self.bi_invariant,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def abelian_defect(g: LieAlgebra, J: LinearComplexStructure, x, y) -> Vector:
    return _sub(bracket(g, J(x), J(y)), bracket(g, x, y))


def bi_invariant_defect(g: LieAlgebra, J: LinearComplexStructure, x, y) -> Vector:
    return _sub(J(bracket(g, x, y)), bracket(g, x, J(y)))


DEFECTS = {
    "integrable": nijenhuis,
    "abelian": abelian_defect,
    "bi_invariant": bi_invariant_defect,
}


def classify_structure(g: LieAlgebra, J: LinearComplexStructure) -> ClassificationVerdict:
    require_valid(g)
    require_j(J, g.dim)
    n = g.dim
    e = [g.basis(i) for i in range(n)]
    witnesses = []
    flags = {}
    for check, defect in DEFECTS.items():
        failures = []
        # the bi-invariance defect is not antisymmetric, so it needs every ordered pair
        if check == "bi_invariant":
            pairs = [(i, j) for i in range(n) for j in range(n)]
        else:
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for i, j in pairs:
            d = defect(g, J, e[i], e[j])
            if any(d):
                failures.append(Witness(check, (i, j), d))
        flags[check] = not failures
        witnesses.extend(failures)
    return ClassificationVerdict(witnesses=tuple(witnesses), **flags)


def is_hermitian(G: InnerMetric, J: LinearComplexStructure) -> bool:
    if G.dim != J.dim:
        raise ShapeError("metric and J dimensions differ")
    return mat_mul(mat_mul(transpose(J.matrix), G.gram), J.matrix) == G.gram


def hermitian_defect(G: InnerMetric, J: LinearComplexStructure):
    """Entries of ``J^T G J - G``."""
    jgj = mat_mul(mat_mul(transpose(J.matrix), G.gram), J.matrix)
    return tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(jgj, G.gram))


def averaged_metric(a, J: LinearComplexStructure) -> InnerMetric:
    """``A^T A + J^T A^T A J``, Hermitian for J and positive definite when A is invertible."""
    ata = mat_mul(transpose(a), a)
    return InnerMetric(mat_add(ata, mat_mul(mat_mul(transpose(J.matrix), ata), J.matrix)))


def random_hermitian_metric(J: LinearComplexStructure, seed: int, bound: int = 2) -> InnerMetric:
    rng = random.Random(seed)
    a = random_invertible_integer_matrix(rng, J.dim, bound)
    return averaged_metric(a, J)


def random_complex_structure(n: int, seed: int, bound: int = 2) -> LinearComplexStructure:
    """``P J0 P^-1`` for a seeded random invertible integer P; n is the real dimension."""
    if n % 2:
        raise OddDimension(f"complex structures need even dimension, got {n}")
    rng = random.Random(seed)
    p = random_invertible_integer_matrix(rng, n, bound)
    j0 = LinearComplexStructure.standard(n // 2).matrix
    return LinearComplexStructure(mat_mul(mat_mul(p, j0), inverse(p)))


def conjugate_structure(J: LinearComplexStructure, p) -> LinearComplexStructure:
    """J expressed in the basis given by the columns of p: ``P^-1 J P``."""
    return LinearComplexStructure(mat_mul(mat_mul(inverse(p), J.matrix), p))


def conjugate_metric(G: InnerMetric, p) -> InnerMetric:
    return InnerMetric(mat_mul(mat_mul(transpose(p), G.gram), p))
