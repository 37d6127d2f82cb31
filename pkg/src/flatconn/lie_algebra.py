"""Real Lie algebras given by rational structure constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exact_core import (
    ShapeError,
    format_rational,
    inverse,
    parse_rational,
    rational_det,
    rref,
)

Vector = tuple[Fraction, ...]


class InvalidLieAlgebra(ValueError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(f"structure constants fail validation: {report.summary()}")
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    antisymmetry_failures: tuple[tuple[int, int, int], ...] = ()
    jacobi_failures: tuple[tuple[tuple[int, int, int], Vector], ...] = ()
    messages: tuple[str, ...] = ()

    def summary(self) -> str:
        if self.ok:
            return "valid"
        parts = list(self.messages)
        if self.antisymmetry_failures:
            parts.append(f"{len(self.antisymmetry_failures)} antisymmetry violation(s)")
        if self.jacobi_failures:
            (i, j, k), vec = self.jacobi_failures[0]
            parts.append(
                f"{len(self.jacobi_failures)} Jacobi failure(s), first at {(i, j, k)}: "
                f"[{', '.join(map(str, vec))}]"
            )
        return "; ".join(parts)


@dataclass(frozen=True, eq=True)
class LieAlgebra:
    """``[e_i, e_j] = sum_k c[i][j][k] e_k`` with 0-based indices.

    The constructor takes raw constants and does not validate; analysis
    functions call :func:`require_valid`.
    """

    dim: int
    c: tuple[tuple[tuple[Fraction, ...], ...], ...] = field(repr=False)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise ShapeError("dimension must be positive")
        if len(self.c) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.c):
            raise ShapeError(f"structure constants must be {n}x{n}x{n}")
        frozen = tuple(
            tuple(tuple(Fraction(x) for x in self.c[i][j]) for j in range(n)) for i in range(n)
        )
        object.__setattr__(self, "c", frozen)

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]]) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` with i < j, completing antisymmetrically."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ShapeError(f"bracket index ({i}, {j}) out of range")
            if i >= j:
                raise ValueError(f"brackets must be listed with i < j, got ({i}, {j})")
            for k, v in coeffs.items():
                if not 0 <= k < dim:
                    raise ShapeError(f"result index {k} out of range")
                q = Fraction(v)
                c[i][j][k] = q
                c[j][i][k] = -q
        return cls(dim, c)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls.from_brackets(dim, {})

    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = {k: v for k, v in enumerate(self.c[i][j]) if v}
                if coeffs:
                    out[(i, j)] = coeffs
        return out

    def is_abelian(self) -> bool:
        return not any(v for plane in self.c for row in plane for v in row)

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "brackets": [
                {"i": i, "j": j, "coeffs": {str(k): format_rational(v) for k, v in sorted(coeffs.items())}}
                for (i, j), coeffs in sorted(self.brackets().items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LieAlgebra":
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        brackets = {}
        for entry in data.get("brackets", []):
            i, j = entry["i"], entry["j"]
            if not (isinstance(i, int) and isinstance(j, int)):
                raise ValueError("bracket indices must be integers")
            if (i, j) in brackets:
                raise ValueError(f"duplicate bracket entry ({i}, {j})")
            brackets[(i, j)] = {int(k): parse_rational(v) for k, v in entry["coeffs"].items()}
        return cls.from_brackets(dim, brackets)


def require_valid(g: LieAlgebra) -> None:
    if not g.validation.ok:
        raise InvalidLieAlgebra(g.validation)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    n = g.dim
    if len(x) != n or len(y) != n:
        raise ShapeError(f"vectors must have length {n}")
    out = [Fraction(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            s = xi * yj
            for k, ck in enumerate(g.c[i][j]):
                if ck:
                    out[k] += s * ck
    return tuple(out)


def jacobiator(g: LieAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """``[[x,y],z] + [[y,z],x] + [[z,x],y]``."""
    terms = (
        bracket(g, bracket(g, x, y), z),
        bracket(g, bracket(g, y, z), x),
        bracket(g, bracket(g, z, x), y),
    )
    return tuple(sum(t) for t in zip(*terms))


def validate(g: LieAlgebra) -> ValidationReport:
    n = g.dim
    anti = tuple(
        (i, j, k)
        for i in range(n)
        for j in range(i, n)
        for k in range(n)
        if g.c[i][j][k] != -g.c[j][i][k]
    )
    e = [g.basis(i) for i in range(n)]
    jac = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = jacobiator(g, e[i], e[j], e[k])
                if any(v):
                    jac.append(((i, j, k), v))
    return ValidationReport(ok=not anti and not jac, antisymmetry_failures=anti, jacobi_failures=tuple(jac))


@dataclass(frozen=True)
class Subspace:
    """Row space of ``basis``, kept in reduced row echelon form."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, ())
        reduced, _ = rref(vectors)
        return cls(ambient_dim, reduced)

    @property
    def dim(self) -> int:
        return len(self.basis)


def derived_subalgebra(g: LieAlgebra, s: Subspace) -> Subspace:
    vecs = [bracket(g, a, b) for i, a in enumerate(s.basis) for b in s.basis[i + 1:]]
    return Subspace.span(g.dim, vecs)


def derived_series(g: LieAlgebra) -> list[Subspace]:
    """g, [g,g], [[g,g],[g,g]], ... up to and including the first repeated term."""
    require_valid(g)
    series = [Subspace.span(g.dim, [g.basis(i) for i in range(g.dim)])]
    while True:
        nxt = derived_subalgebra(g, series[-1])
        series.append(nxt)
        if nxt == series[-2] or nxt.dim == 0:
            return series


def is_two_step_solvable(g: LieAlgebra) -> bool:
    series = derived_series(g)
    if series[-1].dim == 0:
        return len(series) <= 3
    return False


def ad_traces(g: LieAlgebra) -> tuple[Fraction, ...]:
    """``trace(ad e_i) = sum_j c[i][j][j]``."""
    return tuple(sum(g.c[i][j][j] for j in range(g.dim)) for i in range(g.dim))


def is_unimodular(g: LieAlgebra) -> bool:
    require_valid(g)
    return not any(ad_traces(g))


def change_basis(g: LieAlgebra, p) -> LieAlgebra:
    """Structure constants in the basis ``f_a = sum_i p[i][a] e_i`` (columns of p)."""
    n = g.dim
    if rational_det(p) == 0:
        raise ValueError("change of basis must be invertible")
    p_inv = inverse(p)
    cols = [tuple(p[i][a] for i in range(n)) for a in range(n)]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            v = bracket(g, cols[a], cols[b])
            for k in range(n):
                c[a][b][k] = sum(p_inv[k][i] * v[i] for i in range(n))
    return LieAlgebra(n, c)


def direct_sum(g: LieAlgebra, h: LieAlgebra) -> LieAlgebra:
    n = g.dim + h.dim
    brackets = {}
    for (i, j), coeffs in g.brackets().items():
        brackets[(i, j)] = dict(coeffs)
    for (i, j), coeffs in h.brackets().items():
        brackets[(i + g.dim, j + g.dim)] = {k + g.dim: v for k, v in coeffs.items()}
    return LieAlgebra.from_brackets(n, brackets)


def random_invertible_integer_matrix(rng: random.Random, n: int, bound: int = 2):
    while True:
        p = tuple(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n)) for _ in range(n))
        if rational_det(p) != 0:
            return p


def random_semidirect(rng: random.Random, dim: int = 4, bound: int = 2) -> LieAlgebra:
    """``R x_D R^(dim-1)`` for a random integer derivation D; always 2-step solvable."""
    brackets = {}
    for j in range(1, dim):
        coeffs = {k: rng.randint(-bound, bound) for k in range(1, dim)}
        coeffs = {k: v for k, v in coeffs.items() if v}
        if coeffs:
            brackets[(0, j)] = coeffs
    return LieAlgebra.from_brackets(dim, brackets)
