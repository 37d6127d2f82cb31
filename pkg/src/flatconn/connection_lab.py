"""Left-invariant affine connections on a Lie algebra and their invariants.

A connection is stored as ``gamma[i][j][k]`` with
``nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k``. Tensors are plain nested
tuples; the torsion-type checks also accept polynomial entries so that the
frame module can reuse them.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complex_structure import (
    InnerMetric,
    LinearComplexStructure,
    NotHermitian,
    Witness,
    classify_structure,
    is_hermitian,
    nijenhuis,
    require_j,
    require_metric,
)
from .exact_core import ShapeError, format_rational, parse_rational, solve_exact_linear, solve_linear_system
from .lie_algebra import LieAlgebra, Vector, bracket, require_valid


class NotIntegrable(ValueError):
    pass


class NotTorsionFree(ValueError):
    pass


def _zero_vec(n: int) -> list:
    return [Fraction(0)] * n


def _combine(n: int, weighted) -> tuple:
    """Sum of ``w * v`` over (w, v) pairs, skipping zero weights."""
    out = _zero_vec(n)
    for w, v in weighted:
        if not w:
            continue
        for k, vk in enumerate(v):
            if vk:
                out[k] = out[k] + w * vk
    return tuple(out)


def _sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def _add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def _scale(s, v) -> tuple:
    return tuple(s * a for a in v)


def _basis(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


@dataclass(frozen=True)
class Connection:
    algebra: LieAlgebra
    gamma: tuple = field(repr=False)

    def __post_init__(self):
        n = self.algebra.dim
        g = self.gamma
        if len(g) != n or any(len(r) != n or any(len(v) != n for v in r) for r in g):
            raise ShapeError(f"connection coefficients must be {n}x{n}x{n}")
        frozen = tuple(tuple(tuple(Fraction(x) for x in g[i][j]) for j in range(n)) for i in range(n))
        object.__setattr__(self, "gamma", frozen)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def nabla(self, x: Sequence, y: Sequence) -> Vector:
        n = self.dim
        return _combine(n, ((xi * yj, self.gamma[i][j])
                            for i, xi in enumerate(x) if xi
                            for j, yj in enumerate(y) if yj))

    def is_zero(self) -> bool:
        return not any(v for plane in self.gamma for row in plane for v in row)

    def to_json(self) -> dict:
        n = self.dim
        entries = []
        for i in range(n):
            for j in range(n):
                coeffs = {str(k): format_rational(v) for k, v in enumerate(self.gamma[i][j]) if v}
                if coeffs:
                    entries.append({"i": i, "j": j, "coeffs": coeffs})
        return {"gamma": entries}

    @classmethod
    def from_json(cls, algebra: LieAlgebra, data) -> "Connection":
        n = algebra.dim
        gamma = [[_zero_vec(n) for _ in range(n)] for _ in range(n)]
        for entry in data["gamma"]:
            i, j = entry["i"], entry["j"]
            for k, v in entry["coeffs"].items():
                gamma[i][j][int(k)] = parse_rational(v)
        return cls(algebra, gamma)


@dataclass(frozen=True)
class Tensor12:
    """``components[i][j]`` is the vector t(e_i, e_j)."""

    components: tuple
    antisymmetric: bool = False

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, x: Sequence, y: Sequence) -> tuple:
        n = len(self.components[0][0])
        return _combine(n, ((xi * yj, self.components[i][j])
                            for i, xi in enumerate(x) if xi
                            for j, yj in enumerate(y) if yj))

    def is_zero(self) -> bool:
        return not any(v for row in self.components for vec in row for v in vec)

    def nonzero_entries(self):
        for i, row in enumerate(self.components):
            for j, vec in enumerate(row):
                if any(vec):
                    yield (i, j), vec


@dataclass(frozen=True)
class Tensor13:
    """``components[i][j][k]`` is the vector R(e_i, e_j) e_k."""

    components: tuple

    def is_zero(self) -> bool:
        return not any(v for a in self.components for b in a for vec in b for v in vec)

    def nonzero_entries(self):
        for i, a in enumerate(self.components):
            for j, b in enumerate(a):
                for k, vec in enumerate(b):
                    if any(vec):
                        yield (i, j, k), vec


def _tensor12(n: int, fn, antisymmetric=False) -> Tensor12:
    """Evaluate ``fn`` on basis pairs; an antisymmetric ``fn`` is evaluated on i < j only."""
    e = [_basis(n, i) for i in range(n)]
    if not antisymmetric:
        return Tensor12(tuple(tuple(tuple(fn(e[i], e[j])) for j in range(n)) for i in range(n)))
    comps = [[tuple(Fraction(0) for _ in range(n))] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = tuple(fn(e[i], e[j]))
            comps[i][j] = v
            comps[j][i] = tuple(-x for x in v)
    return Tensor12(tuple(map(tuple, comps)), True)


def minus_connection(g: LieAlgebra) -> Connection:
    require_valid(g)
    n = g.dim
    return Connection(g, [[_zero_vec(n) for _ in range(n)] for _ in range(n)])


def torsion(c: Connection) -> Tensor12:
    n = c.dim
    gam, cc = c.gamma, c.algebra.c
    comps = tuple(
        tuple(tuple(gam[i][j][k] - gam[j][i][k] - cc[i][j][k] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return Tensor12(comps, antisymmetric=True)


class TorsionType(str, enum.Enum):
    ZERO = "Zero"
    TYPE11 = "Type11"
    TYPE20 = "Type20"
    TYPE2002 = "Type2002"
    NONE = "None"


# identity name -> the torsion type it defines
IDENTITIES = {
    "type20": TorsionType.TYPE20,
    "type11": TorsionType.TYPE11,
    "type2002": TorsionType.TYPE2002,
}


@dataclass(frozen=True)
class TorsionVerdict:
    kind: TorsionType
    satisfied: tuple[str, ...]
    witnesses: tuple[Witness, ...] = ()

    def holds(self, identity: str) -> bool:
        return identity in self.satisfied

    def to_json(self) -> dict:
        return {
            "torsion_type": self.kind.value,
            "satisfied": list(self.satisfied),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _apply_j(J: LinearComplexStructure, v) -> tuple:
    n = len(v)
    return _combine(n, ((v[m], [row[m] for row in J.matrix]) for m in range(n)))


def torsion_defects(T: Tensor12, J: LinearComplexStructure) -> dict[str, list[Witness]]:
    """Failures of the three torsion-type identities on basis pairs.

    type11:   T(Jx, Jy) - T(x, y)
    type20:   T(Jx, y) - J T(x, y)
    type2002: T(Jx, Jy) + T(x, y)
    """
    n = T.dim
    if J.dim != n:
        raise ShapeError("J and tensor dimensions differ")
    e = [_basis(n, i) for i in range(n)]
    je = [J(v) for v in e]
    out: dict[str, list[Witness]] = {name: [] for name in IDENTITIES}
    for i in range(n):
        for j in range(n):
            txy = T.components[i][j]
            if i < j:
                tjj = T(je[i], je[j])
                d11 = _sub(tjj, txy)
                d2002 = _add(tjj, txy)
                if any(d11):
                    out["type11"].append(Witness("type11", (i, j), d11))
                if any(d2002):
                    out["type2002"].append(Witness("type2002", (i, j), d2002))
            # not antisymmetric in (x, y): every ordered pair
            d20 = _sub(T(je[i], e[j]), _apply_j(J, txy))
            if any(d20):
                out["type20"].append(Witness("type20", (i, j), d20))
    return out


def torsion_type(T: Tensor12, J: LinearComplexStructure) -> TorsionVerdict:
    defects = torsion_defects(T, J)
    satisfied = tuple(name for name, fails in defects.items() if not fails)
    witnesses = tuple(w for fails in defects.values() for w in fails)
    if T.is_zero():
        kind = TorsionType.ZERO
    else:
        kind = next((IDENTITIES[name] for name in IDENTITIES if name in satisfied), TorsionType.NONE)
    return TorsionVerdict(kind, satisfied, witnesses)


def torsion_11_part(T: Tensor12, J: LinearComplexStructure) -> Tensor12:
    """J-invariant part ``(T(x,y) + T(Jx,Jy)) / 2``."""
    n = T.dim
    return _tensor12(n, lambda x, y: _scale(Fraction(1, 2), _add(T(x, y), T(J(x), J(y)))), True)


def covariant_derivative_J(c: Connection, J: LinearComplexStructure) -> Tensor12:
    """``(nabla_x J) y = nabla_x (J y) - J nabla_x y`` on basis pairs."""
    if J.dim != c.dim:
        raise ShapeError("J and connection dimensions differ")
    return _tensor12(c.dim, lambda x, y: _sub(c.nabla(x, J(y)), J(c.nabla(x, y))))


def covariant_derivative_g(c: Connection, G: InnerMetric) -> tuple:
    """``(nabla_x G)(y, z) = -G(nabla_x y, z) - G(y, nabla_x z)`` for constant G."""
    n = c.dim
    if G.dim != n:
        raise ShapeError("metric and connection dimensions differ")
    e = [_basis(n, i) for i in range(n)]
    return tuple(
        tuple(
            tuple(-G(c.nabla(e[i], e[j]), e[k]) - G(e[j], c.nabla(e[i], e[k])) for k in range(n))
            for j in range(n)
        )
        for i in range(n)
    )


def is_metric(c: Connection, G: InnerMetric) -> bool:
    return not any(v for a in covariant_derivative_g(c, G) for b in a for v in b)


def curvature(c: Connection) -> Tensor13:
    """``R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z``."""
    n = c.dim
    g = c.algebra
    e = [_basis(n, i) for i in range(n)]
    comps = []
    for i in range(n):
        row = []
        for j in range(n):
            brk = bracket(g, e[i], e[j])
            row.append(tuple(
                tuple(_sub(_sub(c.nabla(e[i], c.nabla(e[j], e[k])), c.nabla(e[j], c.nabla(e[i], e[k]))),
                           c.nabla(brk, e[k])))
                for k in range(n)
            ))
        comps.append(tuple(row))
    return Tensor13(tuple(comps))


def is_flat(c: Connection) -> bool:
    return curvature(c).is_zero()


@dataclass(frozen=True)
class IteratedTorsion:
    components: tuple = field(repr=False)
    is_t2_zero: bool
    witness: Witness | None = None


def t2_tensor(c: Connection) -> IteratedTorsion:
    """``T(T(x,y), T(z,w))`` over all basis quadruples."""
    n = c.dim
    T = torsion(c)
    comps = tuple(
        tuple(
            tuple(tuple(tuple(T(T.components[a][b], T.components[cc][d])) for d in range(n)) for cc in range(n))
            for b in range(n)
        )
        for a in range(n)
    )
    witness = None
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                for d in range(n):
                    v = comps[a][b][cc][d]
                    if witness is None and any(v):
                        witness = Witness("t2", (a, b, cc, d), v)
    return IteratedTorsion(comps, witness is None, witness)


def _solve_gram(G: InnerMetric, rhs) -> Vector:
    return solve_exact_linear(G.gram, rhs)


def levi_civita(g: LieAlgebra, G: InnerMetric) -> Connection:
    """Koszul: ``2G(nabla_x y, z) = G([x,y],z) - G([y,z],x) + G([z,x],y)``."""
    require_valid(g)
    require_metric(G)
    n = g.dim
    e = [_basis(n, i) for i in range(n)]
    br = [[bracket(g, e[i], e[j]) for j in range(n)] for i in range(n)]
    half = Fraction(1, 2)
    gamma = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rhs = [half * (G(br[i][j], e[k]) - G(br[j][k], e[i]) + G(br[k][i], e[j])) for k in range(n)]
            gamma[i][j] = _solve_gram(G, rhs)
    return Connection(g, gamma)


def kahler_form(G: InnerMetric, J: LinearComplexStructure) -> tuple:
    """``omega(e_i, e_j) = G(J e_i, e_j)``."""
    n = G.dim
    e = [_basis(n, i) for i in range(n)]
    return tuple(tuple(G(J(e[i]), e[j]) for j in range(n)) for i in range(n))


def _require_hermitian(G: InnerMetric, J: LinearComplexStructure) -> None:
    require_metric(G)
    require_j(J, G.dim)
    if not is_hermitian(G, J):
        raise NotHermitian("metric is not J-invariant")


def kahler_form_d(g: LieAlgebra, G: InnerMetric, J: LinearComplexStructure) -> tuple:
    """``d omega(x,y,z) = -omega([x,y],z) + omega([x,z],y) - omega([y,z],x)`` on basis triples."""
    require_valid(g)
    _require_hermitian(G, J)
    n = g.dim
    om = kahler_form(G, J)
    e = [_basis(n, i) for i in range(n)]

    def omega(x, y):
        return sum((x[a] * om[a][b] * y[b] for a in range(n) if x[a] for b in range(n) if y[b]), Fraction(0))

    def d(i, j, k):
        return (-omega(bracket(g, e[i], e[j]), e[k]) + omega(bracket(g, e[i], e[k]), e[j])
                - omega(bracket(g, e[j], e[k]), e[i]))

    return tuple(tuple(tuple(d(i, j, k) for k in range(n)) for j in range(n)) for i in range(n))


def _trilinear(arr, x, y, z) -> Fraction:
    total = Fraction(0)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            for k, zk in enumerate(z):
                if zk and arr[i][j][k]:
                    total += xi * yj * zk * arr[i][j][k]
    return total


def _correct_levi_civita(g, G, J, correction) -> Connection:
    """Connection with ``G(nabla_x y, z) = G(LC_x y, z) + correction(dw, x, y, z)``."""
    lc = levi_civita(g, G)
    dw = kahler_form_d(g, G, J)
    n = g.dim
    e = [_basis(n, i) for i in range(n)]
    gamma = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            base = lc.gamma[i][j]
            rhs = [G(base, e[k]) + correction(dw, e[i], e[j], e[k]) for k in range(n)]
            gamma[i][j] = _solve_gram(G, rhs)
    return Connection(g, gamma)


def first_canonical(g: LieAlgebra, G: InnerMetric, J: LinearComplexStructure) -> Connection:
    """Levi-Civita plus ``(dw(x,Jy,z) + dw(x,y,Jz)) / 4``."""
    quarter = Fraction(1, 4)
    return _correct_levi_civita(
        g, G, J, lambda dw, x, y, z: quarter * (_trilinear(dw, x, J(y), z) + _trilinear(dw, x, y, J(z)))
    )


def chern(g: LieAlgebra, G: InnerMetric, J: LinearComplexStructure) -> Connection:
    """Levi-Civita minus ``dw(Jx, y, z) / 2``; requires integrable J."""
    _require_hermitian(G, J)
    if not classify_structure(g, J).integrable:
        raise NotIntegrable("the Chern connection needs an integrable J")
    half = Fraction(1, 2)
    return _correct_levi_civita(g, G, J, lambda dw, x, y, z: -half * _trilinear(dw, J(x), y, z))


def complexify_torsion_free(c: Connection, J: LinearComplexStructure) -> Connection:
    """``nabla_x y = (D_x y - J D_x J y) / 2`` for a torsion-free D."""
    require_j(J, c.dim)
    if not torsion(c).is_zero():
        raise NotTorsionFree("input connection has torsion")
    n = c.dim
    half = Fraction(1, 2)
    e = [_basis(n, i) for i in range(n)]
    gamma = [
        [_scale(half, _sub(c.nabla(e[i], e[j]), J(c.nabla(e[i], J(e[j]))))) for j in range(n)]
        for i in range(n)
    ]
    return Connection(c.algebra, gamma)


def nijen1_residual(c: Connection, J: LinearComplexStructure) -> Tensor12:
    """N(x,y) minus its expression through nabla J and the torsion; identically zero.

    Every term is bilinear, so it is evaluated on basis pairs by contracting
    precomputed tables of (nabla_a J) e_b, T(e_a, e_b) and T(e_a, J e_b).
    """
    g = c.algebra
    n = g.dim
    if J.dim != n:
        raise ShapeError("J and connection dimensions differ")
    T = torsion(c).components
    e = [_basis(n, i) for i in range(n)]
    je = [J(v) for v in e]
    dj = [[_sub(c.nabla(e[a], je[b]), J(c.gamma[a][b])) for b in range(n)] for a in range(n)]
    # tj[a][b] = T(e_a, J e_b)
    tj = [[_combine(n, ((je[b][m], T[a][m]) for m in range(n))) for b in range(n)] for a in range(n)]

    def residual(i, j):
        # (nabla_{Jx} J) y - (nabla_{Jy} J) x
        rhs = _sub(_combine(n, ((je[i][a], dj[a][j]) for a in range(n))),
                   _combine(n, ((je[j][a], dj[a][i]) for a in range(n))))
        # (nabla_x J) J y - (nabla_y J) J x
        rhs = _add(rhs, _sub(_combine(n, ((je[j][b], dj[i][b]) for b in range(n))),
                             _combine(n, ((je[i][b], dj[j][b]) for b in range(n)))))
        # T(x, y) - T(Jx, Jy)
        rhs = _add(rhs, _sub(T[i][j], _combine(n, ((je[i][a], tj[a][j]) for a in range(n)))))
        # J (T(Jx, y) + T(x, Jy))
        rhs = _add(rhs, J(_add(_combine(n, ((je[i][a], T[a][j]) for a in range(n))), tj[i][j])))
        return _sub(nijenhuis(g, J, e[i], e[j]), rhs)

    comps = [[tuple(Fraction(0) for _ in range(n))] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = residual(i, j)
            comps[i][j] = v
            comps[j][i] = tuple(-x for x in v)
    return Tensor12(tuple(map(tuple, comps)), True)


def random_connection(g: LieAlgebra, seed: int, bound: int = 3) -> Connection:
    rng = random.Random(seed)
    n = g.dim
    gamma = [[[Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)]
              for _ in range(n)] for _ in range(n)]
    return Connection(g, gamma)


def solve_connection_conditions(
    g: LieAlgebra,
    G: InnerMetric | None = None,
    J: LinearComplexStructure | None = None,
    torsion_identity: str | None = None,
):
    """All connections meeting the chosen linear conditions, by one linear solve in gamma.

    Conditions: nabla G = 0 (if G), nabla J = 0 (if J), and a torsion identity
    ("type11", "type20" or "type2002", which needs J). Returns
    ``(particular Connection or None, list of homogeneous solution Connections)``.
    """
    n = g.dim
    idx = {(i, j, k): (i * n + j) * n + k for i in range(n) for j in range(n) for k in range(n)}
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def new_row():
        return [Fraction(0)] * (n ** 3)

    if G is not None:
        Gm = G.gram
        for i in range(n):
            for j in range(n):
                for k in range(j, n):
                    r = new_row()
                    for m in range(n):
                        r[idx[i, j, m]] += Gm[m][k]
                        r[idx[i, k, m]] += Gm[j][m]
                    rows.append(r)
                    rhs.append(Fraction(0))
    if J is not None:
        Jm = J.matrix
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    r = new_row()
                    for m in range(n):
                        r[idx[i, m, l]] += Jm[m][j]
                        r[idx[i, j, m]] -= Jm[l][m]
                    rows.append(r)
                    rhs.append(Fraction(0))
    if torsion_identity is not None:
        if J is None:
            raise ValueError("torsion identities need J")
        Jm = J.matrix
        cc = g.c

        def add_torsion(r, const, a, b, l, w):
            # w * T[a][b][l] = w * (gamma[a][b][l] - gamma[b][a][l] - c[a][b][l])
            r[idx[a, b, l]] += w
            r[idx[b, a, l]] -= w
            return const - w * cc[a][b][l]

        for i in range(n):
            for j in range(n):
                for l in range(n):
                    r = new_row()
                    const = Fraction(0)
                    if torsion_identity in ("type11", "type2002"):
                        sign = -1 if torsion_identity == "type11" else 1
                        for a in range(n):
                            for b in range(n):
                                w = Jm[a][i] * Jm[b][j]
                                if w:
                                    const = add_torsion(r, const, a, b, l, w)
                        const = add_torsion(r, const, i, j, l, Fraction(sign))
                    elif torsion_identity == "type20":
                        for a in range(n):
                            if Jm[a][i]:
                                const = add_torsion(r, const, a, j, l, Jm[a][i])
                        for m in range(n):
                            if Jm[l][m]:
                                const = add_torsion(r, const, i, j, m, -Jm[l][m])
                    else:
                        raise ValueError(f"unknown torsion identity {torsion_identity!r}")
                    rows.append(r)
                    # row . gamma + (constant part) = 0
                    rhs.append(-const)
    if not rows:
        raise ValueError("no conditions given")
    particular, null = solve_linear_system(rows, rhs)

    def unflatten(v):
        return Connection(g, [[[v[idx[i, j, k]] for k in range(n)] for j in range(n)] for i in range(n)])

    return (unflatten(particular) if particular is not None else None), [unflatten(v) for v in null]
