"""Polynomial vector fields on R^m and parallelisms ``(X_1..X_n, JX_1..JX_n)``.

A frame defines the flat connection whose parallel fields are exactly the
frame fields; its torsion on the frame is minus the Lie bracket, written in
frame coordinates. J is fixed by position: ``J X_i = X_(n+i)`` and
``J X_(n+i) = -X_i``, so on frame coordinates it is the standard block matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .complex_structure import LinearComplexStructure
from .connection_lab import Tensor12, TorsionVerdict, torsion_type
from .exact_core import (
    Polynomial,
    ShapeError,
    invert_unimodular_matrix,
    poly_matrix_det,
)
from .lie_algebra import LieAlgebra


class FrameNotValidated(ValueError):
    pass


class NotClosed(ValueError):
    """The span of the frame is not closed under the bracket with constant coefficients."""

    def __init__(self, witnesses):
        self.witnesses = tuple(witnesses)
        (a, b), k, poly = self.witnesses[0]
        super().__init__(f"bracket of fields {a} and {b} has non-constant coefficient {poly} on field {k}")


@dataclass(frozen=True)
class PolyVectorField:
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        m = len(comps)
        fixed = []
        for p in comps:
            if isinstance(p, Polynomial):
                if p.nvars != m:
                    raise ShapeError(f"component has {p.nvars} variables, expected {m}")
                fixed.append(p)
            else:
                fixed.append(Polynomial.constant(m, p))
        object.__setattr__(self, "components", tuple(fixed))

    @property
    def ambient_dim(self) -> int:
        return len(self.components)

    @classmethod
    def zero(cls, m: int) -> "PolyVectorField":
        return cls(tuple(Polynomial.zero(m) for _ in range(m)))

    @classmethod
    def coordinate(cls, index: int, m: int) -> "PolyVectorField":
        """The coordinate field d/dx_(index+1)."""
        return cls(tuple(Polynomial.constant(m, int(k == index)) for k in range(m)))

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        _same_dim(self, other)
        return PolyVectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        _same_dim(self, other)
        return PolyVectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(tuple(-a for a in self.components))

    def scale(self, f) -> "PolyVectorField":
        """Multiply by a function (polynomial or constant)."""
        return PolyVectorField(tuple(a * f for a in self.components))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def apply(self, f: Polynomial) -> Polynomial:
        """Directional derivative X(f)."""
        total = Polynomial.zero(self.ambient_dim)
        for j, xj in enumerate(self.components):
            if xj:
                total = total + xj * f.partial(j)
        return total

    def to_json(self) -> list:
        return [p.to_json() for p in self.components]

    @classmethod
    def from_json(cls, data, m: int) -> "PolyVectorField":
        if not isinstance(data, list) or len(data) != m:
            raise ShapeError(f"vector field needs {m} component polynomials")
        return cls(tuple(Polynomial.from_json(p, m) for p in data))

    def __str__(self):
        parts = [f"({p})*d{i + 1}" for i, p in enumerate(self.components) if p]
        return " + ".join(parts) if parts else "0"


def _same_dim(x: PolyVectorField, y: PolyVectorField) -> None:
    if x.ambient_dim != y.ambient_dim:
        raise ShapeError(f"ambient dimensions differ: {x.ambient_dim} vs {y.ambient_dim}")


def field_bracket(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """``[X,Y]^i = sum_j X^j d_j Y^i - Y^j d_j X^i``."""
    _same_dim(X, Y)
    return PolyVectorField(tuple(X.apply(yi) - Y.apply(xi) for xi, yi in zip(X.components, Y.components)))


@dataclass(frozen=True)
class FrameValidation:
    ok: bool
    determinant: Polynomial
    message: str = ""
    sampled_singular_points: tuple = ()

    def to_json(self) -> dict:
        out = {"ok": self.ok, "determinant": self.determinant.to_json(), "message": self.message}
        if self.sampled_singular_points:
            out["sampled_singular_points_non_certifying"] = [
                [str(x) for x in pt] for pt in self.sampled_singular_points
            ]
        return out


@dataclass(frozen=True)
class Frame:
    half_dim: int
    fields: tuple[PolyVectorField, ...] = field(repr=False)

    def __post_init__(self):
        fields = tuple(self.fields)
        n = self.half_dim
        if n < 1:
            raise ShapeError("half_dim must be positive")
        if len(fields) != 2 * n:
            raise ShapeError(f"a frame with half_dim {n} needs {2 * n} fields, got {len(fields)}")
        if any(f.ambient_dim != 2 * n for f in fields):
            raise ShapeError(f"fields must live on R^{2 * n}")
        object.__setattr__(self, "fields", fields)

    @property
    def dim(self) -> int:
        return 2 * self.half_dim

    def matrix(self) -> tuple:
        """Columns are the frame fields."""
        m = self.dim
        return tuple(tuple(self.fields[a].components[r] for a in range(m)) for r in range(m))

    @cached_property
    def validation(self) -> FrameValidation:
        return validate_frame(self)

    @cached_property
    def _inverse(self):
        if not self.validation.ok:
            raise FrameNotValidated(self.validation.message)
        return invert_unimodular_matrix(self.matrix())

    @property
    def J(self) -> LinearComplexStructure:
        return LinearComplexStructure.standard(self.half_dim)

    def to_json(self) -> dict:
        return {"half_dim": self.half_dim, "fields": [f.to_json() for f in self.fields]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Frame":
        n = data["half_dim"]
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"half_dim must be a positive integer, got {n!r}")
        fields = data["fields"]
        if not isinstance(fields, list):
            raise ValueError("fields must be a list")
        return cls(n, tuple(PolyVectorField.from_json(f, 2 * n) for f in fields))


def validate_frame(F: Frame, sample_radius: int = 0) -> FrameValidation:
    """Accept iff the frame determinant is a nonzero constant polynomial.

    With ``sample_radius > 0`` a failing report also lists integer lattice
    points in ``[-r, r]^m`` where the determinant vanishes. That list is a
    diagnostic only; an empty list proves nothing.
    """
    det = poly_matrix_det(F.matrix())
    if det.is_constant() and not det.is_zero():
        return FrameValidation(True, det)
    pts = ()
    if sample_radius > 0:
        rng = range(-sample_radius, sample_radius + 1)
        pts = tuple(p for p in product(rng, repeat=F.dim) if det.evaluate(p) == 0)
    msg = "frame determinant is zero" if det.is_zero() else f"frame determinant {det} is not constant"
    return FrameValidation(False, det, msg, pts)


def express_in_frame(V: PolyVectorField, F: Frame) -> tuple[Polynomial, ...]:
    """Coefficients c with ``V = sum_a c[a] * field_a``."""
    if not F.validation.ok:
        raise FrameNotValidated(F.validation.message)
    _same_dim(V, F.fields[0])
    inv = F._inverse
    m = F.dim
    out = []
    for a in range(m):
        total = Polynomial.zero(m)
        for r in range(m):
            if inv[a][r] and V.components[r]:
                total = total + inv[a][r] * V.components[r]
        out.append(total)
    return tuple(out)


def combine_fields(coeffs: Sequence, F: Frame) -> PolyVectorField:
    total = PolyVectorField.zero(F.dim)
    for c, f in zip(coeffs, F.fields):
        if c:
            total = total + f.scale(c)
    return total


def apply_j(V: PolyVectorField, F: Frame) -> PolyVectorField:
    """Frame-implied J on an arbitrary field."""
    coeffs = express_in_frame(V, F)
    n = F.half_dim
    rotated = tuple(-coeffs[n + i] for i in range(n)) + tuple(coeffs[i] for i in range(n))
    return combine_fields(rotated, F)


def frame_torsion(F: Frame) -> Tensor12:
    """``t[a][b] = coordinates of -[field_a, field_b]``; entries are polynomials."""
    m = F.dim
    comps = [[None] * m for _ in range(m)]
    zero = tuple(Polynomial.zero(m) for _ in range(m))
    for a in range(m):
        comps[a][a] = zero
        for b in range(a + 1, m):
            coords = express_in_frame(-field_bracket(F.fields[a], F.fields[b]), F)
            comps[a][b] = coords
            comps[b][a] = tuple(-x for x in coords)
    return Tensor12(tuple(tuple(r) for r in comps), antisymmetric=True)


def frame_torsion_type(F: Frame) -> TorsionVerdict:
    return torsion_type(frame_torsion(F), F.J)


def nonconstant_torsion_components(F: Frame) -> list[tuple[tuple[int, int], int, Polynomial]]:
    """``((a, b), k, t[a][b][k])`` for every non-constant torsion coefficient with a < b."""
    T = frame_torsion(F)
    return [
        ((a, b), k, p)
        for a in range(F.dim)
        for b in range(a + 1, F.dim)
        for k, p in enumerate(T.components[a][b])
        if not p.is_constant()
    ]


def is_torsion_parallel(F: Frame) -> bool:
    return not nonconstant_torsion_components(F)


def export_lie_algebra(F: Frame) -> LieAlgebra:
    """The Lie algebra spanned by the frame, in frame order; raises NotClosed otherwise."""
    bad = nonconstant_torsion_components(F)
    if bad:
        raise NotClosed(bad)
    T = frame_torsion(F)
    m = F.dim
    # [field_a, field_b] = -T(field_a, field_b)
    c = [[[-T.components[a][b][k].constant_value() for k in range(m)] for b in range(m)] for a in range(m)]
    return LieAlgebra(m, c)


def frame_nijenhuis(F: Frame, a: int, b: int) -> PolyVectorField:
    """``[JX,JY] - J[X,JY] - J[JX,Y] - [X,Y]`` on two frame fields."""
    X, Y = F.fields[a], F.fields[b]
    JX, JY = apply_j(X, F), apply_j(Y, F)
    return (
        field_bracket(JX, JY)
        - apply_j(field_bracket(X, JY), F)
        - apply_j(field_bracket(JX, Y), F)
        - field_bracket(X, Y)
    )


def is_frame_integrable(F: Frame) -> bool:
    return all(frame_nijenhuis(F, a, b).is_zero() for a in range(F.dim) for b in range(a + 1, F.dim))


def bracket_relations(F: Frame) -> dict[str, bool]:
    """The bracket relations on X_k, JX_k, checked as polynomial identities.

    abelian: [X_k,X_l] = [JX_k,JX_l] and [JX_k,X_l] = -[X_k,JX_l], k < l
    chern:   [X_k,X_l] = -[JX_k,JX_l] (k < l) and [JX_k,X_l] = J[X_k,X_l] (all k, l)
    """
    n = F.half_dim
    X = F.fields[:n]
    JX = F.fields[n:]
    abelian = all(
        (field_bracket(X[k], X[l]) - field_bracket(JX[k], JX[l])).is_zero()
        and (field_bracket(JX[k], X[l]) + field_bracket(X[k], JX[l])).is_zero()
        for k in range(n)
        for l in range(k + 1, n)
    )
    chern = all(
        (field_bracket(X[k], X[l]) + field_bracket(JX[k], JX[l])).is_zero()
        for k in range(n)
        for l in range(k + 1, n)
    ) and all(
        (field_bracket(JX[k], X[l]) - apply_j(field_bracket(X[k], X[l]), F)).is_zero()
        for k in range(n)
        for l in range(n)
    )
    return {"abelian": abelian, "chern": chern}


# complex vector fields are (real part, imaginary part) pairs


def _complex_field(F: Frame, k: int, conjugate: bool):
    """Z_k = X_k - i JX_k, or its conjugate."""
    n = F.half_dim
    sign = 1 if conjugate else -1
    return F.fields[k], F.fields[n + k].scale(sign)


def _complex_bracket(U, V):
    ur, ui = U
    vr, vi = V
    re = field_bracket(ur, vr) - field_bracket(ui, vi)
    im = field_bracket(ur, vi) + field_bracket(ui, vr)
    return re, im


@dataclass(frozen=True)
class FormTypes:
    """Components of d(theta_k) for the (1,0)-coframe theta_k dual to Z_k = X_k - i JX_k."""

    part20: tuple  # d theta_k(Z_j, Z_l), j < l
    part11: tuple  # d theta_k(Z_j, conj Z_l)
    part02: tuple  # d theta_k(conj Z_j, conj Z_l), j < l

    @staticmethod
    def _vanish(part) -> bool:
        return all(re.is_zero() and im.is_zero() for _, (re, im) in part)

    @property
    def all_type11(self) -> bool:
        return self._vanish(self.part20) and self._vanish(self.part02)

    @property
    def all_type20(self) -> bool:
        return self._vanish(self.part11) and self._vanish(self.part02)


def coframe_form_types(F: Frame) -> FormTypes:
    """Evaluate ``d theta_k(U, V) = -theta_k([U, V])`` on the complex frame.

    theta_k(frame field) is constant, so only the bracket term survives.
    With frame coordinates v, ``theta_k(v) = (v_k + i v_(n+k)) / 2``.
    """
    n = F.half_dim

    def theta_all(W):
        wr, wi = W
        cr = express_in_frame(wr, F)
        ci = express_in_frame(wi, F)
        half = Fraction(1, 2)
        out = []
        for k in range(n):
            # (cr + i ci)_k + i (cr + i ci)_(n+k)
            re = cr[k] - ci[n + k]
            im = ci[k] + cr[n + k]
            out.append((-re * half, -im * half))
        return out

    parts = {"20": [], "11": [], "02": []}
    for j in range(n):
        for l in range(n):
            Zj, Zl = _complex_field(F, j, False), _complex_field(F, l, False)
            Zbj, Zbl = _complex_field(F, j, True), _complex_field(F, l, True)
            if j < l:
                for k, val in enumerate(theta_all(_complex_bracket(Zj, Zl))):
                    parts["20"].append(((k, j, l), val))
                for k, val in enumerate(theta_all(_complex_bracket(Zbj, Zbl))):
                    parts["02"].append(((k, j, l), val))
            for k, val in enumerate(theta_all(_complex_bracket(Zj, Zbl))):
                parts["11"].append(((k, j, l), val))
    return FormTypes(tuple(parts["20"]), tuple(parts["11"]), tuple(parts["02"]))


def verify_form_criterion(F: Frame) -> bool:
    """True iff the coframe differential types agree with the torsion identities.

    all d theta_k of type (1,1)  <=>  torsion satisfies the (1,1) identity
    all d theta_k of type (2,0)  <=>  torsion satisfies the (2,0) identity
    """
    verdict = frame_torsion_type(F)
    forms = coframe_form_types(F)
    return forms.all_type11 == verdict.holds("type11") and forms.all_type20 == verdict.holds("type20")

