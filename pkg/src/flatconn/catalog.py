"""Built-in examples: Kodaira-Thurston, Aff(C), abelian R^4, the non-parallel R^4 frame, so(3).

Each entry carries the verdicts it is expected to produce. They are
re-derived on every load and a mismatch raises :class:`CatalogMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex_structure import InnerMetric, LinearComplexStructure
from .connection_lab import chern, curvature
from .documents import AlgebraDocument, Document, FrameDocument, digest, serialize
from .exact_core import Polynomial
from .frame_fields import Frame, PolyVectorField
from .lie_algebra import LieAlgebra
from .report import analyze


class NotFound(KeyError):
    def __init__(self, name: str):
        super().__init__(f"unknown example {name!r}; available: {', '.join(NAMES)}")
        self.name = name


class CatalogMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    payload: Document
    expected: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "kind": self.payload.kind,
            "payload": self.payload.to_json(),
            "expected": self.expected,
        }


def kt4_algebra() -> LieAlgebra:
    """Heisenberg + R: [e1, e2] = e3, e4 central."""
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}})


def kt4_abelian_j() -> LinearComplexStructure:
    """J e1 = e2, J e3 = e4."""
    return LinearComplexStructure.from_pairs(4, [(0, 1), (2, 3)])


def aff_c_algebra() -> LieAlgebra:
    """aff(C) realified in the basis A, iA, B, iB with [A, B] = B."""
    return LieAlgebra.from_brackets(4, {
        (0, 2): {2: 1},
        (0, 3): {3: 1},
        (1, 2): {3: 1},
        (1, 3): {2: -1},
    })


def aff_c_bi_invariant_j() -> LinearComplexStructure:
    """Multiplication by i: J e1 = e2, J e3 = e4."""
    return LinearComplexStructure.from_pairs(4, [(0, 1), (2, 3)])


def so3_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def _poly_field(m: int, comps: dict[int, Polynomial | int]) -> PolyVectorField:
    return PolyVectorField(tuple(
        comps[k] if isinstance(comps.get(k), Polynomial) else Polynomial.constant(m, comps.get(k, 0))
        for k in range(m)
    ))


def r4_nonparallel_frame() -> Frame:
    """Parallel fields d1, d3, d2, -x3^2 d1 + d4 (f = x3^2, g = 0)."""
    m = 4
    x3 = Polynomial.variable(2, m)
    d = [PolyVectorField.coordinate(i, m) for i in range(m)]
    jx2 = _poly_field(m, {0: -(x3 ** 2), 3: 1})
    return Frame(2, (d[0], d[2], d[1], jx2))


def coordinate_frame(half_dim: int = 2) -> Frame:
    m = 2 * half_dim
    return Frame(half_dim, tuple(PolyVectorField.coordinate(i, m) for i in range(m)))


def kt4_frame() -> Frame:
    """Left-invariant fields of N x R in coordinates (x, y, z, t), ordered X1=e1, X2=e3, JX1=e2, JX2=e4.

    e1 = d_x, e2 = d_y + x d_z, e3 = d_z, e4 = d_t.
    """
    m = 4
    x = Polynomial.variable(0, m)
    e1 = PolyVectorField.coordinate(0, m)
    e2 = _poly_field(m, {1: 1, 2: x})
    e3 = PolyVectorField.coordinate(2, m)
    e4 = PolyVectorField.coordinate(3, m)
    return Frame(2, (e1, e3, e2, e4))


def complex_heisenberg_frame() -> Frame:
    """Real and imaginary parts of the holomorphic left-invariant fields of the complex Heisenberg group.

    Coordinates (x1, x2, x3, y1, y2, y3) with z_k = x_k + i y_k; Z1 = d/dz1,
    Z2 = d/dz2 + z1 d/dz3, Z3 = d/dz3.
    """
    m = 6
    x1 = Polynomial.variable(0, m)
    y1 = Polynomial.variable(3, m)
    d = [PolyVectorField.coordinate(i, m) for i in range(m)]
    X2 = _poly_field(m, {1: 1, 2: x1, 5: y1})
    JX2 = _poly_field(m, {4: 1, 2: -y1, 5: x1})
    return Frame(3, (d[0], X2, d[2], d[3], JX2, d[5]))


def catalog_frames() -> dict[str, Frame]:
    """Every built-in frame, including those not exposed as named examples."""
    return {
        "r4_nonparallel": r4_nonparallel_frame(),
        "kt4_frame": kt4_frame(),
        "complex_heisenberg_frame": complex_heisenberg_frame(),
        "coordinate4": coordinate_frame(2),
    }


def _entries() -> dict[str, CatalogEntry]:
    I4 = InnerMetric.identity(4)
    return {
        "kt4": CatalogEntry(
            "kt4",
            "Kodaira-Thurston algebra h3 + R with an abelian complex structure",
            AlgebraDocument(kt4_algebra(), kt4_abelian_j(), I4),
            {"integrable": True, "abelian": True, "bi_invariant": False, "torsion_type": "Type11",
             "two_step_solvable": True, "unimodular": True},
        ),
        "aff_c": CatalogEntry(
            "aff_c",
            "realified aff(C) with its bi-invariant complex structure",
            AlgebraDocument(aff_c_algebra(), aff_c_bi_invariant_j(), I4),
            {"integrable": True, "abelian": False, "bi_invariant": True, "torsion_type": "Type20",
             "two_step_solvable": True, "unimodular": False, "chern_flat": True},
        ),
        "abelian4": CatalogEntry(
            "abelian4",
            "abelian R^4 with the standard complex structure",
            AlgebraDocument(LieAlgebra.abelian(4), LinearComplexStructure.standard(2), I4),
            {"integrable": True, "abelian": True, "bi_invariant": True, "torsion_type": "Zero",
             "two_step_solvable": True, "unimodular": True, "chern_flat": True},
        ),
        "r4_nonparallel": CatalogEntry(
            "r4_nonparallel",
            "R^4 frame d1, d3, d2, -x3^2 d1 + d4: abelian connection with non-parallel torsion",
            FrameDocument(r4_nonparallel_frame()),
            {"integrable": True, "torsion_type": "Type11", "torsion_parallel": False},
        ),
        "so3": CatalogEntry(
            "so3",
            "so(3), a negative control: perfect, hence not solvable",
            AlgebraDocument(so3_algebra()),
            {"two_step_solvable": False, "unimodular": True},
        ),
    }


NAMES = ("kt4", "aff_c", "abelian4", "r4_nonparallel", "so3")


def derive_expected(entry: CatalogEntry) -> dict:
    """Fresh values for every key in ``entry.expected``."""
    doc = entry.payload
    report = analyze(doc, digest(serialize(doc)))
    out = {}
    for key in entry.expected:
        if key == "chern_flat":
            ch = chern(doc.algebra, doc.metric, doc.J)
            out[key] = curvature(ch).is_zero()
        else:
            out[key] = report.verdicts[key]
    return out


def load_example(name: str) -> CatalogEntry:
    entries = _entries()
    if name not in entries:
        raise NotFound(name)
    entry = entries[name]
    fresh = derive_expected(entry)
    if fresh != entry.expected:
        raise CatalogMismatch(f"{name}: expected {entry.expected}, derived {fresh}")
    return entry


def list_examples() -> list[str]:
    return list(NAMES)
