"""The analysis battery behind ``flatconn analyze`` and the catalog checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex_structure import (
    DEFECTS,
    InnerMetric,
    LinearComplexStructure,
    Witness,
    classify_structure,
    hermitian_defect,
    is_hermitian,
    validate_j,
)
from .connection_lab import (
    Connection,
    chern,
    covariant_derivative_g,
    covariant_derivative_J,
    curvature,
    first_canonical,
    levi_civita,
    minus_connection,
    t2_tensor,
    torsion,
    torsion_defects,
    torsion_type,
)
from .documents import AlgebraDocument, Document, FrameDocument
from .frame_fields import (
    Frame,
    export_lie_algebra,
    frame_nijenhuis,
    frame_torsion,
    frame_torsion_type,
    nonconstant_torsion_components,
)
from .lie_algebra import LieAlgebra, ad_traces, is_two_step_solvable, is_unimodular

CHECKS = (
    "integrable",
    "abelian",
    "bi_invariant",
    "torsion_type",
    "flat",
    "torsion_parallel",
    "two_step_solvable",
    "unimodular",
    "hermitian",
    "connections",
)
VERDICTS = CHECKS[:-1]


class InvalidInput(ValueError):
    def __init__(self, validations: list[dict]):
        failed = [v for v in validations if not v["ok"]]
        super().__init__("; ".join(f"{v['name']}: {v.get('message', 'failed')}" for v in failed))
        self.validations = validations


@dataclass
class AnalysisReport:
    input_digest: str
    input_kind: str
    validations: list[dict]
    verdicts: dict
    witnesses: list[Witness] = field(default_factory=list)
    connection_checks: dict | None = None
    connection_outputs: dict | None = None

    def to_json(self) -> dict:
        out = {
            "input_digest": self.input_digest,
            "input_kind": self.input_kind,
            "validations": self.validations,
            "verdicts": self.verdicts,
            "witnesses": [w.to_json() for w in self.witnesses],
        }
        if self.connection_checks is not None:
            out["connection_checks"] = self.connection_checks
        if self.connection_outputs is not None:
            out["connection_outputs"] = self.connection_outputs
        return out


def _basis(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def validate_document(doc: Document) -> list[dict]:
    out = []
    if isinstance(doc, FrameDocument):
        v = doc.frame.validation
        entry = {"name": "frame", "ok": v.ok, "determinant": v.determinant.to_json()}
        if not v.ok:
            entry["message"] = v.message
        return [entry]
    rep = doc.algebra.validation
    entry = {"name": "lie_algebra", "ok": rep.ok}
    if not rep.ok:
        entry["message"] = rep.summary()
    out.append(entry)
    if doc.J is not None:
        if doc.J.dim % 2:
            out.append({"name": "J", "ok": False, "message": "odd dimension"})
        else:
            ok = validate_j(doc.J)
            out.append({"name": "J", "ok": ok} if ok else {"name": "J", "ok": False, "message": "J*J != -I"})
    if doc.metric is not None:
        ok = doc.metric.is_positive_definite()
        out.append({"name": "metric", "ok": ok} if ok else
                   {"name": "metric", "ok": False, "message": "metric is not symmetric positive definite"})
    return out


def analyze(doc: Document, digest: str, only=None, emit_connections: bool = False) -> AnalysisReport:
    """Run validation and every requested check; raises InvalidInput on failed validation."""
    selected = set(CHECKS if not only else only)
    unknown = selected - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}; choose from {', '.join(CHECKS)}")
    validations = validate_document(doc)
    if not all(v["ok"] for v in validations):
        raise InvalidInput(validations)
    if isinstance(doc, FrameDocument):
        return _analyze_frame(doc.frame, digest, validations, selected)
    return _analyze_algebra(doc, digest, validations, selected, emit_connections)


def _analyze_algebra(doc: AlgebraDocument, digest, validations, selected, emit) -> AnalysisReport:
    g, J, G = doc.algebra, doc.J, doc.metric
    n = g.dim
    verdicts: dict = {}
    witnesses: list[Witness] = []
    minus = minus_connection(g)

    if J is not None:
        cls = classify_structure(g, J)
        for name in ("integrable", "abelian", "bi_invariant"):
            if name in selected:
                verdicts[name] = getattr(cls, name)
                witnesses.extend(w for w in cls.witnesses if w.check == name)
        if "torsion_type" in selected:
            tv = torsion_type(torsion(minus), J)
            verdicts["torsion_type"] = tv.kind.value
            verdicts["torsion_identities"] = list(tv.satisfied)
            witnesses.extend(tv.witnesses)
    else:
        for name in ("integrable", "abelian", "bi_invariant", "torsion_type"):
            if name in selected:
                verdicts[name] = None
    if "flat" in selected:
        R = curvature(minus)
        verdicts["flat"] = R.is_zero()
        witnesses.extend(Witness("flat", idx, vec) for idx, vec in list(R.nonzero_entries())[:1])
    if "torsion_parallel" in selected:
        # the (-)-connection has parallel torsion on any Lie group
        verdicts["torsion_parallel"] = True
    if "two_step_solvable" in selected:
        verdicts["two_step_solvable"] = is_two_step_solvable(g)
        t2 = t2_tensor(minus)
        if not t2.is_t2_zero:
            witnesses.append(t2.witness)
    if "unimodular" in selected:
        verdicts["unimodular"] = is_unimodular(g)
        witnesses.extend(Witness("unimodular", (i,), (t,)) for i, t in enumerate(ad_traces(g)) if t)
    hermitian = None
    if G is not None and J is not None:
        hermitian = is_hermitian(G, J)
        if not hermitian:
            d = hermitian_defect(G, J)
            witnesses.extend(Witness("hermitian", (i, j), (d[i][j],))
                             for i in range(n) for j in range(n) if d[i][j])
    if "hermitian" in selected:
        verdicts["hermitian"] = hermitian

    checks = outputs = None
    if G is not None and "connections" in selected:
        checks, outputs, extra = _connection_battery(g, J, G, hermitian, verdicts.get("integrable"))
        witnesses.extend(extra)
        if not emit:
            outputs = None
    ordered = {k: verdicts[k] for k in list(VERDICTS) + ["torsion_identities"] if k in verdicts}
    return AnalysisReport(digest, doc.kind, validations, ordered, witnesses, checks, outputs)


def _connection_properties(name: str, c: Connection, G: InnerMetric, J: LinearComplexStructure | None):
    n = c.dim
    witnesses = []
    dg = covariant_derivative_g(c, G)
    bad_g = [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if dg[i][j][k]]
    props = {"metric": not bad_g}
    if bad_g:
        i, j, k = bad_g[0]
        witnesses.append(Witness(f"{name}.metric", (i, j, k), (dg[i][j][k],)))
    if J is not None:
        dj = covariant_derivative_J(c, J)
        props["complex"] = dj.is_zero()
        witnesses.extend(Witness(f"{name}.complex", idx, vec) for idx, vec in list(dj.nonzero_entries())[:1])
        tv = torsion_type(torsion(c), J)
        props["torsion_type"] = tv.kind.value
    R = curvature(c)
    props["flat"] = R.is_zero()
    witnesses.extend(Witness(f"{name}.flat", idx, vec) for idx, vec in list(R.nonzero_entries())[:1])
    return props, witnesses


def _connection_battery(g: LieAlgebra, J, G, hermitian, integrable):
    checks, outputs, witnesses = {}, {}, []
    built = {"levi_civita": levi_civita(g, G)}
    skipped = {}
    if J is not None and hermitian:
        built["first_canonical"] = first_canonical(g, G, J)
        if integrable:
            built["chern"] = chern(g, G, J)
        else:
            skipped["chern"] = "J is not integrable"
    elif J is not None:
        skipped["first_canonical"] = skipped["chern"] = "metric is not Hermitian for J"
    for name in ("levi_civita", "first_canonical", "chern"):
        if name in built:
            props, wit = _connection_properties(name, built[name], G, J)
            checks[name] = props
            witnesses.extend(wit)
            outputs[name] = built[name].to_json()
        elif name in skipped:
            checks[name] = {"skipped": skipped[name]}
    return checks, outputs, witnesses


def _analyze_frame(F: Frame, digest, validations, selected) -> AnalysisReport:
    verdicts: dict = {}
    witnesses: list[Witness] = []
    m = F.dim
    if "integrable" in selected:
        bad = [(a, b, frame_nijenhuis(F, a, b)) for a in range(m) for b in range(a + 1, m)]
        bad = [x for x in bad if not x[2].is_zero()]
        verdicts["integrable"] = not bad
        witnesses.extend(Witness("frame_nijenhuis", (a, b), v.components) for a, b, v in bad)
    nonconst = nonconstant_torsion_components(F)
    algebra = None
    if not nonconst:
        algebra = export_lie_algebra(F)
    for name in ("abelian", "bi_invariant"):
        if name in selected:
            if algebra is None:
                verdicts[name] = None
            else:
                cls = classify_structure(algebra, F.J)
                verdicts[name] = getattr(cls, name)
                witnesses.extend(w for w in cls.witnesses if w.check == name)
    if "torsion_type" in selected:
        tv = frame_torsion_type(F)
        verdicts["torsion_type"] = tv.kind.value
        verdicts["torsion_identities"] = list(tv.satisfied)
        witnesses.extend(tv.witnesses)
    if "flat" in selected:
        # the connection is defined by declaring the frame parallel
        verdicts["flat"] = True
    if "torsion_parallel" in selected:
        verdicts["torsion_parallel"] = not nonconst
        witnesses.extend(Witness("torsion_parallel", (a, b, k), (p,)) for (a, b), k, p in nonconst)
    if "two_step_solvable" in selected:
        verdicts["two_step_solvable"] = None if algebra is None else is_two_step_solvable(algebra)
        if algebra is not None:
            t2 = t2_tensor(minus_connection(algebra))
            if not t2.is_t2_zero:
                witnesses.append(t2.witness)
    if "unimodular" in selected:
        verdicts["unimodular"] = None if algebra is None else is_unimodular(algebra)
        if algebra is not None:
            witnesses.extend(Witness("unimodular", (i,), (t,)) for i, t in enumerate(ad_traces(algebra)) if t)
    if "hermitian" in selected:
        verdicts["hermitian"] = None
    ordered = {k: verdicts[k] for k in list(VERDICTS) + ["torsion_identities"] if k in verdicts}
    return AnalysisReport(digest, "frame", validations, ordered, witnesses)


def reevaluate_witness(doc: Document, w: Witness):
    """Recompute a witness defect from scratch; used to audit reports."""
    check, idx = w.check, w.basis
    if isinstance(doc, FrameDocument):
        F = doc.frame
        if check == "frame_nijenhuis":
            return frame_nijenhuis(F, *idx).components
        if check == "torsion_parallel":
            a, b, k = idx
            return (frame_torsion(F).components[a][b][k],)
        if check in ("type11", "type20", "type2002"):
            return _identity_defect(torsion_defects(frame_torsion(F), F.J), w)
        algebra = export_lie_algebra(F)
        J = F.J
        G = None
    else:
        algebra, J, G = doc.algebra, doc.J, doc.metric
    n = algebra.dim
    if check in DEFECTS:
        i, j = idx
        return DEFECTS[check](algebra, J, _basis(n, i), _basis(n, j))
    if check in ("type11", "type20", "type2002"):
        return _identity_defect(torsion_defects(torsion(minus_connection(algebra)), J), w)
    if check == "t2":
        a, b, c, d = idx
        T = torsion(minus_connection(algebra))
        return T(T.components[a][b], T.components[c][d])
    if check == "unimodular":
        return (ad_traces(algebra)[idx[0]],)
    if check == "hermitian":
        i, j = idx
        return (hermitian_defect(G, J)[i][j],)
    if check == "flat":
        i, j, k = idx
        return curvature(minus_connection(algebra)).components[i][j][k]
    name, _, prop = check.partition(".")
    builders = {
        "levi_civita": lambda: levi_civita(algebra, G),
        "first_canonical": lambda: first_canonical(algebra, G, J),
        "chern": lambda: chern(algebra, G, J),
    }
    c = builders[name]()
    if prop == "metric":
        i, j, k = idx
        return (covariant_derivative_g(c, G)[i][j][k],)
    if prop == "complex":
        i, j = idx
        return covariant_derivative_J(c, J).components[i][j]
    if prop == "flat":
        i, j, k = idx
        return curvature(c).components[i][j][k]
    raise ValueError(f"unknown witness check {check!r}")


def _identity_defect(defects, w: Witness):
    for cand in defects[w.check]:
        if cand.basis == w.basis:
            return cand.defect
    return None
