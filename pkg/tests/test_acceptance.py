"""Acceptance gate: twelve criteria, all at exact (zero-tolerance) equality.

Run with pytest for one PASS/FAIL line per criterion in the terminal summary,
or directly with ``python tests/test_acceptance.py``.
"""

import contextlib
import io
import itertools
import json
import tempfile
from pathlib import Path

import pytest

from flatconn import catalog, cli
from flatconn.complex_structure import (
    InnerMetric,
    LinearComplexStructure,
    classify_structure,
    random_complex_structure,
    random_hermitian_metric,
)
from flatconn.connection_lab import (
    TorsionType,
    chern,
    covariant_derivative_J,
    curvature,
    first_canonical,
    is_metric,
    minus_connection,
    nijen1_residual,
    random_connection,
    solve_connection_conditions,
    t2_tensor,
    torsion,
    torsion_11_part,
    torsion_type,
)
from flatconn.documents import AlgebraDocument, FrameDocument, digest, parse, serialize
from flatconn.frame_fields import (
    NotClosed,
    export_lie_algebra,
    frame_nijenhuis,
    frame_torsion_type,
    is_torsion_parallel,
    nonconstant_torsion_components,
    coframe_form_types,
    verify_form_criterion,
)
from flatconn.exact_core import Polynomial
from flatconn.lie_algebra import LieAlgebra, is_two_step_solvable, is_unimodular
from flatconn.report import analyze
from flatconn.sampling import SamplingConfig, random_lie_algebra, random_pair

RESULTS: dict[int, tuple[bool, str]] = {}


def catalog_pairs():
    """(name, algebra, J) for every catalog algebra that carries a complex structure."""
    out = []
    for name in catalog.NAMES:
        doc = catalog.load_example(name).payload
        if isinstance(doc, AlgebraDocument) and doc.J is not None:
            out.append((name, doc.algebra, doc.J))
    return out


def catalog_algebras():
    out = []
    for name in catalog.NAMES:
        doc = catalog.load_example(name).payload
        if isinstance(doc, AlgebraDocument):
            out.append((name, doc.algebra))
    out.append(("kt4_frame", export_lie_algebra(catalog.kt4_frame())))
    return out


def equivalence_samples():
    """Catalog pairs, 50 random J on each catalog algebra, and 50 random pairs with transported special J."""
    samples = [(g, J) for _, g, J in catalog_pairs()]
    for _, g, _ in catalog_pairs():
        samples += [(g, random_complex_structure(g.dim, seed)) for seed in range(50)]
    samples += [random_pair(seed) for seed in range(50)]
    return samples


def criterion_1():
    count = 0
    for dim in (2, 4, 6):
        for seed in range(100):
            g = random_lie_algebra(seed, SamplingConfig(dim=dim))
            J = random_complex_structure(dim, seed)
            residual = nijen1_residual(random_connection(g, seed), J)
            assert residual.is_zero(), f"dim {dim} seed {seed}: {list(residual.nonzero_entries())[:1]}"
            count += 1
    return f"{count} random (connection, J) pairs, residual identically zero"


def _equivalence(flag, identity, kind):
    pos = neg = 0
    for g, J in equivalence_samples():
        verdict = classify_structure(g, J)
        tv = torsion_type(torsion(minus_connection(g)), J)
        assert tv.holds(identity) == getattr(verdict, flag), (g.brackets(), J.matrix)
        # the single label agrees too, once the zero-torsion tie is set aside
        if not g.is_abelian():
            assert (tv.kind is kind) == getattr(verdict, flag)
        if getattr(verdict, flag):
            pos += 1
        else:
            neg += 1
    assert pos and neg
    return pos, neg


def criterion_2():
    pos, neg = _equivalence("abelian", "type11", TorsionType.TYPE11)
    kt4 = torsion_type(torsion(minus_connection(catalog.kt4_algebra())), catalog.kt4_abelian_j())
    assert kt4.kind is TorsionType.TYPE11
    return f"{pos} abelian and {neg} non-abelian samples agree with the (1,1) identity"


def criterion_3():
    pos, neg = _equivalence("bi_invariant", "type20", TorsionType.TYPE20)
    aff = torsion_type(torsion(minus_connection(catalog.aff_c_algebra())), catalog.aff_c_bi_invariant_j())
    assert aff.kind is TorsionType.TYPE20
    kt4 = classify_structure(catalog.kt4_algebra(), catalog.kt4_abelian_j())
    kt4_tv = torsion_type(torsion(minus_connection(catalog.kt4_algebra())), catalog.kt4_abelian_j())
    assert not kt4.bi_invariant and not kt4_tv.holds("type20")
    return f"{pos} bi-invariant and {neg} other samples agree with the (2,0) identity"


def criterion_4():
    checked = 0
    for name, g, J in catalog_pairs():
        for seed in range(20):
            G = random_hermitian_metric(J, seed)
            ch = chern(g, G, J)
            assert is_metric(ch, G), (name, seed, "chern metric")
            assert covariant_derivative_J(ch, J).is_zero(), (name, seed, "chern complex")
            T = torsion(ch)
            tv = torsion_type(T, J)
            assert tv.holds("type20") and tv.kind in (TorsionType.TYPE20, TorsionType.ZERO), (name, seed)
            assert torsion_11_part(T, J).is_zero(), (name, seed, "chern (1,1) part")
            fc = first_canonical(g, G, J)
            assert is_metric(fc, G), (name, seed, "first canonical metric")
            assert covariant_derivative_J(fc, J).is_zero(), (name, seed, "first canonical complex")
            ftv = torsion_type(torsion(fc), J)
            assert ftv.holds("type11") and ftv.kind in (TorsionType.TYPE11, TorsionType.ZERO), (name, seed)
            checked += 1
    return f"{checked} Hermitian metrics over {', '.join(n for n, _, _ in catalog_pairs())}"


def criterion_5():
    g, J = catalog.aff_c_algebra(), catalog.aff_c_bi_invariant_j()
    I = InnerMetric.identity(4)
    ch = chern(g, I, J)
    assert ch.is_zero()
    assert curvature(ch).is_zero()
    # the (-)-connection meets the three defining conditions on its own
    minus = minus_connection(g)
    assert is_metric(minus, I) and covariant_derivative_J(minus, J).is_zero()
    assert torsion_type(torsion(minus), J).holds("type20")
    particular, null = solve_connection_conditions(g, I, J, "type20")
    assert null == [] and particular == ch
    return "Chern connection is the (-)-connection; flat; the linear system has exactly one solution"


def criterion_6():
    seen = {True: 0, False: 0}
    for name, g in catalog_algebras():
        assert t2_tensor(minus_connection(g)).is_t2_zero == is_two_step_solvable(g), name
    assert not is_two_step_solvable(catalog.so3_algebra())
    assert not t2_tensor(minus_connection(catalog.so3_algebra())).is_t2_zero
    for seed in range(50):
        g = random_lie_algebra(seed, SamplingConfig(dim=4))
        solvable = is_two_step_solvable(g)
        assert t2_tensor(minus_connection(g)).is_t2_zero == solvable, seed
        seen[solvable] += 1
    assert seen[True] and seen[False]
    return f"catalog algebras plus 50 random ({seen[True]} 2-step solvable, {seen[False]} not); so3 fails"


def criterion_7():
    abelian = 0
    for seed in range(300):
        g, J = random_pair(seed)
        if classify_structure(g, J).abelian:
            abelian += 1
            assert is_two_step_solvable(g), seed
            assert t2_tensor(minus_connection(g)).is_t2_zero, seed
    assert abelian
    return f"{abelian} abelian structures among 300 random pairs, all on 2-step solvable algebras"


def criterion_8():
    F = catalog.r4_nonparallel_frame()
    assert frame_torsion_type(F).kind is TorsionType.TYPE11
    assert not is_torsion_parallel(F)
    x3 = Polynomial.variable(2, 4)
    polys = [p for _, _, p in nonconstant_torsion_components(F)]
    assert polys and all(p in (x3 * 2, x3 * -2) for p in polys)
    assert all(frame_nijenhuis(F, a, b).is_zero() for a, b in itertools.product(range(4), repeat=2))
    try:
        export_lie_algebra(F)
    except NotClosed:
        pass
    else:
        raise AssertionError("export closed unexpectedly")
    return "Type11, torsion not parallel (2*x3), Nijenhuis zero, export does not close"


def criterion_9():
    F = catalog.kt4_frame()
    frame_report = analyze(FrameDocument(F), "frame")
    algebra_report = analyze(AlgebraDocument(catalog.kt4_algebra(), catalog.kt4_abelian_j()), "algebra")
    assert frame_report.verdicts == algebra_report.verdicts, (frame_report.verdicts, algebra_report.verdicts)
    return f"identical verdicts: {json.dumps(frame_report.verdicts, sort_keys=True)}"


def criterion_10():
    names = []
    for name, F in catalog.catalog_frames().items():
        assert verify_form_criterion(F), name
        tv = frame_torsion_type(F)
        forms = coframe_form_types(F)
        assert forms.all_type11 == tv.holds("type11") and forms.all_type20 == tv.holds("type20"), name
        names.append(f"{name}={tv.kind.value}")
    return ", ".join(names)


def criterion_11():
    assert not is_unimodular(catalog.aff_c_algebra())
    assert is_unimodular(catalog.kt4_algebra())
    return "aff_c not unimodular, kt4 unimodular"


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue()


def criterion_12():
    code1, out1 = _cli("analyze", "catalog:kt4")
    code2, out2 = _cli("analyze", "catalog:kt4")
    assert code1 == code2 == 0 and out1 == out2
    v = json.loads(out1)["verdicts"]
    assert v["abelian"] is True and v["torsion_type"] == "Type11"
    with tempfile.TemporaryDirectory() as tmp:
        bad = Path(tmp) / "bad.json"
        bad.write_text('{"algebra": {"dim": 2, "brackets": [}')
        code, out = _cli("analyze", str(bad))
        assert code == 2
        assert json.loads(out)["location"].startswith("line 1 column")
    for name in catalog.NAMES:
        text = serialize(catalog.load_example(name).payload)
        assert serialize(parse(text)) == text, name
    return "deterministic kt4 report, malformed input exits 2 with location, byte-identical round trips"


CRITERIA = {
    1: ("identity suite", criterion_1),
    2: ("abelian equivalence", criterion_2),
    3: ("bi-invariant equivalence", criterion_3),
    4: ("Chern battery", criterion_4),
    5: ("Chern-flat instance", criterion_5),
    6: ("solvability equivalence", criterion_6),
    7: ("abelian implies 2-step", criterion_7),
    8: ("non-parallel frame", criterion_8),
    9: ("cross-module consistency", criterion_9),
    10: ("form-criterion duality", criterion_10),
    11: ("unimodularity", criterion_11),
    12: ("CLI contract", criterion_12),
}


def evaluate(number):
    label, fn = CRITERIA[number]
    try:
        detail = fn()
        RESULTS[number] = (True, f"{label}: {detail}")
    except AssertionError as exc:
        RESULTS[number] = (False, f"{label}: {exc!r}")
    return RESULTS[number]


def format_line(number, ok, detail):
    return f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("number", list(CRITERIA))
def test_criterion(number):
    ok, detail = evaluate(number)
    assert ok, format_line(number, ok, detail)


if __name__ == "__main__":
    failed = 0
    for n in CRITERIA:
        ok, detail = evaluate(n)
        failed += not ok
        print(format_line(n, ok, detail), flush=True)
    raise SystemExit(1 if failed else 0)
