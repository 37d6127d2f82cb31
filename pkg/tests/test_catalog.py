import itertools

import pytest
import sympy

from flatconn import catalog
from flatconn.catalog import CatalogMismatch, NotFound
from flatconn.complex_structure import classify_structure
from flatconn.lie_algebra import validate


def commutator(a, b):
    return a * b - b * a


def kt4_matrix_basis():
    """Unipotent Heisenberg matrices with an extra diagonal slot for the R factor."""
    def unit(r, c):
        m = sympy.zeros(4, 4)
        m[r, c] = 1
        return m
    return [unit(0, 1), unit(1, 2), unit(0, 2), unit(3, 3)]


def kt4_coords(m):
    return [m[0, 1], m[1, 2], m[0, 2], m[3, 3]]


def aff_c_matrix_basis():
    A = sympy.Matrix([[1, 0], [0, 0]])
    B = sympy.Matrix([[0, 1], [0, 0]])
    return [A, sympy.I * A, B, sympy.I * B]


def aff_c_coords(m):
    alpha, beta = sympy.expand(m[0, 0]), sympy.expand(m[0, 1])
    assert sympy.expand(m[1, 0]) == 0 and sympy.expand(m[1, 1]) == 0
    return [sympy.re(alpha), sympy.im(alpha), sympy.re(beta), sympy.im(beta)]


@pytest.mark.parametrize(
    "algebra, basis, coords",
    [
        (catalog.kt4_algebra(), kt4_matrix_basis(), kt4_coords),
        (catalog.aff_c_algebra(), aff_c_matrix_basis(), aff_c_coords),
    ],
    ids=["kt4", "aff_c"],
)
def test_structure_constants_match_matrix_commutators(algebra, basis, coords):
    for i, j in itertools.product(range(4), repeat=2):
        expected = coords(commutator(basis[i], basis[j]))
        assert [sympy.Rational(v.numerator, v.denominator) for v in algebra.c[i][j]] == expected


def test_bi_invariant_j_is_multiplication_by_i():
    basis = aff_c_matrix_basis()
    J = catalog.aff_c_bi_invariant_j()
    for k in range(4):
        jv = J(tuple(int(t == k) for t in range(4)))
        assert [sympy.Rational(v.numerator, v.denominator) for v in jv] == aff_c_coords(sympy.I * basis[k])


def test_kt4_abelian_j_by_brute_force():
    g, J = catalog.kt4_algebra(), catalog.kt4_abelian_j()
    v = classify_structure(g, J)
    assert v.abelian and v.integrable and not v.bi_invariant


def test_list_examples():
    assert catalog.list_examples() == ["kt4", "aff_c", "abelian4", "r4_nonparallel", "so3"]


@pytest.mark.parametrize("name", catalog.NAMES)
def test_every_entry_loads_and_validates(name):
    entry = catalog.load_example(name)
    assert entry.name == name
    assert catalog.derive_expected(entry) == entry.expected
    payload = entry.payload
    if payload.kind == "frame":
        assert payload.frame.validation.ok
    else:
        assert validate(payload.algebra).ok


def test_expected_fragments():
    kt4 = catalog.load_example("kt4").expected
    assert kt4["abelian"] and kt4["torsion_type"] == "Type11" and kt4["two_step_solvable"] and kt4["unimodular"]
    aff = catalog.load_example("aff_c").expected
    assert aff["bi_invariant"] and aff["torsion_type"] == "Type20"
    assert not aff["unimodular"] and aff["chern_flat"]
    r4 = catalog.load_example("r4_nonparallel").expected
    assert r4["torsion_type"] == "Type11" and not r4["torsion_parallel"] and r4["integrable"]


def test_unknown_name():
    with pytest.raises(NotFound) as err:
        catalog.load_example("bogus")
    assert "kt4" in str(err.value)


def test_tampered_entry_is_rejected(monkeypatch):
    original = catalog._entries

    def tampered():
        entries = original()
        kt4 = entries["kt4"]
        entries["kt4"] = catalog.CatalogEntry(kt4.name, kt4.description, kt4.payload,
                                              {**kt4.expected, "abelian": False})
        return entries

    monkeypatch.setattr(catalog, "_entries", tampered)
    with pytest.raises(CatalogMismatch):
        catalog.load_example("kt4")


def test_r4_frame_constraints():
    """f = x3^2 depends on x3 only, g = 0."""
    F = catalog.r4_nonparallel_frame()
    f = -F.fields[3].components[0]
    assert f.partial(0) == 0 and f.partial(1) == 0 and not f.partial(2).is_constant()
    assert F.fields[3].components[1] == 0
