import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatconn.complex_structure import (
    InnerMetric,
    NotHermitian,
    classify_structure,
    nijenhuis,
    random_complex_structure,
    random_hermitian_metric,
)
from flatconn.connection_lab import (
    Connection,
    NotIntegrable,
    NotTorsionFree,
    TorsionType,
    chern,
    complexify_torsion_free,
    covariant_derivative_g,
    covariant_derivative_J,
    curvature,
    first_canonical,
    is_flat,
    is_metric,
    kahler_form_d,
    levi_civita,
    minus_connection,
    nijen1_residual,
    random_connection,
    solve_connection_conditions,
    t2_tensor,
    torsion,
    torsion_11_part,
    torsion_type,
)
from flatconn.lie_algebra import LieAlgebra, bracket, is_two_step_solvable
from flatconn.sampling import SamplingConfig, random_lie_algebra, random_pair

HALF = Fraction(1, 2)


def e(i, n=4):
    return tuple(Fraction(int(k == i)) for k in range(n))


def neg(v):
    return tuple(-x for x in v)


def gamma_with(n, entries):
    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in entries.items():
        gamma[i][j][k] = Fraction(v)
    return gamma


# (-)-connection


def test_minus_connection_is_zero(kt4, aff_c):
    assert minus_connection(kt4).is_zero()
    assert minus_connection(aff_c).is_zero()


def test_minus_torsion_is_minus_bracket(kt4):
    T = torsion(minus_connection(kt4))
    assert T(e(0), e(1)) == neg(e(2))
    for i, j in itertools.product(range(4), repeat=2):
        assert T.components[i][j] == neg(bracket(kt4, e(i), e(j)))


@given(st.integers(0, 10_000))
def test_minus_connection_is_flat(seed):
    g = random_lie_algebra(seed)
    assert is_flat(minus_connection(g))


def test_torsion_of_explicit_gamma():
    c = Connection(LieAlgebra.abelian(4), gamma_with(4, {(0, 1, 0): 1}))
    assert torsion(c)(e(0), e(1)) == e(0)


# torsion type


def test_torsion_type_examples(kt4, j_ab, aff_c, j_bi, abelian4, j0):
    assert torsion_type(torsion(minus_connection(kt4)), j_ab).kind is TorsionType.TYPE11
    assert torsion_type(torsion(minus_connection(aff_c)), j_bi).kind is TorsionType.TYPE20
    zero = torsion(minus_connection(abelian4))
    tv = torsion_type(zero, j0)
    assert tv.kind is TorsionType.ZERO
    assert set(tv.satisfied) == {"type11", "type20", "type2002"}


def test_type20_torsion_also_satisfies_2002(aff_c, j_bi):
    tv = torsion_type(torsion(minus_connection(aff_c)), j_bi)
    assert tv.holds("type2002") and not tv.holds("type11")
    assert all(w.check == "type11" for w in tv.witnesses)


@given(st.integers(0, 10_000))
def test_torsion_type_priority(seed):
    g, J = random_pair(seed)
    tv = torsion_type(torsion(random_connection(g, seed)), J)
    expected = next(
        (t for name, t in (("type20", TorsionType.TYPE20), ("type11", TorsionType.TYPE11),
                           ("type2002", TorsionType.TYPE2002)) if tv.holds(name)),
        TorsionType.NONE,
    )
    assert tv.kind is expected or tv.kind is TorsionType.ZERO


# covariant derivatives


def test_nabla_j_examples(kt4, j_ab, aff_c, j_bi, I4):
    for seed in range(3):
        g = random_lie_algebra(seed)
        J = random_complex_structure(4, seed)
        assert covariant_derivative_J(minus_connection(g), J).is_zero()
    assert covariant_derivative_J(chern(aff_c, I4, j_bi), j_bi).is_zero()
    dj = covariant_derivative_J(levi_civita(kt4, I4), j_ab)
    assert not dj.is_zero()
    # (nabla_{e1} J) e3 = nabla_{e1} e4 - J nabla_{e1} e3 = 0 - J(-e2/2) = -e1/2
    assert dj.components[0][2] == (-HALF, 0, 0, 0)


def test_nabla_g_examples(kt4, I4):
    G = random_hermitian_metric(random_complex_structure(4, 1), 2)
    assert is_metric(levi_civita(kt4, G), G)
    assert is_metric(minus_connection(kt4), G)
    c = Connection(LieAlgebra.abelian(2), gamma_with(2, {(0, 0, 0): 1}))
    assert covariant_derivative_g(c, InnerMetric.identity(2))[0][0][0] == -2


# curvature and T2


def test_curvature_examples(kt4, aff_c, j_bi, I4):
    assert curvature(minus_connection(kt4)).is_zero()
    assert curvature(chern(aff_c, I4, j_bi)).is_zero()
    R = curvature(levi_civita(kt4, I4))
    assert not R.is_zero()
    # hand Koszul computation: sectional curvature of span{e1, e2} is -3/4
    assert R.components[0][1][1][0] == Fraction(-3, 4)


def test_t2_examples(kt4, so3):
    assert t2_tensor(minus_connection(kt4)).is_t2_zero
    t2 = t2_tensor(minus_connection(so3))
    assert not t2.is_t2_zero
    e3 = lambda i: e(i, 3)
    # T = -bracket, so T(T(e1,e2), T(e2,e3)) = -[[e1,e2],[e2,e3]] = -e2
    assert t2.components[0][1][1][2] == neg(e3(1))
    assert any(t2.witness.defect)
    assert t2_tensor(levi_civita(so3, InnerMetric.identity(3))).is_t2_zero


@given(st.integers(0, 10_000))
def test_t2_matches_two_step(seed):
    g = random_lie_algebra(seed)
    assert t2_tensor(minus_connection(g)).is_t2_zero == is_two_step_solvable(g)


# Levi-Civita and the Hermitian connections


def test_levi_civita_examples(kt4, aff_c, abelian4, I4):
    assert levi_civita(abelian4, I4).is_zero()
    lc = levi_civita(kt4, I4)
    assert lc.nabla(e(0), e(1)) == (0, 0, HALF, 0)
    assert lc.nabla(e(1), e(0)) == (0, 0, -HALF, 0)
    assert lc.nabla(e(0), e(2)) == (0, -HALF, 0, 0)
    assert torsion(levi_civita(aff_c, I4)).is_zero()


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_levi_civita_is_metric_and_torsion_free(gseed, mseed):
    g = random_lie_algebra(gseed, SamplingConfig(dim=4))
    G = random_hermitian_metric(random_complex_structure(4, mseed), mseed)
    lc = levi_civita(g, G)
    assert is_metric(lc, G)
    assert torsion(lc).is_zero()


def test_kahler_form_d_examples(kt4, j_ab, abelian4, j0, I4):
    dw = kahler_form_d(abelian4, I4, j0)
    assert not any(v for a in dw for b in a for v in b)
    dw = kahler_form_d(kt4, I4, j_ab)
    assert dw[0][1][3] == -1
    for i, j, k in itertools.product(range(4), repeat=3):
        assert dw[i][j][k] == -dw[j][i][k] == -dw[i][k][j]


def test_kahler_form_d_needs_hermitian(kt4, j_ab):
    G = InnerMetric(tuple(tuple(Fraction((1, 2, 1, 2)[i] * (i == j)) for j in range(4)) for i in range(4)))
    with pytest.raises(NotHermitian):
        kahler_form_d(kt4, G, j_ab)


def test_first_canonical_examples(kt4, j_ab, abelian4, j0, I4):
    assert first_canonical(abelian4, I4, j0) == levi_civita(abelian4, I4)
    fc = first_canonical(kt4, I4, j_ab)
    assert covariant_derivative_J(fc, j_ab).is_zero()
    assert torsion_type(torsion(fc), j_ab).kind is TorsionType.TYPE11


def test_chern_examples(kt4, j_ab, aff_c, j_bi, abelian4, j0, I4):
    assert chern(aff_c, I4, j_bi).is_zero()
    assert chern(abelian4, I4, j0).is_zero()
    assert torsion_type(torsion(chern(kt4, I4, j_ab)), j_ab).kind is TorsionType.TYPE20


def test_chern_errors(kt4, j_prime, j_ab):
    with pytest.raises(NotIntegrable):
        chern(kt4, random_hermitian_metric(j_prime, 0), j_prime)
    G = InnerMetric(tuple(tuple(Fraction((1, 2, 3, 4)[i] * (i == j)) for j in range(4)) for i in range(4)))
    with pytest.raises(NotHermitian):
        chern(kt4, G, j_ab)


def integrable_pairs(limit):
    out = []
    seed = 0
    while len(out) < limit:
        g, J = random_pair(seed)
        if classify_structure(g, J).integrable:
            out.append((seed, g, J))
        seed += 1
    return out


@pytest.mark.parametrize("seed, g, J", integrable_pairs(12))
def test_chern_and_first_canonical_properties(seed, g, J):
    G = random_hermitian_metric(J, seed)
    ch = chern(g, G, J)
    assert is_metric(ch, G)
    assert covariant_derivative_J(ch, J).is_zero()
    T = torsion(ch)
    assert torsion_type(T, J).holds("type20")
    assert torsion_11_part(T, J).is_zero()
    fc = first_canonical(g, G, J)
    assert is_metric(fc, G)
    assert covariant_derivative_J(fc, J).is_zero()
    assert torsion_type(torsion(fc), J).holds("type11")


@pytest.mark.parametrize("seed, g, J", integrable_pairs(6))
def test_chern_is_the_unique_solution(seed, g, J):
    G = random_hermitian_metric(J, seed + 100)
    particular, null = solve_connection_conditions(g, G, J, "type20")
    assert null == []
    assert particular == chern(g, G, J)


@pytest.mark.parametrize("seed, g, J", integrable_pairs(6))
def test_first_canonical_is_complexified_levi_civita(seed, g, J):
    G = random_hermitian_metric(J, seed)
    assert complexify_torsion_free(levi_civita(g, G), J) == first_canonical(g, G, J)


# complexification of a torsion-free connection


def test_complexify_examples(kt4, j_ab, abelian4, j0, I4):
    assert complexify_torsion_free(levi_civita(kt4, I4), j_ab) == first_canonical(kt4, I4, j_ab)
    assert complexify_torsion_free(minus_connection(abelian4), j0).is_zero()
    with pytest.raises(NotTorsionFree):
        complexify_torsion_free(minus_connection(kt4), j_ab)


@settings(max_examples=40)
@given(st.integers(0, 10_000), st.integers(0, 10_000))
def test_complexify_defect_is_half_nijenhuis(gseed, jseed):
    g = random_lie_algebra(gseed)
    J = random_complex_structure(4, jseed)
    G = random_hermitian_metric(J, jseed)
    c = complexify_torsion_free(levi_civita(g, G), J)
    assert covariant_derivative_J(c, J).is_zero()
    T = torsion(c)
    for i, j in itertools.combinations(range(4), 2):
        lhs = tuple(a - b for a, b in zip(T(e(i), e(j)), T(J(e(i)), J(e(j)))))
        assert lhs == tuple(HALF * v for v in nijenhuis(g, J, e(i), e(j)))


def test_complexify_non_integrable(kt4, j_prime, I4):
    c = complexify_torsion_free(levi_civita(kt4, I4), j_prime)
    assert not torsion_type(torsion(c), j_prime).holds("type11")


# the identity relating N, nabla J and T


def test_nijen1_examples(kt4, j_ab, j_prime, I4):
    assert nijen1_residual(minus_connection(kt4), j_ab).is_zero()
    assert nijen1_residual(levi_civita(kt4, I4), j_prime).is_zero()


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.sampled_from([2, 4]))
def test_nijen1_on_random_data(seed, dim):
    g = random_lie_algebra(seed, SamplingConfig(dim=dim))
    J = random_complex_structure(dim, seed)
    assert nijen1_residual(random_connection(g, seed), J).is_zero()


def test_connection_json_round_trip(kt4, j_ab, I4):
    c = chern(kt4, random_hermitian_metric(j_ab, 4), j_ab)
    assert Connection.from_json(kt4, c.to_json()) == c


@settings(max_examples=25)
@given(st.integers(0, 10_000), st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_nijen1_identity_on_dense_vectors(seed, coords):
    """The identity evaluated term by term on arbitrary vectors, not via basis tables."""
    g, J = random_pair(seed)
    c = random_connection(g, seed)
    T = torsion(c)
    x, y = coords[:4], coords[4:]
    jx, jy = J(x), J(y)

    def dj(u, v):
        return tuple(a - b for a, b in zip(c.nabla(u, J(v)), J(c.nabla(u, v))))

    terms = [dj(jx, y), neg(dj(jy, x)), dj(x, jy), neg(dj(y, jx)), T(x, y), neg(T(jx, jy)),
             J(tuple(a + b for a, b in zip(T(jx, y), T(x, jy))))]
    rhs = tuple(sum(t[k] for t in terms) for k in range(4))
    assert nijenhuis(g, J, x, y) == rhs
