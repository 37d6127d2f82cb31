import pytest
from hypothesis import HealthCheck, settings

from flatconn import catalog
from flatconn.complex_structure import InnerMetric, LinearComplexStructure
from flatconn.lie_algebra import LieAlgebra

settings.register_profile("default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def kt4():
    return catalog.kt4_algebra()


@pytest.fixture
def aff_c():
    return catalog.aff_c_algebra()


@pytest.fixture
def so3():
    return catalog.so3_algebra()


@pytest.fixture
def abelian4():
    return LieAlgebra.abelian(4)


@pytest.fixture
def j_ab():
    return catalog.kt4_abelian_j()


@pytest.fixture
def j_bi():
    return catalog.aff_c_bi_invariant_j()


@pytest.fixture
def j0():
    return LinearComplexStructure.standard(2)


@pytest.fixture
def j_prime():
    """J e1 = e3, J e2 = e4: not integrable on kt4."""
    return LinearComplexStructure.from_pairs(4, [(0, 2), (1, 3)])


@pytest.fixture
def I4():
    return InnerMetric.identity(4)


@pytest.fixture
def r4_frame():
    return catalog.r4_nonparallel_frame()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, format_line

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(format_line(number, *RESULTS[number]))
