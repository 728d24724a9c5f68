import pytest

from orthoposet.io_cli import document_to_op, load_fixture
from orthoposet.poset_core import OpPoset, Poset

FIXTURE_NAMES = ("ex1", "m3", "fig3", "benzene", "cube8")


@pytest.fixture(scope="session")
def fixture_ops():
    return {
        name: document_to_op(load_fixture(name + ".poset")) for name in FIXTURE_NAMES
    }


@pytest.fixture(scope="session")
def ex1(fixture_ops):
    return fixture_ops["ex1"]


@pytest.fixture(scope="session")
def m3(fixture_ops):
    return fixture_ops["m3"]


@pytest.fixture(scope="session")
def fig3(fixture_ops):
    return fixture_ops["fig3"]


@pytest.fixture(scope="session")
def benzene(fixture_ops):
    return fixture_ops["benzene"]


@pytest.fixture(scope="session")
def cube8(fixture_ops):
    return fixture_ops["cube8"]


def two_chain(prime=(1, 0)) -> OpPoset:
    return OpPoset(Poset(("0", "1"), (0b11, 0b10)), prime)


@pytest.fixture(scope="session")
def butterfly():
    """Six elements 0 < a,b < c,d < 1 with c' = b: not orthogonal."""
    p = Poset.from_covers(
        ("0", "a", "b", "c", "d", "1"),
        [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
    )
    prime = list(range(6))
    prime[p.index("c")] = p.index("b")
    return OpPoset(p, prime)


@pytest.fixture(scope="session")
def pentagon():
    """0 < a < b < 1 and 0 < c < 1 with a'=c, b'=c, c'=a: complemented
    orthogonal lattice that is not modular and not an adjoint pair."""
    p = Poset.from_covers(
        ("0", "a", "b", "c", "1"), [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]
    )
    prime = [p.index(s) for s in ("1", "c", "c", "a", "0")]
    return OpPoset(p, prime)
