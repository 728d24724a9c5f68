import itertools

import pytest

from orthoposet.enumeration import enumerate_posets
from orthoposet.poset_core import OpPoset, Poset
from orthoposet.properties import (
    is_antitone,
    is_complementation,
    is_involution,
    is_lattice,
    is_modular,
    is_orthogonal,
    is_orthomodular,
    is_saturated,
    op_reports,
)

from conftest import two_chain

EXPECTED_PROFILES = {
    "ex1": dict(
        saturated=True, orthogonal=True, complemented=True, antitone=True,
        involution=False, orthomodular=False, modular=False, lattice=False,
    ),
    "m3": dict(
        saturated=True, orthogonal=True, complemented=True, antitone=True,
        involution=False, orthomodular=False, modular=True, lattice=True,
    ),
    "fig3": dict(
        saturated=True, orthogonal=True, complemented=True, antitone=True,
        involution=True, orthomodular=True, modular=False, lattice=True,
    ),
    "benzene": dict(
        saturated=True, orthogonal=True, complemented=True, antitone=True,
        involution=True, orthomodular=False, modular=False, lattice=True,
    ),
    "cube8": dict(
        saturated=True, orthogonal=True, complemented=True, antitone=True,
        involution=True, orthomodular=True, modular=True, lattice=True,
    ),
}


@pytest.mark.parametrize("name", sorted(EXPECTED_PROFILES))
def test_fixture_profiles(fixture_ops, name):
    got = {k: r.holds for k, r in op_reports(fixture_ops[name]).items()}
    assert got == EXPECTED_PROFILES[name]


def test_failed_reports_carry_replayable_witnesses(fixture_ops):
    for op in fixture_ops.values():
        for rep in op_reports(op).values():
            if not rep.holds:
                assert rep.witness is not None
                assert all(0 <= i < op.poset.n for i in rep.witness.elements)


# -- saturation --------------------------------------------------------------


def test_saturated_is_a_tautology_on_finite_posets():
    for n in range(1, 5):
        for p in enumerate_posets(n):
            assert is_saturated(p).holds


# -- orthogonality -----------------------------------------------------------


def test_orthogonal_accepts_any_map_on_a_lattice(m3):
    # the printed diamond table, bounds mapped to themselves, is still
    # orthogonal: every join and meet exists in a lattice
    p = m3.poset
    printed = [p.index(s) for s in ("0", "b", "c", "a", "1")]
    assert is_orthogonal(OpPoset(p, printed)).holds


def test_orthogonal_witness_on_butterfly(butterfly):
    rep = is_orthogonal(butterfly)
    p = butterfly.poset
    assert not rep.holds
    assert rep.witness.elements == (p.index("a"), p.index("c"))
    assert rep.witness.condition == "join_with_complement_undefined"
    # replay: a <= c yet a v c' = a v b has two minimal upper bounds
    a, c = rep.witness.elements
    assert p.le(a, c)
    assert p.join(a, butterfly.prime[c]) is None


# -- complementation ---------------------------------------------------------


def test_complementation_cases(ex1):
    assert is_complementation(ex1).holds
    assert is_complementation(two_chain()).holds
    identity = OpPoset(two_chain().poset, (0, 1))
    rep = is_complementation(identity)
    assert not rep.holds
    assert rep.witness.elements == (0,)


# -- antitone / involution ---------------------------------------------------


def test_antitone_cases(ex1, fig3):
    assert is_antitone(fig3).holds
    # decided by exhaustive check over all 49 pairs: the ex1 table reverses
    # order even though it is not an involution
    assert is_antitone(ex1).holds
    const_top = OpPoset(ex1.poset, (ex1.poset.top,) * 7)
    assert is_antitone(const_top).holds
    assert not is_involution(const_top).holds


def test_involution_witnesses(ex1, m3):
    rep = is_involution(ex1)
    assert not rep.holds
    assert rep.witness.elements == (ex1.poset.index("a"),)
    a = ex1.poset.index("a")
    assert ex1.prime[ex1.prime[a]] == ex1.poset.index("c")
    rep = is_involution(m3)
    assert not rep.holds
    assert rep.witness.elements == (m3.poset.index("a"),)
    assert is_involution(OpPoset(ex1.poset, tuple(range(7)))).holds


# -- orthomodularity ---------------------------------------------------------


def test_orthomodular_cases(fig3, ex1, benzene):
    assert is_orthomodular(fig3).holds
    rep = is_orthomodular(ex1)
    assert not rep.holds
    assert rep.witness.condition == "double_image_differs"
    rep = is_orthomodular(benzene)
    assert not rep.holds
    p = benzene.poset
    assert rep.witness.elements == (p.index("x"), p.index("z"))
    assert rep.witness.condition == "orthomodular_law_fails"
    # replay: x v (z' v x)' = x v (y v x)' = x v 0 = x != z
    x, z = rep.witness.elements
    j1 = p.join(benzene.prime[z], x)
    assert p.join(x, benzene.prime[j1]) == x != z


def test_orthomodular_implies_orthogonal_on_small_carriers():
    for n in range(1, 5):
        for p in enumerate_posets(n):
            for prime in itertools.product(range(n), repeat=n):
                op = OpPoset(p, prime)
                if is_orthomodular(op).holds:
                    assert is_orthogonal(op).holds
                    assert is_complementation(op).holds
                    assert is_antitone(op).holds
                    assert is_involution(op).holds


# -- modularity and lattice---------------------------------------------------


def test_modular_cases(m3, benzene):
    assert is_modular(m3.poset).holds
    assert not is_modular(benzene.poset).holds
    assert is_modular(two_chain().poset).holds


def test_modular_matches_classical_law_on_lattices(fig3, cube8, pentagon):
    lattices = [fig3.poset, cube8.poset, pentagon.poset]
    for n in range(1, 6):
        lattices.extend(p for p in enumerate_posets(n) if is_lattice(p).holds)
    # six-element carriers: every 211th keeps the sweep under a second
    sample = list(itertools.islice(enumerate_posets(6), 0, None, 211))
    lattices.extend(p for p in sample if is_lattice(p).holds)
    for p in lattices:
        classical = True
        for x in range(p.n):
            for z in range(p.n):
                if not p.le(x, z):
                    continue
                for y in range(p.n):
                    if p.meet(p.join(x, y), z) != p.join(x, p.meet(y, z)):
                        classical = False
        assert is_modular(p).holds == classical


def test_lattice_cases(ex1, fig3):
    rep = is_lattice(ex1.poset)
    assert not rep.holds
    assert rep.witness.elements == (ex1.poset.index("a"), ex1.poset.index("b"))
    assert is_lattice(fig3.poset).holds
    chain = Poset.from_covers(("0", "m", "1"), [(0, 1), (1, 2)])
    assert is_lattice(chain).holds
