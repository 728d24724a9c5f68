import itertools
import random

import numpy as np
import pytest

from orthoposet import kernels
from orthoposet.adjoint import is_adjoint_pair
from orthoposet.enumeration import enumerate_posets, instance_flag_map
from orthoposet.poset_core import OpPoset, PosetError

BACKENDS = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])

CORE_FLAGS = (
    ("orthogonal", kernels.FLAG_ORTHOGONAL),
    ("total", kernels.FLAG_TOTAL),
    ("complemented", kernels.FLAG_COMPLEMENTED),
    ("antitone", kernels.FLAG_ANTITONE),
    ("involution", kernels.FLAG_INVOLUTION),
    ("orthomodular", kernels.FLAG_ORTHOMODULAR),
    ("a1", kernels.FLAG_A1),
    ("a2", kernels.FLAG_A2),
)


def test_active_backend_is_valid():
    assert kernels.active_backend() in ("numba", "numpy")


def test_unknown_backend_rejected(ex1):
    packed = kernels.pack_poset(ex1.poset)
    with pytest.raises(PosetError, match="backend"):
        kernels.instance_flags(packed, ex1.prime, backend="fortran")


def test_pack_poset_tables(ex1):
    p = ex1.poset
    packed = kernels.pack_poset(p)
    assert packed.n == p.n
    assert packed.bottom == p.bottom and packed.top == p.top
    for i in range(p.n):
        for j in range(p.n):
            assert bool(packed.le[i, j]) == p.le(i, j)
            assert packed.join_idx[i, j] == (p.join(i, j) if p.join(i, j) is not None else -1)
            assert packed.meet_idx[i, j] == (p.meet(i, j) if p.meet(i, j) is not None else -1)


@pytest.mark.parametrize("backend", BACKENDS)
def test_flags_match_core_deciders(backend):
    rng = random.Random(3)
    for n in range(1, 5):
        for p in enumerate_posets(n):
            packed = kernels.pack_poset(p)
            if n <= 3:
                maps = list(itertools.product(range(n), repeat=n))
            else:
                maps = [tuple(rng.randrange(n) for _ in range(n)) for _ in range(12)]
            for prime in maps:
                bits = kernels.instance_flags(packed, prime, backend=backend)
                op = OpPoset(p, prime)
                core = instance_flag_map(op)
                for name, flag in CORE_FLAGS:
                    assert bool(bits & flag) == core[name], (n, prime, name, backend)
                if core["orthogonal"]:
                    rep = is_adjoint_pair(op)
                    for key, flag in kernels.CONDITION_FLAGS:
                        assert bool(bits & flag) == rep.conditions[key], (n, prime, key)


def test_flags_on_fixtures_both_backends(fixture_ops):
    for name, op in fixture_ops.items():
        packed = kernels.pack_poset(op.poset)
        results = {b: kernels.instance_flags(packed, op.prime, backend=b) for b in BACKENDS}
        assert len(set(results.values())) == 1, (name, results)


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not importable")
def test_backends_agree_on_relation_codes():
    for n in range(1, 6):
        a = kernels.relation_codes(n, backend="numba")
        b = kernels.relation_codes(n, backend="numpy")
        assert list(a) == list(b)


def test_relation_codes_counts_and_caps():
    assert len(kernels.relation_codes(4)) == 219
    with pytest.raises(PosetError, match="enumeration"):
        kernels.relation_codes(7)
    with pytest.raises(PosetError, match="enumeration"):
        kernels.relation_codes(0)


def test_decode_relation_roundtrip():
    for n in range(1, 5):
        for code in kernels.relation_codes(n):
            rows = kernels.decode_relation(int(code), n)
            packed = 0
            for i, row in enumerate(rows):
                packed |= row << (i * n)
            assert packed == int(code)


def test_prime_shape_validation(ex1):
    packed = kernels.pack_poset(ex1.poset)
    with pytest.raises(PosetError, match="carrier"):
        kernels.instance_flags(packed, (0, 1))


def test_pack_poset_word_width_guard():
    from orthoposet.poset_core import Poset

    names = tuple(f"e{i}" for i in range(63))
    chain = Poset.from_covers(names, [(i, i + 1) for i in range(62)])
    with pytest.raises(PosetError, match="62"):
        kernels.pack_poset(chain)


def test_flags_gate_on_totality(butterfly):
    packed = kernels.pack_poset(butterfly.poset)
    bits = kernels.instance_flags(packed, butterfly.prime)
    assert not bits & kernels.FLAG_ORTHOGONAL
    assert not bits & kernels.FLAG_TOTAL
    # direction and condition bits stay unset when the operations are partial
    for _, flag in kernels.CONDITION_FLAGS:
        assert not bits & flag
    assert not bits & kernels.FLAG_A1 and not bits & kernels.FLAG_A2
