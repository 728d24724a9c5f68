"""Adjointness of the two set-valued operations and its characterizations.

The pair is adjoint when both directions hold for all x, y, z:

    (a1)  x (.) y lower-covers {z}   implies  {x} upper-covered by y (->) z
    (a2)  the converse implication

Six two-variable conditions are each equivalent to one direction; their
keys i..vi follow the report schema. All witnesses are lexicographically
first and replayable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .poset_core import OpPoset, PosetError, iter_mask
from .properties import (
    PropertyReport,
    Witness,
    is_complementation,
    is_lattice,
    is_modular,
    is_orthogonal,
)
from .sasaki import arrow, odot, op_tables

CONDITION_KEYS = ("i", "ii", "iii", "iv", "v", "vi")


@dataclass(frozen=True)
class AdjointReport:
    a1: bool
    a2: bool
    a1_witness: Optional[tuple[int, int, int]]
    a2_witness: Optional[tuple[int, int, int]]
    conditions: dict[str, bool]
    condition_witnesses: dict[str, Optional[tuple[int, ...]]]

    @property
    def adjoint(self) -> bool:
        return self.a1 and self.a2


def _tables(op: OpPoset):
    ot, at = op_tables(op)
    return ot.cells, at.cells


def check_a1(op: OpPoset, _cells=None) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """Forward direction; returns (holds, first violating triple)."""
    p = op.poset
    ocells, acells = _cells if _cells is not None else _tables(op)
    for x in range(p.n):
        for y in range(p.n):
            for z in range(p.n):
                if ocells[x][y] & p.down[z] and not acells[y][z] & p.up[x]:
                    return False, (x, y, z)
    return True, None


def check_a2(op: OpPoset, _cells=None) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """Backward direction; returns (holds, first violating triple)."""
    p = op.poset
    ocells, acells = _cells if _cells is not None else _tables(op)
    for x in range(p.n):
        for y in range(p.n):
            for z in range(p.n):
                if acells[y][z] & p.up[x] and not ocells[x][y] & p.down[z]:
                    return False, (x, y, z)
    return True, None


def validate_a2_witness(op: OpPoset, triple: tuple[int, int, int]) -> bool:
    """Replay a triple against the backward implication; True if it violates."""
    x, y, z = triple
    p = op.poset
    return bool(arrow(op, y, z) & p.up[x]) and not bool(odot(op, x, y) & p.down[z])


def validate_a1_witness(op: OpPoset, triple: tuple[int, int, int]) -> bool:
    x, y, z = triple
    p = op.poset
    return bool(odot(op, x, y) & p.down[z]) and not bool(arrow(op, y, z) & p.up[x])


def check_condition(op: OpPoset, which: str, _cells=None) -> tuple[bool, Optional[tuple[int, ...]]]:
    """One of the six two-variable conditions, evaluated element-wise.

    Set-valued sides use the same semantics as the operations themselves
    (y' v S means the set of joins of y' with members of S); an undefined
    bound inside a side counts as failure of the condition at that pair.
    """
    p = op.poset
    if which not in CONDITION_KEYS:
        raise PosetError(f"unknown condition {which!r}")
    ocells, acells = _cells if _cells is not None else _tables(op)
    for x in range(p.n):
        for y in range(p.n):
            py = op.prime[y]
            px = op.prime[x]
            if which in ("i", "ii"):
                mins = p.minimal(p.up[x] & p.up[py])
                rhs = 0
                ok = True
                for t in iter_mask(ocells[x][y]):
                    j = p.join(py, t)
                    if j is None:
                        ok = False
                        break
                    rhs |= 1 << j
                if which == "i":
                    if not ok or rhs != mins:
                        return False, (x, y)
                else:
                    if not ok or not p.leq2(mins, rhs):
                        return False, (x, y)
            elif which == "iii":
                if p.le(px, y):
                    m = p.meet(y, x)
                    j = None if m is None else p.join(px, m)
                    if j != y:
                        return False, (x, y)
            elif which in ("iv", "v"):
                maxs = p.maximal(p.down[x] & p.down[y])
                rhs = 0
                ok = True
                for t in iter_mask(acells[x][y]):
                    m = p.meet(x, t)
                    if m is None:
                        ok = False
                        break
                    rhs |= 1 << m
                if which == "iv":
                    if not ok or rhs != maxs:
                        return False, (x, y)
                else:
                    if not ok or not p.leq1(rhs, maxs):
                        return False, (x, y)
            else:  # vi
                if p.le(x, y):
                    j = p.join(py, x)
                    m = None if j is None else p.meet(j, y)
                    if m != x:
                        return False, (x, y)
    return True, None


def is_adjoint_pair(op: OpPoset) -> AdjointReport:
    cells = _tables(op)
    a1, w1 = check_a1(op, cells)
    a2, w2 = check_a2(op, cells)
    conds = {}
    cw = {}
    for key in CONDITION_KEYS:
        holds, wit = check_condition(op, key, cells)
        conds[key] = holds
        cw[key] = wit
    return AdjointReport(a1, a2, w1, w2, conds, cw)


def check_adjointness_consequences(op: OpPoset) -> PropertyReport:
    """What each adjunction direction forces on the unary operation.

    If a1 holds, every x v x' is the top; if a2 holds, every x ^ x' is the
    bottom and x (->) y = {top} exactly when x <= y; if both hold, the
    operation is a complementation.
    """
    p = op.poset
    cells = _tables(op)
    a1, _ = check_a1(op, cells)
    a2, _ = check_a2(op, cells)
    if a1:
        for x in range(p.n):
            if p.join(x, op.prime[x]) != p.top:
                return PropertyReport(
                    "adjointness_consequences", False, Witness((x,), "a1_join_not_top")
                )
    if a2:
        for x in range(p.n):
            if p.meet(x, op.prime[x]) != p.bottom:
                return PropertyReport(
                    "adjointness_consequences", False, Witness((x,), "a2_meet_not_bottom")
                )
        top_mask = 1 << p.top
        for x in range(p.n):
            for y in range(p.n):
                if (cells[1][x][y] == top_mask) != p.le(x, y):
                    return PropertyReport(
                        "adjointness_consequences",
                        False,
                        Witness((x, y), "a2_arrow_top_iff_le_fails"),
                    )
    if a1 and a2 and not is_complementation(op).holds:
        return PropertyReport(
            "adjointness_consequences",
            False,
            Witness((p.bottom,), "adjoint_without_complementation"),
        )
    return PropertyReport("adjointness_consequences", True)


def check_modular_corollary(op: OpPoset) -> PropertyReport:
    """Complemented + orthogonal + modular must grant conditions iii and vi."""
    premise = (
        is_complementation(op).holds
        and is_orthogonal(op).holds
        and is_modular(op.poset).holds
    )
    if not premise:
        return PropertyReport("modular_corollary", True)
    for key in ("iii", "vi"):
        holds, wit = check_condition(op, key)
        if not holds:
            return PropertyReport(
                "modular_corollary", False, Witness(wit, f"condition_{key}_fails")
            )
    return PropertyReport("modular_corollary", True)


def _chain_split(p, quad):
    """Ways to split four elements into two 2-chains (x<z, y<u)."""
    a = quad[0]
    for partner in quad[1:]:
        rest = [e for e in quad if e not in (a, partner)]
        left = (a, partner) if p.lt(a, partner) else (partner, a) if p.lt(partner, a) else None
        r0, r1 = rest
        right = (r0, r1) if p.lt(r0, r1) else (r1, r0) if p.lt(r1, r0) else None
        if left and right:
            yield left, right


def find_o6_subalgebra(op: OpPoset) -> Optional[tuple[int, int, int, int, int, int]]:
    """First six-element benzene-ordered subset closed under join, meet and '.

    Requires a complemented lattice; returns (bottom, x, y, z, u, top) with
    x < z and y < u the two incomparable chains, or None.
    """
    p = op.poset
    lat = is_lattice(p)
    if not lat.holds:
        raise PosetError("O6 search requires a lattice: " + lat.describe(p))
    comp = is_complementation(op)
    if not comp.holds:
        raise PosetError("O6 search requires a complementation: " + comp.describe(p))
    mids = [i for i in range(p.n) if i not in (p.bottom, p.top)]
    for quad in itertools.combinations(mids, 4):
        for (x, z), (y, u) in _chain_split(p, quad):
            if any(
                p.le(s, t) or p.le(t, s)
                for s in (x, z)
                for t in (y, u)
            ):
                continue
            six = {p.bottom, p.top, x, y, z, u}
            if any(op.prime[s] not in six for s in six):
                continue
            closed = True
            for s, t in itertools.combinations(six, 2):
                if p.join(s, t) not in six or p.meet(s, t) not in six:
                    closed = False
                    break
            if closed:
                return (p.bottom, x, y, z, u, p.top)
    return None
