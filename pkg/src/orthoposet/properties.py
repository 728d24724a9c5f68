"""Decision procedures for the structural properties a carrier may enjoy.

Every decider returns a PropertyReport; a failed check always carries a
replayable witness (the lexicographically first violating tuple).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .poset_core import OpPoset, Poset, iter_mask

PROPERTY_NAMES = (
    "saturated",
    "orthogonal",
    "complemented",
    "antitone",
    "involution",
    "orthomodular",
    "modular",
    "lattice",
)


@dataclass(frozen=True)
class Witness:
    """Element tuple falsifying a named clause of a property."""

    elements: tuple[int, ...]
    condition: str
    detail: str = ""


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, poset: Poset) -> str:
        if self.holds:
            return f"{self.property}: true"
        w = self.witness
        names = ", ".join(poset.names[i] for i in w.elements)
        extra = f" {w.detail}" if w.detail else ""
        return f"{self.property}: false  [witness ({names}): {w.condition}{extra}]"


def _fail(prop: str, elements: tuple[int, ...], condition: str, detail: str = "") -> PropertyReport:
    return PropertyReport(prop, False, Witness(elements, condition, detail))


def is_saturated(p: Poset) -> PropertyReport:
    """Every lower bound of a pair sits below a maximal lower bound; dually.

    Holds for every finite poset, so this literal check doubles as a
    self-test of the bound machinery.
    """
    for x in range(p.n):
        for y in range(p.n):
            lows = p.down[x] & p.down[y]
            maxs = p.maximal(lows)
            for z in iter_mask(lows):
                if not p.up[z] & maxs:
                    return _fail("saturated", (x, y, z), "lower_bound_above_no_maximal")
            ups = p.up[x] & p.up[y]
            mins = p.minimal(ups)
            for z in iter_mask(ups):
                if not p.down[z] & mins:
                    return _fail("saturated", (x, y, z), "upper_bound_below_no_minimal")
    return PropertyReport("saturated", True)


def is_orthogonal(op: OpPoset) -> PropertyReport:
    """a <= b forces the join a v b' to exist; a' <= b forces the meet a ^ b."""
    p = op.poset
    for a in range(p.n):
        pa = op.prime[a]
        for b in range(p.n):
            if p.le(a, b) and p.join(a, op.prime[b]) is None:
                return _fail("orthogonal", (a, b), "join_with_complement_undefined")
            if p.le(pa, b) and p.meet(a, b) is None:
                return _fail("orthogonal", (a, b), "meet_undefined")
    return PropertyReport("orthogonal", True)


def is_complementation(op: OpPoset) -> PropertyReport:
    """x v x' is the top and x ^ x' the bottom, both defined, for every x."""
    p = op.poset
    for x in range(p.n):
        px = op.prime[x]
        if p.join(x, px) != p.top:
            return _fail("complemented", (x,), "join_with_image_not_top")
        if p.meet(x, px) != p.bottom:
            return _fail("complemented", (x,), "meet_with_image_not_bottom")
    return PropertyReport("complemented", True)


def is_antitone(op: OpPoset) -> PropertyReport:
    p = op.poset
    for x in range(p.n):
        for y in iter_mask(p.up[x]):
            if not p.le(op.prime[y], op.prime[x]):
                return _fail("antitone", (x, y), "order_not_reversed")
    return PropertyReport("antitone", True)


def is_involution(op: OpPoset) -> PropertyReport:
    for x in range(op.poset.n):
        if op.prime[op.prime[x]] != x:
            return _fail("involution", (x,), "double_image_differs")
    return PropertyReport("involution", True)


def is_orthomodular(op: OpPoset) -> PropertyReport:
    """Antitone involutive complementation plus x <= y => y = x v (y' v x)'."""
    p = op.poset
    for sub in (is_involution(op), is_antitone(op), is_complementation(op)):
        if not sub.holds:
            return PropertyReport("orthomodular", False, sub.witness)
    for x in range(p.n):
        for y in iter_mask(p.up[x]):
            j1 = p.join(op.prime[y], x)
            if j1 is None:
                return _fail("orthomodular", (x, y), "complement_join_undefined")
            j2 = p.join(x, op.prime[j1])
            if j2 is None:
                return _fail("orthomodular", (x, y), "law_join_undefined")
            if j2 != y:
                return _fail("orthomodular", (x, y), "orthomodular_law_fails")
    return PropertyReport("orthomodular", True)


def is_modular(p: Poset) -> PropertyReport:
    """For x <= z: common lower bounds of U(x,y) and z match those of U(x, L(y,z))."""
    for x in range(p.n):
        for y in range(p.n):
            for z in iter_mask(p.up[x]):
                lhs = p.lower_bounds(p.upper_bounds((1 << x) | (1 << y)) | (1 << z))
                rhs = p.lower_bounds(
                    p.upper_bounds((1 << x) | p.lower_bounds((1 << y) | (1 << z)))
                )
                if lhs != rhs:
                    return _fail("modular", (x, y, z), "modular_law_fails")
    return PropertyReport("modular", True)


def is_lattice(p: Poset) -> PropertyReport:
    for x in range(p.n):
        for y in range(x + 1, p.n):
            if p.join(x, y) is None:
                return _fail("lattice", (x, y), "join_undefined")
            if p.meet(x, y) is None:
                return _fail("lattice", (x, y), "meet_undefined")
    return PropertyReport("lattice", True)


def poset_reports(p: Poset) -> dict[str, PropertyReport]:
    """The property profile that needs no unary operation."""
    return {
        "saturated": is_saturated(p),
        "modular": is_modular(p),
        "lattice": is_lattice(p),
    }


def op_reports(op: OpPoset) -> dict[str, PropertyReport]:
    """Full property profile in canonical order."""
    reports = {
        "saturated": is_saturated(op.poset),
        "orthogonal": is_orthogonal(op),
        "complemented": is_complementation(op),
        "antitone": is_antitone(op),
        "involution": is_involution(op),
        "orthomodular": is_orthomodular(op),
        "modular": is_modular(op.poset),
        "lattice": is_lattice(op.poset),
    }
    return reports
