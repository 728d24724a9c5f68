"""Set-valued projection operators and the operations they induce.

For a parameter a, the projection of x is the set of meets m ^ a over the
minimal upper bounds m of {x, a'}; its dual joins a' onto the maximal lower
bounds of {a, x}. The induced binary operations are

    x (.) y  =  {m ^ y  : m minimal in U(x, y')}
    x (->) y =  {x' v m : m maximal in L(x, y)}

Results are raw deduplicated subsets (never re-reduced to antichains): the
comparison machinery downstream quantifies over their members directly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .poset_core import OpPoset, Poset, PosetError, UndefinedOperationError, iter_mask
from .properties import PropertyReport, Witness, is_orthomodular


@dataclass(frozen=True)
class OpTable:
    """Full n x n table of one set-valued operation; cells are subset masks."""

    kind: str  # "odot" or "arrow"
    poset: Poset
    cells: tuple[tuple[int, ...], ...]

    def cell(self, x: int, y: int) -> int:
        return self.cells[x][y]


def odot(op: OpPoset, x: int, y: int) -> int:
    """x (.) y as a subset mask; raises if a needed meet is missing."""
    p = op.poset
    out = 0
    for m in iter_mask(p.minimal(p.up[x] & p.up[op.prime[y]])):
        w = p.meet(m, y)
        if w is None:
            raise UndefinedOperationError("meet", m, y, p)
        out |= 1 << w
    return out


def arrow(op: OpPoset, x: int, y: int) -> int:
    """x (->) y as a subset mask; raises if a needed join is missing."""
    p = op.poset
    px = op.prime[x]
    out = 0
    for m in iter_mask(p.maximal(p.down[x] & p.down[y])):
        w = p.join(px, m)
        if w is None:
            raise UndefinedOperationError("join", px, m, p)
        out |= 1 << w
    return out


def sasaki_proj(op: OpPoset, a: int, x: int) -> int:
    """Projection of x into the segment below a; equals x (.) a."""
    return odot(op, x, a)


def sasaki_proj_dual(op: OpPoset, a: int, x: int) -> int:
    """Dual projection of x above a'; equals a (->) x."""
    return arrow(op, a, x)


def sasaki_proj_set(op: OpPoset, a: int, subset: int) -> int:
    """Union of the projections of the subset's members; empty on empty."""
    out = 0
    for x in iter_mask(subset):
        out |= sasaki_proj(op, a, x)
    return out


def sasaki_proj_dual_set(op: OpPoset, a: int, subset: int) -> int:
    out = 0
    for x in iter_mask(subset):
        out |= sasaki_proj_dual(op, a, x)
    return out


def is_sasaki_total(op: OpPoset) -> bool:
    """True when every cell of both operation tables has all bounds defined."""
    p = op.poset
    for x in range(p.n):
        for y in range(p.n):
            for m in iter_mask(p.minimal(p.up[x] & p.up[op.prime[y]])):
                if p.meet(m, y) is None:
                    return False
            for m in iter_mask(p.maximal(p.down[x] & p.down[y])):
                if p.join(op.prime[x], m) is None:
                    return False
    return True


def op_tables(op: OpPoset) -> tuple[OpTable, OpTable]:
    p = op.poset
    ocells = tuple(tuple(odot(op, x, y) for y in range(p.n)) for x in range(p.n))
    acells = tuple(tuple(arrow(op, x, y) for y in range(p.n)) for x in range(p.n))
    return OpTable("odot", p, ocells), OpTable("arrow", p, acells)


def check_unit_identities(op: OpPoset) -> PropertyReport:
    """Boundary behaviour of both operations on any bounded carrier.

    top (.) x = {x}; bottom (->) x = {bottom'}; x (->) bottom = {x'};
    x (.) bottom = {bottom}. All four are total on bounded posets.
    """
    p = op.poset
    for x in range(p.n):
        if odot(op, p.top, x) != 1 << x:
            return PropertyReport(
                "unit_identities", False, Witness((x,), "top_odot_not_identity")
            )
        if arrow(op, p.bottom, x) != 1 << op.prime[p.bottom]:
            return PropertyReport(
                "unit_identities", False, Witness((x,), "bottom_arrow_not_constant")
            )
        if arrow(op, x, p.bottom) != 1 << op.prime[x]:
            return PropertyReport(
                "unit_identities", False, Witness((x,), "arrow_to_bottom_not_complement")
            )
        if odot(op, x, p.bottom) != 1 << p.bottom:
            return PropertyReport(
                "unit_identities", False, Witness((x,), "odot_bottom_not_annihilating")
            )
    return PropertyReport("unit_identities", True)


def _sample_subsets(p: Poset, exhaustive: bool) -> list[int]:
    if exhaustive:
        if p.n > 10:
            raise PosetError(f"exhaustive subset sweep limited to 10 elements, got {p.n}")
        return list(range(p.full + 1))
    subsets = [0]
    subsets += [1 << i for i in range(p.n)]
    subsets += [
        (1 << i) | (1 << j) for i in range(p.n) for j in range(i + 1, p.n)
    ]
    if p.full not in subsets:
        subsets.append(p.full)
    return subsets


def check_projection_laws(op: OpPoset, exhaustive: bool = False) -> PropertyReport:
    """Projection behaviour over a deterministic subset sample.

    For every parameter a and sampled subsets: the projection lands in the
    segment [bottom, a]; the top projects to {a}; projecting preserves the
    lower-cover comparison. On orthomodular carriers additionally: a'
    projects to {bottom}, the segment is fixed pointwise, and projecting is
    idempotent. The sample is all subsets of size <= 2 plus the full
    carrier (all 2^n subsets with exhaustive=True, n <= 10).
    """
    p = op.poset
    subsets = _sample_subsets(p, exhaustive)
    omod = is_orthomodular(op).holds
    for a in range(p.n):
        seg = p.down[a]
        if sasaki_proj(op, a, p.top) != 1 << a:
            return PropertyReport(
                "projection_laws", False, Witness((a,), "top_not_sent_to_parameter")
            )
        images = [sasaki_proj_set(op, a, s) for s in subsets]
        for s, img in zip(subsets, images):
            if img & ~seg:
                return PropertyReport(
                    "projection_laws",
                    False,
                    Witness((a,), "image_escapes_segment", f"subset {p.names_of(s)}"),
                )
        for ia, sa in enumerate(subsets):
            for ib, sb in enumerate(subsets):
                if p.leq2(sa, sb) and not p.leq2(images[ia], images[ib]):
                    return PropertyReport(
                        "projection_laws",
                        False,
                        Witness(
                            (a,),
                            "leq2_not_preserved",
                            f"subsets {p.names_of(sa)} vs {p.names_of(sb)}",
                        ),
                    )
        if omod:
            if sasaki_proj(op, a, op.prime[a]) != 1 << p.bottom:
                return PropertyReport(
                    "projection_laws", False, Witness((a,), "complement_not_annihilated")
                )
            for x in iter_mask(seg):
                if sasaki_proj(op, a, x) != 1 << x:
                    return PropertyReport(
                        "projection_laws", False, Witness((a, x), "segment_not_fixed")
                    )
            for s, img in zip(subsets, images):
                if sasaki_proj_set(op, a, img) != img:
                    return PropertyReport(
                        "projection_laws",
                        False,
                        Witness((a,), "not_idempotent", f"subset {p.names_of(s)}"),
                    )
    return PropertyReport("projection_laws", True)
