"""Exhaustive generation of small posets and unary operations.

Bounded posets are generated directly as bottom x top x (arbitrary poset on
the remaining elements), which is exactly the labeled bounded posets; the
unrestricted stream comes from the relation kernels. Both are deterministic,
duplicate-free and cross-checked against the naive filters in tests.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import kernels
from .poset_core import OpPoset, Poset, PosetError, iter_mask
from .properties import (
    PROPERTY_NAMES,
    is_antitone,
    is_complementation,
    is_involution,
    is_lattice,
    is_modular,
    is_orthogonal,
    is_orthomodular,
    is_saturated,
)

MAX_BOUNDED_N = 8

SEARCH_FLAGS = PROPERTY_NAMES + ("total", "a1", "a2", "adjoint")

UNARY_FILTERS = ("all", "complementations", "orthogonal_complementations")


def enumerate_relations(n: int, backend: str | None = None) -> Iterator[tuple[int, ...]]:
    """Up-row tuples of every labeled poset on n elements, each exactly once."""
    for code in kernels.relation_codes(n, backend=backend):
        yield kernels.decode_relation(int(code), n)


def _default_names(n: int) -> list[str]:
    return [f"p{i}" for i in range(n)]


def enumerate_posets(n: int, backend: str | None = None) -> Iterator[Poset]:
    """Every labeled *bounded* poset on n elements, as Poset values."""
    if not (1 <= n <= MAX_BOUNDED_N):
        raise PosetError(f"bounded enumeration supports 1 <= n <= {MAX_BOUNDED_N}")
    names = _default_names(n)
    if n == 1:
        yield Poset(names, (1,))
        return
    m = n - 2
    codes = [0] if m == 0 else [int(c) for c in kernels.relation_codes(m, backend=backend)]
    full = (1 << n) - 1
    for bottom in range(n):
        for top in range(n):
            if top == bottom:
                continue
            mids = [i for i in range(n) if i not in (bottom, top)]
            for code in codes:
                rows = [0] * n
                rows[bottom] = full
                rows[top] = 1 << top
                for k, el in enumerate(mids):
                    row = (1 << el) | (1 << top)
                    rel_row = (code >> (k * m)) & ((1 << m) - 1)
                    for j in iter_mask(rel_row):
                        row |= 1 << mids[j]
                    rows[el] = row
                yield Poset(names, rows)


def complement_candidates(p: Poset) -> list[list[int]]:
    """Per element, the ascending list of its complements."""
    out = []
    for x in range(p.n):
        out.append(
            [
                y
                for y in range(p.n)
                if p.join(x, y) == p.top and p.meet(x, y) == p.bottom
            ]
        )
    return out


def enumerate_unary_ops(p: Poset, which: str = "all") -> Iterator[OpPoset]:
    """All unary maps on a carrier, optionally filtered.

    "complementations" walks only the maps sending every element to one of
    its complements; "orthogonal_complementations" additionally filters by
    the orthogonality decider.
    """
    if which not in UNARY_FILTERS:
        raise PosetError(f"unknown unary filter {which!r}")
    if which == "all":
        for prime in itertools.product(range(p.n), repeat=p.n):
            yield OpPoset(p, prime)
        return
    candidates = complement_candidates(p)
    if any(not c for c in candidates):
        return
    for prime in itertools.product(*candidates):
        op = OpPoset(p, prime)
        if which == "complementations" or is_orthogonal(op).holds:
            yield op


@dataclass(frozen=True)
class SearchGoal:
    """What to hunt for: required flags, forbidden flags, carrier bound."""

    require: frozenset = field(default_factory=frozenset)
    forbid: frozenset = field(default_factory=frozenset)
    max_n: int = 5
    limit: Optional[int] = None
    seed: int = 0
    map_samples: int = 512

    def __post_init__(self):
        req = frozenset(self.require)
        forb = frozenset(self.forbid)
        object.__setattr__(self, "require", req)
        object.__setattr__(self, "forbid", forb)
        unknown = (req | forb) - set(SEARCH_FLAGS)
        if unknown:
            raise PosetError(f"unknown search flags: {', '.join(sorted(unknown))}")
        if req & forb:
            raise PosetError("require and forbid overlap")
        if not (1 <= self.max_n <= MAX_BOUNDED_N):
            raise PosetError(f"max_n must be between 1 and {MAX_BOUNDED_N}")


def instance_flag_map(op: OpPoset) -> dict[str, bool]:
    """Flag values for one instance, recomputed from scratch with the core
    deciders (the slow, witness-producing route). Used to replay search hits."""
    p = op.poset
    from .adjoint import check_a1, check_a2  # local import to avoid a cycle
    from .sasaki import is_sasaki_total

    flags = {
        "saturated": is_saturated(p).holds,
        "modular": is_modular(p).holds,
        "lattice": is_lattice(p).holds,
        "orthogonal": is_orthogonal(op).holds,
        "complemented": is_complementation(op).holds,
        "antitone": is_antitone(op).holds,
        "involution": is_involution(op).holds,
        "orthomodular": is_orthomodular(op).holds,
        "total": is_sasaki_total(op),
    }
    if flags["total"]:
        a1 = check_a1(op)[0]
        a2 = check_a2(op)[0]
    else:
        a1 = a2 = False
    flags["a1"] = a1
    flags["a2"] = a2
    flags["adjoint"] = a1 and a2
    return flags


def _kernel_flag_map(poset_flags: dict[str, bool], bits: int) -> dict[str, bool]:
    a1 = bool(bits & kernels.FLAG_A1)
    a2 = bool(bits & kernels.FLAG_A2)
    return {
        **poset_flags,
        "orthogonal": bool(bits & kernels.FLAG_ORTHOGONAL),
        "complemented": bool(bits & kernels.FLAG_COMPLEMENTED),
        "antitone": bool(bits & kernels.FLAG_ANTITONE),
        "involution": bool(bits & kernels.FLAG_INVOLUTION),
        "orthomodular": bool(bits & kernels.FLAG_ORTHOMODULAR),
        "total": bool(bits & kernels.FLAG_TOTAL),
        "a1": a1,
        "a2": a2,
        "adjoint": a1 and a2,
    }


def _goal_maps(p: Poset, goal: SearchGoal, poset_index: int):
    if "complemented" in goal.require:
        candidates = complement_candidates(p)
        if any(not c for c in candidates):
            return
        for prime in itertools.product(*candidates):
            yield prime
        return
    if p.n <= 4:
        yield from itertools.product(range(p.n), repeat=p.n)
        return
    rng = random.Random(f"{goal.seed}:{p.n}:{poset_index}")
    seen = set()
    budget = min(p.n ** p.n, goal.map_samples)
    while len(seen) < budget:
        prime = tuple(rng.randrange(p.n) for _ in range(p.n))
        if prime not in seen:
            seen.add(prime)
            yield prime


def search(goal: SearchGoal, backend: str | None = None) -> Iterator[OpPoset]:
    """Stream instances matching the goal, smallest carriers first.

    Flags a1/a2/adjoint are False wherever the operations are not total
    (nothing to be adjoint about). Complementation maps are enumerated
    exhaustively when the goal requires "complemented"; otherwise all maps
    for n <= 4 and a seeded sample per poset above that.
    """
    found = 0
    poset_level = {"saturated", "modular", "lattice"}
    for n in range(1, goal.max_n + 1):
        for idx, p in enumerate(enumerate_posets(n, backend=backend)):
            poset_flags = {
                "saturated": is_saturated(p).holds,
                "modular": is_modular(p).holds,
                "lattice": is_lattice(p).holds,
            }
            if any(not poset_flags[f] for f in goal.require & poset_level):
                continue
            if any(poset_flags[f] for f in goal.forbid & poset_level):
                continue
            packed = kernels.pack_poset(p)
            for prime in _goal_maps(p, goal, idx):
                bits = kernels.instance_flags(packed, prime, backend=backend)
                flags = _kernel_flag_map(poset_flags, bits)
                if all(flags[f] for f in goal.require) and not any(
                    flags[f] for f in goal.forbid
                ):
                    yield OpPoset(p, prime)
                    found += 1
                    if goal.limit is not None and found >= goal.limit:
                        return


def canonical_form(p: Poset) -> tuple[int, ...]:
    """Label-independent key: equal exactly for isomorphic posets.

    Iterated degree/level refinement narrows the permutation classes, then
    the minimal relabeled row tuple over class-respecting permutations is
    taken. The key is itself a relabeled copy of the order, so equal keys
    imply isomorphism; refinement invariance gives the converse.
    """
    n = p.n
    strict_up = [p.up[i] & ~(1 << i) for i in range(n)]
    strict_down = [p.down[i] & ~(1 << i) for i in range(n)]
    ranks = _rank(
        [(bin(p.down[i]).count("1"), bin(p.up[i]).count("1")) for i in range(n)]
    )
    for _ in range(n):
        sig = [
            (
                ranks[i],
                tuple(sorted(ranks[j] for j in iter_mask(strict_down[i]))),
                tuple(sorted(ranks[j] for j in iter_mask(strict_up[i]))),
            )
            for i in range(n)
        ]
        new = _rank(sig)
        if new == ranks:
            break
        ranks = new
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(ranks[i], []).append(i)
    ordered_classes = [classes[r] for r in sorted(classes)]
    best = None
    for combo in itertools.product(
        *(itertools.permutations(c) for c in ordered_classes)
    ):
        order = [el for group in combo for el in group]
        perm = [0] * n
        for pos, el in enumerate(order):
            perm[el] = pos
        rows = [0] * n
        for i in range(n):
            row = 0
            for j in iter_mask(p.up[i]):
                row |= 1 << perm[j]
            rows[perm[i]] = row
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


def _rank(values) -> list[int]:
    order = {v: k for k, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]
