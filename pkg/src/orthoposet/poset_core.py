"""Finite bounded posets with bitmask subset arithmetic.

Elements are dense indices 0..n-1; labels exist only at the I/O boundary.
A subset of the carrier is a plain int used as a bitmask, so every bound
operator is a couple of word operations. The carrier is capped so one
machine word always suffices.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

CARRIER_CAP = 64


class PosetError(ValueError):
    """Structurally invalid poset, document or argument."""


class UndefinedOperationError(PosetError):
    """A meet or join required by a set-valued operation does not exist.

    Carries the offending pair so callers can explain *why* an operation
    table could not be built (typically: the poset is not orthogonal).
    """

    def __init__(self, kind: str, left: int, right: int, poset: "Poset | None" = None):
        self.kind = kind
        self.left = left
        self.right = right
        if poset is not None:
            pair = f"{poset.names[left]}, {poset.names[right]}"
        else:
            pair = f"#{left}, #{right}"
        super().__init__(f"undefined {kind} of ({pair})")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def iter_mask(mask: int) -> Iterator[int]:
    """Ascending element indices of a subset mask."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def indices_of(mask: int) -> tuple[int, ...]:
    return tuple(iter_mask(mask))


class Poset:
    """Finite bounded poset.

    ``up[i]`` is the mask of all j with i <= j (including i itself) and
    ``down[i]`` the mask of all j with j <= i. The constructor validates
    reflexivity, antisymmetry, transitivity and the existence of a least
    and greatest element.
    """

    __slots__ = ("names", "n", "up", "down", "bottom", "top", "full", "_index")

    def __init__(self, names: Sequence[str], up_rows: Sequence[int]):
        names = tuple(names)
        up = tuple(int(r) for r in up_rows)
        n = len(names)
        if n < 1:
            raise PosetError("a poset needs at least one element")
        if n > CARRIER_CAP:
            raise PosetError(f"carrier size {n} exceeds cap {CARRIER_CAP}")
        if len(up) != n:
            raise PosetError("order relation size does not match element count")
        if any(not isinstance(s, str) or not s for s in names):
            raise PosetError("element names must be nonempty strings")
        if len(set(names)) != n:
            raise PosetError("element names must be unique")
        full = (1 << n) - 1
        down = [0] * n
        for i, row in enumerate(up):
            if row & ~full:
                raise PosetError(f"row {i} references elements outside the carrier")
            if not (row >> i) & 1:
                raise PosetError(f"order is not reflexive at {names[i]}")
            for j in iter_mask(row):
                down[j] |= 1 << i
        for i in range(n):
            for j in iter_mask(up[i]):
                if i != j and (up[j] >> i) & 1:
                    raise PosetError(f"order is not antisymmetric on {names[i]}, {names[j]}")
                if up[j] & ~up[i]:
                    raise PosetError(f"order is not transitive at {names[i]} <= {names[j]}")
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if down[i] == full]
        if not bottoms:
            raise PosetError("poset has no least element")
        if not tops:
            raise PosetError("poset has no greatest element")
        self.names = names
        self.n = n
        self.up = up
        self.down = tuple(down)
        self.bottom = bottoms[0]
        self.top = tops[0]
        self.full = full
        self._index = {s: i for i, s in enumerate(names)}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_le(cls, names: Sequence[str], le) -> "Poset":
        """Build from an n x n truth matrix with le[i][j] meaning i <= j."""
        rows = [mask_of(j for j, v in enumerate(r) if v) for r in le]
        return cls(names, rows)

    @classmethod
    def from_covers(cls, names: Sequence[str], covers: Iterable[tuple[int, int]]) -> "Poset":
        """Build from cover pairs (i, j) meaning i < j; computes the closure."""
        n = len(names)
        up = [1 << i for i in range(n)]
        edges = [[] for _ in range(n)]
        for i, j in covers:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError(f"cover ({i}, {j}) outside the carrier")
            edges[i].append(j)
        # reflexive-transitive closure by repeated row union
        changed = True
        while changed:
            changed = False
            for i in range(n):
                row = up[i]
                for j in edges[i]:
                    row |= up[j]
                if row != up[i]:
                    up[i] = row
                    changed = True
        return cls(names, up)

    # -- element and subset plumbing --------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PosetError(f"unknown element {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        return mask_of(self.index(s) for s in names)

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in iter_mask(mask))

    def le(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    # -- bound operators ---------------------------------------------------

    def lower_bounds(self, mask: int) -> int:
        """Common lower bounds; the full carrier for the empty subset."""
        out = self.full
        for i in iter_mask(mask):
            out &= self.down[i]
        return out

    def upper_bounds(self, mask: int) -> int:
        out = self.full
        for i in iter_mask(mask):
            out &= self.up[i]
        return out

    def maximal(self, mask: int) -> int:
        """Elements of the subset with nothing of the subset strictly above."""
        out = 0
        for i in iter_mask(mask):
            if not (self.up[i] & mask & ~(1 << i)):
                out |= 1 << i
        return out

    def minimal(self, mask: int) -> int:
        out = 0
        for i in iter_mask(mask):
            if not (self.down[i] & mask & ~(1 << i)):
                out |= 1 << i
        return out

    # -- set comparisons ---------------------------------------------------

    def leq_sets(self, a: int, b: int) -> bool:
        """Every element of a below every element of b (vacuous on empties)."""
        return all(b & ~self.up[i] == 0 for i in iter_mask(a))

    def leq1(self, a: int, b: int) -> bool:
        """Every element of a has an upper bound in b."""
        return all(self.up[i] & b for i in iter_mask(a))

    def leq2(self, a: int, b: int) -> bool:
        """Every element of b has a lower bound in a."""
        return all(self.down[j] & a for j in iter_mask(b))

    # -- partial lattice operations ----------------------------------------

    def join(self, x: int, y: int) -> Optional[int]:
        """Least upper bound, or None when no unique one exists."""
        mins = self.minimal(self.up[x] & self.up[y])
        if mins and mins == mins & -mins:
            return mins.bit_length() - 1
        return None

    def meet(self, x: int, y: int) -> Optional[int]:
        maxs = self.maximal(self.down[x] & self.down[y])
        if maxs and maxs == maxs & -maxs:
            return maxs.bit_length() - 1
        return None

    def interval(self, a: int, b: int) -> int:
        if not self.le(a, b):
            raise PosetError(f"interval requires {self.names[a]} <= {self.names[b]}")
        return self.up[a] & self.down[b]

    # -- structure ----------------------------------------------------------

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (i, j), i.e. the transitive reduction of the order."""
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in iter_mask(strict):
                between = strict & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """New poset with element i renamed to position perm[i]."""
        n = self.n
        names = [""] * n
        rows = [0] * n
        for i in range(n):
            names[perm[i]] = self.names[i]
            row = 0
            for j in iter_mask(self.up[i]):
                row |= 1 << perm[j]
            rows[perm[i]] = row
        return Poset(names, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poset)
            and self.names == other.names
            and self.up == other.up
        )

    def __hash__(self) -> int:
        return hash((self.names, self.up))

    def __repr__(self) -> str:
        return f"Poset({len(self.names)} elements: {', '.join(self.names)})"


class OpPoset:
    """A bounded poset together with a total unary operation on its carrier.

    No law is assumed of the operation; being a complementation, antitone,
    an involution etc. are properties to be checked, never presumed.
    """

    __slots__ = ("poset", "prime")

    def __init__(self, poset: Poset, prime: Sequence[int]):
        prime = tuple(int(v) for v in prime)
        if len(prime) != poset.n:
            raise PosetError("unary operation must be total")
        if any(not (0 <= v < poset.n) for v in prime):
            raise PosetError("unary operation maps outside the carrier")
        self.poset = poset
        self.prime = prime

    @classmethod
    def from_named_map(cls, poset: Poset, mapping: dict[str, str]) -> "OpPoset":
        prime = [-1] * poset.n
        for src, dst in mapping.items():
            prime[poset.index(src)] = poset.index(dst)
        if any(v < 0 for v in prime):
            missing = [poset.names[i] for i, v in enumerate(prime) if v < 0]
            raise PosetError(f"unary operation is partial; missing {', '.join(missing)}")
        return cls(poset, prime)

    def prime_mask(self, mask: int) -> int:
        """Image of a subset under the unary operation."""
        return mask_of(self.prime[i] for i in iter_mask(mask))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OpPoset)
            and self.poset == other.poset
            and self.prime == other.prime
        )

    def __hash__(self) -> int:
        return hash((self.poset, self.prime))

    def __repr__(self) -> str:
        pairs = ", ".join(
            f"{self.poset.names[i]}->{self.poset.names[v]}" for i, v in enumerate(self.prime)
        )
        return f"OpPoset({pairs})"
