"""Set systems over product universes and their box-shatter combinatorics.

A universe is a product X = X_0 x ... x X_{n-1} of finite parts.  A set
system is a family of subsets of the tuple space of X, each subset stored
as a bit vector over tuples in row-major order.  A box is a product of
equally sized selections A_i, one per part; the system shatters the box
when its trace on the box realizes every subset of the box's tuple grid.
The box dimension of a system is the largest selection size m for which
some box of size m is shattered, and the shatter function records, for
each m, the largest trace a size-m box attains.

Ground families (plain families over an unstructured ground set) support
the element-wise down-shift used to compress a family without increasing
its shatter behaviour.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Iterator, Sequence

from .errors import InputError


@dataclass(frozen=True)
class ProductUniverse:
    """Product of n finite parts, with row-major tuple indexing."""

    part_sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.part_sizes) < 1:
            raise InputError("universe needs at least one part")
        if any(s < 1 for s in self.part_sizes):
            raise InputError("part sizes must be positive")
        object.__setattr__(self, "part_sizes", tuple(int(s) for s in self.part_sizes))

    @property
    def n(self) -> int:
        return len(self.part_sizes)

    @property
    def tuple_count(self) -> int:
        return prod(self.part_sizes)

    def strides(self) -> tuple[int, ...]:
        out = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            out[i] = out[i + 1] * self.part_sizes[i + 1]
        return tuple(out)

    def tuple_index(self, t: Sequence[int]) -> int:
        if len(t) != self.n:
            raise InputError(f"tuple length {len(t)} != {self.n}")
        idx = 0
        for v, size, stride in zip(t, self.part_sizes, self.strides()):
            if not 0 <= v < size:
                raise InputError(f"coordinate {v} out of range for part of size {size}")
            idx += v * stride
        return idx

    def index_tuple(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.tuple_count:
            raise InputError(f"tuple index {idx} out of range")
        out = []
        for stride in self.strides():
            out.append(idx // stride)
            idx %= stride
        return tuple(out)

    def tuples(self) -> Iterator[tuple[int, ...]]:
        """All tuples in row-major (index) order."""
        return product(*(range(s) for s in self.part_sizes))


@dataclass(frozen=True)
class SetSystem:
    """Distinct subsets of a product universe, each a bit vector over tuples."""

    universe: ProductUniverse
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(int(m) for m in self.members))
        limit = 1 << self.universe.tuple_count
        for m in members:
            if not 0 <= m < limit:
                raise InputError("member bit vector exceeds the tuple space")
        if len(set(members)) != len(members):
            raise InputError("members must be distinct")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_sets(
        cls, universe: ProductUniverse, sets: Iterable[Iterable[Sequence[int]]]
    ) -> "SetSystem":
        """Build from explicit collections of tuples; duplicates collapse."""
        members = set()
        for s in sets:
            mask = 0
            for t in s:
                mask |= 1 << universe.tuple_index(t)
            members.add(mask)
        return cls(universe, tuple(sorted(members)))

    def member_tuples(self, mask: int) -> list[tuple[int, ...]]:
        return [self.universe.index_tuple(i) for i in bit_indices(mask)]

    def to_json(self) -> str:
        doc = {
            "part_sizes": list(self.universe.part_sizes),
            "members": [format(m, "x") for m in self.members],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SetSystem":
        try:
            doc = json.loads(text)
            universe = ProductUniverse(tuple(doc["part_sizes"]))
            members = tuple(int(h, 16) for h in doc["members"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad set-system document: {exc}") from exc
        return cls(universe, members)


@dataclass(frozen=True)
class BoxSpec:
    """One selection of box indices per part; all selections share a size m."""

    selections: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sels = tuple(tuple(int(v) for v in sel) for sel in self.selections)
        if not sels:
            raise InputError("box needs at least one selection")
        m = len(sels[0])
        for sel in sels:
            if len(sel) != m:
                raise InputError("box selections must share one size")
            if len(set(sel)) != len(sel):
                raise InputError("box selection indices must be distinct")
        object.__setattr__(self, "selections", sels)

    @property
    def m(self) -> int:
        return len(self.selections[0])

    def validate(self, universe: ProductUniverse) -> None:
        if len(self.selections) != universe.n:
            raise InputError("box arity does not match the universe")
        for sel, size in zip(self.selections, universe.part_sizes):
            for v in sel:
                if not 0 <= v < size:
                    raise InputError(f"box index {v} out of range")

    def cell_indices(self, universe: ProductUniverse) -> list[int]:
        """Universe tuple indices of the box grid, row-major in the box."""
        self.validate(universe)
        return [universe.tuple_index(t) for t in product(*self.selections)]


@dataclass(frozen=True)
class GroundFamily:
    """Distinct subsets of {0..ground_size-1}, stored as bit masks."""

    ground_size: int
    members: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.ground_size < 0:
            raise InputError("ground size must be nonnegative")
        members = tuple(sorted(int(m) for m in self.members))
        limit = 1 << self.ground_size
        for m in members:
            if not 0 <= m < limit:
                raise InputError("member exceeds the ground set")
        if len(set(members)) != len(members):
            raise InputError("members must be distinct")
        object.__setattr__(self, "members", members)

    def to_json(self) -> str:
        doc = {
            "ground_size": self.ground_size,
            "members": [format(m, "x") for m in self.members],
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GroundFamily":
        try:
            doc = json.loads(text)
            return cls(int(doc["ground_size"]), tuple(int(h, 16) for h in doc["members"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad family document: {exc}") from exc


def bit_indices(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_boxes(universe: ProductUniverse, m: int) -> Iterator[BoxSpec]:
    """All boxes of size m, selections in lexicographic order per part."""
    if m < 0:
        raise InputError("box size must be nonnegative")
    if any(m > s for s in universe.part_sizes):
        return iter(())
    pools = [combinations(range(s), m) for s in universe.part_sizes]
    return (BoxSpec(sels) for sels in product(*pools))


def trace(system: SetSystem, box: BoxSpec) -> GroundFamily:
    """Restrict every member to the box, re-indexed over the box grid."""
    cells = box.cell_indices(system.universe)
    seen = set()
    for member in system.members:
        t = 0
        for i, cell in enumerate(cells):
            if member >> cell & 1:
                t |= 1 << i
        seen.add(t)
    return GroundFamily(len(cells), tuple(sorted(seen)))


def is_shattered(system: SetSystem, box: BoxSpec) -> bool:
    """True when the trace on the box realizes every subset of its grid."""
    cells = box.cell_indices(system.universe)
    full = 1 << len(cells)
    if len(system.members) < full:
        return False
    seen = set()
    for member in system.members:
        t = 0
        for i, cell in enumerate(cells):
            if member >> cell & 1:
                t |= 1 << i
        seen.add(t)
        if len(seen) == full:
            return True
    return False


def vc_n_dim(system: SetSystem, size_cap: int | None = None) -> int:
    """Largest m <= size_cap such that some size-m box is shattered.

    The empty box is shattered by any nonempty system, so the result is
    at least 0.  Raises for an empty system, whose dimension is undefined.
    """
    if not system.members:
        raise InputError("dimension of an empty system is undefined")
    limit = min(system.universe.part_sizes)
    if size_cap is not None:
        if size_cap < 0:
            raise InputError("size cap must be nonnegative")
        limit = min(limit, size_cap)
    best = 0
    for m in range(1, limit + 1):
        # A trace can't outnumber the members, and the threshold only grows.
        if len(system.members) < (1 << m ** system.universe.n):
            break
        found = any(is_shattered(system, box) for box in iter_boxes(system.universe, m))
        if not found:
            break  # shattering a bigger box would shatter one of its sub-boxes
        best = m
    return best


def shatter_fn(system: SetSystem, m: int) -> int:
    """Maximum trace cardinality over all boxes of size m."""
    if m < 0:
        raise InputError("box size must be nonnegative")
    if any(m > s for s in system.universe.part_sizes):
        raise InputError(f"box size {m} exceeds a part size")
    if m == 0:
        return 1 if system.members else 0
    best = 0
    cap = min(len(system.members), 1 << m ** system.universe.n)
    for box in iter_boxes(system.universe, m):
        size = len(trace(system, box).members)
        if size > best:
            best = size
            if best == cap:
                break
    return best


def shift(family: GroundFamily) -> GroundFamily:
    """Iterate element-wise down-shifts to a fixpoint.

    One pass applies, for each ground element e in ascending order, the
    replacement C -> C \\ {e} to every member containing e whose shifted
    image is not already present.  The fixpoint has the same cardinality,
    is downward closed, and shatters no set the input did not shatter.
    """
    members = set(family.members)
    changed = True
    while changed:
        changed = False
        for e in range(family.ground_size):
            bit = 1 << e
            snapshot = frozenset(members)
            for c in snapshot:
                if c & bit and (c ^ bit) not in snapshot and (c ^ bit) not in members:
                    members.remove(c)
                    members.add(c ^ bit)
                    changed = True
    return GroundFamily(family.ground_size, tuple(sorted(members)))


def sauer_binomial_bound(n: int, m: int, z: int) -> int:
    """Sum of C(m**n, i) over i < z: the box analogue of the Sauer bound."""
    if n < 1 or m < 0 or z < 0:
        raise InputError("n must be positive, m and z nonnegative")
    return sum(comb(m**n, i) for i in range(z))
