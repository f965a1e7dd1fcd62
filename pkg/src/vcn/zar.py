"""Exact thresholds for complete partite sub-hypergraphs, and what they build.

For the complete n-partite n-uniform hypergraph with m vertices per part,
z(n, m, d) is the least edge count that forces a copy of the complete
d-per-part sub-hypergraph.  It is computed exactly by maximizing the edge
count of a d-box-free subgraph with a branch-and-bound over per-vertex
edge layers; the threshold is that maximum plus one.

The extremal witnesses feed two constructions: a set system made of the
power sets of box-free witnesses placed on disjoint blocks (its box
dimension collapses to d while its shatter function stays exponential),
and a ternary structure whose definable family reproduces such a system.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterable, Sequence

from .errors import BudgetExceededError, InputError
from .fmodel import FiniteStructure, Relation
from .setsys import ProductUniverse, SetSystem

_EXACT = "exact"
_LOWER = "lower_bound_only"


@dataclass(frozen=True)
class PartiteHypergraph:
    """n-partite n-uniform hypergraph; an edge picks one vertex per part."""

    n: int
    part_sizes: tuple[int, ...]
    edges: frozenset[tuple[int, ...]]
    ordered: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be positive")
        sizes = tuple(int(s) for s in self.part_sizes)
        if len(sizes) != self.n or any(s < 1 for s in sizes):
            raise InputError("need one positive size per part")
        edges = frozenset(tuple(int(v) for v in e) for e in self.edges)
        for e in edges:
            if len(e) != self.n:
                raise InputError(f"edge {e} does not pick one vertex per part")
            if any(not 0 <= v < s for v, s in zip(e, sizes)):
                raise InputError(f"edge {e} leaves its parts")
        object.__setattr__(self, "part_sizes", sizes)
        object.__setattr__(self, "edges", edges)

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "part_sizes": list(self.part_sizes),
            "edges": sorted(list(e) for e in self.edges),
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PartiteHypergraph":
        try:
            doc = json.loads(text)
            return cls(
                int(doc["n"]),
                tuple(doc["part_sizes"]),
                frozenset(map(tuple, doc["edges"])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad hypergraph document: {exc}") from exc


@dataclass(frozen=True)
class ZarResult:
    z: int
    extremal_edge_count: int
    extremal_witness: PartiteHypergraph
    status: str


@dataclass(frozen=True)
class ErdosBound:
    ex_bound: float
    z_bound: float
    epsilon: float
    degenerate: bool


def _contains_box(tuples: Iterable[tuple[int, ...]], d: int, width: int) -> bool:
    """Does a set of width-long tuples contain a full d x ... x d box?"""
    tuples = set(tuples)
    if width == 1:
        return len(tuples) >= d
    layers: dict[int, set] = {}
    for t in tuples:
        layers.setdefault(t[0], set()).add(t[1:])
    firsts = [v for v, rest in layers.items() if len(rest) >= d ** (width - 1)]

    def search(chosen: int, start: int, inter: set) -> bool:
        if chosen == d:
            return _contains_box(inter, d, width - 1)
        for i in range(start, len(firsts)):
            nxt = inter & layers[firsts[i]] if chosen else layers[firsts[i]]
            if len(nxt) >= d ** (width - 1):
                if search(chosen + 1, i + 1, nxt):
                    return True
        return False

    return search(0, 0, set())


def contains_complete_partite(h: PartiteHypergraph, d: int) -> bool:
    """True when h contains the complete sub-hypergraph on d vertices per part."""
    if d < 1:
        raise InputError("d must be positive")
    if any(d > s for s in h.part_sizes):
        return False
    return _contains_box(h.edges, d, h.n)


def _popcount_key(mask: int) -> tuple[int, int]:
    return (bin(mask).count("1"), mask)


def _orbit_max_masks(m: int, n: int, width: int) -> set[int] | None:
    """Masks maximal in their orbit under coordinate permutations of the grid.

    Only used to prune the root of the layer search; None means no pruning.
    """
    if n == 2:
        # one symmetric coordinate: the orbit max packs bits at the top
        return {((1 << r) - 1) << (m - r) for r in range(m + 1)}
    group_size = factorial(m) ** (n - 1)
    if group_size > 10_000 or width > 16:
        return None
    grid = list(product(range(m), repeat=n - 1))
    index = {t: i for i, t in enumerate(grid)}
    maps = []
    for perms in product(permutations(range(m)), repeat=n - 1):
        maps.append(
            [index[tuple(perms[c][t[c]] for c in range(n - 1))] for t in grid]
        )
    out = set()
    for mask in range(1 << width):
        best = 0
        for mp in maps:
            img = 0
            for i in range(width):
                if mask >> i & 1:
                    img |= 1 << mp[i]
            if img > best:
                best = img
        out.add(best)
    return out


def zarankiewicz(
    n: int, m: int, d: int, node_budget: int | None = None
) -> ZarResult:
    """Least edge count forcing a complete d-per-part sub-hypergraph.

    Runs a branch-and-bound over per-vertex layers of the first part,
    maximizing the edge count among d-box-free subgraphs; the threshold is
    that maximum plus one.  When the node budget runs out the best edge
    count found so far still yields a valid lower bound on the threshold,
    flagged by status, never silently reported as exact.
    """
    if n < 1 or m < 1 or d < 1:
        raise InputError("n, m, d must be positive")
    if n == 1:
        # edges are single vertices: any d of them form the target
        k = m if m < d else d - 1
        witness = PartiteHypergraph(1, (m,), frozenset((v,) for v in range(k)))
        return ZarResult(k + 1, k, witness, _EXACT)

    width = m ** (n - 1)
    grid = list(product(range(m), repeat=n - 1))
    masks = sorted(range(1 << width), key=_popcount_key, reverse=True)
    root_ok = _orbit_max_masks(m, n, width)
    sub_d_size = d ** (n - 1)

    def mask_tuples(mask: int) -> list[tuple[int, ...]]:
        return [grid[i] for i in range(width) if mask >> i & 1]

    def violates(layers: list[int], new: int) -> bool:
        if d == 1:
            return new != 0
        for combo in combinations(range(len(layers)), d - 1):
            inter = new
            for i in combo:
                inter &= layers[i]
                if bin(inter).count("1") < sub_d_size:
                    break
            else:
                if _contains_box(mask_tuples(inter), d, n - 1):
                    return True
        return False

    best_total = 0
    best_layers: list[int] = [0] * m  # the empty subgraph is always box-free
    nodes = 0
    exhausted = False

    def dfs(layers: list[int], total: int, prev_key: tuple[int, int]):
        nonlocal best_total, best_layers, nodes, exhausted
        if len(layers) == m:
            if total > best_total:
                best_total = total
                best_layers = list(layers)
            return
        remaining = m - len(layers)
        for mask in masks:
            key = _popcount_key(mask)
            if key > prev_key:
                continue
            if total + remaining * key[0] <= best_total:
                break  # masks are sorted by popcount: no later mask can help
            if not layers and root_ok is not None and mask not in root_ok:
                continue
            if exhausted:
                return
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                exhausted = True
                return
            if violates(layers, mask):
                continue
            layers.append(mask)
            dfs(layers, total + key[0], key)
            layers.pop()

    dfs([], 0, (width, (1 << width) - 1))

    edges = set()
    for v, mask in enumerate(best_layers):
        for t in mask_tuples(mask):
            edges.add((v, *t))
    witness = PartiteHypergraph(n, (m,) * n, frozenset(edges))
    status = _LOWER if exhausted else _EXACT
    return ZarResult(best_total + 1, best_total, witness, status)


def erdos_bound(n: int, m: int, d: int) -> ErdosBound:
    """Power-saving upper bounds for box-free edge counts; advisory only.

    epsilon = 1 / d**(n-1); the extremal count is at most m**(n-epsilon)
    and the threshold at most (n*m)**(n-epsilon).  For n = 1 the exponent
    degenerates and the record says so.
    """
    if n < 1 or m < 1 or d < 1:
        raise InputError("n, m, d must be positive")
    eps = 1.0 / d ** (n - 1)
    return ErdosBound(
        ex_bound=float(m) ** (n - eps),
        z_bound=float(n * m) ** (n - eps),
        epsilon=eps,
        degenerate=(n == 1),
    )


def z22_lower_bound(m: int) -> float:
    """Advisory lower bound for the 2 x 2 box threshold in the balanced case."""
    if m < 1:
        raise InputError("m must be positive")
    return m**1.5 * (1.0 - m ** (-1.0 / 6.0))


def build_extremal_family(
    n: int, d: int, m_range: Sequence[int], node_budget: int | None = None
) -> SetSystem:
    """Union of power sets of box-free extremal witnesses on disjoint blocks.

    For each m the extremal (d+1)-box-free witness with z(n,m,d+1)-1 edges
    is placed on fresh blocks of every part; the members are all subsets
    of each witness's edge set.  The result has box dimension exactly d
    while its shatter function at m stays at least 2**(z-1).
    """
    if n < 1 or d < 1:
        raise InputError("n and d must be positive")
    sizes = [int(m) for m in m_range]
    if not sizes:
        raise InputError("m_range must be nonempty")
    if any(m < d for m in sizes):
        raise InputError("every m must be at least d")
    total = sum(sizes)
    universe = ProductUniverse((total,) * n)
    members: set[int] = set()
    offset = 0
    for m in sizes:
        res = zarankiewicz(n, m, d + 1, node_budget)
        if res.status != _EXACT:
            raise BudgetExceededError(
                f"threshold search for m={m} hit its budget; "
                "the construction needs a true extremal witness"
            )
        cells = [
            universe.tuple_index(tuple(offset + v for v in e))
            for e in sorted(res.extremal_witness.edges)
        ]
        for r in range(len(cells) + 1):
            for sub in combinations(cells, r):
                mask = 0
                for c in sub:
                    mask |= 1 << c
                members.add(mask)
        offset += m
    return SetSystem(universe, tuple(sorted(members)))


def build_counterexample_structure(
    m_range: Sequence[int], node_budget: int | None = None
) -> FiniteStructure:
    """Ternary structure whose definable family is the n=2, d=1 extremal system.

    The domain lists one element per family member (in sorted member
    order) followed by the shared ground part; R(b, a0, a1) holds exactly
    when the pair (a0, a1) lies in the member named b.  The formula
    R(x, y0, y1) then defines the family, with every ground element
    contributing the empty member.
    """
    fam = build_extremal_family(2, 1, m_range, node_budget)
    ground = fam.universe.part_sizes[0]
    count = len(fam.members)
    tuples = set()
    for idx, member in enumerate(fam.members):
        rest = member
        while rest:
            low = rest & -rest
            cell = low.bit_length() - 1
            a0, a1 = fam.universe.index_tuple(cell)
            tuples.add((idx, count + a0, count + a1))
            rest ^= low
    return FiniteStructure(
        count + ground, {"R": Relation(3, frozenset(tuples))}
    )
