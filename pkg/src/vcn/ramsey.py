"""Ordered relational structures and exhaustive partition-arrow checking.

Structures carry their domain in a fixed linear order, optional convex
part predicates, and an optional symmetric uniform edge relation.  Order
rigidity makes substructure copies and embeddings the same thing: a copy
of A inside B is an increasing vertex selection whose induced parts and
edges match A exactly.

The arrow predicate C -> (B)^A_k is decided by enumerating every
k-coloring of the A-copies of C and looking for a B-copy all of whose
A-copies share one color.  The enumeration refuses over its budget rather
than sampling, which keeps every reported arrow exact.  The direct-sum
builder composes pigeonhole-sized witnesses along the chain argument that
proves two arrow problems can be solved jointly on a tagged disjoint
union.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceededError, InputError


@dataclass(frozen=True)
class RelStructure:
    """Ordered structure: convex optional parts, optional uniform edges."""

    size: int
    part_sizes: tuple[int, ...] | None = None
    edge_arity: int | None = None
    edges: frozenset[frozenset[int]] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise InputError("size must be nonnegative")
        if self.part_sizes is not None:
            sizes = tuple(int(s) for s in self.part_sizes)
            if any(s < 0 for s in sizes) or sum(sizes) != self.size:
                raise InputError("part sizes must be nonnegative and cover the domain")
            object.__setattr__(self, "part_sizes", sizes)
        if (self.edge_arity is None) != (self.edges is None):
            raise InputError("edge arity and edge set must be declared together")
        if self.edges is not None:
            if self.edge_arity < 1:
                raise InputError("edge arity must be positive")
            edges = frozenset(frozenset(int(v) for v in e) for e in self.edges)
            for e in edges:
                if len(e) != self.edge_arity:
                    raise InputError(f"edge {sorted(e)} does not match the arity")
                if any(not 0 <= v < self.size for v in e):
                    raise InputError(f"edge {sorted(e)} leaves the domain")
            object.__setattr__(self, "edges", edges)

    def part_of(self, v: int) -> int:
        if self.part_sizes is None:
            raise InputError("structure has no parts")
        start = 0
        for p, s in enumerate(self.part_sizes):
            start += s
            if v < start:
                return p
        raise InputError(f"vertex {v} out of range")

    def part_ids(self) -> tuple[int, ...] | None:
        if self.part_sizes is None:
            return None
        out = []
        for p, s in enumerate(self.part_sizes):
            out.extend([p] * s)
        return tuple(out)

    def canonical_key(self):
        edges = (
            None
            if self.edges is None
            else tuple(sorted(tuple(sorted(e)) for e in self.edges))
        )
        return (self.size, self.part_sizes, self.edge_arity, edges)

    def to_json(self) -> str:
        doc: dict = {"domain": self.size, "relations": {}, "order": list(range(self.size))}
        if self.edges is not None:
            doc["relations"]["R"] = {
                "arity": self.edge_arity,
                "tuples": sorted(sorted(e) for e in self.edges),
            }
        if self.part_sizes is not None:
            parts, start = [], 0
            for s in self.part_sizes:
                parts.append(list(range(start, start + s)))
                start += s
            doc["parts"] = parts
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RelStructure":
        try:
            doc = json.loads(text)
            size = int(doc["domain"])
            order = [int(v) for v in doc.get("order", range(size))]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad structure document: {exc}") from exc
        if sorted(order) != list(range(size)):
            raise InputError("order must enumerate the whole domain")
        relabel = {v: i for i, v in enumerate(order)}
        part_sizes = None
        if "parts" in doc:
            covered, sizes = [], []
            for part in doc["parts"]:
                part = sorted(relabel[int(v)] for v in part)
                covered.extend(part)
                sizes.append(len(part))
            if covered != list(range(size)):
                raise InputError("parts must be convex in the order and cover the domain")
            part_sizes = tuple(sizes)
        arity, edges = None, None
        rels = doc.get("relations", {})
        if "R" in rels:
            arity = int(rels["R"]["arity"])
            edges = frozenset(
                frozenset(relabel[int(v)] for v in t) for t in rels["R"]["tuples"]
            )
        return cls(size, part_sizes, arity, edges)


def points(k: int) -> RelStructure:
    """Plain ordered set on k vertices."""
    return RelStructure(k)


def induced(structure: RelStructure, subset: Sequence[int]) -> RelStructure:
    """Substructure on the given vertices, relabeled along the order."""
    subset = sorted(set(int(v) for v in subset))
    if any(not 0 <= v < structure.size for v in subset):
        raise InputError("subset leaves the domain")
    pos = {v: i for i, v in enumerate(subset)}
    part_sizes = None
    if structure.part_sizes is not None:
        counts = [0] * len(structure.part_sizes)
        for v in subset:
            counts[structure.part_of(v)] += 1
        part_sizes = tuple(counts)
    edges = None
    if structure.edges is not None:
        keep = set(subset)
        edges = frozenset(
            frozenset(pos[v] for v in e) for e in structure.edges if e <= keep
        )
    return RelStructure(len(subset), part_sizes, structure.edge_arity, edges)


@dataclass(frozen=True)
class EmbeddingSet:
    """Increasing vertex selections of the target realizing the source."""

    source: RelStructure
    target: RelStructure
    embeddings: tuple[tuple[int, ...], ...]


def _check_signatures(a: RelStructure, b: RelStructure) -> None:
    if (a.part_sizes is None) != (b.part_sizes is None):
        raise InputError("structures disagree on having parts")
    if a.part_sizes is not None and len(a.part_sizes) != len(b.part_sizes):
        raise InputError("structures disagree on the number of parts")
    if a.edge_arity != b.edge_arity:
        raise InputError("structures disagree on the edge arity")


def copies(target: RelStructure, source: RelStructure) -> EmbeddingSet:
    """All copies of source inside target, in lexicographic order."""
    _check_signatures(target, source)
    found = []
    want_parts = source.part_ids()
    target_parts = target.part_ids()
    src_key = source.canonical_key()
    for subset in combinations(range(target.size), source.size):
        if want_parts is not None:
            if tuple(target_parts[v] for v in subset) != want_parts:
                continue
        if induced(target, subset).canonical_key() != src_key:
            continue
        found.append(subset)
    return EmbeddingSet(source, target, tuple(found))


@dataclass(frozen=True)
class ColoringProblem:
    a: RelStructure
    b: RelStructure
    c: RelStructure
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InputError("number of colors must be positive")


def arrow_scan(problem: ColoringProblem, budget: int = 1 << 20) -> tuple[bool, int]:
    """Like arrow_check but also reports how many colorings were examined."""
    a_copies = copies(problem.c, problem.a).embeddings
    b_copies = copies(problem.c, problem.b).embeddings
    inner = copies(problem.b, problem.a).embeddings
    total = problem.k ** len(a_copies)
    if total > budget:
        raise BudgetExceededError(
            f"{total} colorings exceed the budget of {budget}; refusing to sample"
        )
    index = {emb: i for i, emb in enumerate(a_copies)}
    b_sets = []
    for emb_b in b_copies:
        b_sets.append(tuple(index[tuple(emb_b[v] for v in e)] for e in inner))
    checked = 0
    for coloring in product(range(problem.k), repeat=len(a_copies)):
        checked += 1
        mono = False
        for bs in b_sets:
            if not bs:
                mono = True  # no inner copies: constant vacuously
                break
            first = coloring[bs[0]]
            if all(coloring[i] == first for i in bs):
                mono = True
                break
        if not mono:
            return False, checked
    return True, checked


def arrow_check(problem: ColoringProblem, budget: int = 1 << 20) -> bool:
    """Exhaustively decide C -> (B)^A_k.

    True when every k-coloring of the A-copies of C admits a B-copy whose
    A-copies are monochromatic.  Refuses when the coloring count exceeds
    the budget.
    """
    return arrow_scan(problem, budget)[0]


def hereditary_closure(structures: Iterable[RelStructure]) -> list[RelStructure]:
    """All induced substructures up to order isomorphism, empty one included."""
    seen: dict = {}
    for s in structures:
        for r in range(s.size + 1):
            for subset in combinations(range(s.size), r):
                sub = induced(s, subset)
                seen.setdefault(sub.canonical_key(), sub)
    return [seen[k] for k in sorted(seen, key=_key_sort)]


def _key_sort(key):
    size, parts, arity, edges = key
    return (
        size,
        parts if parts is not None else (),
        arity if arity is not None else -1,
        edges if edges is not None else (),
    )


def direct_sum(a0: RelStructure, a1: RelStructure) -> RelStructure:
    """Disjoint union with two fresh convex part tags, a0 before a1."""
    if a0.part_sizes is not None or a1.part_sizes is not None:
        raise InputError("summands must not already carry parts")
    if a0.edge_arity != a1.edge_arity:
        raise InputError("summands disagree on the edge arity")
    edges = None
    if a0.edges is not None:
        shifted = {frozenset(v + a0.size for v in e) for e in a1.edges}
        edges = frozenset(a0.edges | shifted)
    return RelStructure(a0.size + a1.size, (a0.size, a1.size), a0.edge_arity, edges)


def ordered_set_oracle(budget: int = 1 << 20) -> Callable:
    """Arrow witness oracle for plain ordered sets.

    Exact pigeonhole sizes where classical, otherwise an incremental
    exhaustive search that refuses past its budget.
    """

    def oracle(a: RelStructure, b: RelStructure, k: int) -> RelStructure:
        if a.part_sizes is not None or a.edges is not None:
            raise InputError("the default oracle handles plain ordered sets only")
        if b.part_sizes is not None or b.edges is not None:
            raise InputError("the default oracle handles plain ordered sets only")
        if a.size == b.size:
            return b
        if a.size == 0:
            return b  # every coloring is constant on the single empty copy
        if a.size == 1:
            return points(k * (b.size - 1) + 1)
        if (a.size, b.size, k) == (2, 3, 2):
            return points(6)
        for size in range(b.size, b.size + 12):
            candidate = points(size)
            if arrow_check(ColoringProblem(a, b, candidate, k), budget):
                return candidate
        raise BudgetExceededError(
            f"no ordered-set witness found up to size {b.size + 11}"
        )

    return oracle


def build_direct_sum_witness(
    a0: RelStructure,
    b0: RelStructure,
    a1: RelStructure,
    b1: RelStructure,
    k: int,
    witness_oracle: Callable | None = None,
) -> RelStructure:
    """Construct C with C -> (B0 + B1) for the direct-sum arrow problem.

    Following the chain argument: pick C1 solving the second problem, let
    m be the number of A1-copies of C1, then iterate the first problem's
    oracle m times starting from its own witness; the tagged disjoint
    union of the final chain element and C1 is returned.
    """
    if k < 1:
        raise InputError("number of colors must be positive")
    oracle = witness_oracle if witness_oracle is not None else ordered_set_oracle()
    c1 = oracle(a1, b1, k)
    m = len(copies(c1, a1).embeddings)
    c = oracle(a0, b0, k)
    for _ in range(m):
        c = oracle(a0, c, k)
    return direct_sum(c, c1)


def flatten(structure: RelStructure) -> RelStructure:
    """Forget the parts, keep order and edges."""
    return RelStructure(structure.size, None, structure.edge_arity, structure.edges)


def encode_tilde(x0: RelStructure) -> RelStructure:
    """Partite double of an ordered uniform hypergraph.

    Each part is a full copy of the domain; an edge joins position-tagged
    copies (i in part 0, j in part 1, ...) exactly when the index tuple is
    strictly increasing and forms an edge of the source.  Supports arity 2
    and 3.
    """
    if x0.part_sizes is not None:
        raise InputError("source must be partless")
    if x0.edges is None or x0.edge_arity not in (2, 3):
        raise InputError("source needs a declared edge relation of arity 2 or 3")
    m = x0.size
    r = x0.edge_arity
    edges = set()
    for idx in combinations(range(m), r):
        if frozenset(idx) in x0.edges:
            edges.add(frozenset(p * m + v for p, v in enumerate(idx)))
    return RelStructure(r * m, (m,) * r, r, frozenset(edges))


def bar_restrict(x: RelStructure, x0: RelStructure | None = None) -> RelStructure:
    """Recover a partite hypergraph from the double of its flattening.

    Selects, inside encode_tilde(flatten(x)), the part-p copy of each
    part-p vertex of x; the induced substructure must be isomorphic to x,
    anything else indicates an encoding bug.
    """
    if x.part_sizes is None or x.edges is None:
        raise InputError("input must carry parts and an edge relation")
    if len(x.part_sizes) != x.edge_arity:
        raise InputError("parts must match the edge arity")
    for e in x.edges:
        if len({x.part_of(v) for v in e}) != x.edge_arity:
            raise InputError(f"edge {sorted(e)} is not cross-part")
    flat = flatten(x)
    if x0 is None:
        x0 = flat
    elif x0.canonical_key() != flat.canonical_key():
        raise InputError("x0 must be the flattening of x")
    double = encode_tilde(x0)
    m = x.size
    chosen = [x.part_of(v) * m + v for v in range(m)]
    bar = induced(double, chosen)
    if bar.canonical_key() != x.canonical_key():
        raise RuntimeError("partite double restriction failed to reproduce the input")
    return bar
