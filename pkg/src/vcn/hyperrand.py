"""Random ordered partite hypergraphs with verified extension behaviour.

Edges over the full part product are sampled independently with
probability 1/2 from a seeded generator, then an exhaustive finite
extension check is run and the sample is retried until it passes.  The
level-t check demands, for every part j, a realizer for every
positive/negative adjacency pattern combined with an order window, where
the pattern tuples and the finite window endpoints together cost at most
t; a window only obliges when some vertex lies strictly inside it.

Vertices are (part, position) pairs ordered part-major.  Two equal-length
vertex sets sharing a tail V are V-adjacent when the natural map is an
order-and-parts isomorphism, every edge mixing the moved vertices with V
agrees, and exactly the full cross edge differs.  Adjacency walks repair
one edge discrepancy per step by moving a single vertex, and the greedy
subgraph selector picks part subsets whose cross tuples are each either
isomorphic or V-adjacent to a reference edge.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import (
    GenerationError,
    InputError,
    SelectionStuckError,
    WalkStuckError,
)
from .ramsey import RelStructure
from .zar import PartiteHypergraph

Vertex = tuple[int, int]  # (part, position)


@dataclass(frozen=True)
class ExtensionHypergraph:
    """A sampled hypergraph together with its verified extension level."""

    base: PartiteHypergraph
    t: int
    seed: int

    def to_json(self) -> str:
        doc = {
            "n": self.base.n,
            "part_sizes": list(self.base.part_sizes),
            "edges": sorted(list(e) for e in self.base.edges),
            "t": self.t,
            "seed": self.seed,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExtensionHypergraph":
        try:
            doc = json.loads(text)
            base = PartiteHypergraph(
                int(doc["n"]),
                tuple(doc["part_sizes"]),
                frozenset(map(tuple, doc["edges"])),
            )
            return cls(base, int(doc["t"]), int(doc["seed"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad hypergraph document: {exc}") from exc


@dataclass(frozen=True)
class VAdjacencyWitness:
    w: tuple[Vertex, ...]
    w_prime: tuple[Vertex, ...]
    v: tuple[Vertex, ...]
    flipped_edge: tuple[Vertex, ...]


def _check_vertex(h: PartiteHypergraph, v: Vertex) -> Vertex:
    p, i = int(v[0]), int(v[1])
    if not 0 <= p < h.n or not 0 <= i < h.part_sizes[p]:
        raise InputError(f"vertex {v} leaves the hypergraph")
    return (p, i)


def _edge_by_part(h: PartiteHypergraph, fillers: dict[int, int]) -> bool:
    return tuple(fillers[p] for p in range(h.n)) in h.edges


def _other_tuples(h: PartiteHypergraph, j: int) -> list[tuple[int, ...]]:
    """All index tuples over the parts other than j, in part order."""
    ranges = [range(h.part_sizes[p]) for p in range(h.n) if p != j]
    return list(product(*ranges))


def _realizes(
    h: PartiteHypergraph,
    j: int,
    b: int,
    pos: Iterable[tuple[int, ...]],
    neg: Iterable[tuple[int, ...]],
) -> bool:
    parts_other = [p for p in range(h.n) if p != j]
    for want, group in ((True, pos), (False, neg)):
        for tup in group:
            fillers = dict(zip(parts_other, tup))
            fillers[j] = b
            if _edge_by_part(h, fillers) != want:
                return False
    return True


def find_extension_violation(h: PartiteHypergraph, t: int):
    """First failing level-t extension instance, or None.

    An instance fixes a part j, disjoint positive/negative tuple sets over
    the other parts, and an order window over part j; its cost is the
    tuple count plus the number of finite window endpoints.  Every
    instance of cost at most t whose window strictly contains a vertex
    must admit a realizer.
    """
    if t < 0:
        raise InputError("extension level must be nonnegative")
    for j in range(h.n):
        size = h.part_sizes[j]
        others = _other_tuples(h, j)
        windows: list[tuple[int | None, int | None, int]] = [(None, None, 0)]
        windows += [(None, hi, 1) for hi in range(1, size)]
        windows += [(lo, None, 1) for lo in range(size - 1)]
        windows += [
            (lo, hi, 2)
            for lo in range(size)
            for hi in range(lo + 2, size)
        ]
        for lo, hi, wcost in windows:
            inside = range(0 if lo is None else lo + 1, size if hi is None else hi)
            if not inside:
                continue
            for total in range(t - wcost + 1):
                for s0 in range(total + 1):
                    for a0 in combinations(others, s0):
                        rest = [x for x in others if x not in a0]
                        for a1 in combinations(rest, total - s0):
                            if not any(
                                _realizes(h, j, b, a0, a1) for b in inside
                            ):
                                return (j, a0, a1, (lo, hi))
    return None


def check_extension_level(h: PartiteHypergraph, t: int) -> bool:
    return find_extension_violation(h, t) is None


def achieved_extension_level(h: PartiteHypergraph, cap: int) -> int:
    """Largest level up to cap that the hypergraph passes, -1 if none."""
    for level in range(cap, -1, -1):
        if check_extension_level(h, level):
            return level
    return -1


def gen_extension_hypergraph(
    n: int, part_size: int, t: int, seed: int, retries: int = 50
) -> ExtensionHypergraph:
    """Sample edges at density 1/2 until the level-t check passes.

    Attempt i derives its generator deterministically from the seed
    (seed * 1000003 + i, feeding the standard generator), and edges are
    drawn one bit per cross tuple in row-major order, so results are
    reproducible byte for byte.  Raises after the retry budget, carrying
    the best level any attempt achieved.
    """
    if n < 1 or part_size < 1 or retries < 1:
        raise InputError("n, part_size, retries must be positive")
    if t < 0:
        raise InputError("extension level must be nonnegative")
    best = -1
    for attempt in range(retries):
        rng = random.Random(seed * 1_000_003 + attempt)
        edges = frozenset(
            tup
            for tup in product(*(range(part_size) for _ in range(n)))
            if rng.getrandbits(1)
        )
        h = PartiteHypergraph(n, (part_size,) * n, edges)
        if check_extension_level(h, t):
            return ExtensionHypergraph(h, t, seed)
        best = max(best, achieved_extension_level(h, t - 1))
    raise GenerationError(
        f"no sample passed level {t} within {retries} attempts", best_t=best
    )


def _order_match(
    h: PartiteHypergraph,
    g: Sequence[Vertex],
    gp: Sequence[Vertex],
    v: Sequence[Vertex],
) -> bool:
    """Does g_i -> g'_i, fixing v, preserve order within every part?"""
    for p in range(h.n):
        pairs = [(g[p][1], gp[p][1])] + [(x[1], x[1]) for x in v if x[0] == p]
        pairs.sort()
        images = [img for _, img in pairs]
        if any(images[i] >= images[i + 1] for i in range(len(images) - 1)):
            return False
    return True


def _mixed_match(
    h: PartiteHypergraph,
    g: Sequence[Vertex],
    gp: Sequence[Vertex],
    v: Sequence[Vertex],
) -> bool:
    """Do all edges mixing the moved tuple with V agree between g and g'?"""
    by_part: dict[int, list[int]] = {}
    for p, i in v:
        by_part.setdefault(p, []).append(i)
    parts = range(h.n)
    for take_v in product((False, True), repeat=h.n):
        if not any(take_v) or all(take_v):
            continue
        pools = [
            by_part.get(p, []) if take_v[p] else [None] for p in parts
        ]
        for choice in product(*pools):
            left = {
                p: (choice[p] if take_v[p] else g[p][1]) for p in parts
            }
            right = {
                p: (choice[p] if take_v[p] else gp[p][1]) for p in parts
            }
            if _edge_by_part(h, left) != _edge_by_part(h, right):
                return False
    return True


def is_v_adjacent(
    h: PartiteHypergraph,
    w: Sequence[Vertex],
    w_prime: Sequence[Vertex],
    v: Sequence[Vertex],
) -> bool:
    """Decide V-adjacency of two vertex sets sharing the tail V.

    Both sets must list one vertex per part followed by V itself.  The
    natural map must preserve order and parts, every edge using at least
    one V vertex must agree, and the full cross edge must differ.
    """
    if len(w) != len(w_prime) or len(w) < h.n:
        raise InputError("sets must share one length and start with one vertex per part")
    v = [_check_vertex(h, x) for x in v]
    w = [_check_vertex(h, x) for x in w]
    w_prime = [_check_vertex(h, x) for x in w_prime]
    if w[h.n :] != v or w_prime[h.n :] != v:
        raise InputError("both sets must end with the shared tail V")
    g, gp = w[: h.n], w_prime[: h.n]
    for p in range(h.n):
        if g[p][0] != p or gp[p][0] != p:
            raise InputError("the leading vertices must cover the parts in order")
    if len(set(w)) != len(w) or len(set(w_prime)) != len(w_prime):
        return False
    if not _order_match(h, g, gp, v):
        return False
    if not _mixed_match(h, g, gp, v):
        return False
    left = {p: g[p][1] for p in range(h.n)}
    right = {p: gp[p][1] for p in range(h.n)}
    return _edge_by_part(h, left) != _edge_by_part(h, right)


def _positional_edges(h: PartiteHypergraph, w: Sequence[Vertex]) -> list[tuple[int, ...]]:
    """Position tuples of w covering every part exactly once, sorted."""
    by_part: dict[int, list[int]] = {}
    for pos, (p, _) in enumerate(w):
        by_part.setdefault(p, []).append(pos)
    if set(by_part) != set(range(h.n)):
        return []
    out = [
        tuple(sorted(combo))
        for combo in product(*(by_part[p] for p in range(h.n)))
    ]
    return sorted(set(out))


def _edge_value(h: PartiteHypergraph, verts: Iterable[Vertex]) -> bool:
    return _edge_by_part(h, {p: i for p, i in verts})


def walk_discrepancies(
    h: PartiteHypergraph, w: Sequence[Vertex], w_prime: Sequence[Vertex]
) -> list[tuple[int, ...]]:
    """Position tuples whose edge values differ between the two sets."""
    out = []
    for positions in _positional_edges(h, w):
        left = _edge_value(h, [w[i] for i in positions])
        right = _edge_value(h, [w_prime[i] for i in positions])
        if left != right:
            out.append(positions)
    return out


def adjacency_walk(
    eh: ExtensionHypergraph | PartiteHypergraph,
    w: Sequence[Vertex],
    w_prime: Sequence[Vertex],
) -> list[list[Vertex]]:
    """Move one vertex at a time until the set matches the target's edges.

    The inputs must be positionally order-and-parts isomorphic vertex
    lists.  Each step flips exactly one discrepant cross edge by moving
    one of its vertices, keeping every V-mixed edge intact, so consecutive
    sets are V-adjacent for V the untouched remainder.  Raises when no
    replacement vertex exists for a discrepancy.
    """
    h = eh.base if isinstance(eh, ExtensionHypergraph) else eh
    w = [_check_vertex(h, x) for x in w]
    w_prime = [_check_vertex(h, x) for x in w_prime]
    if len(w) != len(w_prime):
        raise InputError("vertex lists must share one length")
    if len(set(w)) != len(w) or len(set(w_prime)) != len(w_prime):
        raise InputError("vertex lists must be duplicate-free")
    for a, b in zip(w, w_prime):
        if a[0] != b[0]:
            raise InputError("positions must agree on parts")
    for i, j in combinations(range(len(w)), 2):
        if w[i][0] == w[j][0]:
            if (w[i][1] < w[j][1]) != (w_prime[i][1] < w_prime[j][1]):
                raise InputError("positions must agree on the order pattern")

    cur = list(w)
    walk = [list(cur)]
    pending = walk_discrepancies(h, cur, w_prime)
    while pending:
        positions = pending[0]
        moved = _walk_step(h, cur, positions)
        if moved is None:
            raise WalkStuckError(
                "no replacement vertex fixes the discrepancy; "
                "the extension level is too low for this walk",
                discrepancy=tuple(cur[i] for i in positions),
            )
        walk.append(list(cur))
        pending = walk_discrepancies(h, cur, w_prime)
    return walk


def _walk_step(h, cur, positions):
    """Try to flip the edge at the given positions by moving one vertex."""
    edge_parts = [cur[i][0] for i in positions]
    v_set = [cur[i] for i in range(len(cur)) if i not in positions]
    for slot, pos in enumerate(positions):
        p = edge_parts[slot]
        old = cur[pos]
        same_part = sorted(i for q, i in v_set if q == p)
        lo = max((i for i in same_part if i < old[1]), default=-1)
        hi = min((i for i in same_part if i > old[1]), default=h.part_sizes[p])
        g = [cur[i] for i in positions]
        gp_template = list(g)
        for b in range(lo + 1, hi):
            cand = (p, b)
            if cand in cur:
                continue
            gp_template[slot] = cand
            if not _mixed_match_single(h, g, gp_template, v_set, slot):
                continue
            left = {q: x[1] for q, x in zip(edge_parts, g)}
            right = {q: x[1] for q, x in zip(edge_parts, gp_template)}
            if _edge_by_part(h, left) == _edge_by_part(h, right):
                continue
            cur[pos] = cand
            return pos
    return None


def _mixed_match_single(h, g, gp, v_set, slot):
    """Mixed-edge agreement when only the slot-th vertex moved."""
    p_moved = g[slot][0]
    by_part: dict[int, list[int]] = {}
    for q, i in v_set:
        by_part.setdefault(q, []).append(i)
    other_parts = [q for q in range(h.n) if q != p_moved]
    part_index = {x[0]: k for k, x in enumerate(g)}
    for take_v in product((False, True), repeat=len(other_parts)):
        if not any(take_v):
            continue  # the pure cross edge is the one allowed to flip
        pools = []
        for q, from_v in zip(other_parts, take_v):
            pools.append(by_part.get(q, []) if from_v else [g[part_index[q]][1]])
        for choice in product(*pools):
            fillers = dict(zip(other_parts, choice))
            fillers[p_moved] = g[slot][1]
            before = _edge_by_part(h, fillers)
            fillers[p_moved] = gp[slot][1]
            if _edge_by_part(h, fillers) != before:
                return False
    return True


def step_certificate(
    h: PartiteHypergraph | ExtensionHypergraph,
    wa: Sequence[Vertex],
    wb: Sequence[Vertex],
) -> VAdjacencyWitness:
    """Recover (V, flipped edge) for one walk step and verify V-adjacency."""
    if isinstance(h, ExtensionHypergraph):
        h = h.base
    wa = [_check_vertex(h, x) for x in wa]
    wb = [_check_vertex(h, x) for x in wb]
    if len(wa) != len(wb):
        raise InputError("steps must share one length")
    moved = [i for i in range(len(wa)) if wa[i] != wb[i]]
    if len(moved) != 1:
        raise InputError("a step must move exactly one vertex")
    flips = []
    for positions in _positional_edges(h, wa):
        if moved[0] not in positions:
            continue
        if _edge_value(h, [wa[i] for i in positions]) != _edge_value(
            h, [wb[i] for i in positions]
        ):
            flips.append(positions)
    if len(flips) != 1:
        raise InputError("a step must flip exactly one cross edge")
    positions = flips[0]
    v = tuple(wa[i] for i in range(len(wa)) if i not in positions)
    g = sorted((wa[i] for i in positions), key=lambda x: x[0])
    gp = sorted((wb[i] for i in positions), key=lambda x: x[0])
    if not is_v_adjacent(h, [*g, *v], [*gp, *v], v):
        raise InputError("step fails the V-adjacency conditions")
    return VAdjacencyWitness(tuple(wa), tuple(wb), v, tuple(gp))


def dichotomy_verdict(
    h: PartiteHypergraph,
    v: Sequence[Vertex],
    g: Sequence[int],
    cross: Sequence[int],
) -> str | None:
    """Classify a cross tuple against the reference edge: iso, adjacent, or None."""
    gv = [(p, i) for p, i in enumerate(g)]
    cv = [(p, i) for p, i in enumerate(cross)]
    v = [_check_vertex(h, x) for x in v]
    if not _order_match(h, gv, cv, v) or not _mixed_match(h, gv, cv, v):
        return None
    same = _edge_by_part(h, dict(enumerate(g))) == _edge_by_part(
        h, dict(enumerate(cross))
    )
    return "iso" if same else "adjacent"


def random_subgraph(
    eh: ExtensionHypergraph | PartiteHypergraph,
    v: Sequence[Vertex],
    g: Sequence[int],
    s: int,
    t_prime: int = 0,
) -> list[list[int]]:
    """Greedily select s vertices per part around a reference edge g.

    Every selected vertex matches its part's reference vertex in order
    position relative to V and agrees with it on every edge mixing V with
    previously selected vertices.  Afterwards every cross tuple of the
    selection is either isomorphic or V-adjacent to the reference edge,
    and the induced subgraph must pass the level-t' extension check.
    """
    h = eh.base if isinstance(eh, ExtensionHypergraph) else eh
    if s < 1:
        raise InputError("per-part size must be positive")
    v = [_check_vertex(h, x) for x in v]
    g = tuple(int(x) for x in g)
    if len(g) != h.n:
        raise InputError("reference edge must pick one vertex per part")
    if g not in h.edges:
        raise InputError("reference tuple must be an edge")
    if any((p, i) in v for p, i in enumerate(g)):
        raise InputError("V must avoid the reference edge")
    chosen: list[list[int]] = [[g[p]] for p in range(h.n)]
    by_part: dict[int, list[int]] = {}
    for q, i in v:
        by_part.setdefault(q, []).append(i)
    for p in range(h.n):
        same_part = sorted(by_part.get(p, []))
        lo = max((i for i in same_part if i < g[p]), default=-1)
        hi = min((i for i in same_part if i > g[p]), default=h.part_sizes[p])
        for b in range(lo + 1, hi):
            if len(chosen[p]) == s:
                break
            if b == g[p]:
                continue
            if _candidate_fits(h, chosen, by_part, g, p, b):
                chosen[p].append(b)
        if len(chosen[p]) < s:
            raise SelectionStuckError(
                f"part {p} yielded {len(chosen[p])} of {s} vertices",
                constraints={
                    "part": p,
                    "window": (lo, hi),
                    "v_neighbours": {q: by_part.get(q, []) for q in range(h.n)},
                },
            )
    for cross in product(*chosen):
        if dichotomy_verdict(h, v, g, cross) is None:
            raise RuntimeError("selection violated the dichotomy; selection bug")
    sub_edges = set()
    index = [
        {vertex: pos for pos, vertex in enumerate(sorted(part))} for part in chosen
    ]
    for cross in product(*(sorted(part) for part in chosen)):
        if cross in h.edges:
            sub_edges.add(tuple(index[p][x] for p, x in enumerate(cross)))
    sub = PartiteHypergraph(h.n, (s,) * h.n, frozenset(sub_edges))
    if not check_extension_level(sub, t_prime):
        raise GenerationError(
            f"selected subgraph failed the level-{t_prime} extension check",
            best_t=achieved_extension_level(sub, t_prime - 1) if t_prime else -1,
        )
    return [sorted(part) for part in chosen]


def _candidate_fits(h, chosen, by_part, g, p, b) -> bool:
    """Mixed-edge agreement of candidate b with the part-p reference vertex."""
    other_parts = [q for q in range(h.n) if q != p]
    for take_v in product((False, True), repeat=len(other_parts)):
        if not any(take_v):
            continue
        pools = []
        for q, from_v in zip(other_parts, take_v):
            pools.append(by_part.get(q, []) if from_v else chosen[q])
        for choice in product(*pools):
            fillers = dict(zip(other_parts, choice))
            reference = {
                q: (g[q] if not from_v else fillers[q])
                for q, from_v in zip(other_parts, take_v)
            }
            fillers[p] = b
            reference[p] = g[p]
            if _edge_by_part(h, fillers) != _edge_by_part(h, reference):
                return False
    return True


def diagonal_hypergraph(h: PartiteHypergraph) -> RelStructure:
    """Ordered uniform hypergraph read along aligned part positions.

    Parts must share one size s; an increasing index tuple is an edge of
    the output exactly when feeding position q_i to part i hits an edge.
    """
    sizes = set(h.part_sizes)
    if len(sizes) != 1:
        raise InputError("parts must share one size")
    s = h.part_sizes[0]
    edges = frozenset(
        frozenset(q) for q in combinations(range(s), h.n) if tuple(q) in h.edges
    )
    return RelStructure(s, None, h.n, edges)
