"""Finite structures, quantifier-free formulas, and parameter-type counting.

A formula here is quantifier-free with positional variable blocks: block 0
is the object block (rendered "x"), blocks 1..n are parameter blocks
(rendered "y0", "y1", ...).  Every block has a declared length, so a block
is assigned a tuple of domain elements.  Evaluating a formula over all
object tuples against a fixed structure yields a set system over the
product of the parameter tuple spaces; counting distinct truth patterns of
object tuples against finite parameter boxes counts realized types.  The
two views agree cell by cell, and the test suite checks that agreement
directly.

Formulas are exchanged as s-expressions, e.g.::

    (and (R x y0 y1) (not (= x y0)))

Variable tokens name a block ("x", "y0", "y1", ...) with an optional
component suffix ("x.2" is component 2 of block 0).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import TYPE_CHECKING, Callable, Iterable, Mapping, Sequence

from .errors import BudgetExceededError, InputError
from .setsys import ProductUniverse, SetSystem, vc_n_dim

if TYPE_CHECKING:  # pragma: no cover
    from .zar import PartiteHypergraph


@dataclass(frozen=True)
class Relation:
    arity: int
    tuples: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if self.arity < 1:
            raise InputError("relation arity must be positive")
        tups = frozenset(tuple(int(v) for v in t) for t in self.tuples)
        for t in tups:
            if len(t) != self.arity:
                raise InputError(f"tuple {t} does not match arity {self.arity}")
        object.__setattr__(self, "tuples", tups)


@dataclass(frozen=True)
class FiniteStructure:
    """Finite relational structure on domain {0..domain_size-1}."""

    domain_size: int
    relations: Mapping[str, Relation]

    def __post_init__(self):
        if self.domain_size < 1:
            raise InputError("domain must be nonempty")
        rels = dict(self.relations)
        for name, rel in rels.items():
            for t in rel.tuples:
                if any(not 0 <= v < self.domain_size for v in t):
                    raise InputError(f"relation {name} tuple {t} leaves the domain")
        object.__setattr__(self, "relations", rels)

    def holds(self, name: str, t: Sequence[int]) -> bool:
        rel = self.relations.get(name)
        if rel is None:
            raise InputError(f"unknown relation {name}")
        if len(t) != rel.arity:
            raise InputError(f"relation {name} expects arity {rel.arity}, got {len(t)}")
        return tuple(t) in rel.tuples

    def to_json(self) -> str:
        doc = {
            "domain": self.domain_size,
            "relations": {
                name: {"arity": rel.arity, "tuples": sorted(list(t) for t in rel.tuples)}
                for name, rel in sorted(self.relations.items())
            },
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FiniteStructure":
        try:
            doc = json.loads(text)
            rels = {
                name: Relation(int(spec["arity"]), frozenset(map(tuple, spec["tuples"])))
                for name, spec in doc["relations"].items()
            }
            return cls(int(doc["domain"]), rels)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad structure document: {exc}") from exc


# Formula AST nodes are nested tuples:
#   ("atom", name, ((block, comp), ...))
#   ("eq", (block, comp), (block, comp))
#   ("not", node) / ("and", node, ...) / ("or", node, ...)


@dataclass(frozen=True)
class QfFormula:
    """Quantifier-free formula over positional variable blocks."""

    block_lengths: tuple[int, ...]
    body: tuple

    def __post_init__(self):
        lengths = tuple(int(v) for v in self.block_lengths)
        if len(lengths) < 2:
            raise InputError("a formula needs an object block and a parameter block")
        if any(v < 1 for v in lengths):
            raise InputError("block lengths must be positive")
        object.__setattr__(self, "block_lengths", lengths)
        _validate_node(self.body, lengths)

    @property
    def n(self) -> int:
        """Number of parameter blocks."""
        return len(self.block_lengths) - 1

    def __str__(self) -> str:
        return format_formula(self)


def _block_name(index: int) -> str:
    return "x" if index == 0 else f"y{index - 1}"


def _parse_var(token: str, lengths: tuple[int, ...]):
    name, _, comp = token.partition(".")
    comp_idx = int(comp) if comp else 0
    if name == "x":
        block = 0
    elif name.startswith("y") and name[1:].isdigit():
        block = 1 + int(name[1:])
    else:
        raise InputError(f"unknown variable {token!r}")
    if block >= len(lengths) or not 0 <= comp_idx < lengths[block]:
        raise InputError(f"variable {token!r} leaves the declared blocks")
    return (block, comp_idx)


def _validate_node(node, lengths):
    if not isinstance(node, tuple) or not node:
        raise InputError(f"bad formula node {node!r}")
    op = node[0]
    if op == "atom":
        _, _name, vars_ = node
        for block, comp in vars_:
            if block >= len(lengths) or not 0 <= comp < lengths[block]:
                raise InputError(f"variable ({block},{comp}) leaves the declared blocks")
    elif op == "eq":
        for block, comp in node[1:]:
            if block >= len(lengths) or not 0 <= comp < lengths[block]:
                raise InputError(f"variable ({block},{comp}) leaves the declared blocks")
    elif op == "not":
        if len(node) != 2:
            raise InputError("negation takes one argument")
        _validate_node(node[1], lengths)
    elif op in ("and", "or"):
        if len(node) < 2:
            raise InputError(f"{op} needs at least one argument")
        for child in node[1:]:
            _validate_node(child, lengths)
    else:
        raise InputError(f"unknown operator {op!r}")


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise InputError("unexpected end of formula")
    tok = tokens[pos]
    if tok == "(":
        out = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read(tokens, pos)
            out.append(item)
        if pos >= len(tokens):
            raise InputError("unbalanced parentheses")
        return out, pos + 1
    if tok == ")":
        raise InputError("unexpected ')'")
    return tok, pos + 1


def _to_node(sexpr, lengths):
    if isinstance(sexpr, str):
        raise InputError(f"bare token {sexpr!r} is not a formula")
    if not sexpr:
        raise InputError("empty expression")
    head = sexpr[0]
    if not isinstance(head, str):
        raise InputError("operator position must hold a symbol")
    if head == "not":
        if len(sexpr) != 2:
            raise InputError("not takes one argument")
        return ("not", _to_node(sexpr[1], lengths))
    if head in ("and", "or"):
        if len(sexpr) < 2:
            raise InputError(f"{head} needs at least one argument")
        return (head, *(_to_node(child, lengths) for child in sexpr[1:]))
    if head == "=":
        if len(sexpr) != 3 or not all(isinstance(t, str) for t in sexpr[1:]):
            raise InputError("= takes two variables")
        return ("eq", _parse_var(sexpr[1], lengths), _parse_var(sexpr[2], lengths))
    # relation application
    if not all(isinstance(t, str) for t in sexpr[1:]):
        raise InputError(f"relation {head} takes variables only")
    return ("atom", head, tuple(_parse_var(t, lengths) for t in sexpr[1:]))


def parse_formula(text: str, block_lengths: Sequence[int] = (1, 1)) -> QfFormula:
    """Parse an s-expression against declared block lengths."""
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty formula")
    sexpr, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise InputError("trailing tokens after formula")
    lengths = tuple(int(v) for v in block_lengths)
    return QfFormula(lengths, _to_node(sexpr, lengths))


def format_formula(phi: QfFormula) -> str:
    def var_token(v):
        block, comp = v
        name = _block_name(block)
        return name if comp == 0 else f"{name}.{comp}"

    def render(node):
        op = node[0]
        if op == "atom":
            return "(" + " ".join([node[1], *map(var_token, node[2])]) + ")"
        if op == "eq":
            return f"(= {var_token(node[1])} {var_token(node[2])})"
        if op == "not":
            return f"(not {render(node[1])})"
        return "(" + " ".join([op, *map(render, node[1:])]) + ")"

    return render(phi.body)


def negate(phi: QfFormula) -> QfFormula:
    return QfFormula(phi.block_lengths, ("not", phi.body))


def conjoin(phi: QfFormula, psi: QfFormula) -> QfFormula:
    if phi.block_lengths != psi.block_lengths:
        raise InputError("conjunction needs matching block shapes")
    return QfFormula(phi.block_lengths, ("and", phi.body, psi.body))


def permute_blocks(phi: QfFormula, perm: Sequence[int]) -> QfFormula:
    """Reorder parameter blocks: new block j is the old block perm[j].

    The object block must stay in place; exchanging it with a parameter
    block would change which family the formula defines, not merely
    relabel it.
    """
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(len(phi.block_lengths))):
        raise InputError("perm must rearrange all blocks")
    if perm[0] != 0:
        raise InputError("the object block cannot move")
    position = {old: new for new, old in enumerate(perm)}

    def remap(node):
        op = node[0]
        if op == "atom":
            return ("atom", node[1], tuple((position[b], c) for b, c in node[2]))
        if op == "eq":
            b1, c1 = node[1]
            b2, c2 = node[2]
            return ("eq", (position[b1], c1), (position[b2], c2))
        if op == "not":
            return ("not", remap(node[1]))
        return (op, *(remap(child) for child in node[1:]))

    lengths = tuple(phi.block_lengths[old] for old in perm)
    return QfFormula(lengths, remap(phi.body))


def _compile(structure: FiniteStructure, phi: QfFormula) -> Callable:
    """Closure evaluator over a per-block assignment; assumes valid input."""
    rels = structure.relations

    def build(node):
        op = node[0]
        if op == "atom":
            name, vars_ = node[1], node[2]
            rel = rels.get(name)
            if rel is None:
                raise InputError(f"unknown relation {name}")
            if rel.arity != len(vars_):
                raise InputError(
                    f"relation {name} expects arity {rel.arity}, got {len(vars_)}"
                )
            tuples = rel.tuples
            return lambda env: tuple(env[b][c] for b, c in vars_) in tuples
        if op == "eq":
            (b1, c1), (b2, c2) = node[1], node[2]
            return lambda env: env[b1][c1] == env[b2][c2]
        if op == "not":
            inner = build(node[1])
            return lambda env: not inner(env)
        children = [build(child) for child in node[1:]]
        if op == "and":
            return lambda env: all(f(env) for f in children)
        return lambda env: any(f(env) for f in children)

    return build(phi.body)


def eval_formula(
    structure: FiniteStructure, phi: QfFormula, assignment: Sequence[Sequence[int]]
) -> bool:
    """Evaluate phi under one tuple per block."""
    if len(assignment) != len(phi.block_lengths):
        raise InputError("assignment must cover every block")
    env = []
    for tup, length in zip(assignment, phi.block_lengths):
        tup = tuple(int(v) for v in tup)
        if len(tup) != length:
            raise InputError(f"block tuple {tup} does not match length {length}")
        if any(not 0 <= v < structure.domain_size for v in tup):
            raise InputError(f"assignment {tup} leaves the domain")
        env.append(tup)
    return _compile(structure, phi)(tuple(env))


def block_tuples(structure: FiniteStructure, length: int) -> list[tuple[int, ...]]:
    """All length-long domain tuples in row-major order."""
    return list(product(range(structure.domain_size), repeat=length))


def phi_class(structure: FiniteStructure, phi: QfFormula) -> SetSystem:
    """Set system of phi's definable sets, one member per object tuple.

    The universe has one part per parameter block, of size
    domain ** block_length, with parameter tuples indexed row-major.
    """
    fn = _compile(structure, phi)
    spaces = [block_tuples(structure, l) for l in phi.block_lengths[1:]]
    universe = ProductUniverse(tuple(len(s) for s in spaces))
    members = set()
    for b in product(range(structure.domain_size), repeat=phi.block_lengths[0]):
        mask = 0
        for g, cell in enumerate(product(*spaces)):
            if fn((b, *cell)):
                mask |= 1 << g
        members.add(mask)
    return SetSystem(universe, tuple(sorted(members)))


@dataclass(frozen=True)
class TypeCount:
    boxes: tuple[tuple[tuple[int, ...], ...], ...]
    count: int


def _check_delta(delta: Sequence[QfFormula]) -> tuple[int, ...]:
    if not delta:
        raise InputError("delta must contain at least one formula")
    shape = delta[0].block_lengths
    for phi in delta:
        if phi.block_lengths != shape:
            raise InputError("all formulas in delta must share block lengths")
    return shape


def count_types(
    structure: FiniteStructure,
    delta: Sequence[QfFormula],
    boxes: Sequence[Sequence[Sequence[int]]],
) -> TypeCount:
    """Number of distinct truth patterns of object tuples on the boxes."""
    shape = _check_delta(delta)
    if len(boxes) != len(shape) - 1:
        raise InputError("one parameter box per parameter block required")
    norm = []
    for box, length in zip(boxes, shape[1:]):
        box = tuple(tuple(int(v) for v in t) for t in box)
        for t in box:
            if len(t) != length:
                raise InputError(f"box tuple {t} does not match block length {length}")
            if any(not 0 <= v < structure.domain_size for v in t):
                raise InputError(f"box tuple {t} leaves the domain")
        if len(set(box)) != len(box):
            raise InputError("box tuples must be distinct")
        norm.append(box)
    fns = [_compile(structure, phi) for phi in delta]
    cells = list(product(*norm))
    patterns = set()
    for b in product(range(structure.domain_size), repeat=shape[0]):
        patterns.add(tuple(fn((b, *cell)) for fn in fns for cell in cells))
    return TypeCount(tuple(norm), len(patterns))


def pi_phi(
    structure: FiniteStructure,
    delta: Sequence[QfFormula],
    m: int,
    samples: int | None = None,
    seed: int = 0,
) -> int:
    """Maximum type count over parameter boxes of size m per block.

    Exhaustive by default.  With samples set, only that many random boxes
    are inspected and the result is a lower bound; the exhaustive mode is
    the one every verification in this package relies on.
    """
    shape = _check_delta(delta)
    if m < 0:
        raise InputError("box size must be nonnegative")
    spaces = [block_tuples(structure, l) for l in shape[1:]]
    if any(m > len(s) for s in spaces):
        raise InputError(f"box size {m} exceeds a parameter tuple space")
    if samples is None:
        pools = [combinations(space, m) for space in spaces]
        candidates = product(*pools)
    else:
        rng = random.Random(seed)
        candidates = (
            tuple(tuple(rng.sample(space, m)) for space in spaces) for _ in range(samples)
        )
    best = 0
    for boxes in candidates:
        best = max(best, count_types(structure, delta, boxes).count)
    return best


def dim_phi(
    structure: FiniteStructure, phi: QfFormula, size_cap: int | None = None
) -> int:
    """Box dimension of the formula's definable family."""
    return vc_n_dim(phi_class(structure, phi), size_cap)


def verify_ipn_witness(
    structure: FiniteStructure,
    phi: QfFormula,
    params: Sequence[Sequence[Sequence[int]]],
    budget: int = 1 << 16,
) -> bool:
    """Check that every 0/1 pattern on the parameter grid is realized.

    The grid is the index product over the given parameter lists; a
    pattern s is realized when some object tuple satisfies phi exactly on
    the cells in s.  Refuses (never samples) when the pattern count
    exceeds the budget.
    """
    shape = phi.block_lengths
    if len(params) != phi.n:
        raise InputError("one parameter list per parameter block required")
    norm = []
    for lst, length in zip(params, shape[1:]):
        lst = tuple(tuple(int(v) for v in t) for t in lst)
        if not lst:
            raise InputError("parameter lists must be nonempty")
        for t in lst:
            if len(t) != length:
                raise InputError(f"parameter tuple {t} does not match length {length}")
            if any(not 0 <= v < structure.domain_size for v in t):
                raise InputError(f"parameter tuple {t} leaves the domain")
        if len(set(lst)) != len(lst):
            raise InputError("parameter tuples must be distinct")
        norm.append(lst)
    grid = 1
    for lst in norm:
        grid *= len(lst)
    total = 1 << grid
    if total > budget:
        raise BudgetExceededError(
            f"{total} patterns exceed the budget of {budget}; refusing to sample"
        )
    fn = _compile(structure, phi)
    seen = set()
    for b in product(range(structure.domain_size), repeat=shape[0]):
        pattern = 0
        for g, cell in enumerate(product(*norm)):
            if fn((b, *cell)):
                pattern |= 1 << g
        seen.add(pattern)
        if len(seen) == total:
            return True
    return False


@dataclass(frozen=True)
class IndexedFamily:
    """Equal-length element tuples indexed by the vertices of a hypergraph."""

    index: object
    tuples: Mapping[object, tuple[int, ...]]

    def __post_init__(self):
        tups = {k: tuple(int(v) for v in t) for k, t in dict(self.tuples).items()}
        lengths = {len(t) for t in tups.values()}
        if len(lengths) > 1:
            raise InputError("indexed tuples must share one length")
        object.__setattr__(self, "tuples", tups)

    @property
    def tuple_length(self) -> int:
        return len(next(iter(self.tuples.values()))) if self.tuples else 0


def _index_view(index):
    """Uniform view of an index structure: vertices, parts, order, edges."""
    if hasattr(index, "part_sizes") and hasattr(index, "edges") and hasattr(index, "n"):
        # partite hypergraph: vertices are (part, position) pairs
        vertices = [
            (p, i) for p in range(index.n) for i in range(index.part_sizes[p])
        ]
        part_of = {v: v[0] for v in vertices}
        edge_set = index.edges

        def edge_holds(vs):
            if len(vs) != index.n:
                return False
            by_part = {}
            for p, i in vs:
                if p in by_part:
                    return False
                by_part[p] = i
            if len(by_part) != index.n:
                return False
            return tuple(by_part[p] for p in range(index.n)) in edge_set

        return vertices, part_of, index.n, edge_holds
    if hasattr(index, "size") and hasattr(index, "edges"):
        vertices = list(range(index.size))
        if index.part_sizes is not None:
            part_of, start = {}, 0
            for p, s in enumerate(index.part_sizes):
                for v in range(start, start + s):
                    part_of[v] = p
                start += s
        else:
            part_of = {v: 0 for v in vertices}
        arity = index.edge_arity or 0

        def edge_holds(vs):
            if index.edges is None or len(vs) != arity or len(set(vs)) != arity:
                return False
            return frozenset(vs) in index.edges

        return vertices, part_of, arity, edge_holds
    raise InputError("unsupported index structure")


def check_encodes(
    structure: FiniteStructure,
    phi: QfFormula,
    fam: IndexedFamily,
    hypergraph: "PartiteHypergraph",
) -> bool:
    """True when phi on the indexed tuples reproduces the hypergraph's edges.

    Block j of phi is fed the tuple indexed by the part-j vertex of each
    cross tuple, so the formula needs exactly one block per part.
    """
    if len(phi.block_lengths) != hypergraph.n:
        raise InputError("formula needs one block per hypergraph part")
    for p in range(hypergraph.n):
        for i in range(hypergraph.part_sizes[p]):
            if (p, i) not in fam.tuples:
                raise InputError(f"vertex ({p},{i}) has no indexed tuple")
    for p, length in enumerate(phi.block_lengths):
        if fam.tuple_length != length:
            raise InputError("indexed tuple length must match every block length")
    fn = _compile(structure, phi)
    for cross in product(*(range(s) for s in hypergraph.part_sizes)):
        env = tuple(fam.tuples[(p, i)] for p, i in enumerate(cross))
        if fn(env) != (cross in hypergraph.edges):
            return False
    return True


def check_indiscernible(
    fam: IndexedFamily,
    reduct: Iterable[str],
    structure: FiniteStructure,
    delta: Sequence[QfFormula],
    arity_cap: int,
):
    """Check that index tuples with equal reduct types get equal delta types.

    The reduct names which index relations count: any subset of
    {"order", "parts", "edge"}.  Equality atoms always count.  Returns
    True, or the first violating pair of index tuples.
    """
    reduct = frozenset(reduct)
    if not reduct <= {"order", "parts", "edge"}:
        raise InputError("reduct must be a subset of {order, parts, edge}")
    if arity_cap < 1:
        raise InputError("arity cap must be positive")
    shape = _check_delta(delta)
    if any(l != fam.tuple_length for l in shape):
        raise InputError("delta block lengths must match the indexed tuple length")
    vertices, part_of, edge_arity, edge_holds = _index_view(fam.index)
    for v in vertices:
        if v not in fam.tuples:
            raise InputError(f"index vertex {v} has no tuple")
    rank = {v: i for i, v in enumerate(vertices)}
    fns = [_compile(structure, phi) for phi in delta]
    blocks = len(shape)

    def reduct_type(w):
        sign = []
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                a, b = rank[w[i]], rank[w[j]]
                if "order" in reduct:
                    sign.append((a > b) - (a < b))
                else:
                    sign.append(0 if a == b else 1)
        parts = tuple(part_of[v] for v in w) if "parts" in reduct else None
        edges = None
        if "edge" in reduct and edge_arity:
            edges = tuple(
                edge_holds([w[i] for i in idx])
                for idx in combinations(range(len(w)), edge_arity)
            ) if len(w) >= edge_arity else ()
        return (tuple(sign), parts, edges)

    def delta_type(w):
        bits = []
        for sigma in product(range(len(w)), repeat=blocks):
            env = tuple(fam.tuples[w[i]] for i in sigma)
            bits.extend(fn(env) for fn in fns)
        return tuple(bits)

    for length in range(1, arity_cap + 1):
        groups: dict = {}
        for w in product(vertices, repeat=length):
            key = reduct_type(w)
            val = delta_type(w)
            if key in groups:
                prev_w, prev_val = groups[key]
                if prev_val != val:
                    return (prev_w, w)
            else:
                groups[key] = (w, val)
    return True
