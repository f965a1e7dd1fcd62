"""Command line front end.

Every verb reads JSON inputs, writes CSV or JSON to stdout or --out, and
is deterministic byte for byte.  Exit codes: 0 success, 1 malformed input
or arguments, 2 an explicit refusal (budget exhausted, generation or walk
or selection gave up).  Floats print with %.6g.  VCN_THREADS is accepted
and validated for compatibility; the computation is single threaded, so
the value never changes any output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import (
    BudgetExceededError,
    GenerationError,
    InputError,
    SelectionStuckError,
    WalkStuckError,
)
from .hyperrand import ExtensionHypergraph, adjacency_walk, gen_extension_hypergraph
from .ramsey import (
    ColoringProblem,
    RelStructure,
    arrow_scan,
    build_direct_sum_witness,
    encode_tilde,
    ordered_set_oracle,
)
from .setsys import (
    GroundFamily,
    SetSystem,
    sauer_binomial_bound,
    shatter_fn,
    shift,
    vc_n_dim,
)
from .zar import (
    PartiteHypergraph,
    build_counterexample_structure,
    build_extremal_family,
    erdos_bound,
    zarankiewicz,
)


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as InputError (exit 1)."""

    def error(self, message):
        raise InputError(message)


def _parse_range(text: str) -> list[int]:
    """Accept '3', '1..4', or '2,3,5'."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InputError(f"bad range {text!r}; use M, LO..HI, or A,B,C") from None


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _table(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        doc = [dict(zip(header, row)) for row in rows]
        return json.dumps(doc, sort_keys=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue().rstrip("\n")


def _load_system(path: str) -> SetSystem:
    return SetSystem.from_json(_read_text(path))


def _load_structure(path: str) -> RelStructure:
    return RelStructure.from_json(_read_text(path))


def _load_hypergraph(path: str) -> PartiteHypergraph:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from exc
    if isinstance(doc, dict) and "t" in doc:
        return ExtensionHypergraph.from_json(text).base
    return PartiteHypergraph.from_json(text)


def cmd_zar_table(args) -> str:
    rows = []
    for m in _parse_range(args.m):
        res = zarankiewicz(args.n, m, args.d, args.budget)
        bound = erdos_bound(args.n, m, args.d)
        rows.append([args.n, m, args.d, res.z, res.status, bound.z_bound])
    return _table(["n", "m", "d", "z", "status", "erdos_bound"], rows, args.format)


def cmd_shatter(args) -> str:
    system = _load_system(args.path)
    n = system.universe.n
    d = args.d if args.d is not None else vc_n_dim(system)
    rows = []
    for m in _parse_range(args.m):
        res = zarankiewicz(n, m, d + 1, args.budget)
        if res.status != "exact":
            raise BudgetExceededError(
                f"threshold for m={m} is only a lower bound; "
                "the binomial bound would be unreliable"
            )
        pi = shatter_fn(system, m)
        bound = sauer_binomial_bound(n, m, res.z)
        rows.append([m, pi, bound, pi == bound])
    return _table(["m", "pi", "bound", "tight"], rows, args.format)


def cmd_dim(args) -> str:
    value = vc_n_dim(_load_system(args.path))
    if args.format == "json":
        return json.dumps({"dim": value}, sort_keys=True)
    return str(value)


def cmd_shift(args) -> str:
    family = GroundFamily.from_json(_read_text(args.path))
    return shift(family).to_json()


def cmd_extremal(args) -> str:
    fam = build_extremal_family(args.n, args.d, _parse_range(args.m), args.budget)
    return fam.to_json()


def cmd_counterexample(args) -> str:
    return build_counterexample_structure(_parse_range(args.m), args.budget).to_json()


def cmd_arrow(args) -> str:
    a = _load_structure(args.a)
    b = _load_structure(args.b)
    c = _load_structure(args.c)
    budget = args.budget if args.budget is not None else 1 << 20
    result, checked = arrow_scan(ColoringProblem(a, b, c, args.k), budget)
    rows = [[a.size, b.size, c.size, args.k, result, checked]]
    header = ["a_size", "b_size", "c_size", "k", "result", "colorings_checked"]
    return _table(header, rows, args.format)


def cmd_direct_sum(args) -> str:
    parts = [_load_structure(p) for p in (args.a0, args.b0, args.a1, args.b1)]
    oracle = None
    if args.budget is not None:
        oracle = ordered_set_oracle(args.budget)
    witness = build_direct_sum_witness(*parts, args.k, witness_oracle=oracle)
    return witness.to_json()


def cmd_encode_partite(args) -> str:
    return encode_tilde(_load_structure(args.path)).to_json()


def cmd_gen_random(args) -> str:
    retries = args.budget if args.budget is not None else 50
    eh = gen_extension_hypergraph(args.n, args.m, args.t, args.seed, retries)
    return eh.to_json()


def cmd_walk(args) -> str:
    h = _load_hypergraph(args.hypergraph)
    try:
        doc = json.loads(_read_text(args.pair))
        w = [tuple(map(int, v)) for v in doc["w"]]
        wp = [tuple(map(int, v)) for v in doc["w_prime"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad pair document: {exc}") from exc
    steps = adjacency_walk(h, w, wp)
    out = {
        "length": len(steps) - 1,
        "steps": [[list(v) for v in step] for step in steps],
    }
    return json.dumps(out, sort_keys=True)


def cmd_verify_bounds(args) -> str:
    system = _load_system(args.path)
    n = system.universe.n
    d = args.d if args.d is not None else vc_n_dim(system)
    rows = []
    for m in _parse_range(args.m):
        res = zarankiewicz(n, m, d + 1, args.budget)
        if res.status != "exact":
            raise BudgetExceededError(
                f"threshold for m={m} is only a lower bound; cannot certify"
            )
        pi = shatter_fn(system, m)
        bound = sauer_binomial_bound(n, m, res.z)
        rows.append([m, pi, bound, pi <= bound])
    return _table(["m", "pi", "bound", "ok"], rows, args.format)


def _add_common(sub, fmt_choices=None, fmt_default=None):
    sub.add_argument("--out", help="write the output here instead of stdout")
    if fmt_choices:
        sub.add_argument(
            "--format", choices=fmt_choices, default=fmt_default, help="output format"
        )
    sub.add_argument(
        "--budget",
        type=int,
        help="search/enumeration budget; refusals exit with code 2",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="vcn", description=__doc__)
    subs = parser.add_subparsers(dest="verb", required=True)

    s = subs.add_parser("zar-table", help="box-threshold table over a range of m")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", required=True, help="M, LO..HI, or A,B,C")
    s.add_argument("--d", type=int, required=True)
    _add_common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_zar_table)

    s = subs.add_parser("shatter", help="shatter function vs the binomial bound")
    s.add_argument("path", help="set system JSON")
    s.add_argument("--m", required=True)
    s.add_argument("--d", type=int, help="assume this dimension; default: compute it")
    _add_common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_shatter)

    s = subs.add_parser("dim", help="box dimension of a set system")
    s.add_argument("path", help="set system JSON")
    _add_common(s, ("text", "json"), "text")
    s.set_defaults(func=cmd_dim)

    s = subs.add_parser("shift", help="down-shift a ground family to its fixpoint")
    s.add_argument("path", help="ground family JSON")
    _add_common(s)
    s.set_defaults(func=cmd_shift)

    s = subs.add_parser("extremal", help="family meeting the binomial bound's order")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", required=True, help="block sizes")
    _add_common(s)
    s.set_defaults(func=cmd_extremal)

    s = subs.add_parser(
        "counterexample", help="structure separating formula types from traces"
    )
    s.add_argument("--m", required=True, help="block sizes")
    _add_common(s)
    s.set_defaults(func=cmd_counterexample)

    s = subs.add_parser("arrow", help="exhaustive partition arrow check")
    s.add_argument("a", help="pattern structure JSON")
    s.add_argument("b", help="target structure JSON")
    s.add_argument("c", help="ambient structure JSON")
    s.add_argument("--k", type=int, required=True, help="number of colors")
    _add_common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_arrow)

    s = subs.add_parser("direct-sum", help="witness for a tagged-sum arrow problem")
    s.add_argument("a0")
    s.add_argument("b0")
    s.add_argument("a1")
    s.add_argument("b1")
    s.add_argument("--k", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_direct_sum)

    s = subs.add_parser("encode-partite", help="partite double of an ordered hypergraph")
    s.add_argument("path", help="partless structure JSON with an edge relation")
    _add_common(s)
    s.set_defaults(func=cmd_encode_partite)

    s = subs.add_parser("gen-random", help="sample a hypergraph with a verified level")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True, help="size of every part")
    s.add_argument("--t", type=int, required=True, help="extension level to certify")
    s.add_argument("--seed", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_gen_random)

    s = subs.add_parser("walk", help="adjacency walk between two vertex sets")
    s.add_argument("hypergraph", help="hypergraph JSON")
    s.add_argument("pair", help='JSON {"w": [[part, pos], ...], "w_prime": [...]}')
    _add_common(s)
    s.set_defaults(func=cmd_walk)

    s = subs.add_parser("verify-bounds", help="certify the shatter bound on a system")
    s.add_argument("path", help="set system JSON")
    s.add_argument("--m", required=True)
    s.add_argument("--d", type=int, help="assume this dimension; default: compute it")
    _add_common(s, ("csv", "json"), "csv")
    s.set_defaults(func=cmd_verify_bounds)

    return parser


def _check_threads() -> None:
    raw = os.environ.get("VCN_THREADS")
    if raw is None:
        return
    try:
        value = int(raw)
    except ValueError:
        raise InputError("VCN_THREADS must be an integer") from None
    if value < 1:
        raise InputError("VCN_THREADS must be positive")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        _check_threads()
        args = parser.parse_args(argv)
        text = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceededError, GenerationError, WalkStuckError, SelectionStuckError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
