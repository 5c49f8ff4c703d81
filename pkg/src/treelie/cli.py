"""Command-line front-end.

Commands: dims, magnus, lie, psi, star, bracket, johnson, realize,
massey, verify.  Output is JSON (CSV for dims tables); identical flags
and seed give byte-identical output.  Exit codes: 0 success, 1 a
computation or verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .diagrams import DiagramSum, tree_space
from .dspace import dn_basis, dn_contains, dn_rank
from .freegroup import WordSyntaxError, parse_word
from .freelie import dim_lie, from_leading
from .johnson import FreeEndo, johnson_map, realize, weight_level
from .magnus import (
    DEFAULT_CAP,
    EXCEEDS_CAP,
    INFINITE_WEIGHT,
    lcs_weight,
    magnus_expand,
)
from .massey import massey_eval, mu_hat
from .stacking import StackingForm, default_stacking, project_trees, stack_bracket, star
from .verify import SUITES, run_suite


class CliError(Exception):
    def __init__(self, code, message, exit_code=2):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


_GEN_RE = re.compile(r"([gxy])\s*(\d+)")


def _infer_rank(*texts):
    best = 0
    surface = False
    for text in texts:
        for kind, num in _GEN_RE.findall(text or ""):
            n = int(num)
            if kind == "g":
                best = max(best, n)
            else:
                surface = True
                best = max(best, 2 * n - 1 if kind == "x" else 2 * n)
    if best == 0:
        raise CliError("no-generators", "no generators found; pass --rank or --genus")
    if surface and best % 2:
        best += 1
    return best


def _resolve_rank(args, *texts):
    if getattr(args, "genus", None):
        return 2 * args.genus
    if getattr(args, "rank", None):
        return args.rank
    return _infer_rank(*texts)


def _weight_json(weight):
    if weight is INFINITE_WEIGHT:
        return "infinite"
    if weight is EXCEEDS_CAP:
        return "exceeds-cap"
    return weight


def _emit(text, args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, args):
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args)


def _require_json_format(args):
    if getattr(args, "format", "json") != "json":
        raise CliError("format", "csv output is only available for dims")


# ------------------------------------------------------------ tree grammar


def _tokenize_tree(text):
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "(),Y":
            yield ch, pos
            pos += 1
            continue
        match = _GEN_RE.match(text, pos)
        if not match:
            raise CliError("tree-syntax", f"unexpected character {ch!r} at {pos}")
        kind, num = match.groups()
        n = int(num)
        yield ("name", n if kind == "g" else (2 * n - 1 if kind == "x" else 2 * n)), pos
        pos = match.end()


def parse_tree(text, rank):
    """Parse Y(a,b,c) with nested Y(u,v) arms into a DiagramSum.

    The top Y lists its three arms in cyclic order; a nested Y attaches to
    its parent through its first slot, so it takes two arms.  Leaf names
    are generators (g_k, or x_i/y_i when the rank is even).
    """
    tokens = list(_tokenize_tree(text))
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(expected):
        nonlocal pos
        if peek() != expected:
            where = tokens[pos][1] if pos < len(tokens) else len(text)
            raise CliError("tree-syntax", f"expected {expected!r} at {where}")
        pos += 1

    def parse_arm():
        nonlocal pos
        tok = peek()
        if tok == "Y":
            pos += 1
            take("(")
            first = parse_arm()
            take(",")
            second = parse_arm()
            take(")")
            return ("node", first, second)
        if isinstance(tok, tuple) and tok[0] == "name":
            pos += 1
            if not 1 <= tok[1] <= rank:
                raise CliError("tree-syntax", f"leg color out of range for rank {rank}")
            return ("leaf", tok[1])
        where = tokens[pos][1] if pos < len(tokens) else len(text)
        raise CliError("tree-syntax", f"expected a leg name or Y(...) at {where}")

    take("Y")
    take("(")
    arms = [parse_arm()]
    while peek() == ",":
        take(",")
        arms.append(parse_arm())
    take(")")
    if pos != len(tokens):
        raise CliError("tree-syntax", "trailing input after the tree")
    if len(arms) != 3:
        raise CliError("tree-syntax", "the top Y needs exactly three arms")

    def count(node):
        return 1 + count(node[1]) + count(node[2]) if node[0] == "node" else 0

    verts = 1 + sum(count(a) for a in arms)
    legs = []
    edges = []
    state = {"vert": 1}

    def build(node):
        # port this subtree presents to its parent
        if node[0] == "leaf":
            legs.append(node[1])
            return 3 * verts + len(legs) - 1
        v = state["vert"]
        state["vert"] += 1
        edges.append((3 * v + 1, build(node[1])))
        edges.append((3 * v + 2, build(node[2])))
        return 3 * v

    for slot, arm in enumerate(arms):
        edges.append((slot, build(arm)))
    return DiagramSum.from_raw(verts, tuple(legs), tuple(edges))


def _make_form(genus, name):
    base = default_stacking(genus)
    if name == "default":
        return base
    s = [list(r) for r in base.matrix]
    if name == "identity":
        for i in range(len(s)):
            s[i][i] += 1
    elif name == "ones":
        s = [[x + 1 for x in r] for r in s]
    else:
        raise CliError("form", f"unknown stacking form {name!r}")
    return StackingForm(s)


def _load_endo(text):
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError("endo-io", str(exc))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("endo-json", f"bad endomorphism JSON: {exc}")
    try:
        return FreeEndo.from_json(data)
    except (KeyError, TypeError, ValueError, WordSyntaxError) as exc:
        raise CliError("endo-json", f"bad endomorphism JSON: {exc}")


# ----------------------------------------------------------------- dims


def _dims_rows(rank, max_degree):
    rows = []
    for n in range(1, max_degree + 1):
        predicted = dn_rank(rank, n)
        if rank * dim_lie(rank, n) <= 700:
            kernel = len(dn_basis(rank, n))
        else:
            kernel = predicted
        tree_dim = tree_space(n, rank).dimension if n <= 3 else None
        rows.append(
            {
                "degree": n,
                "lie_dim": dim_lie(rank, n),
                "kernel_rank": kernel,
                "tree_dim": tree_dim,
                "predicted_rank": predicted,
            }
        )
    return rows


def cmd_dims(args):
    rank = 2 * args.genus if args.genus else args.rank
    if not rank:
        raise CliError("bounds", "dims needs --rank or --genus")
    if not 1 <= rank <= 6:
        raise CliError("bounds", f"rank {rank} outside the supported range 1..6")
    if not 1 <= args.max_degree <= 8:
        raise CliError("bounds", f"max degree {args.max_degree} outside 1..8")

    cache_file = None
    if args.cache:
        os.makedirs(args.cache, exist_ok=True)
        cache_file = os.path.join(
            args.cache, f"dims-m{rank}-N{args.max_degree}-v{__version__}.json"
        )
    if cache_file and os.path.exists(cache_file):
        with open(cache_file, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        payload = {"rank": rank, "max_degree": args.max_degree, "rows": _dims_rows(rank, args.max_degree)}
        if cache_file:
            with open(cache_file, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2, sort_keys=True)

    if args.format == "csv":
        lines = ["degree,lie_dim,kernel_rank,tree_dim,predicted_rank"]
        for row in payload["rows"]:
            tree = "" if row["tree_dim"] is None else row["tree_dim"]
            lines.append(
                f"{row['degree']},{row['lie_dim']},{row['kernel_rank']},{tree},{row['predicted_rank']}"
            )
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit_json(payload, args)
    return 0


# ------------------------------------------------------------- elements


def cmd_magnus(args):
    _require_json_format(args)
    rank = _resolve_rank(args, args.word)
    try:
        word = parse_word(args.word, rank)
    except WordSyntaxError as exc:
        raise CliError("word-syntax", str(exc))
    series = magnus_expand(word, cap=args.cap)
    payload = {
        "word": word.to_text(),
        "rank": rank,
        "weight": _weight_json(lcs_weight(word, cap=args.cap)),
        "series": series.to_json(),
    }
    _emit_json(payload, args)
    return 0


def cmd_lie(args):
    _require_json_format(args)
    rank = _resolve_rank(args, args.word)
    try:
        word = parse_word(args.word, rank)
    except WordSyntaxError as exc:
        raise CliError("word-syntax", str(exc))
    element = from_leading(word, cap=args.cap)
    payload = {
        "word": word.to_text(),
        "rank": rank,
        "weight": element.degree,
        "element": element.to_json(),
    }
    _emit_json(payload, args)
    return 0


def cmd_psi(args):
    _require_json_format(args)
    rank = _resolve_rank(args, args.tree)
    from .psi import psi

    tree = parse_tree(args.tree, rank)
    image = psi(tree, rank=rank)
    payload = {
        "rank": rank,
        "tree": tree.to_json(),
        "tensor": image.to_json(),
        "in_kernel": dn_contains(image),
    }
    _emit_json(payload, args)
    return 0


def _cmd_star_like(args, project):
    _require_json_format(args)
    rank = _resolve_rank(args, args.lhs + " " + args.rhs)
    if rank % 2:
        raise CliError("bounds", "stacking needs an even rank; pass --genus")
    genus = rank // 2
    form = _make_form(genus, args.form)
    lhs = parse_tree(args.lhs, rank)
    rhs = parse_tree(args.rhs, rank)
    if args.command == "star":
        out = star(lhs, rhs, form)
    else:
        out = stack_bracket(lhs, rhs, form)
    if project:
        out = project_trees(out)
    payload = {
        "genus": genus,
        "form": form.to_json(),
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "result": out.to_json(),
    }
    _emit_json(payload, args)
    return 0


def cmd_star(args):
    return _cmd_star_like(args, project=False)


def cmd_bracket(args):
    return _cmd_star_like(args, project=args.trees)


def cmd_johnson(args):
    _require_json_format(args)
    h = _load_endo(args.endo)
    tensor = johnson_map(h, args.degree)
    payload = {
        "endo": h.to_json(),
        "degree": args.degree,
        "weight_level": _weight_json(weight_level(h, cap=args.degree + 1)),
        "tensor": tensor.to_json(),
        "in_kernel": dn_contains(tensor),
    }
    _emit_json(payload, args)
    return 0


def cmd_realize(args):
    _require_json_format(args)
    rank = 2 * args.genus if args.genus else args.rank
    if not rank:
        raise CliError("bounds", "realize needs --rank or --genus")
    basis = dn_basis(rank, args.degree)
    if not 0 <= args.basis_index < len(basis):
        raise CliError(
            "bounds",
            f"basis index {args.basis_index} out of range; the basis has {len(basis)} elements",
        )
    theta = basis[args.basis_index]
    h = realize(theta, alternate=args.alternate)
    payload = {
        "rank": rank,
        "degree": args.degree,
        "basis_index": args.basis_index,
        "basis_size": len(basis),
        "endo": h.to_json(),
        "weight_level": _weight_json(weight_level(h, cap=args.degree + 1)),
        "round_trip": johnson_map(h, args.degree) == theta,
    }
    _emit_json(payload, args)
    return 0


def cmd_massey(args):
    _require_json_format(args)
    rank = _resolve_rank(args, args.word)
    try:
        word = parse_word(args.word, rank)
    except WordSyntaxError as exc:
        raise CliError("word-syntax", str(exc))
    if args.indices:
        try:
            indices = tuple(int(p) for p in args.indices.split(","))
        except ValueError:
            raise CliError("indices", f"bad index list {args.indices!r}")
        value = massey_eval(indices, word, cap=args.cap)
        payload = {
            "word": word.to_text(),
            "rank": rank,
            "indices": list(indices),
            "value": value,
        }
    else:
        element = mu_hat(word, cap=args.cap)
        payload = {
            "word": word.to_text(),
            "rank": rank,
            "element": element.to_json(),
            "matches_leading": element == from_leading(word, cap=args.cap),
        }
    _emit_json(payload, args)
    return 0


def cmd_verify(args):
    _require_json_format(args)
    if args.list:
        _emit_json({"suites": sorted(SUITES) + ["all"]}, args)
        return 0
    if not args.suite:
        raise CliError("suite", "verify needs a suite name (or --list)")
    if args.suite != "all" and args.suite not in SUITES:
        raise CliError("suite", f"unknown suite {args.suite!r}; try --list")
    report = run_suite(args.suite, level=args.level, seed=args.seed)
    _emit_json(report.to_json(timings=args.timings), args)
    return 0 if report.passed else 1


# ---------------------------------------------------------------- parser


def _build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--rank", "-m", type=int, help="number of free generators")
    shared.add_argument("--genus", "-g", type=int, help="surface genus; rank = 2*genus")
    shared.add_argument("--cap", type=int, default=DEFAULT_CAP, help="series degree cap")
    shared.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    shared.add_argument("--out", help="write output to this file instead of stdout")
    shared.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )

    parser = argparse.ArgumentParser(
        prog="treelie",
        description="tree-level invariant calculators and verification suites",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[shared], help="dimension and rank table")
    p.add_argument("--max-degree", "-N", type=int, default=5)
    p.add_argument("--cache", help="directory for memoized tables")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("magnus", parents=[shared], help="expand a word as a series")
    p.add_argument("--word", "-w", required=True)
    p.set_defaults(func=cmd_magnus)

    p = sub.add_parser("lie", parents=[shared], help="leading Lie element of a word")
    p.add_argument("--word", "-w", required=True)
    p.set_defaults(func=cmd_lie)

    p = sub.add_parser("psi", parents=[shared], help="tensor image of a tree")
    p.add_argument("--tree", "-t", required=True, help="tree expression Y(a,b,c)")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("star", parents=[shared], help="gluing product of two trees")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--form", default="default", help="default | identity | ones")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("bracket", parents=[shared], help="gluing bracket of two trees")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--form", default="default", help="default | identity | ones")
    p.add_argument("--trees", action="store_true", help="project away looped terms")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("johnson", parents=[shared], help="defect tensor of an endomorphism")
    p.add_argument("--endo", required=True, help="endomorphism JSON, or @file")
    p.add_argument("--degree", "-n", type=int, required=True)
    p.set_defaults(func=cmd_johnson)

    p = sub.add_parser("realize", parents=[shared], help="endomorphism for a kernel basis element")
    p.add_argument("--degree", "-n", type=int, required=True)
    p.add_argument("--basis-index", type=int, default=0)
    p.add_argument("--alternate", action="store_true", help="use the second lift")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("massey", parents=[shared], help="pairing values and reconstruction")
    p.add_argument("--word", "-w", required=True)
    p.add_argument("--indices", "-I", help="comma-separated generator indices")
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("verify", parents=[shared], help="run a named check suite")
    p.add_argument("suite", nargs="?", help="suite name, or 'all'")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--timings", action="store_true", help="include per-check seconds")
    p.add_argument("--list", action="store_true", help="list available suites")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        payload = {"error": {"code": exc.code, "message": str(exc)}}
        sys.stderr.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return exc.exit_code
    except (ValueError, KeyError) as exc:
        payload = {"error": {"code": "domain", "message": str(exc)}}
        sys.stderr.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
