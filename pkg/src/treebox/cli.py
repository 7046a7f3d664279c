"""Command-line front end: tree specs, reports, file I/O.

Tree specs name a catalog entry (``K``, ``B:2``, ``line:b``), a JSON tree
file (path ending in .json), or a construction expression:

    fuse(B:1@up,B:2@up,r0=2)     periodic(K,r=2)     code(bB,aA)

Ray names: up/down (vertical), right/left (horizontal).  All outputs are
deterministic; repeated invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import acceptance
from .catalog import catalog_tree
from .constructions import (
    Ray,
    coding_base_points,
    coding_tree,
    fuse,
    periodic_approximation,
)
from .dynamics import (
    accumulates_on,
    closure_sample,
    end_profile,
    expansivity_witness,
    growth_function,
    orbit_graph,
    recurrence_witnesses,
    specialization_matrix,
    witnesses_to_jsonl,
)
from .errors import TreeboxError, UnknownTreeError
from .trees import (
    FiniteTree,
    LazyTree,
    ball_metric,
    materialize,
    tree_dumps,
    tree_loads,
    tree_to_dot,
)
from .words import letters_to_text, text_to_letters


def _letter_index(ch: str) -> int:
    if len(ch) != 1 or not ch.isalpha() or not ch.islower():
        raise UnknownTreeError(f"expected a lowercase generator letter, got {ch!r}")
    return ord(ch) - ord("a") + 1


def _split_args(body: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur or body:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


@dataclass(frozen=True)
class TreeSpec:
    """A parsed --tree argument; ``render()`` round-trips through ``parse``."""

    kind: str  # "catalog" | "file" | "fuse" | "periodic" | "code"
    payload: tuple

    @classmethod
    def parse(cls, text: str) -> "TreeSpec":
        s = text.strip()
        if s.endswith(".json"):
            return cls("file", (s,))
        for head in ("fuse", "periodic", "code"):
            if s.startswith(head + "(") and s.endswith(")"):
                args = _split_args(s[len(head) + 1 : -1])
                return getattr(cls, "_parse_" + head)(args)
        if "(" in s or ")" in s or "@" in s:
            raise UnknownTreeError(f"cannot parse tree spec {text!r}")
        name, _, params = s.partition(":")
        return cls("catalog", (name, params))

    @classmethod
    def _parse_fuse(cls, args: list) -> "TreeSpec":
        sides = [a for a in args if "=" not in a]
        if len(sides) != 2:
            raise UnknownTreeError("fuse(...) needs two SPEC@RAY arguments")
        opts = dict(a.split("=", 1) for a in args if "=" in a)
        r0 = int(opts.get("r0", "2"))
        axes = opts.get("axes", "ab")
        parsed = []
        for side in sides:
            spec_text, _, ray = side.partition("@")
            parsed.append((cls.parse(spec_text), ray or "up"))
        return cls("fuse", (parsed[0], parsed[1], r0, axes))

    @classmethod
    def _parse_periodic(cls, args: list) -> "TreeSpec":
        if not args:
            raise UnknownTreeError("periodic(...) needs a SPEC and r=N")
        opts = dict(a.split("=", 1) for a in args if "=" in a)
        specs = [a for a in args if "=" not in a]
        if len(specs) != 1 or "r" not in opts:
            raise UnknownTreeError("periodic(SPEC,r=N) malformed")
        return cls("periodic", (cls.parse(specs[0]), int(opts["r"])))

    @classmethod
    def _parse_code(cls, args: list) -> "TreeSpec":
        if len(args) == 1:
            return cls("code", ("", args[0]))
        if len(args) == 2:
            return cls("code", (args[0], args[1]))
        raise UnknownTreeError("code([PREFIX,]TAIL) malformed")

    def render(self) -> str:
        if self.kind == "catalog":
            name, params = self.payload
            return name + (":" + params if params else "")
        if self.kind == "file":
            return self.payload[0]
        if self.kind == "fuse":
            (sa, ra), (sb, rb), r0, axes = self.payload
            extra = f",r0={r0}" + (f",axes={axes}" if axes != "ab" else "")
            return f"fuse({sa.render()}@{ra},{sb.render()}@{rb}{extra})"
        if self.kind == "periodic":
            spec, r = self.payload
            return f"periodic({spec.render()},r={r})"
        prefix, tail = self.payload
        return f"code({prefix + ',' if prefix else ''}{tail})"

    def build(self):
        if self.kind == "catalog":
            name, params = self.payload
            parsed = []
            for p in params.split(",") if params else []:
                parsed.append(int(p) if p.isdigit() else _letter_index(p))
            return catalog_tree(name, *parsed)
        if self.kind == "file":
            with open(self.payload[0], "r", encoding="utf-8") as fh:
                return tree_loads(fh.read())
        if self.kind == "fuse":
            (sa, ra), (sb, rb), r0, axes = self.payload
            t1, t2 = _as_lazy(sa.build()), _as_lazy(sb.build())
            h, ht = (_letter_index(c) for c in axes)
            return fuse(t1, Ray.named(t1, ra), t2, Ray.named(t2, rb), h, ht, r0).tree
        if self.kind == "periodic":
            spec, r = self.payload
            return periodic_approximation(_as_lazy(spec.build()), r).tree
        prefix, tail = self.payload
        return coding_tree(prefix, tail)


def _as_lazy(t) -> LazyTree:
    if isinstance(t, LazyTree):
        return t
    return LazyTree(t.rank, t.vertices.__contains__, f"finite[{t.window}]")


def _build(text: str):
    return TreeSpec.parse(text).build()


def _materialized(text: str, window: int) -> FiniteTree:
    t = _build(text)
    if isinstance(t, FiniteTree):
        if t.window < window:
            raise TreeboxError(
                f"{text}: stored window {t.window} smaller than requested {window}"
            )
        from .trees import truncate

        return truncate(t, window)
    return materialize(t, window)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_tree(args) -> int:
    ft = _materialized(args.tree, args.window)
    if args.format == "json":
        _emit(tree_dumps(ft), args.out)
    elif args.format == "dot":
        _emit(tree_to_dot(ft), args.out)
    else:
        _emit(
            f"tree {args.tree} window {ft.window}: {len(ft)} vertices\n"
            + " ".join(ft.vertex_texts()),
            args.out,
        )
    return 0


def _cmd_dist(args) -> int:
    ta = _materialized(args.a, args.window)
    tb = _materialized(args.b, args.window)
    m = ball_metric(ta, tb)
    tag = "exact" if m.exact else "window-limited"
    rel = "=" if m.exact else "<="
    print(f"r={m.agreement_radius} d{rel}e^-{m.agreement_radius} {tag}")
    return 0


def _cmd_orbit_graph(args) -> int:
    og = orbit_graph(_build(args.tree), args.resolution, args.window)
    if args.format == "dot":
        _emit(og.to_dot(), args.out)
    else:
        _emit(og.dumps(), args.out)
    if not og.covering.ok:
        print("covering check FAILED:", "; ".join(og.covering.violations), file=sys.stderr)
        return 1
    return 0


def _cmd_growth(args) -> int:
    table = growth_function(_build(args.tree), args.kmax)
    print("k H resolution window stable")
    for row in table.rows:
        print(f"{row.k} {row.count} {row.resolution} {row.window} {'yes' if row.stable else 'NO'}")
    return 0


def _cmd_recurrence(args) -> int:
    found = recurrence_witnesses(_build(args.tree), args.resolution, args.window, args.min_norm)
    sys.stdout.write(witnesses_to_jsonl(found) if found else "")
    print(f"{len(found)} recurrence witnesses at r={args.resolution} window={args.window}")
    return 0


def _cmd_expansivity(args) -> int:
    w = expansivity_witness(
        _materialized(args.a, args.window), _materialized(args.b, args.window)
    )
    print(json.dumps(w.to_json(), sort_keys=True))
    return 0


def _cmd_accumulate(args) -> int:
    found = accumulates_on(
        _build(args.host), _build(args.target), args.resolution, args.depth_min, args.window
    )
    sys.stdout.write(witnesses_to_jsonl(found) if found else "")
    print(f"{len(found)} accumulation witnesses")
    return 0


def _cmd_closure(args) -> int:
    depth_min = args.depth_min if args.depth_min is not None else args.window // 2
    keys = closure_sample(_build(args.tree), args.resolution, args.window, depth_min)
    for digest in sorted(k.digest() for k in keys):
        print(digest)
    print(f"{len(keys)} classes at r={args.resolution} window={args.window} depth>={depth_min}")
    return 0


def _cmd_ends(args) -> int:
    rhos = [int(x) for x in args.radii.split(",") if x]
    profile = end_profile(_build(args.tree), rhos, args.window)
    counts = " ".join(str(c) for _, c in profile.counts)
    print(f"{counts} ({profile.verdict})")
    return 0


def _cmd_fuse(args) -> int:
    spec = TreeSpec.parse(f"fuse({args.a},{args.b},r0={args.r0},axes={args.axes})")
    (sa, ra), (sb, rb), r0, axes = spec.payload
    t1, t2 = _as_lazy(sa.build()), _as_lazy(sb.build())
    h, ht = (_letter_index(c) for c in axes)
    fusion = fuse(t1, Ray.named(t1, ra), t2, Ray.named(t2, rb), h, ht, r0)
    print(fusion.schedule.dumps(args.steps))
    if args.window:
        print(tree_dumps(materialize(fusion.tree, args.window)))
    return 0


def _cmd_approx_periodic(args) -> int:
    approx = periodic_approximation(_as_lazy(_build(args.tree)), args.radius)
    print(approx.dumps())
    if args.window:
        print(tree_dumps(materialize(approx.tree, args.window)))
    return 0


def _cmd_code(args) -> int:
    tree = coding_tree(args.prefix, args.tail)
    points = coding_base_points(args.prefix, args.tail, args.points)
    print("base points:", " ".join(str(w) for w in points))
    if args.window:
        print(tree_dumps(materialize(tree, args.window)))
    return 0


def _cmd_levels(args) -> int:
    trees = [_build(s) for s in args.trees.split(",") if s]
    result = specialization_matrix(
        trees, args.resolution, args.window, args.depth_min, args.t_bound
    )
    print(f"resolution-({args.resolution},{args.window}) estimate")
    for label, row, level in zip(result.labels, result.matrix, result.levels):
        cells = " ".join("1" if c else "0" for c in row)
        print(f"{label}: [{cells}] level~{level}")
    return 0


def _cmd_check(args) -> int:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = acceptance.run_all(only)
    print(acceptance.format_results(results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treebox",
        description="Pointed subtrees of free-group Cayley trees: metric, "
        "translation dynamics, constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_arg(p, name="--tree"):
        p.add_argument(name, required=True, help="tree spec (catalog name, .json file, or expression)")

    p = sub.add_parser("tree", help="materialize a tree to a window")
    tree_arg(p)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_tree)

    p = sub.add_parser("dist", help="ball metric between two trees")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(fn=_cmd_dist)

    p = sub.add_parser("orbit-graph", help="classes of translate balls with labeled edges")
    tree_arg(p)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_orbit_graph)

    p = sub.add_parser("growth", help="orbit growth H(k)")
    tree_arg(p)
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(fn=_cmd_growth)

    p = sub.add_parser("recurrence", help="root-ball recurrence witnesses")
    tree_arg(p)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--min-norm", type=int, default=1)
    p.set_defaults(fn=_cmd_recurrence)

    p = sub.add_parser("expansivity", help="separating translation for a nearby pair")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--window", type=int, default=12)
    p.set_defaults(fn=_cmd_expansivity)

    p = sub.add_parser("accumulate", help="deep matches of a target's root ball")
    p.add_argument("--host", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--depth-min", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(fn=_cmd_accumulate)

    p = sub.add_parser("closure", help="deep ball classes (closure sample)")
    tree_arg(p)
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--depth-min", type=int, default=None)
    p.set_defaults(fn=_cmd_closure)

    p = sub.add_parser("ends", help="escaping-branch counts per radius")
    tree_arg(p)
    p.add_argument("--radii", required=True, help="comma-separated rho values")
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(fn=_cmd_ends)

    p = sub.add_parser("fuse", help="fusion of two trees over a cross")
    p.add_argument("--a", required=True, help="SPEC@RAY")
    p.add_argument("--b", required=True, help="SPEC@RAY")
    p.add_argument("--r0", type=int, default=2)
    p.add_argument("--axes", default="ab")
    p.add_argument("--steps", type=int, default=4)
    p.add_argument("--window", type=int, default=0)
    p.set_defaults(fn=_cmd_fuse)

    p = sub.add_parser("approx-periodic", help="periodic approximant at a radius")
    tree_arg(p)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--window", type=int, default=0)
    p.set_defaults(fn=_cmd_approx_periodic)

    p = sub.add_parser("code", help="coded limit tree from a prefix and tail")
    p.add_argument("--prefix", default="")
    p.add_argument("--tail", required=True, choices=("aA", "bB", "b", "B"))
    p.add_argument("--points", type=int, default=3)
    p.add_argument("--window", type=int, default=0)
    p.set_defaults(fn=_cmd_code)

    p = sub.add_parser("levels", help="specialization matrix and level estimates")
    p.add_argument("--trees", required=True, help="comma-separated tree specs")
    p.add_argument("--resolution", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--depth-min", type=int, required=True)
    p.add_argument("--t-bound", type=int, required=True)
    p.set_defaults(fn=_cmd_levels)

    p = sub.add_parser("check", help="run the acceptance suite")
    p.add_argument("--only", default="", help="comma-separated criterion numbers")
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except TreeboxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
