"""Finite-resolution probes of the translation dynamics on pointed trees.

Everything here is resolution/window honest: a class is the canonical key of
a radius-r ball, computed for every vertex out to depth W - r.  Refining the
resolution can only split classes, never merge them (an (r+1)-ball restricts
to the r-ball), which anchors all stabilization arguments.  Outputs carry
the (r, W) they were computed at.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .catalog import catalog_tree
from .errors import (
    NoWitnessError,
    OutOfRangeError,
    PreconditionUnmetError,
    RankMismatchError,
    WindowExceededError,
)
from .trees import (
    BallKey,
    FiniteTree,
    LazyTree,
    Tree,
    _member_fn,
    ball_metric,
    enumerate_vertices,
    rel_ball,
)
from .words import Letters, Word, letters_to_text, power, shortlex_key


def _roots(t: Tree, depth: int, lo: int = 0) -> list:
    if isinstance(t, FiniteTree) and depth > t.window:
        raise WindowExceededError(
            f"root range {depth} beyond window {t.window}", max_valid=t.window
        )
    return sorted(
        (v for v in enumerate_vertices(t, depth) if len(v) >= lo), key=shortlex_key
    )


def _key(t: Tree, g: Letters, r: int) -> BallKey:
    return BallKey(t.rank, r, rel_ball(_member_fn(t), g, r, t.rank))


@dataclass(frozen=True)
class WitnessReport:
    """A self-certifying certificate: re-checking the balls reproduces it."""

    kind: str
    word: Letters
    radius: int
    detail: tuple = ()

    @property
    def word_text(self) -> str:
        return letters_to_text(self.word)

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "word": self.word_text, "radius": self.radius}
        doc.update(dict(self.detail))
        return doc


def verify_witness(report: WitnessReport, host: Tree, target: Tree = None) -> bool:
    """Re-check a witness by direct ball comparison."""
    member = _member_fn(host)
    if report.kind == "recurrence":
        return rel_ball(member, report.word, report.radius, host.rank) == rel_ball(
            member, (), report.radius, host.rank
        )
    if report.kind == "accumulation":
        if target is None:
            return False
        return rel_ball(member, report.word, report.radius, host.rank) == rel_ball(
            _member_fn(target), (), report.radius, target.rank
        )
    if report.kind == "expansivity":
        if target is None:
            return False
        g = report.word
        return (
            member(g)
            and _member_fn(target)(g)
            and rel_ball(member, g, 2, host.rank)
            != rel_ball(_member_fn(target), g, 2, target.rank)
        )
    return False


def witnesses_to_jsonl(reports: Iterable[WitnessReport]) -> str:
    return "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in reports) + "\n"


# -- orbit graphs --------------------------------------------------------------


@dataclass(frozen=True)
class CoveringReport:
    """Window-scale covering diagnostics for the vertex-to-class map.

    ``violations`` breaks the covering property itself: members of one
    class carrying different adjacent-letter sets.  ``artifacts`` lists
    letters along which a merged class moves to several distinct classes;
    the quotient genuinely does this to the orbit graph whenever distinct
    translates share an r-ball, so artifacts are reported, not failed.
    Refining the resolution only ever splits classes, which is what anchors
    interpreting these graphs.
    """

    ok: bool
    violations: tuple
    artifacts: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class OrbitGraph:
    """Generator-labeled graph of ball classes of translates.

    Vertices are canonical keys of radius-``resolution`` balls of translates
    at depth <= window - resolution; an edge (key, h, key') records the
    action of a positive generator h between in-range translates.  Edges
    outgoing from a class need not be single-valued per letter: classes are
    a finite-resolution quotient of the true orbit, and merged translates
    can move apart (see CoveringReport.artifacts).
    """

    rank: int
    resolution: int
    window: int
    base: BallKey
    vertices: frozenset
    edges: frozenset
    covering: CoveringReport

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=lambda k: k.text())

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (e[0].text(), e[1], e[2].text()))

    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        order = self.sorted_vertices()
        ids = {k: i for i, k in enumerate(order)}
        return {
            "rank": self.rank,
            "resolution": self.resolution,
            "window": self.window,
            "base": ids[self.base],
            "vertices": [
                {"id": ids[k], "digest": k.digest(), "ball": sorted(
                    letters_to_text(v) for v in k.vertices
                )}
                for k in order
            ],
            "edges": [
                [ids[a], letters_to_text((x,)), ids[b]] for a, x, b in self.sorted_edges()
            ],
            "covering_ok": self.covering.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_dot(self, name: str = "orbit") -> str:
        order = self.sorted_vertices()
        ids = {k: f"c{i}" for i, k in enumerate(order)}
        lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
        for k in order:
            shape = ", shape=doublecircle" if k == self.base else ""
            lines.append(f'  {ids[k]} [label="{k.digest()[:6]}"{shape}];')
        for a, x, b in self.sorted_edges():
            lines.append(f'  {ids[a]} -> {ids[b]} [label="{letters_to_text((x,))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit_graph(t: Tree, r: int, window: int) -> OrbitGraph:
    """Classes of r-balls of all translates out to depth window - r."""
    if window < r:
        raise WindowExceededError(f"window {window} < resolution {r}", max_valid=window)
    member = _member_fn(t)
    roots = _roots(t, window - r)
    key_of = {g: _key(t, g, r) for g in roots}
    edges = set()
    targets: dict = {}
    for g in roots:
        kg = key_of[g]
        for x in range(1, t.rank + 1):
            g2 = g[:-1] if (g and g[-1] == -x) else g + (x,)
            k2 = key_of.get(g2)
            if k2 is not None:
                edges.add((kg, x, k2))
                targets.setdefault((kg, x), set()).add(k2)

    artifacts = []
    for (kg, x), outs in sorted(
        targets.items(), key=lambda kv: (kv[0][0].text(), kv[0][1])
    ):
        if len(outs) > 1:
            artifacts.append(
                f"class {kg.digest()} moves to {len(outs)} classes along {letters_to_text((x,))}"
            )
    violations = []
    adj_of: dict = {}
    for g in roots:
        if len(g) >= window - r:
            continue  # neighbors of deeper roots fall outside the certified range
        adj = frozenset(
            x
            for x in _signed(t.rank)
            if member(g[:-1] if (g and g[-1] == -x) else g + (x,))
        )
        seen = adj_of.setdefault(key_of[g], adj)
        if seen != adj:
            violations.append(
                f"class {key_of[g].digest()} has members with different letter sets"
            )
    report = CoveringReport(not violations, tuple(violations), tuple(artifacts))
    return OrbitGraph(
        t.rank,
        r,
        window,
        key_of[()],
        frozenset(key_of.values()),
        frozenset(edges),
        report,
    )


def _signed(rank: int) -> Letters:
    out = []
    for i in range(1, rank + 1):
        out.extend((i, -i))
    return tuple(out)


# -- growth --------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    k: int
    count: int
    resolution: int
    window: int
    stable: bool


@dataclass(frozen=True)
class GrowthTable:
    tree: str
    rows: tuple

    @property
    def counts(self) -> list:
        return [row.count for row in self.rows]

    @property
    def all_stable(self) -> bool:
        return all(row.stable for row in self.rows)


def growth_function(t: Tree, kmax: int) -> GrowthTable:
    """Count distinct translate classes within distance k of the base.

    Row k is computed at resolution k+1 with window 2k+2, then re-checked at
    resolution k+2.  Since refining splits but never merges, a count equal
    to the number of roots is already maximal and stable by itself.
    """
    if kmax < 0:
        raise OutOfRangeError(f"kmax must be >= 0, got {kmax}")
    rows = []
    for k in range(kmax + 1):
        r, window = k + 1, 2 * k + 2
        if isinstance(t, FiniteTree) and t.window < window:
            raise WindowExceededError(
                f"growth at k={k} needs window {window} > {t.window}", max_valid=t.window
            )
        roots = _roots(t, k)
        keys = {_key(t, g, r) for g in roots}
        count = len(keys)
        if count == len(roots):
            stable = True
        else:
            stable = len({_key(t, g, r + 1) for g in roots}) == count
        rows.append(GrowthRow(k, count, r, window, stable))
    return GrowthTable(getattr(t, "description", "tree"), tuple(rows))


# -- recurrence / accumulation / closure ----------------------------------------


def recurrence_witnesses(t: Tree, r: int, window: int, min_norm: int = 1) -> list:
    """All g with min_norm <= |g| <= window - r whose r-ball equals the root's.

    An empty list is a meaningful negative at this (r, window) scale.
    """
    if window < r + min_norm:
        raise WindowExceededError(
            f"window {window} < r + min_norm = {r + min_norm}", max_valid=window
        )
    member = _member_fn(t)
    base = rel_ball(member, (), r, t.rank)
    out = []
    for g in _roots(t, window - r, lo=max(min_norm, 1)):
        if rel_ball(member, g, r, t.rank) == base:
            out.append(WitnessReport("recurrence", g, r, (("window", window),)))
    return out


def accumulates_on(host: Tree, target: Tree, r: int, depth_min: int, window: int) -> list:
    """Deep vertices of host whose r-ball matches the target's root ball."""
    if window < depth_min + r:
        raise WindowExceededError(
            f"window {window} < depth_min + r = {depth_min + r}", max_valid=window
        )
    if isinstance(target, FiniteTree) and target.window < r:
        raise WindowExceededError(f"target window {target.window} < r={r}", max_valid=target.window)
    base = rel_ball(_member_fn(target), (), r, target.rank)
    member = _member_fn(host)
    out = []
    for g in _roots(host, window - r, lo=depth_min):
        if rel_ball(member, g, r, host.rank) == base:
            out.append(WitnessReport("accumulation", g, r, (("window", window),)))
    return out


def closure_sample(t: Tree, r: int, window: int, depth_min: int = None) -> frozenset:
    """Keys of r-balls seen at depth >= depth_min: the deep-class inventory."""
    if depth_min is None:
        depth_min = window // 2
    if window < depth_min + r:
        raise WindowExceededError(
            f"window {window} < depth_min + r = {depth_min + r}", max_valid=window
        )
    return frozenset(_key(t, g, r) for g in _roots(t, window - r, lo=depth_min))


# -- expansivity ----------------------------------------------------------------


def expansivity_witness(t1: FiniteTree, t2: FiniteTree) -> WitnessReport:
    """A translation separating two nearby trees to distance >= e^-2.

    With first ball disagreement at radius rho >= 3, the translation by the
    length-(rho - 2) prefix of the least disagreeing vertex moves the
    difference into the radius-2 balls.
    """
    if t1.rank != t2.rank:
        raise RankMismatchError(f"rank {t1.rank} vs {t2.rank}")
    m = ball_metric(t1, t2)
    if not m.exact:
        raise NoWitnessError("trees agree within their windows; no separation to certify")
    if m.agreement_radius < 2:
        raise PreconditionUnmetError(
            f"distance e^-{m.agreement_radius} is already >= e^-2"
        )
    rho = m.agreement_radius + 1
    level1 = {v for v in t1.vertices if len(v) == rho}
    level2 = {v for v in t2.vertices if len(v) == rho}
    v = min(level1 ^ level2, key=shortlex_key)
    g = v[:rho - 2]
    b1 = rel_ball(t1.vertices.__contains__, g, 2, t1.rank)
    b2 = rel_ball(t2.vertices.__contains__, g, 2, t2.rank)
    if b1 == b2:  # cannot happen: v's residual has length 2 and lies in one side only
        raise NoWitnessError("translated balls agree unexpectedly")
    return WitnessReport(
        "expansivity",
        g,
        2,
        (("first_difference", letters_to_text(v)), ("difference_radius", rho)),
    )


# -- ends -----------------------------------------------------------------------


@dataclass(frozen=True)
class EndProfile:
    window: int
    counts: tuple  # ((rho, count), ...)
    verdict: str

    def count_list(self) -> list:
        return [c for _, c in self.counts]


def end_profile(t: Tree, rho_list: Sequence[int], window: int) -> EndProfile:
    """Escaping branches just outside each rho-ball, plus a stability verdict.

    For each rho, counts vertices at depth rho + 1 whose descendants inside
    the window reach depth exactly ``window``.  A constant profile reads as
    a finite end count, a strictly growing one as infinitely many ends at
    this scale.
    """
    rhos = sorted(set(rho_list))
    if not rhos:
        raise OutOfRangeError("need at least one rho")
    if max(rhos) + 1 >= window:
        raise WindowExceededError(
            f"window {window} too small for rho {max(rhos)}", max_valid=window
        )
    verts = enumerate_vertices(t, window)
    by_len: dict = {}
    for v in verts:
        by_len.setdefault(len(v), []).append(v)
    deepest: dict = {v: len(v) for v in by_len.get(window, [])}
    for length in range(window, 0, -1):
        for v in by_len.get(length, []):
            d = deepest.get(v, length)
            parent = v[:-1]
            if deepest.get(parent, length - 1) < d:
                deepest[parent] = d
    counts = []
    for rho in rhos:
        n = sum(1 for v in by_len.get(rho + 1, []) if deepest.get(v, rho + 1) == window)
        counts.append((rho, n))
    values = [c for _, c in counts]
    if all(c == values[0] for c in values):
        verdict = f"stable: {values[0]} ends"
    elif all(values[i] < values[i + 1] for i in range(len(values) - 1)):
        verdict = "growing: end count increases with rho (infinitely many ends at this scale)"
    else:
        verdict = "inconclusive at this window"
    return EndProfile(window, tuple(counts), verdict)


# -- specialization preorder ------------------------------------------------------


@dataclass(frozen=True)
class SpecializationResult:
    """Finite-resolution certificate matrix for closure containment.

    matrix[i][j] is True when every radius-r ball of trees[j] near the root
    occurs among trees[i]'s translate classes in the window: a certificate
    that the closure of i contains the sampled orbit of j at this scale.
    Levels are longest strict chains below each tree in the induced
    preorder.  Everything is a resolution-(r, W) estimate, not a proof.
    """

    labels: tuple
    matrix: tuple
    levels: tuple
    resolution: int
    window: int
    depth_min: int
    t_bound: int

    def __repr__(self) -> str:
        return (
            f"SpecializationResult(resolution-({self.resolution},{self.window}) estimate, "
            f"labels={self.labels}, levels={self.levels})"
        )


def specialization_matrix(
    trees: Sequence[Tree], r: int, window: int, depth_min: int, t_bound: int
) -> SpecializationResult:
    if not trees:
        raise OutOfRangeError("need at least one tree")
    rank = trees[0].rank
    if any(t.rank != rank for t in trees):
        raise RankMismatchError("all trees must share one alphabet")
    if t_bound > window - r:
        raise WindowExceededError(
            f"t_bound {t_bound} beyond root range {window - r}", max_valid=window - r
        )
    estimates = []
    samples = []
    for t in trees:
        orbit_keys = {_key(t, g, r) for g in _roots(t, window - r)}
        estimates.append(orbit_keys | closure_sample(t, r, window, depth_min))
        samples.append({_key(t, g, r) for g in _roots(t, t_bound)})
    n = len(trees)
    matrix = tuple(
        tuple(samples[j] <= estimates[i] for j in range(n)) for i in range(n)
    )

    def strictly_below(i: int, j: int) -> bool:
        return i != j and matrix[i][j] and not matrix[j][i]

    levels = [0] * n
    # longest chain below i in the strict order (acyclic by antisymmetry)
    def level(i: int, seen: frozenset) -> int:
        best = 0
        for j in range(n):
            if strictly_below(i, j) and j not in seen:
                best = max(best, 1 + level(j, seen | {j}))
        return best

    levels = tuple(level(i, frozenset([i])) for i in range(n))
    labels = tuple(getattr(t, "description", f"tree{i}") for i, t in enumerate(trees))
    return SpecializationResult(labels, matrix, levels, r, window, depth_min, t_bound)


# -- equicontinuity on the recurrent slice ----------------------------------------


def equicontinuity_modulus(n: int) -> int:
    """R_N = 2 * 2^i - 1 for the stage i with 2^(i-1) - 1 <= N < 2^i - 1."""
    if n < 0:
        raise OutOfRangeError(f"need N >= 0, got {n}")
    i = 1
    while not ((1 << (i - 1)) - 1 <= n < (1 << i) - 1):
        i += 1
    return 2 * (1 << i) - 1


@dataclass(frozen=True)
class EquicontinuityReport:
    modulus_input: int
    modulus: int
    pairs_checked: int
    translations_checked: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def equicontinuity_check(
    pairs: Sequence, n: int, k_budget: int
) -> EquicontinuityReport:
    """Uniform-modulus check on the clopen recurrent slice.

    Each pair must lie in the slice (radius-2 ball equal to the recurrently
    decorated tree's) and be certified closer than e^-R_N; then every
    defined translation by a^(4k), |4k| <= k_budget, must keep the pair
    closer than e^-N.  Violations are returned, not raised.
    """
    r_n = equicontinuity_modulus(n)
    slice_ball = rel_ball(catalog_tree("K").member, (), 2, 2)
    violations = []
    translations = 0
    for idx, (t1, t2) in enumerate(pairs):
        if t1.rank != 2 or t2.rank != 2:
            raise RankMismatchError("slice pairs live over rank 2")
        for t in (t1, t2):
            if rel_ball(_member_fn(t), (), 2, 2) != slice_ball:
                raise PreconditionUnmetError(f"pair {idx}: tree not in the recurrent slice")
        if min(t1.window, t2.window) < r_n + 1:
            raise PreconditionUnmetError(
                f"pair {idx}: windows too small to certify distance < e^-{r_n}"
            )
        m = ball_metric(t1, t2)
        if m.agreement_radius < r_n + 1:
            raise PreconditionUnmetError(
                f"pair {idx}: certified distance e^-{m.agreement_radius} not < e^-{r_n}"
            )
        for k in range(-k_budget // 4, k_budget // 4 + 1):
            if k == 0 or abs(4 * k) > k_budget:
                continue
            g = power(1, 4 * k)
            if not (t1.member(g) and t2.member(g)):
                continue
            if min(t1.window, t2.window) < abs(4 * k) + n + 1:
                continue
            translations += 1
            b1 = rel_ball(_member_fn(t1), g, n + 1, 2)
            b2 = rel_ball(_member_fn(t2), g, n + 1, 2)
            if b1 != b2:
                violations.append(
                    f"pair {idx}: translation a^{4 * k} separates to >= e^-{n + 1}"
                )
    return EquicontinuityReport(n, r_n, len(pairs), translations, tuple(violations))
