"""The acceptance suite: one callable per criterion, shared by CLI and tests.

Each criterion function returns a CriterionResult with a pass flag and a
short detail line.  Everything is deterministic: fixed seeds, canonical
orderings, no environment dependence.  Criterion 3 is implemented exactly
as specified; its part (c) compares orbit-graph vertex counts at
resolutions r+1 and r+3, which the spur-interior merge makes unequal for
r >= 3 (see the supplementary saturated-resolution check in the tests).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .catalog import catalog_tree, standard_entries
from .constructions import (
    Ray,
    coding_tree,
    depth_statistic,
    fuse,
    periodic_approximation,
)
from .dynamics import (
    _key,
    accumulates_on,
    closure_sample,
    end_profile,
    equicontinuity_check,
    equicontinuity_modulus,
    expansivity_witness,
    growth_function,
    orbit_graph,
    recurrence_witnesses,
    verify_witness,
)
from .trees import (
    FiniteTree,
    act,
    ball_metric,
    materialize,
    rel_ball,
    truncate,
    validate,
)
from .words import letters_to_text, power, shortlex_key

SEED = 74207281


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str


def _result(index: int, name: str, ok: bool, detail: str) -> CriterionResult:
    return CriterionResult(index, name, bool(ok), detail)


def criterion_1() -> CriterionResult:
    """Linear growth of the one-sided horizontal ray: H(k) = k + 1."""
    table = growth_function(catalog_tree("F1"), 10)
    want = [k + 1 for k in range(11)]
    ok = table.counts == want and table.all_stable
    return _result(1, "growth-F1", ok, f"counts {table.counts}, stable={table.all_stable}")


def criterion_2() -> CriterionResult:
    """Exponential growth of the a-rooted full branch: H(k) = (1 + 3^k)/2."""
    table = growth_function(catalog_tree("F2"), 7)
    want = [(1 + 3**k) // 2 for k in range(8)]
    ok = table.counts == want and table.all_stable
    return _result(2, "growth-F2", ok, f"counts {table.counts}")


def criterion_3() -> CriterionResult:
    """Periodic approximants of the decorated tree at radii 2..5."""
    k = catalog_tree("K")
    parts = []
    ok = True
    for r in (2, 3, 4, 5):
        approx = periodic_approximation(k, r)
        s = approx.tree
        agree = materialize(s, r, check=False).vertices == materialize(k, r, check=False).vertices
        w = 3 * r
        base = materialize(s, w, check=False).vertices
        invariant = (
            materialize(act(s, approx.period.letters), w, check=False).vertices == base
            and materialize(act(s, approx.period.inverse().letters), w, check=False).vertices
            == base
        )
        window = 6 * r + 7
        c1 = orbit_graph(s, r + 1, window).vertex_count()
        c2 = orbit_graph(s, r + 3, window).vertex_count()
        counts_equal = c1 == c2
        ok = ok and agree and invariant and counts_equal
        parts.append(
            f"r={r}: agree={agree} invariant={invariant} counts {c1}/{c2}"
        )
    return _result(3, "periodic-approximation", ok, "; ".join(parts))


def criterion_4() -> CriterionResult:
    """Recurrence witnesses a^(2^i) at radius 2^i - 1 for i = 2..5."""
    k = catalog_tree("K")
    ok = True
    for i in (2, 3, 4, 5):
        step, radius = 1 << i, (1 << i) - 1
        ok = ok and rel_ball(k.member, power(1, step), radius, 2) == rel_ball(
            k.member, (), radius, 2
        )
    found = recurrence_witnesses(k, 3, 24, 1)
    words = {w.word for w in found}
    ok = ok and {power(1, 4), power(1, -4), power(1, 8), power(1, -8)} <= words
    ok = ok and all(verify_witness(w, k) for w in found)
    return _result(
        4, "recurrence-K", ok, f"i=2..5 certified; r=3 scan found {len(found)} witnesses"
    )


def _expansivity_roster() -> list:
    trees = []
    for m in range(1, 11):
        trees.append(materialize(catalog_tree("B", m), 12, check=False))
    for m in (2, 4, 6):
        big = materialize(catalog_tree("B", m), 14, check=False)
        trees.append(act(big, (2,)))
        trees.append(act(big, (2, 2)))
    trees.append(materialize(catalog_tree("B0prime"), 12, check=False))
    trees.append(materialize(catalog_tree("C"), 12, check=False))
    trees.append(materialize(catalog_tree("Tlevel2"), 12, check=False))
    kbig = materialize(catalog_tree("K"), 24, check=False)
    trees.append(truncate(kbig, 12))
    trees.append(truncate(act(kbig, (1,) * 4), 12))
    trees.append(truncate(act(kbig, (1,) * 8), 12))
    for code in (("", "b"), ("", "B"), ("", "bB"), ("bB", "aA")):
        trees.append(materialize(coding_tree(*code), 12, check=False))
    return trees


def criterion_5() -> CriterionResult:
    """Expansivity witnesses for 50 nearby pairs, plus two pinned cases."""
    roster = _expansivity_roster()
    pairs = []
    for i in range(len(roster)):
        for j in range(i + 1, len(roster)):
            m = ball_metric(roster[i], roster[j])
            if m.exact and m.agreement_radius >= 2:
                pairs.append((roster[i], roster[j]))
    pairs = pairs[:50]
    ok = len(pairs) == 50
    for t1, t2 in pairs:
        w = expansivity_witness(t1, t2)
        ok = ok and verify_witness(w, t1, t2)
    b4 = materialize(catalog_tree("B", 4), 12, check=False)
    b8 = materialize(catalog_tree("B", 8), 12, check=False)
    b16 = materialize(catalog_tree("B", 16), 12, check=False)
    w48 = expansivity_witness(b4, b8)
    w816 = expansivity_witness(b8, b16)
    ok = ok and w48.word == (2, 2, 2) and w816.word == (2,) * 7
    return _result(
        5,
        "expansivity",
        ok,
        f"{len(pairs)} pairs certified; (B4,B8) -> {w48.word_text}, (B8,B16) -> {w816.word_text}",
    )


def criterion_6() -> CriterionResult:
    """Fusion schedule radii/anchors and two-sided accumulation."""
    b1 = catalog_tree("B", 1)
    b2 = catalog_tree("B", 2)
    fusion = fuse(b1, Ray.named(b1, "up"), b2, Ray.named(b2, "up"), r0=2)
    sched = fusion.schedule
    radii = [sched.radius(i) for i in (1, 2, 3)]
    expos = [sched.exponent(i) for i in (1, 2, 3)]
    ok = radii == [7, 15, 31] and expos == [9, 24, 55]
    wit1 = accumulates_on(fusion.tree, b1, 4, 10, 26)
    wit2 = accumulates_on(fusion.tree, b2, 4, 10, 26)
    ok = ok and wit1 and wit2
    ok = ok and all(verify_witness(w, fusion.tree, b1) for w in wit1)
    ok = ok and all(verify_witness(w, fusion.tree, b2) for w in wit2)
    return _result(
        6,
        "fusion",
        ok,
        f"radii {radii}, exponents {expos}, witnesses {len(wit1)}/{len(wit2)}",
    )


def criterion_7() -> CriterionResult:
    """Deep radius-2 classes of the grid tree = its own plus the line's."""
    c = catalog_tree("C")
    b0 = catalog_tree("B0")
    sample = closure_sample(c, 2, 16, 6)
    expected = set()
    for g in materialize(c, 14, check=False).vertices:
        expected.add(_key(c, g, 2))
    for g in materialize(b0, 14, check=False).vertices:
        expected.add(_key(b0, g, 2))
    ok = sample == frozenset(expected)
    return _result(7, "closure-level1", ok, f"{len(sample)} classes == enumerated {len(expected)}")


def criterion_8() -> CriterionResult:
    """Deep radius-3 classes of the two-level tree fall in the case inventory."""
    t2 = catalog_tree("Tlevel2")
    sample = closure_sample(t2, 3, 18, 6)
    inventory = set()
    members = [t2, catalog_tree("C"), catalog_tree("B0prime"), catalog_tree("B0")]
    members += [catalog_tree("B", m) for m in range(1, 15)]
    for t in members:
        for g in materialize(t, 15, check=False).vertices:
            inventory.add(_key(t, g, 3))
    ok = sample <= frozenset(inventory)
    return _result(
        8, "closure-level2", ok, f"{len(sample)} classes within inventory of {len(inventory)}"
    )


def criterion_9() -> CriterionResult:
    """Specialization chain line < grid < two-level; periodic family flat."""
    from .dynamics import specialization_matrix

    chain = specialization_matrix(
        [catalog_tree("B0"), catalog_tree("C"), catalog_tree("Tlevel2")], 3, 18, 6, 3
    )
    want = ((True, False, False), (True, True, False), (True, True, True))
    ok = chain.matrix == want and chain.levels == (0, 1, 2)
    flat = specialization_matrix(
        [catalog_tree("B", 1), catalog_tree("B", 2), catalog_tree("B", 3)], 3, 18, 6, 3
    )
    ok = ok and flat.levels == (0, 0, 0)
    ok = ok and all(
        not flat.matrix[i][j] for i in range(3) for j in range(3) if i != j
    )
    return _result(
        9, "specialization", ok, f"chain levels {chain.levels}, family levels {flat.levels}"
    )


def criterion_10() -> CriterionResult:
    """Alternation depth strictly increases along iterated self-fusion."""
    windows = (8, 32, 128, 512)
    t = catalog_tree("F1")
    depths = []
    for n in range(4):
        ray = Ray.constant(t, 1)
        t = fuse(t, ray, t, ray, r0=2).tree
        depths.append(depth_statistic(t, windows[n]))
    ok = all(depths[i] < depths[i + 1] for i in range(3))
    return _result(10, "self-fusion-depth", ok, f"depths {depths} at windows {list(windows)}")


def criterion_11() -> CriterionResult:
    """Coded limit trees: end counts and ball containment in the host tree."""
    ok = end_profile(coding_tree("", "b"), [2, 4, 6], 20).count_list() == [1, 1, 1]
    ok = ok and end_profile(coding_tree("", "B"), [2, 4, 6], 20).count_list() == [1, 1, 1]
    ok = ok and end_profile(coding_tree("", "bB"), [2, 4, 6], 20).count_list() == [2, 2, 2]
    k = catalog_tree("K")
    host_keys = {}
    for g in materialize(k, 70, check=False).vertices:
        if len(g) <= 64:
            host_keys.setdefault(_key(k, g, 6), g)
    p = coding_tree("bB", "aA")
    witnesses = 0
    contained = True
    for u in sorted(materialize(p, 12, check=False).vertices, key=shortlex_key):
        if len(u) > 6:
            continue
        key = _key(p, u, 6)
        g = host_keys.get(key)
        if g is None:
            contained = False
        else:
            witnesses += 1
    ok = ok and contained
    return _result(
        11, "coding", ok, f"ends 1/1/2; {witnesses} radius-6 balls matched in the host"
    )


def criterion_12() -> CriterionResult:
    """Equicontinuity moduli on the recurrent slice plus the negative control."""
    k = catalog_tree("K")
    kmat = materialize(k, 88, check=False)

    def tr(m: int) -> FiniteTree:
        return act(kmat, power(1, m))

    moduli = [equicontinuity_modulus(n) for n in (1, 2, 3)]
    ok = moduli == [7, 7, 15]
    pairs16 = [(0, 16), (16, 32), (0, 32), (-16, 16), (0, -16), (32, 48), (0, 48)]
    pairs32 = [(0, 32), (32, 64), (0, 64), (-32, 32), (0, -32), (-32, -64), (-64, 64)]
    checked = 0
    for n, plan in ((1, pairs16), (2, pairs16[:6]), (3, pairs32)):
        report = equicontinuity_check([(tr(a), tr(b)) for a, b in plan], n, 16)
        ok = ok and report.ok
        checked += report.pairs_checked
    ok = ok and checked == 20
    b4 = materialize(catalog_tree("B", 4), 12, check=False)
    b8 = materialize(catalog_tree("B", 8), 12, check=False)
    g = expansivity_witness(b4, b8).word
    separated = rel_ball(b4.vertices.__contains__, g, 2, 2) != rel_ball(
        b8.vertices.__contains__, g, 2, 2
    )
    ok = ok and separated
    return _result(
        12,
        "equicontinuity",
        ok,
        f"moduli {moduli}, {checked} slice pairs pass, control separates: {separated}",
    )


def _random_ball(rng: random.Random, entries: list) -> FiniteTree:
    entry = rng.choice(entries)
    verts = sorted(entry.small.vertices, key=shortlex_key)
    g = verts[rng.randrange(len(verts))]
    return FiniteTree(2, 6, rel_ball(entry.tree.member, g, 6, 2))


class _Probe:
    def __init__(self, entry):
        self.tree = entry.tree
        self.small = materialize(entry.tree, 6, check=False)


def criterion_13() -> CriterionResult:
    """Property suites: ultrametric, prefix closure, action composition,
    rigidity, covering checks."""
    rng = random.Random(SEED)
    sparse = [
        e for e in standard_entries() if e.name not in ("full", "F2")
    ]
    probes = [_Probe(e) for e in sparse]

    ultrametric_ok = True
    for _ in range(1000):
        t1, t2, t3 = (_random_ball(rng, probes) for _ in range(3))
        r12 = ball_metric(t1, t2).agreement_radius
        r23 = ball_metric(t2, t3).agreement_radius
        r13 = ball_metric(t1, t3).agreement_radius
        if r13 < min(r12, r23):
            ultrametric_ok = False
            break

    closure_ok = True
    built = []
    for e in standard_entries():
        w = 7 if e.name in ("full", "F2") else 12
        built.append((e.tree, w))
    b1 = catalog_tree("B", 1)
    b2 = catalog_tree("B", 2)
    built.append((fuse(b1, Ray.named(b1, "up"), b2, Ray.named(b2, "up")).tree, 12))
    built.append((periodic_approximation(catalog_tree("K"), 2).tree, 12))
    for code in (("", "b"), ("", "bB"), ("bB", "aA")):
        built.append((coding_tree(*code), 12))
    for tree, w in built:
        ft = materialize(tree, w, check=True)  # frontier probe enforces the contract
        if not validate(ft).ok:
            closure_ok = False
            break

    action_ok = True
    mats = [materialize(p.tree, 12, check=False) for p in probes]
    for _ in range(500):
        t = rng.choice(mats)
        near = [v for v in t.vertices if len(v) <= 4]
        g = rng.choice(sorted(near, key=shortlex_key))
        tg = act(t, g)
        near2 = [v for v in tg.vertices if len(v) <= 4]
        h = rng.choice(sorted(near2, key=shortlex_key))
        from .words import concat_letters

        gh = concat_letters(g, h)
        left = act(tg, h)
        right = act(t, gh)
        w = min(left.window, right.window)
        if truncate(left, w).vertices != truncate(right, w).vertices:
            action_ok = False
            break

    rigidity_ok = True
    for _ in range(40):
        ft = _random_prefix_closed(rng, window=4)
        if _count_root_label_automorphisms(ft) != 1:
            rigidity_ok = False
            break

    covering_ok = True
    for e in standard_entries():
        w = 8 if e.name in ("full", "F2") else 14
        for r in (2, 4):
            if not orbit_graph(e.tree, r, w).covering.ok:
                covering_ok = False
    ok = ultrametric_ok and closure_ok and action_ok and rigidity_ok and covering_ok
    return _result(
        13,
        "property-suites",
        ok,
        f"ultrametric={ultrametric_ok} closure={closure_ok} action={action_ok} "
        f"rigidity={rigidity_ok} covering={covering_ok}",
    )


def _random_prefix_closed(rng: random.Random, window: int) -> FiniteTree:
    verts = {()}
    frontier = [()]
    letters = (1, -1, 2, -2)
    for _ in range(window):
        nxt = []
        for v in frontier:
            for x in letters:
                if v and x == -v[-1]:
                    continue
                if rng.random() < 0.55:
                    child = v + (x,)
                    verts.add(child)
                    nxt.append(child)
        frontier = nxt
    return FiniteTree(2, window, frozenset(verts))


def _count_root_label_automorphisms(t: FiniteTree) -> int:
    """Brute-force count of root-fixing, label- and orientation-preserving
    bijections of the vertex set; candidate images are filtered only by the
    local letter profile, so the search does not assume address rigidity."""
    children: dict = {}
    for v in t.vertices:
        if v:
            children.setdefault(v[:-1], []).append(v)

    def profile(v):
        return frozenset(c[-1] for c in children.get(v, []))

    count = 0

    def extend(pairs):
        nonlocal count
        if not pairs:
            count += 1
            return
        (u, w), rest = pairs[0], pairs[1:]
        kids_u = sorted(children.get(u, []), key=shortlex_key)
        kids_w = children.get(w, [])
        if {c[-1] for c in kids_u} != {c[-1] for c in kids_w}:
            return
        new = []
        okay = True
        for cu in kids_u:
            matches = [cw for cw in kids_w if cw[-1] == cu[-1] and profile(cw) == profile(cu)]
            if not matches:
                okay = False
                break
            new.append((cu, matches[0]))  # labels are distinct, so at most one match
        if okay:
            extend(rest + new)

    extend([((), ())])
    return count


CRITERIA: tuple = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
    criterion_13,
)


def run_all(only: Optional[Iterable[int]] = None) -> list:
    wanted = set(only) if only is not None else None
    results = []
    for idx, fn in enumerate(CRITERIA, start=1):
        if wanted is not None and idx not in wanted:
            continue
        results.append(fn())
    return results


def format_results(results: Sequence[CriterionResult]) -> str:
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"{mark}  {r.index:2d}  {r.name:<24} {r.detail}")
    failed = [r.index for r in results if not r.passed]
    if failed:
        lines.append(f"{len(failed)} criterion(s) failed: {failed}")
    else:
        lines.append(f"all {len(results)} criteria passed")
    return "\n".join(lines)
