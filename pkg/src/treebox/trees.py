"""Pointed subtrees of the Cayley tree of F_n with finite-window semantics.

Two representations:

* ``FiniteTree`` -- full knowledge of the tree inside a closed ball of radius
  ``window`` about the root.  Vertices are reduced words (letter tuples);
  prefix closure is exactly connectivity for subgraphs of a tree through e.
* ``LazyTree`` -- an infinite tree given by a pure membership oracle on
  reduced words, with a prefix-closure contract.  It materializes to a
  ``FiniteTree`` at any window.

The ball metric between two pointed trees is ``e^-r`` where ``r`` is the
largest radius at which the rooted, edge-labeled r-balls agree.  For labeled
subtrees of the Cayley tree, a root- and label-preserving isomorphism of
balls forces equality of vertex address sets, so ball isomorphism is
implemented as set equality of re-rooted vertex sets.

Every operation that would need knowledge outside a tree's window fails
loudly instead of guessing.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    ActionUndefinedError,
    ContractViolationError,
    OutOfRangeError,
    RankMismatchError,
    TreeJSONError,
    WindowExceededError,
)
from .words import (
    Letters,
    Word,
    concat_letters,
    invert_letters,
    left_quotient,
    letters_to_text,
    reduce_letters,
    shortlex_key,
    text_to_letters,
)

WordLike = Union[Word, Letters, str]


def _letters_of(g: WordLike, rank: int) -> Letters:
    if isinstance(g, Word):
        if g.rank != rank:
            raise RankMismatchError(f"word rank {g.rank} vs tree rank {rank}")
        return g.letters
    if isinstance(g, str):
        return text_to_letters(g, rank)
    return tuple(g)


def signed_letters(rank: int) -> Letters:
    out = []
    for i in range(1, rank + 1):
        out.extend((i, -i))
    return tuple(out)


@dataclass(frozen=True)
class FiniteTree:
    """A prefix-closed set of reduced words, complete out to radius ``window``."""

    rank: int
    window: int
    vertices: frozenset

    def __contains__(self, g: WordLike) -> bool:
        return _letters_of(g, self.rank) in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=shortlex_key)

    def vertex_texts(self) -> list:
        return [letters_to_text(v) for v in self.sorted_vertices()]

    def words(self) -> list:
        return [Word(v, self.rank) for v in self.sorted_vertices()]

    def member(self, v: Letters) -> bool:
        return v in self.vertices

    def __repr__(self) -> str:
        return f"FiniteTree(rank={self.rank}, window={self.window}, {len(self.vertices)} vertices)"


class LazyTree:
    """An infinite tree described by a pure membership oracle on letter tuples.

    The oracle must be prefix-closed (member(v) implies member of every
    reduced prefix of v) and pure; constructors are responsible for the
    guarantee, validators spot-check it.  Materializations are memoized on
    the instance, so repeated window requests reuse the largest one built.
    """

    __slots__ = ("rank", "member", "description", "_cache")

    def __init__(self, rank: int, member: Callable[[Letters], bool], description: str = ""):
        self.rank = rank
        self.member = member
        self.description = description
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"LazyTree(rank={self.rank}, {self.description!r})"


Tree = Union[FiniteTree, LazyTree]


def _member_fn(t: Tree) -> Callable[[Letters], bool]:
    return t.vertices.__contains__ if isinstance(t, FiniteTree) else t.member


def rel_ball(member: Callable[[Letters], bool], root: Letters, r: int, rank: int) -> frozenset:
    """Vertex set of the radius-r ball about ``root``, re-rooted at e.

    Walks the tree outward from ``root``; relative addresses never repeat in
    a tree, so a parent-skip replaces a visited set.
    """
    letters = signed_letters(rank)
    found = [()]
    frontier = [((), root)]
    for _ in range(r):
        nxt = []
        for rel, ab in frontier:
            last = rel[-1] if rel else 0
            for x in letters:
                if x == -last:
                    continue
                ab2 = ab[:-1] if (ab and x == -ab[-1]) else ab + (x,)
                if member(ab2):
                    rel2 = rel + (x,)
                    found.append(rel2)
                    nxt.append((rel2, ab2))
        frontier = nxt
    return frozenset(found)


def enumerate_vertices(t: Tree, depth: int) -> frozenset:
    """All vertices of t with length <= depth (uses the window cache for LazyTree)."""
    if isinstance(t, FiniteTree):
        if depth > t.window:
            raise WindowExceededError(
                f"window {t.window} cannot enumerate to depth {depth}", max_valid=t.window
            )
        return frozenset(v for v in t.vertices if len(v) <= depth)
    return materialize(t, depth, check=False).vertices


def materialize(t: LazyTree, window: int, check: bool = True) -> FiniteTree:
    """Evaluate the oracle on the whole ball of radius ``window``.

    With ``check`` on, every rejected frontier word gets its one-step
    extensions probed; a member beyond a non-member breaks prefix closure
    and raises naming the offender.
    """
    if window < 0:
        raise OutOfRangeError(f"window must be >= 0, got {window}")
    cached = t._cache.get(window)
    if cached is not None:
        return cached
    for w_have in sorted(t._cache):
        if w_have > window:
            ft = truncate(t._cache[w_have], window)
            t._cache[window] = ft
            return ft

    if not t.member(()):
        raise ContractViolationError("oracle rejects the root e", offender="e")
    letters = signed_letters(t.rank)
    verts = [()]
    rejected = []
    frontier = [()]
    for _ in range(window):
        nxt = []
        for v in frontier:
            last = v[-1] if v else 0
            for x in letters:
                if x == -last:
                    continue
                v2 = v + (x,)
                if t.member(v2):
                    verts.append(v2)
                    nxt.append(v2)
                elif check:
                    rejected.append(v2)
        frontier = nxt
    if check:
        for v in rejected:
            if len(v) >= window:
                continue
            last = v[-1]
            for x in letters:
                if x != -last and t.member(v + (x,)):
                    raise ContractViolationError(
                        f"member({letters_to_text(v + (x,))}) holds but its prefix "
                        f"{letters_to_text(v)} is rejected",
                        offender=letters_to_text(v),
                    )
    ft = FiniteTree(t.rank, window, frozenset(verts))
    t._cache[window] = ft
    return ft


def truncate(t: FiniteTree, window: int) -> FiniteTree:
    if window > t.window:
        raise WindowExceededError(
            f"cannot widen window {t.window} to {window}", max_valid=t.window
        )
    return FiniteTree(t.rank, window, frozenset(v for v in t.vertices if len(v) <= window))


def is_vertex(t: Tree, g: WordLike) -> bool:
    return _member_fn(t)(_letters_of(g, t.rank))


def act(t: Tree, g: WordLike) -> Tree:
    """Re-root t at its vertex g (the partial translation action).

    For a FiniteTree the window shrinks to ``window - |g|``: only that ball
    about g is fully known.  Undefined when g is not a vertex.
    """
    gl = _letters_of(g, t.rank)
    if not is_vertex(t, gl):
        raise ActionUndefinedError(
            f"{letters_to_text(gl)} is not a vertex of {getattr(t, 'description', 'tree')}"
        )
    if isinstance(t, FiniteTree):
        w2 = t.window - len(gl)
        rel = frozenset(
            u for u in (left_quotient(gl, v) for v in t.vertices) if len(u) <= w2
        )
        return FiniteTree(t.rank, w2, rel)
    base = t.member
    return LazyTree(
        t.rank,
        lambda v, _g=gl, _m=base: _m(concat_letters(_g, v)),
        f"({t.description}).{letters_to_text(gl)}",
    )


def ball(t: Tree, g: WordLike, r: int) -> FiniteTree:
    """The closed r-ball about the vertex g, re-rooted at e."""
    if r < 0:
        raise OutOfRangeError(f"radius must be >= 0, got {r}")
    gl = _letters_of(g, t.rank)
    if isinstance(t, FiniteTree) and len(gl) + r > t.window:
        raise WindowExceededError(
            f"ball of radius {r} at {letters_to_text(gl)} needs window "
            f"{len(gl) + r} > {t.window}",
            max_valid=t.window - len(gl),
        )
    if not is_vertex(t, gl):
        raise ActionUndefinedError(f"{letters_to_text(gl)} is not a vertex")
    return FiniteTree(t.rank, r, rel_ball(_member_fn(t), gl, r, t.rank))


@dataclass(frozen=True)
class MetricResult:
    """Ball-metric outcome; ``exact`` distinguishes a certified value from a bound.

    exact=True: balls of radius ``agreement_radius`` agree and the next ones
    differ inside both windows.  exact=False: agreement held all the way to
    the smaller window, so ``distance`` is only an upper bound.
    """

    agreement_radius: int
    distance: float
    exact: bool


def ball_metric(t1: FiniteTree, t2: FiniteTree) -> MetricResult:
    """e^-r with r the largest radius of ball equality, capped by the windows."""
    if t1.rank != t2.rank:
        raise RankMismatchError(f"rank {t1.rank} vs {t2.rank}")
    rmax = min(t1.window, t2.window)
    by_len_1: dict = {}
    for v in t1.vertices:
        if len(v) <= rmax:
            by_len_1.setdefault(len(v), set()).add(v)
    by_len_2: dict = {}
    for v in t2.vertices:
        if len(v) <= rmax:
            by_len_2.setdefault(len(v), set()).add(v)
    agreement = rmax
    exact = False
    for level in range(rmax + 1):
        if by_len_1.get(level, set()) != by_len_2.get(level, set()):
            agreement = level - 1
            exact = True
            break
    return MetricResult(agreement, math.exp(-agreement), exact)


@dataclass(frozen=True)
class BallKey:
    """Canonical identity of a FiniteTree: rank, radius and exact vertex set."""

    rank: int
    radius: int
    vertices: frozenset

    def text(self) -> str:
        body = ",".join(letters_to_text(v) for v in sorted(self.vertices, key=shortlex_key))
        return f"n{self.rank}|r{self.radius}|{body}"

    def digest(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()[:12]

    def __repr__(self) -> str:
        return f"BallKey({self.digest()})"


def canonical_key(t: FiniteTree) -> BallKey:
    return BallKey(t.rank, t.window, t.vertices)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


def validate(t: FiniteTree) -> ValidationReport:
    """Check root, reducedness, window bound and prefix closure; never raises."""
    problems = []
    if () not in t.vertices:
        problems.append("missing root e")
    for v in sorted(t.vertices, key=shortlex_key):
        if not v:
            continue
        if reduce_letters(v) != v or any(x == 0 or abs(x) > t.rank for x in v):
            problems.append(f"non-reduced or out-of-alphabet vertex {letters_to_text(v)}")
            continue
        if len(v) > t.window:
            problems.append(f"vertex {letters_to_text(v)} beyond window {t.window}")
        if v[:-1] not in t.vertices:
            problems.append(
                f"missing prefix {letters_to_text(v[:-1])} of {letters_to_text(v)}"
            )
    return ValidationReport(not problems, tuple(problems))


def spot_check_prefix_closure(
    t: LazyTree, max_len: int = 12, samples: int = 500, seed: int = 7
) -> ValidationReport:
    """Randomized prefix-closure probe of an oracle on words up to ``max_len``."""
    rng = random.Random(seed)
    letters = signed_letters(t.rank)
    problems = []
    for _ in range(samples):
        n = rng.randint(1, max_len)
        w: list = []
        for _ in range(n):
            choices = [x for x in letters if not w or x != -w[-1]]
            w.append(rng.choice(choices))
        v = tuple(w)
        if t.member(v):
            for k in range(len(v)):
                if not t.member(v[:k]):
                    problems.append(
                        f"member {letters_to_text(v)} but not its prefix {letters_to_text(v[:k])}"
                    )
                    break
    return ValidationReport(not problems, tuple(problems))


def tree_to_json(t: FiniteTree) -> dict:
    return {
        "rank": t.rank,
        "window": t.window,
        "vertices": t.vertex_texts(),
    }


def tree_from_json(doc: dict) -> FiniteTree:
    """Parse and validate a tree document; schema errors name the field."""
    if not isinstance(doc, dict):
        raise TreeJSONError("tree document must be a JSON object")
    for field_name, kind in (("rank", int), ("window", int), ("vertices", list)):
        if field_name not in doc:
            raise TreeJSONError(f"missing field {field_name!r}")
        if not isinstance(doc[field_name], kind) or isinstance(doc[field_name], bool):
            raise TreeJSONError(f"field {field_name!r} must be {kind.__name__}")
    rank, window = doc["rank"], doc["window"]
    if rank < 1:
        raise TreeJSONError("field 'rank' must be >= 1")
    if window < 0:
        raise TreeJSONError("field 'window' must be >= 0")
    verts = set()
    for s in doc["vertices"]:
        if not isinstance(s, str):
            raise TreeJSONError("field 'vertices' must hold strings")
        verts.add(text_to_letters(s, rank))
    ft = FiniteTree(rank, window, frozenset(verts))
    report = validate(ft)
    if not report.ok:
        raise TreeJSONError("invalid tree: " + "; ".join(report.violations))
    return ft


def tree_dumps(t: FiniteTree) -> str:
    return json.dumps(tree_to_json(t), indent=2, sort_keys=True)


def tree_loads(text: str) -> FiniteTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeJSONError(f"not valid JSON: {exc}") from exc
    return tree_from_json(doc)


def tree_to_dot(t: FiniteTree, name: str = "tree") -> str:
    """DOT export: nodes are word labels, edges point along positive generators."""
    lines = [f"digraph {name} {{", '  rankdir=TB;', '  node [shape=circle, fontsize=10];']
    order = t.sorted_vertices()
    lines.append('  "e" [shape=doublecircle];')
    for v in order:
        if not v:
            continue
        parent, last = v[:-1], v[-1]
        pt, vt = letters_to_text(parent), letters_to_text(v)
        label = letters_to_text((abs(last),))
        if last > 0:
            lines.append(f'  "{pt}" -> "{vt}" [label="{label}"];')
        else:
            lines.append(f'  "{vt}" -> "{pt}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
