"""Generative constructions: periodic approximants, fusion, coded limit trees.

* ``periodic_approximation`` builds, at any radius r, a two-ended periodic
  tree whose root ball agrees with the source tree out to radius r: copies
  of the source r-ball chained along spurs of 3r edges in a fresh letter,
  invariant under the period word  f . s^(3r) . f^-1.
* ``fuse`` hangs exponentially spaced copies of the two sources' balls
  (radii 2^(r0+i) - 1) onto a four-ended cross of two generator lines; the
  resulting tree accumulates on both sources.
* ``coding_tree`` unrolls a one-sided code (a prefix of vertical steps and a
  periodic tail) into the tree it denotes, by the doubling recursion on
  base points x_i = x_{i-1} . alpha_{i-1}^(2^(i-1)).
* ``iterated_self_fusion`` chains fusion of a tree with itself; the label
  alternation depth strictly grows along the chain, which separates the
  stages metrically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import (
    CannotApproximateError,
    ContractViolationError,
    InvalidAxesError,
    MalformedCodeError,
    OutOfRangeError,
    RankMismatchError,
)
from .trees import FiniteTree, LazyTree, Tree, materialize, _member_fn
from .words import (
    Letters,
    Word,
    concat_letters,
    invert_letters,
    letters_to_text,
    power,
    shortlex_key,
)

_RAY_NAMES = {"right": 1, "left": -1, "up": 2, "down": -2}


@dataclass(frozen=True)
class Ray:
    """A geodesic ray out of the root: an infinite periodic letter pattern.

    Every finite prefix must be a vertex of the host; the fusion oracle
    checks this lazily and raises a contract violation if the ray leaves it.
    """

    host: LazyTree
    pattern: Letters
    name: str = ""

    def __post_init__(self):
        if not self.pattern:
            raise OutOfRangeError("ray needs a nonempty letter pattern")

    @classmethod
    def constant(cls, host: LazyTree, letter: int, name: str = "") -> "Ray":
        return cls(host, (letter,), name or _letter_ray_name(letter))

    @classmethod
    def named(cls, host: LazyTree, name: str) -> "Ray":
        if name not in _RAY_NAMES:
            raise OutOfRangeError(f"unknown ray name {name!r}; use one of {sorted(_RAY_NAMES)}")
        return cls(host, (_RAY_NAMES[name],), name)

    def letter(self, i: int) -> int:
        return self.pattern[i % len(self.pattern)]

    def prefix(self, k: int) -> Letters:
        out: list = []
        for i in range(k):
            x = self.letter(i)
            if out and out[-1] == -x:
                raise ContractViolationError(
                    f"ray pattern {self.name or self.pattern} backtracks at step {i}",
                    offender=letters_to_text(tuple(out)),
                )
            out.append(x)
        return tuple(out)

    def __str__(self) -> str:
        return self.name or letters_to_text(self.pattern) + "..."


def _letter_ray_name(letter: int) -> str:
    for name, x in _RAY_NAMES.items():
        if x == letter:
            return name
    return letters_to_text((letter,)) + "..."


class FusionSchedule:
    """Radii, anchor exponents and anchor words of one fusion.

    Step i >= 1 attaches a copy of the radius r_i = 2^(r0+i) - 1 source ball;
    with R_i = r0 + r_1 + ... + r_(i-1), the copy meets the carrier axis at
    exponent R_i + r_i.  The anchor word places the copy's center: axis
    power times the inverse of the ray prefix of length r_i.
    """

    def __init__(self, r0: int, h: int, ht: int, anchor_fn):
        self.r0 = r0
        self.h = h
        self.ht = ht
        self._anchor_fn = anchor_fn

    def radius(self, i: int) -> int:
        if i < 1:
            raise OutOfRangeError("schedule steps start at i = 1")
        return (1 << (self.r0 + i)) - 1

    def partial_sum(self, i: int) -> int:
        return self.r0 + sum(self.radius(k) for k in range(1, i))

    def exponent(self, i: int) -> int:
        return self.partial_sum(i) + self.radius(i)

    def anchor(self, side: int, i: int) -> Letters:
        """Anchor word of step i; side +1 is the first source, -1 the second."""
        return self._anchor_fn(side, i)

    def to_json(self, steps: int = 4) -> dict:
        return {
            "r0": self.r0,
            "axes": [letters_to_text((self.h,)), letters_to_text((self.ht,))],
            "entries": [
                {
                    "i": i,
                    "radius": self.radius(i),
                    "anchor_exponent": self.exponent(i),
                    "anchor_positive": letters_to_text(self.anchor(+1, i)),
                    "anchor_negative": letters_to_text(self.anchor(-1, i)),
                }
                for i in range(1, steps + 1)
            ],
        }

    def dumps(self, steps: int = 4) -> str:
        return json.dumps(self.to_json(steps), indent=2, sort_keys=True)


@dataclass(frozen=True)
class Fusion:
    tree: LazyTree
    schedule: FusionSchedule


def fuse(
    t1: LazyTree,
    ray1: Ray,
    t2: LazyTree,
    ray2: Ray,
    h: int = 1,
    ht: int = 2,
    r0: int = 2,
) -> Fusion:
    """Fuse two trees over the cross of the h- and ht-lines.

    Copies of the radius-r_i ball of ``t1`` are anchored on the positive
    axis side at exponent R_i + r_i, and of ``t2`` on the negative side; a
    copy entering through a ray letter equal to one axis is anchored on the
    other, so its entry edge never runs along the carrier.  The copies'
    word lengths live in [R_i + r_i, R_i + 3 r_i]; the bands tile, so a
    membership query touches O(1) candidate steps per side.
    """
    if h == ht:
        raise InvalidAxesError("fusion needs two distinct axis letters")
    if t1.rank != t2.rank:
        raise RankMismatchError(f"rank {t1.rank} vs {t2.rank}")
    if max(abs(h), abs(ht)) > t1.rank or min(h, ht) < 1:
        raise InvalidAxesError(f"axis letters {h}, {ht} not positive generators of rank {t1.rank}")
    if r0 < 2:
        raise OutOfRangeError(f"r0 must be >= 2, got {r0}")

    rank = t1.rank
    sides = {+1: (t1, ray1), -1: (t2, ray2)}
    data_cache: dict = {}

    def radius(i: int) -> int:
        return (1 << (r0 + i)) - 1

    def exponent(i: int) -> int:
        return r0 + sum(radius(k) for k in range(1, i)) + radius(i)

    def side_data(side: int, i: int):
        got = data_cache.get((side, i))
        if got is not None:
            return got
        t, ray = sides[side]
        ri = radius(i)
        entry = ray.prefix(ri)
        if not t.member(entry):
            raise ContractViolationError(
                f"ray {ray} leaves its host at {letters_to_text(entry)}",
                offender=letters_to_text(entry),
            )
        axis = h if abs(entry[-1]) == ht else ht
        anchor = power(axis, side * exponent(i)) + invert_letters(entry)
        ball_set = materialize(t, ri, check=False).vertices
        data = (anchor, invert_letters(anchor), ball_set, ri)
        data_cache[(side, i)] = data
        return data

    def member(v: Letters) -> bool:
        if all(x == h for x in v) or all(x == -h for x in v):
            return True
        if all(x == ht for x in v) or all(x == -ht for x in v):
            return True
        n = len(v)
        for side in (+1, -1):
            i = 1
            while True:
                lo = exponent(i)
                if lo > n:
                    break
                if n <= lo + 2 * radius(i):
                    anchor, anchor_inv, ball_set, ri = side_data(side, i)
                    u = concat_letters(anchor_inv, v)
                    if len(u) <= ri and u in ball_set:
                        return True
                i += 1
        return False

    tree = LazyTree(
        rank,
        member,
        f"fuse({t1.description}@{ray1},{t2.description}@{ray2},r0={r0})",
    )
    schedule = FusionSchedule(r0, h, ht, lambda side, i: side_data(side, i)[0])
    return Fusion(tree, schedule)


@dataclass(frozen=True)
class PeriodicApproximant:
    """A periodic tree within e^-radius of the source, and how it was built."""

    source: str
    radius: int
    attach_word: Word
    spur_letter: int
    period: Word
    base: frozenset
    tree: LazyTree

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "radius": self.radius,
            "attach_word": str(self.attach_word),
            "spur_letter": letters_to_text((self.spur_letter,)),
            "period": str(self.period),
            "base_vertices": [
                letters_to_text(v) for v in sorted(self.base, key=shortlex_key)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def periodic_approximation(t: LazyTree, r: int) -> PeriodicApproximant:
    """Chain copies of the radius-r ball of t at regular intervals.

    The boundary vertex f is the shortlex-least vertex of length r; the
    spur letter s is the least generator different from f's last letter, so
    the period word f . s^(3r) . f^-1 is reduced of length 5r.  Translates
    of the decorated block stay at word length >= 2r, so the root r-ball of
    the result equals the source's.
    """
    if r < 1:
        raise OutOfRangeError(f"radius must be >= 1, got {r}")
    grown = materialize(t, r + 1, check=False)
    if not any(len(v) == r + 1 for v in grown.vertices):
        raise CannotApproximateError(
            f"{t.description or 'tree'} has no vertex at length {r + 1}; nothing to chain"
        )
    f = min((v for v in grown.vertices if len(v) == r), key=shortlex_key)
    head = abs(f[-1])
    spur = 1 if head != 1 else 2
    if spur > t.rank:
        raise CannotApproximateError("need a second generator for the spur")
    period = f + power(spur, 3 * r) + invert_letters(f)
    assert len(period) == 5 * r  # no cancellation by choice of spur letter

    base = frozenset(v for v in grown.vertices if len(v) <= r)
    block_plus = base | {f + (spur,) * i for i in range(1, 3 * r + 1)}
    block_minus = base | {f + (-spur,) * i for i in range(1, 3 * r + 1)}
    period_inv = invert_letters(period)
    span = 4 * r
    step = 5 * r

    def member(v: Letters) -> bool:
        nmax = (len(v) + span) // step + 1
        u = v
        for _ in range(nmax + 1):
            if len(u) <= span and u in block_plus:
                return True
            u = concat_letters(period_inv, u)
        u = v
        for _ in range(nmax + 1):
            if len(u) <= span and u in block_minus:
                return True
            u = concat_letters(period, u)
        return False

    tree = LazyTree(t.rank, member, f"periodic({t.description},r={r})")
    return PeriodicApproximant(
        source=t.description,
        radius=r,
        attach_word=Word(f, t.rank),
        spur_letter=spur,
        period=Word(period, t.rank),
        base=base,
        tree=tree,
    )


# -- coded limit trees ---------------------------------------------------------
#
# A code is a finite prefix over {b, b^-1} and a periodic tail; it denotes a
# limit of translates of the recursively decorated tree K along the base
# points x_i = x_(i-1) . alpha_(i-1)^(2^(i-1)).  The limits have closed
# forms, which is what the oracle evaluates:
#
#   tail (b), (B)    one-sided tipped column: spine ray with a tip pair at
#                    every level except the bare extreme (the image of a
#                    spine end of an ever-larger finite decoration of K).
#   tail (bb^-1)     the bi-infinite tipped column (every level tipped).
#   tail (aa^-1)     a two-ended axis tree: full horizontal line with a
#                    finite two-sided vertical decoration at every offset j,
#                    of extent H(j) = 2^v2(3j + 2^n) -- the 2-adic profile
#                    the alternating tail converges to, where n is the
#                    prefix length -- rooted at the extreme of the offset-0
#                    decoration (which has extent exactly 2^n).
#
# Every ball of such a tree occurs as a ball of K: column patterns match
# decoration interiors and spine ends, and capped valuation profiles are
# periodic, so they occur around integer axis positions.  The tests verify
# both this and direct window agreement with deep translates of K.

_TAILS = {"aA": (1, -1), "bB": (2, -2), "b": (2,), "B": (-2,)}


def _parse_prefix(prefix: Union[str, Sequence[int]]) -> Letters:
    if isinstance(prefix, str):
        pfx = tuple(2 if ch == "b" else -2 if ch == "B" else 0 for ch in prefix)
    else:
        pfx = tuple(prefix)
    if any(x not in (2, -2) for x in pfx):
        raise MalformedCodeError(f"code prefix must be over b, b^-1; got {prefix!r}")
    return pfx


def coding_base_points(prefix: Union[str, Sequence[int]], tail: str, count: int) -> list:
    """The walk x_i = x_(i-1) . alpha_(i-1)^(2^(i-1)) driving the coded limit."""
    pfx = _parse_prefix(prefix)
    if tail not in _TAILS:
        raise MalformedCodeError(f"tail {tail!r} not one of {sorted(_TAILS)}")
    cycle = _TAILS[tail]

    def alpha(i: int) -> int:
        return pfx[i] if i < len(pfx) else cycle[(i - len(pfx)) % len(cycle)]

    xs = [()]
    for j in range(1, count + 1):
        xs.append(concat_letters(xs[j - 1], power(alpha(j - 1), 1 << (j - 1))))
    return [Word(x, 2) for x in xs[1:]]


def _split_gen_run(v: Letters, gen: int):
    if not v or abs(v[0]) != gen:
        return 0, v
    sign = 1 if v[0] > 0 else -1
    i = 0
    while i < len(v) and v[i] == sign * gen:
        i += 1
    return sign * i, v[i:]


def coding_tree(prefix: Union[str, Sequence[int]], tail: str) -> LazyTree:
    """The tree coded by a finite vertical prefix and a periodic tail.

    ``prefix`` is a sequence over {b, b^-1} (text like "bB" or signed
    letters); ``tail`` is one of "aA", "bB", "b", "B".  Two-letter tails
    give two-ended limits, one-letter tails one-ended ones.
    """
    pfx = _parse_prefix(prefix)
    if tail not in _TAILS:
        raise MalformedCodeError(f"tail {tail!r} not one of {sorted(_TAILS)}")

    if tail in ("b", "B"):
        # one-sided column; the prefix walk only shifts the bare extreme
        sums = []
        s = 0
        for k, d in enumerate(pfx):
            s += (1 if d > 0 else -1) * (1 << k)
            sums.append(s)
        if tail == "b":
            floor = min([0] + sums)

            def member(v: Letters, _f=floor) -> bool:
                t, rest = _split_gen_run(v, 2)
                if not rest:
                    return t >= _f
                return len(rest) == 1 and abs(rest[0]) == 1 and t >= _f + 1

        else:
            apex = max([0] + sums)

            def member(v: Letters, _a=apex) -> bool:
                t, rest = _split_gen_run(v, 2)
                if not rest:
                    return t <= _a
                return len(rest) == 1 and abs(rest[0]) == 1 and t <= _a - 1

    elif tail == "bB":
        # bi-infinite tipped column, invariant under vertical translation
        def member(v: Letters) -> bool:
            _, rest = _split_gen_run(v, 2)
            return not rest or (len(rest) == 1 and abs(rest[0]) == 1)

    else:  # tail "aA": two-ended axis tree with 2-adic decoration profile
        n = len(pfx)
        side = 1 if (not pfx or pfx[0] > 0) else -1
        root = power(2, side * (1 << n))

        def extent(j: int, _n=n) -> int:
            return 1 << (((3 * j + (1 << _n)) & -(3 * j + (1 << _n))).bit_length() - 1)

        def axis_member(w: Letters) -> bool:
            j, rest = _split_gen_run(w, 1)
            t, rest2 = _split_gen_run(rest, 2)
            if not rest2:
                return not rest or abs(t) <= extent(j)
            if len(rest2) == 1 and abs(rest2[0]) == 1 and t != 0:
                return abs(t) <= extent(j) - 1
            return False

        def member(v: Letters, _root=root) -> bool:
            return axis_member(concat_letters(_root, v))

    label = f"code({letters_to_text(pfx) if pfx else ''}{',' if pfx else ''}{tail})"
    return LazyTree(2, member, label)


def iterated_self_fusion(seed: LazyTree, n: int, r0: int = 2) -> LazyTree:
    """Fuse a tree with itself n times (default a-ray, axes a and b)."""
    if n < 1:
        raise OutOfRangeError(f"need n >= 1, got {n}")
    t = seed
    for _ in range(n):
        ray = Ray.constant(t, 1)
        t = fuse(t, ray, t, ray, h=1, ht=2, r0=r0).tree
    return t


def depth_statistic(t: Tree, window: int) -> int:
    """Maximal number of letter-family alternations along any vertex word."""
    if isinstance(t, FiniteTree):
        if window > t.window:
            window = t.window
        verts = t.vertices
    else:
        verts = materialize(t, window, check=False).vertices
    best = 0
    for v in verts:
        if len(v) > window:
            continue
        changes = sum(1 for i in range(1, len(v)) if abs(v[i]) != abs(v[i - 1]))
        if changes > best:
            best = changes
    return best
