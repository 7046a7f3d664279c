"""Named infinite trees with fast address-arithmetic membership oracles.

Each entry decides membership of a reduced word in time polynomial in its
length, straight from the defining vertex-set formula.  The test suite keeps
an independent bottom-up set constructor for every entry and compares the
two on whole windows.

Conventions: rank 2 unless stated, generator 1 = ``a`` horizontal,
generator 2 = ``b`` vertical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownTreeError
from .trees import LazyTree
from .words import Letters, power


def _split_run(v: Letters, gen: int):
    """Split off the maximal leading +-gen run: returns (signed exponent, rest)."""
    if not v or abs(v[0]) != gen:
        return 0, v
    sign = 1 if v[0] > 0 else -1
    i = 0
    while i < len(v) and v[i] == sign * gen:
        i += 1
    return sign * i, v[i:]


def _shift_power(v: Letters, gen: int, d: int) -> Letters:
    """Reduced form of gen^d . v  (O(|v|); cancellation only along the run)."""
    j, rest = _split_run(v, gen)
    return power(gen, j + d) + rest


# -- simple families ---------------------------------------------------------


def _full_member(v: Letters) -> bool:
    return True


def _make_ray(letter: int):
    def member(v: Letters, _x=letter) -> bool:
        return all(x == _x for x in v)

    return member


def _make_line(letter: int):
    def member(v: Letters, _x=letter) -> bool:
        return all(x == _x for x in v) or all(x == -_x for x in v)

    return member


def _make_cross(h: int, ht: int):
    line_h = _make_line(h)
    line_ht = _make_line(ht)

    def member(v: Letters) -> bool:
        return line_h(v) or line_ht(v)

    return member


def _make_bm(m: int):
    # vertical line with a horizontal tip pair at every m-th level
    def member(v: Letters, _m=m) -> bool:
        j, rest = _split_run(v, 2)
        if not rest:
            return True
        return len(rest) == 1 and abs(rest[0]) == 1 and j % _m == 0

    return member


def _b0prime_member(v: Letters) -> bool:
    j, rest = _split_run(v, 2)
    if not rest:
        return True
    return len(rest) == 1 and abs(rest[0]) == 1 and j == 0


def _c_member(v: Letters) -> bool:
    _, rest = _split_run(v, 1)
    _, rest2 = _split_run(rest, 2)
    return not rest2


def _tlevel2_member(v: Letters) -> bool:
    j, rest = _split_run(v, 1)
    k, rest2 = _split_run(rest, 2)
    if not rest2:
        return True
    # single horizontal tip, only on the column at a^j (a copy of B_|j|),
    # hanging at a height divisible by |j|; the e-column carries no tips
    return len(rest2) == 1 and abs(rest2[0]) == 1 and j != 0 and k % abs(j) == 0


def _f2_member(v: Letters) -> bool:
    return not v or v[0] == 1


# -- the recursively decorated tree K ----------------------------------------
#
# K = union of stages C_i with C_0 = {e, a^+-1, b^+-1} and
#   C_{i+1} = C_i  u  a^{+-2^i} C_i  u  b^{+-2^i} L_i,
#   L_{i+1} = L_i  u  b^{+-2^i} L_i,      L_0 = C_0.
# Membership peels the leading a^{+-2^(i-1)} / b^{+-2^(i-1)} block at each
# stage.  Stage C_i covers everything of K out to radius 2^(i-1), and has
# radius 2^i, which prunes the recursion.

_k_memo: dict = {}


def _in_stage(v: Letters, i: int, kind: str) -> bool:
    if not v:
        return True
    if len(v) > (1 << i):
        return False
    if i == 0:
        return len(v) == 1
    key = (kind, v, i)
    hit = _k_memo.get(key)
    if hit is not None:
        return hit
    h = 1 << (i - 1)
    if kind == "C":
        res = (
            _in_stage(v, i - 1, "C")
            or _in_stage(_shift_power(v, 1, -h), i - 1, "C")
            or _in_stage(_shift_power(v, 1, h), i - 1, "C")
            or _in_stage(_shift_power(v, 2, -h), i - 1, "L")
            or _in_stage(_shift_power(v, 2, h), i - 1, "L")
        )
    else:
        res = (
            _in_stage(v, i - 1, "L")
            or _in_stage(_shift_power(v, 2, -h), i - 1, "L")
            or _in_stage(_shift_power(v, 2, h), i - 1, "L")
        )
    _k_memo[key] = res
    return res


def _k_member(v: Letters) -> bool:
    if not v:
        return True
    i = (len(v) - 1).bit_length() + 1
    return _in_stage(v, i, "C")


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple
    tree: LazyTree
    citation: str


def _entry(name, params, rank, member, citation) -> CatalogEntry:
    label = name if not params else name + ":" + ",".join(str(p) for p in params)
    return CatalogEntry(name, tuple(params), LazyTree(rank, member, label), citation)


_NAMES = (
    "full",
    "ray",
    "line",
    "A0",
    "B0",
    "cross",
    "B",
    "B0prime",
    "C",
    "Tlevel2",
    "K",
    "F1",
    "F2",
)


def catalog_entry(name: str, *params: int) -> CatalogEntry:
    """Look up a named tree; integer params as each family requires."""
    if name in ("F1",) and not params:
        name, params = "ray", (1,)
    if name == "A0" and not params:
        name, params = "line", (1,)
    if name == "B0" and not params:
        name, params = "line", (2,)

    if name == "full":
        rank = params[0] if params else 2
        if rank < 1:
            raise UnknownTreeError(f"full: rank must be >= 1, got {rank}")
        return _entry("full", (rank,), rank, _full_member, "every reduced word; the whole Cayley tree")
    if name == "ray":
        x = params[0] if params else 1
        if x < 1:
            raise UnknownTreeError(f"ray: letter index must be >= 1, got {x}")
        return _entry(
            "ray", (x,), max(2, x), _make_ray(x), "V = { x^n : n >= 0 } for one generator x"
        )
    if name == "line":
        x = params[0] if params else 1
        if x < 1:
            raise UnknownTreeError(f"line: letter index must be >= 1, got {x}")
        return _entry(
            "line", (x,), max(2, x), _make_line(x), "V = { x^n : n in Z } for one generator x"
        )
    if name == "cross":
        h = params[0] if len(params) > 0 else 1
        ht = params[1] if len(params) > 1 else 2
        if h == ht or h < 1 or ht < 1:
            raise UnknownTreeError(f"cross: needs two distinct generators, got {h}, {ht}")
        return _entry(
            "cross",
            (h, ht),
            max(2, h, ht),
            _make_cross(h, ht),
            "V = { h^n } u { k^n }, n in Z: two full lines through e",
        )
    if name in ("B", "Bm"):
        if not params or params[0] < 1:
            raise UnknownTreeError("B: needs a period m >= 1")
        m = params[0]
        return _entry(
            "B",
            (m,),
            2,
            _make_bm(m),
            "V = { b^k } u { b^(mk) a^+-1 : k in Z }: b-line with tips every m levels",
        )
    if name == "B0prime":
        return _entry(
            "B0prime", (), 2, _b0prime_member, "V = { b^k } u { a, a^-1 }: b-line plus one tip pair at e"
        )
    if name == "C":
        return _entry(
            "C", (), 2, _c_member, "V = { a^j b^k : j, k in Z }: a-line with a full b-line at every vertex"
        )
    if name == "Tlevel2":
        return _entry(
            "Tlevel2",
            (),
            2,
            _tlevel2_member,
            "a-line with a copy of B_|j| hanging at a^j (plain b-line at e)",
        )
    if name == "K":
        return _entry(
            "K",
            (),
            2,
            _k_member,
            "union of stages C_{i+1} = C_i u a^{+-2^i} C_i u b^{+-2^i} L_i from a radius-1 cross",
        )
    if name == "F2":
        return _entry(
            "F2", (), 2, _f2_member, "V = { e } u { words starting with the letter a }"
        )
    raise UnknownTreeError(f"unknown catalog tree {name!r}; known: {', '.join(_NAMES)}")


def catalog_tree(name: str, *params: int) -> LazyTree:
    return catalog_entry(name, *params).tree


def standard_entries() -> list:
    """One entry per family, small parameters; used by the property suites."""
    specs = [
        ("full", (2,)),
        ("ray", (1,)),
        ("line", (1,)),
        ("line", (2,)),
        ("cross", (1, 2)),
        ("B", (1,)),
        ("B", (2,)),
        ("B", (3,)),
        ("B0prime", ()),
        ("C", ()),
        ("Tlevel2", ()),
        ("K", ()),
        ("F2", ()),
    ]
    return [catalog_entry(n, *p) for n, p in specs]
