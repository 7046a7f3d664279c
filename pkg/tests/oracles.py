"""Independent bottom-up vertex-set constructors used as test oracles.

Everything here builds explicit finite vertex sets directly from the
defining formulas (unions of translated blocks), without going through the
package's membership oracles, so the two can be compared on whole windows.
"""

from treebox.words import concat_letters, power


def translate(vertices, t):
    return {concat_letters(t, v) for v in vertices}


def clip(vertices, window):
    return {v for v in vertices if len(v) <= window}


def ray_set(window, letter=1):
    return {(letter,) * k for k in range(window + 1)}


def line_set(window, letter=1):
    out = {()}
    for k in range(1, window + 1):
        out.add((letter,) * k)
        out.add((-letter,) * k)
    return out


def cross_set(window, h=1, ht=2):
    return line_set(window, h) | line_set(window, ht)


def full_set(window, rank=2):
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    out = {()}
    frontier = [()]
    for _ in range(window):
        nxt = []
        for v in frontier:
            for x in letters:
                if v and x == -v[-1]:
                    continue
                w = v + (x,)
                out.add(w)
                nxt.append(w)
        frontier = nxt
    return out


def bm_set(window, m):
    out = line_set(window, 2)
    k = 0
    while abs(m * k) + 1 <= window:
        for kk in (k, -k):
            spine = power(2, m * kk)
            if len(spine) + 1 <= window:
                out.add(spine + (1,))
                out.add(spine + (-1,))
        k += 1
    return out


def b0prime_set(window):
    return line_set(window, 2) | {(1,), (-1,)}


def c_set(window):
    out = set()
    for j in range(-window, window + 1):
        for k in range(-(window - abs(j)), window - abs(j) + 1):
            out.add(power(1, j) + power(2, k))
    return out


def tlevel2_set(window):
    out = c_set(window)
    for j in range(-window, window + 1):
        if j == 0:
            continue
        t = 0
        while abs(j) + abs(j) * t + 1 <= window:
            for tt in {t, -t}:
                spine = power(1, j) + power(2, abs(j) * tt)
                if len(spine) + 1 <= window:
                    out.add(spine + (1,))
                    out.add(spine + (-1,))
            t += 1
    return out


def f2_set(window):
    out = {()}
    if window >= 1:
        letters = (1, -1, 2, -2)
        frontier = [(1,)]
        out.add((1,))
        for _ in range(window - 1):
            nxt = []
            for v in frontier:
                for x in letters:
                    if x == -v[-1]:
                        continue
                    w = v + (x,)
                    out.add(w)
                    nxt.append(w)
            frontier = nxt
    return out


def k_stage_sets(imax):
    """Explicit stage sets (C_i, L_i) of the recursively decorated tree."""
    cross = {(), (1,), (-1,), (2,), (-2,)}
    cs, ls = [set(cross)], [set(cross)]
    for i in range(imax):
        h = 1 << i
        c, l = cs[-1], ls[-1]
        c2 = (
            c
            | translate(c, power(1, h))
            | translate(c, power(1, -h))
            | translate(l, power(2, h))
            | translate(l, power(2, -h))
        )
        l2 = l | translate(l, power(2, h)) | translate(l, power(2, -h))
        cs.append(c2)
        ls.append(l2)
    return cs, ls


def k_set(window):
    imax = max(1, (window - 1).bit_length() + 1)  # stage C_i covers radius 2^(i-1)
    cs, _ = k_stage_sets(imax)
    return clip(cs[-1], window)


def fusion_set(window, ball1, ball2, anchors1, anchors2, h=1, ht=2):
    """Cross plus translated copies of the given source balls at the anchors."""
    out = cross_set(window, h, ht)
    for anchor, src in list(zip(anchors1, ball1)) + list(zip(anchors2, ball2)):
        out |= clip(translate(src, anchor), window)
    return out


def periodic_set(window, base, attach, spur, r):
    """Union of period-word translates of the decorated block, clipped."""
    block_plus = set(base) | {attach + (spur,) * i for i in range(1, 3 * r + 1)}
    block_minus = set(base) | {attach + (-spur,) * i for i in range(1, 3 * r + 1)}
    period = attach + (spur,) * (3 * r) + tuple(-x for x in reversed(attach))
    out = set()
    reps = window // (5 * r) + 2
    for n in range(reps + 1):
        shift_pos = ()
        shift_neg = ()
        for _ in range(n):
            shift_pos = concat_letters(shift_pos, period)
            shift_neg = concat_letters(shift_neg, tuple(-x for x in reversed(period)))
        out |= clip(translate(block_plus, shift_pos), window)
        out |= clip(translate(block_minus, shift_neg), window)
    return out
