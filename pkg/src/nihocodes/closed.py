"""Closed-form value/weight distributions and the N2/N3 solution counts.

Frequencies are evaluated over Python ints with an explicit divisibility
check before every division; nothing is rounded.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .dist import ValueDist, WeightDist, weight_from_value
from .errors import NegativeFrequency, NonIntegralFrequency, WrongFamily
from .field import FieldCtx
from .niho import NihoFamily, Variant

NAIVE_N3_MAX_Q = 81


def _exact(num: int, den: int, what: str) -> int:
    if num % den:
        raise NonIntegralFrequency(f"{what}: {num}/{den} is not an integer")
    val = num // den
    if val < 0:
        raise NegativeFrequency(f"{what}: frequency {val} < 0")
    return val


def value_table(fam: NihoFamily) -> list[tuple[int, int]]:
    """Rows (value, frequency) of the closed-form value distribution, in table order."""
    l = fam.l
    if fam.variant is Variant.BINARY3:
        M = 2**fam.m
        e = M * M - 1
        rows = [
            (M * M, 1, 1),
            ((2 * l - 1) * M, e * (M - l + 1), 2 * l * l),
            ((l - 1) * M, e * ((M + 2) * l - M - 1), l * l),
            (-M, 2 * l * l * (M**3 - 1) + e * (M + 1 - (2 * M + 3) * l), 2 * l * l),
        ]
    elif fam.variant is Variant.BINARY4:
        M = 2**fam.m
        e = M * M - 1
        rows = [
            (M * M, 1, 1),
            ((3 * l - 1) * M, e * (M + 1 - 2 * l) * (M + 1 - l), 6 * l**3),
            ((2 * l - 1) * M, e * ((M + 3) * l - M - 1) * (M + 1 - l), 2 * l**3),
            ((l - 1) * M,
             e * ((2 * M * M + 4 * M + 6) * l * l - (2 * M * M + 7 * M + 5) * l + (M + 1) ** 2),
             2 * l**3),
            (-M,
             e * (6 * (M * M + 1) * l**3 - (6 * M * M + 9 * M + 11) * l * l
                  + (3 * M * M + 9 * M + 6) * l - (M + 1) ** 2),
             6 * l**3),
        ]
    else:
        P = fam.p**fam.m
        e = P * P - 1
        rows = [
            (P * P, 1, 1),
            ((3 * l // 2 - 1) * P, 2 * e * (l - P - 1) * (l - 2 * P - 2), 3 * l**3),
            ((l - 1) * P, e * (2 * P + 2 - (P + 3) * l) * (l - 2 * P - 2), l**3),
            ((l // 2 - 1) * P,
             2 * e * ((P * P + 2 * P + 3) * l * l - (2 * P * P + 7 * P + 5) * l + 2 * (P + 1) ** 2),
             l**3),
            (-P,
             e * (3 * (P * P + 1) * l**3 - (6 * P * P + 9 * P + 11) * l * l
                  + 6 * (P * P + 3 * P + 2) * l - 4 * (P + 1) ** 2),
             3 * l**3),
        ]
    return [(v, _exact(num, den, f"{fam.label()} value {v}")) for v, num, den in rows]


def domain_size(fam: NihoFamily) -> int:
    """Size of the (a, b) domain: 2^3m for binary3, q^2 otherwise."""
    if fam.variant is Variant.BINARY3:
        return 2 ** (3 * fam.m)
    return fam.q**2


def dimension(fam: NihoFamily) -> int:
    return (3 if fam.variant is Variant.BINARY3 else 4) * fam.m


def closed_value_dist(fam: NihoFamily) -> ValueDist:
    c: Counter = Counter()
    for v, f in value_table(fam):
        c[v] += f
    dist = ValueDist(dict(c), domain_size(fam))
    if dist.total != dist.domain_size:
        raise NonIntegralFrequency(f"{fam.label()}: frequencies sum to {dist.total}, not {dist.domain_size}")
    return dist


def weight_table(fam: NihoFamily) -> list[tuple[int, int]]:
    """Rows (weight, frequency), each the image of the matching value row."""
    return [(weight_from_value(fam.p, fam.m, v), f) for v, f in value_table(fam)]


def closed_weight_dist(fam: NihoFamily) -> WeightDist:
    c: Counter = Counter()
    for w, f in weight_table(fam):
        c[w] += f
    wd = WeightDist(dict(c), fam.q - 1, dimension(fam), fam.p)
    if wd.total != fam.p**wd.dimension:
        raise NonIntegralFrequency(f"{fam.label()}: weights sum to {wd.total}")
    return wd


def predicted_min_distance(fam: NihoFamily) -> int:
    """Minimum distance predicted by the family formula (first nonzero weight row)."""
    l, m = fam.l, fam.m
    if fam.variant is Variant.BINARY3:
        return 2 ** (2 * m - 1) - (2 * l - 1) * 2 ** (m - 1)
    if fam.variant is Variant.BINARY4:
        return 2 ** (2 * m - 1) - (3 * l - 1) * 2 ** (m - 1)
    P = fam.p**m
    return (P - P // fam.p) * (P + 1 - 3 * l // 2)


# --- N2 / N3 --------------------------------------------------------------------

def _n2_closed(fam: NihoFamily) -> int:
    q, l = fam.q, fam.l
    if fam.p == 2:
        return (q - 1) * l + 1
    return (q - 1) * l // 2 + 1


def _n3_closed(fam: NihoFamily) -> int:
    if fam.variant is Variant.BINARY3:
        raise WrongFamily("N3 is not defined for the binary three-weight family")
    q, l, pm = fam.q, fam.l, fam.p**fam.m
    if fam.p == 2:
        return (pm - 2) * (q - 1) * l * l + 3 * (q - 1) * l + 1
    return (pm - 2) * (q - 1) * l * l // 4 + 3 * (q - 1) * l // 2 + 1


def _powers(ctx: FieldCtx, fam: NihoFamily, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return ctx.power(x, fam.d1), ctx.power(x, fam.d2)


def n2_brute(fam: NihoFamily, ctx: FieldCtx) -> int:
    """One solution at y = 0, plus (q-1) per z = x/y with z^d1 = z^d2 = -1."""
    z1, z2 = _powers(ctx, fam, ctx.nonzero())
    hits = np.count_nonzero((z1 == ctx.minus_one) & (z2 == ctx.minus_one))
    return 1 + (ctx.q - 1) * int(hits)


def n2_naive(fam: NihoFamily, ctx: FieldCtx) -> int:
    """Count (x, y) in GF(q)^2 directly."""
    x1, x2 = _powers(ctx, fam, ctx.elements())
    ok1 = ctx.add(x1[:, None], x1[None, :]) == ctx.zero
    ok2 = ctx.add(x2[:, None], x2[None, :]) == ctx.zero
    return int(np.count_nonzero(ok1 & ok2))


def n3_brute(fam: NihoFamily, ctx: FieldCtx) -> int:
    """z = 0 contributes N2; each z != 0 normalizes to u^d + v^d = -1 pairs."""
    if fam.variant is Variant.BINARY3:
        raise WrongFamily("N3 is not defined for the binary three-weight family")
    u1, u2 = _powers(ctx, fam, ctx.elements())
    ok1 = ctx.add(u1[:, None], u1[None, :]) == ctx.minus_one
    ok2 = ctx.add(u2[:, None], u2[None, :]) == ctx.minus_one
    return n2_brute(fam, ctx) + (ctx.q - 1) * int(np.count_nonzero(ok1 & ok2))


def n3_naive(fam: NihoFamily, ctx: FieldCtx) -> int:
    """Count (x, y, z) in GF(q)^3 directly; only for q <= 81."""
    if fam.variant is Variant.BINARY3:
        raise WrongFamily("N3 is not defined for the binary three-weight family")
    if ctx.q > NAIVE_N3_MAX_Q:
        raise ValueError(f"naive N3 is limited to q <= {NAIVE_N3_MAX_Q}")
    x1, x2 = _powers(ctx, fam, ctx.elements())
    s1 = ctx.add(x1[:, None], x1[None, :])
    s2 = ctx.add(x2[:, None], x2[None, :])
    total = 0
    for z1, z2 in zip(x1, x2):
        hit = (ctx.add(s1, int(z1)) == ctx.zero) & (ctx.add(s2, int(z2)) == ctx.zero)
        total += int(np.count_nonzero(hit))
    return total


def n2(fam: NihoFamily, method: str = "closed", ctx: FieldCtx | None = None) -> int:
    if method == "closed":
        return _n2_closed(fam)
    if ctx is None:
        raise ValueError("brute-force N2 needs a field context")
    if method == "brute":
        return n2_brute(fam, ctx)
    if method == "naive":
        return n2_naive(fam, ctx)
    raise ValueError(f"unknown method {method!r}")


def n3(fam: NihoFamily, method: str = "closed", ctx: FieldCtx | None = None) -> int:
    if method == "closed":
        return _n3_closed(fam)
    if ctx is None:
        raise ValueError("brute-force N3 needs a field context")
    if method == "brute":
        return n3_brute(fam, ctx)
    if method == "naive":
        return n3_naive(fam, ctx)
    raise ValueError(f"unknown method {method!r}")
