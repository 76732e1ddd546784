"""Exponential sums S(a,b), T1(a,b), T2(a,b), evaluated two independent ways.

``direct``: sum the additive character over every x in GF(q).
``niho``: count roots of the family's Niho polynomial on the unit circle S;
the sum then equals (count - 1) * p^m.

Sums for odd p are kept as fiber counts c_j = #{x : Tr(...) = j}.  When
c_1 = ... = c_(p-1) the complex sum is the integer c_0 - c_1; otherwise it is
irrational and IrrationalSum is raised.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closed
from .dist import ValueDist
from .errors import DomainError, IrrationalSum
from .field import FieldCtx, FieldElem
from .niho import NihoFamily, Variant


# --- parameter domains ----------------------------------------------------------

def a_domain(ctx: FieldCtx, fam: NihoFamily) -> np.ndarray:
    """GF(2^m) for binary3 (the sum uses Tr_m on the a-term), GF(q) otherwise."""
    if fam.variant is Variant.BINARY3:
        return ctx.subfield()
    return ctx.elements()


def b_domain(ctx: FieldCtx, fam: NihoFamily) -> np.ndarray:
    return ctx.elements()


def _check_pair(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> None:
    for v in (a, b):
        if not 0 <= v < ctx.q:
            raise DomainError(f"{v} is not an element of GF({ctx.q})")
    if fam.variant is Variant.BINARY3 and not ctx.in_subfield(a):
        raise DomainError("binary3 needs a in GF(2^m)")


# --- direct summation ------------------------------------------------------------

def _a_residues(ctx: FieldCtx, fam: NihoFamily, a: np.ndarray, xd1: np.ndarray) -> np.ndarray:
    prod = ctx.mul(a[..., None], xd1)
    if fam.variant is Variant.BINARY3:
        return ctx.half_trace(prod)
    return ctx.trace(prod)


def _b_residues(ctx: FieldCtx, b: np.ndarray, xd2: np.ndarray) -> np.ndarray:
    return ctx.trace(ctx.mul(b[..., None], xd2))


def _fibers_to_value(counts: np.ndarray) -> np.ndarray:
    """counts[..., j] fiber sizes -> integer sum; raise unless nonzero fibers agree."""
    if counts.shape[-1] > 2:
        nz = counts[..., 1:]
        if (nz != nz[..., :1]).any():
            raise IrrationalSum("fiber counts over nonzero residues differ")
    return counts[..., 0] - counts[..., 1]


def char_sum(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> int:
    """The family's exponential sum at one (a, b), summed over all x."""
    _check_pair(ctx, fam, a, b)
    x = ctx.elements()
    xd1 = ctx.power(x, fam.d1)
    xd2 = ctx.power(x, fam.d2)
    f = (_a_residues(ctx, fam, np.asarray(a), xd1) + _b_residues(ctx, np.asarray(b), xd2)) % ctx.p
    return int(_fibers_to_value(np.bincount(f, minlength=ctx.p)))


def fiber_counts(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> list[int]:
    """[c_0, ..., c_(p-1)] with c_j = #{x : exponent residue = j}."""
    _check_pair(ctx, fam, a, b)
    x = ctx.elements()
    f = (_a_residues(ctx, fam, np.asarray(a), ctx.power(x, fam.d1))
         + _b_residues(ctx, np.asarray(b), ctx.power(x, fam.d2))) % ctx.p
    return np.bincount(f, minlength=ctx.p).tolist()


def _exact_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # 0/1 and +-1 operands with inner dimension <= p*q < 2^53: every partial
    # sum is an integer exactly representable in float64.
    return np.rint(x.astype(np.float64) @ y.astype(np.float64).T).astype(np.int64)


def direct_table(ctx: FieldCtx, fam: NihoFamily, a_vals: np.ndarray, b_vals: np.ndarray) -> np.ndarray:
    """Matrix of sums, rows indexed by a_vals and columns by b_vals."""
    x = ctx.elements()
    A = _a_residues(ctx, fam, np.asarray(a_vals), ctx.power(x, fam.d1))
    B = _b_residues(ctx, np.asarray(b_vals), ctx.power(x, fam.d2))
    p = ctx.p
    if p == 2:
        return _exact_matmul(1 - 2 * A, 1 - 2 * B)
    ia = np.concatenate([A == r for r in range(p)], axis=1)
    counts = np.stack(
        [_exact_matmul(ia, np.concatenate([B == (j - r) % p for r in range(p)], axis=1)) for j in range(p)],
        axis=-1,
    )
    return _fibers_to_value(counts)


# --- Niho root counting ----------------------------------------------------------

def _niho_terms(ctx: FieldCtx, fam: NihoFamily, u: int, a: np.ndarray, b: np.ndarray):
    """(a-part, b-part) of the Niho polynomial at u; the polynomial is their sum."""
    size = ctx.pm + 1
    uu = lambda e: ctx.power(u, e % size)  # noqa: E731
    if fam.variant is Variant.BINARY3:
        e = 2 * fam.s2 - 1
        a_part = ctx.mul(ctx.sqrt_char2(a), uu(e))
        b_part = ctx.add(ctx.mul(ctx.conj(b), uu(2 * e)), b)
    else:
        s1, s2 = fam.s1, fam.s2
        a_part = ctx.add(ctx.mul(ctx.conj(a), uu(s1 + s2 - 1)), ctx.mul(a, uu(s2 - s1)))
        b_part = ctx.add(ctx.mul(ctx.conj(b), uu(2 * s2 - 1)), b)
    return np.asarray(a_part), np.asarray(b_part)


def niho_polynomial_values(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> np.ndarray:
    """The Niho polynomial evaluated at every element of the unit circle."""
    _check_pair(ctx, fam, a, b)
    size = ctx.pm + 1
    u = ctx.unit_circle
    up = lambda e: ctx.power(u, e % size)  # noqa: E731
    if fam.variant is Variant.BINARY3:
        e = 2 * fam.s2 - 1
        terms = [ctx.mul(ctx.conj(b), up(2 * e)), ctx.mul(ctx.sqrt_char2(a), up(e)), np.full_like(u, b)]
    else:
        s1, s2 = fam.s1, fam.s2
        terms = [
            ctx.mul(ctx.conj(b), up(2 * s2 - 1)),
            ctx.mul(ctx.conj(a), up(s1 + s2 - 1)),
            ctx.mul(a, up(s2 - s1)),
            np.full_like(u, b),
        ]
    total = terms[0]
    for t in terms[1:]:
        total = ctx.add(total, t)
    return total


def niho_root_count(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> int:
    """Number of roots of the Niho polynomial on the unit circle, by exhaustion."""
    return int(np.count_nonzero(niho_polynomial_values(ctx, fam, a, b) == ctx.zero))


def niho_count_table(ctx: FieldCtx, fam: NihoFamily, a_vals: np.ndarray, b_vals: np.ndarray) -> np.ndarray:
    a_vals = np.asarray(a_vals)
    b_vals = np.asarray(b_vals)
    counts = np.zeros((len(a_vals), len(b_vals)), dtype=np.int64)
    for u in ctx.unit_circle:
        a_part, b_part = _niho_terms(ctx, fam, int(u), a_vals, b_vals)
        # a_part + b_part = 0  <=>  a_part = -b_part (logs are canonical)
        counts += a_part[:, None] == ctx.neg(b_part)[None, :]
    return counts


def niho_table(ctx: FieldCtx, fam: NihoFamily, a_vals: np.ndarray, b_vals: np.ndarray) -> np.ndarray:
    return (niho_count_table(ctx, fam, a_vals, b_vals) - 1) * ctx.pm


# --- distributions -----------------------------------------------------------------

def _chunks(arr: np.ndarray, jobs: int) -> list[np.ndarray]:
    parts = max(1, min(jobs, len(arr)))
    return [c for c in np.array_split(arr, parts) if len(c)]


def _histogram(table: np.ndarray) -> Counter:
    vals, freq = np.unique(table, return_counts=True)
    return Counter(dict(zip(vals.tolist(), freq.tolist())))


def map_a_partitions(fn: Callable[[np.ndarray], object], a_vals: np.ndarray, jobs: int = 1) -> list:
    """Apply fn to disjoint slices of a_vals, in order, optionally on threads."""
    chunks = _chunks(a_vals, jobs)
    if jobs <= 1 or len(chunks) == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, chunks))


def sum_table(ctx: FieldCtx, fam: NihoFamily, method: str = "direct", jobs: int = 1) -> np.ndarray:
    """Full (a, b) table of sums over the family's domain."""
    tables = {"direct": direct_table, "niho": niho_table}
    if method not in tables:
        raise ValueError(f"method must be 'direct' or 'niho', got {method!r}")
    fn = tables[method]
    b_vals = b_domain(ctx, fam)
    parts = map_a_partitions(lambda a: fn(ctx, fam, a, b_vals), a_domain(ctx, fam), jobs)
    return np.vstack(parts)


def value_distribution(
    ctx: FieldCtx,
    fam: NihoFamily,
    method: str = "direct",
    jobs: int = 1,
    sample: int | None = None,
    seed: int = 0,
) -> ValueDist:
    """Exact histogram of the sum over the full (a, b) domain.

    With ``sample`` set, draws that many uniform (a, b) pairs instead and uses
    root counting; meant for fields too large to enumerate.
    """
    a_vals, b_vals = a_domain(ctx, fam), b_domain(ctx, fam)
    if sample is not None:
        return _sampled_distribution(ctx, fam, a_vals, b_vals, sample, seed)
    if method not in ("direct", "niho"):
        raise ValueError(f"method must be 'direct' or 'niho', got {method!r}")
    fn = direct_table if method == "direct" else niho_table
    hists = map_a_partitions(lambda a: _histogram(fn(ctx, fam, a, b_vals)), a_vals, jobs)
    total: Counter = Counter()
    for h in hists:
        total.update(h)
    return ValueDist(dict(total), len(a_vals) * len(b_vals))


def _sampled_distribution(ctx, fam, a_vals, b_vals, sample, seed) -> ValueDist:
    rng = np.random.default_rng(seed)
    a = rng.choice(a_vals, size=sample)
    b = rng.choice(b_vals, size=sample)
    counts = np.zeros(sample, dtype=np.int64)
    for u in ctx.unit_circle:
        a_part, b_part = _niho_terms(ctx, fam, int(u), a, b)
        counts += a_part == ctx.neg(b_part)
    return ValueDist(dict(_histogram((counts - 1) * ctx.pm)), sample)


# --- moment identities ------------------------------------------------------------------

@dataclass(frozen=True)
class MomentItem:
    identity: int
    power: int
    lhs: int
    rhs_closed: int
    rhs_brute: int | None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs_closed and self.rhs_brute in (None, self.lhs)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "power": self.power,
            "lhs": self.lhs,
            "rhs_closed": self.rhs_closed,
            "rhs_brute": self.rhs_brute,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class MomentReport:
    items: tuple[MomentItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def to_list(self) -> list[dict]:
        return [i.to_dict() for i in self.items]


def moment_report(
    ctx: FieldCtx,
    fam: NihoFamily,
    dist: ValueDist | None = None,
    brute: bool = True,
) -> MomentReport:
    """Power sums of the enumerated values against q^2 * {1, N2, N3}.

    Identities 1-2 cover binary3, 3-5 binary4 and 6-8 pary4.  Right-hand
    sides come from the closed N2/N3 formulas and, with ``brute``, from the
    brute-force counts as well.
    """
    if dist is None:
        dist = value_distribution(ctx, fam, "niho")
    if fam.variant is Variant.BINARY3:
        first, scale, powers = 1, 2 ** (3 * fam.m), (1, 2)
    elif fam.variant is Variant.BINARY4:
        first, scale, powers = 3, fam.q**2, (1, 2, 3)
    else:
        first, scale, powers = 6, fam.q**2, (1, 2, 3)

    def counts(method):
        out = {1: 1, 2: closed.n2(fam, method, ctx)}
        if 3 in powers:
            out[3] = closed.n3(fam, method, ctx)
        return out

    rc = counts("closed")
    rb = counts("brute") if brute else None
    items = tuple(
        MomentItem(
            identity=first + i,
            power=k,
            lhs=dist.power_sum(k),
            rhs_closed=scale * rc[k],
            rhs_brute=None if rb is None else scale * rb[k],
        )
        for i, k in enumerate(powers)
    )
    return MomentReport(items)
