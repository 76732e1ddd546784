"""The cyclic codes themselves: minimal/generator polynomials, trace codewords,
and weight distributions by enumeration.

Polynomials over GF(p) are tuples of residues, highest degree first.
Codeword coordinate i corresponds to x = theta^i, i = 0..q-2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .dist import WeightDist, value_to_weight_dist
from .errors import CosetCollision
from .expsums import _exact_matmul, map_a_partitions, value_distribution
from .field import FieldCtx, FieldElem
from .niho import NihoFamily, Variant, coset_leader, cyclotomic_coset

DIRECT_WORDS_MAX = 1 << 22

Poly = tuple


# --- GF(p)[x] helpers ---------------------------------------------------------------

def _trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while len(a) > 1 and a[0] == 0:
        a.pop(0)
    return tuple(a)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    return _trim(int(c) % p for c in np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Poly, Poly]:
    a = [c % p for c in _trim(a)]
    b = [c % p for c in _trim(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[0], -1, p)
    if len(a) < len(b):
        return (0,), tuple(a)
    quot = [0] * (len(a) - len(b) + 1)
    rem = a[:]
    for i in range(len(quot)):
        c = rem[i] * inv_lead % p
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                rem[i + j] = (rem[i + j] - c * bj) % p
    return _trim(quot), _trim(rem[len(quot):] or [0])


def poly_eval(ctx: FieldCtx, poly: Sequence[int], x: FieldElem) -> FieldElem:
    """Evaluate a GF(p) polynomial at a field element (Horner)."""
    acc = ctx.zero
    for c in poly:
        acc = ctx.add(ctx.mul(acc, x), ctx.from_residue(c))
    return acc


def x_n_minus_1(N: int, p: int) -> Poly:
    return (1,) + (0,) * (N - 1) + ((-1) % p,)


# --- code objects ----------------------------------------------------------------------

def minimal_poly(ctx: FieldCtx, d: int) -> Poly:
    """Minimal polynomial of theta^d over GF(p): prod over the coset of (x - theta^e)."""
    coeffs = [ctx.one]
    for e in cyclotomic_coset(ctx.p, ctx.order, d):
        root = ctx.neg(e % ctx.order)
        nxt = coeffs + [ctx.zero]
        for i in range(1, len(nxt)):
            nxt[i] = ctx.add(nxt[i], ctx.mul(root, coeffs[i - 1]))
        coeffs = nxt
    return tuple(ctx.residue(c) for c in coeffs)


@dataclass(frozen=True)
class CodeSpec:
    """C = (g) with g = g_d1 * g_d2; the studied code is its dual."""

    fam: NihoFamily
    length: int
    dual_dim: int
    generator: Poly
    dual_generator: Poly


def generator_poly(ctx: FieldCtx, fam: NihoFamily) -> CodeSpec:
    N = ctx.order
    if coset_leader(ctx.p, N, fam.d1) == coset_leader(ctx.p, N, fam.d2):
        raise CosetCollision(f"d1 = {fam.d1} and d2 = {fam.d2} share a cyclotomic coset")
    g = poly_mul(minimal_poly(ctx, fam.d1), minimal_poly(ctx, fam.d2), ctx.p)
    h, rem = poly_divmod(x_n_minus_1(N, ctx.p), g, ctx.p)
    if rem != (0,):
        raise AssertionError("generator does not divide x^(q-1) - 1")
    # the dual of (g) is generated by the reciprocal of h = (x^N - 1)/g
    recip = _trim(reversed(h))
    lead_inv = pow(recip[0], -1, ctx.p)
    dual = tuple(c * lead_inv % ctx.p for c in recip)
    return CodeSpec(fam, N, len(g) - 1, g, dual)


@dataclass(frozen=True)
class Codeword:
    coords: tuple[int, ...]
    a: FieldElem
    b: FieldElem

    @property
    def weight(self) -> int:
        return sum(1 for c in self.coords if c)


def trace_codeword(ctx: FieldCtx, fam: NihoFamily, a: FieldElem, b: FieldElem) -> Codeword:
    """c(a,b)_i = Tr_n(a theta^(i d1) + b theta^(i d2))."""
    i = ctx.nonzero()
    vals = ctx.add(ctx.mul(a, ctx.power(i, fam.d1)), ctx.mul(b, ctx.power(i, fam.d2)))
    return Codeword(tuple(ctx.trace(vals).tolist()), a, b)


def half_unit(ctx: FieldCtx) -> FieldElem:
    """Smallest-log c with c + conj(c) = 1 (for p = 2)."""
    c = ctx.nonzero()
    hit = np.flatnonzero(ctx.add(c, ctx.conj(c)) == ctx.one)
    return int(c[hit[0]])


def codeword_domain(ctx: FieldCtx, fam: NihoFamily) -> tuple[np.ndarray, np.ndarray]:
    """(a, b) value sets whose product indexes each codeword exactly once.

    For binary3 the a-term only sees a + conj(a) in GF(2^m), so a runs over
    c * GF(2^m) with c + conj(c) = 1.
    """
    b = ctx.elements()
    if fam.variant is Variant.BINARY3:
        return np.asarray(ctx.mul(half_unit(ctx), ctx.subfield())), b
    return ctx.elements(), b


def iter_codewords(ctx: FieldCtx, fam: NihoFamily) -> Iterator[Codeword]:
    a_vals, b_vals = codeword_domain(ctx, fam)
    for a in a_vals.tolist():
        for b in b_vals.tolist():
            yield trace_codeword(ctx, fam, a, b)


def in_dual(code: CodeSpec, coords: Sequence[int], p: int) -> bool:
    """Whether a word (coordinate i = coefficient of x^i) lies in the dual code."""
    _, rem = poly_divmod(tuple(reversed(coords)), code.dual_generator, p)
    return rem == (0,)


# --- weight enumeration -------------------------------------------------------------------

def _span(rows: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for g in rows:
        out = np.concatenate([(out + c * g) % p for c in range(p)])
    return out


def _dual_basis(code: CodeSpec, p: int) -> np.ndarray:
    """k x N matrix whose rows are x^i * dual_generator(x), i < k."""
    k, N = code.dual_dim, code.length
    low = np.array(code.dual_generator[::-1], dtype=np.int64)
    G = np.zeros((k, N), dtype=np.int64)
    for i in range(k):
        G[i, i:i + len(low)] = low
    return G


def _direct_words(ctx: FieldCtx, fam: NihoFamily, jobs: int) -> WeightDist:
    """Enumerate all p^k words of the dual code from its generator polynomial.

    Split the basis in two halves X and Y; word x+y has weight N minus the
    number of coordinates with y = -x, counted by indicator products.
    """
    p = ctx.p
    code = generator_poly(ctx, fam)
    k, N = code.dual_dim, code.length
    if p**k > DIRECT_WORDS_MAX:
        raise ValueError(f"{p}^{k} codewords exceed the direct enumeration bound")
    G = _dual_basis(code, p)
    X = _span(G[: k // 2], p)
    Y = _span(G[k // 2:], p)
    iy = [Y == (-r) % p for r in range(p)]

    def weights(xs: np.ndarray) -> Counter:
        agree = sum(_exact_matmul(xs == r, iy[r]) for r in range(p))
        vals, freq = np.unique(N - agree, return_counts=True)
        return Counter(dict(zip(vals.tolist(), freq.tolist())))

    total: Counter = Counter()
    for h in map_a_partitions(weights, X, jobs):
        total.update(h)
    return WeightDist(dict(total), N, k, p, meta={"method": "direct_words"})


def weight_dist_enumerate(
    ctx: FieldCtx,
    fam: NihoFamily,
    method: str = "via_sums",
    jobs: int = 1,
    sums_method: str = "direct",
) -> WeightDist:
    """Weight distribution of the dual code by enumeration.

    ``via_sums`` pushes the enumerated value distribution through the weight
    map; ``direct_words`` lists codewords from the generator polynomial.
    """
    if method == "via_sums":
        k = (3 if fam.variant is Variant.BINARY3 else 4) * fam.m
        vd = value_distribution(ctx, fam, sums_method, jobs=jobs)
        wd = value_to_weight_dist(vd, ctx.p, ctx.m, k)
        return WeightDist(wd.entries, wd.length, wd.dimension, wd.p, meta={"method": "via_sums"})
    if method == "direct_words":
        return _direct_words(ctx, fam, jobs)
    raise ValueError(f"method must be 'via_sums' or 'direct_words', got {method!r}")
