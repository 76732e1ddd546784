"""Tabulated arithmetic in GF(p^n), n = 2m, in discrete-log form.

An element is a plain ``int``: its discrete logarithm in ``[0, q-2]`` with
respect to the fixed primitive element theta, or the sentinel
``ctx.zero == q - 1`` standing for 0.  The sentinel is also a valid table
index, so every lookup table below has length ``q`` and needs no special
casing for zero.

Every arithmetic method accepts ints or integer numpy arrays and broadcasts.
Addition goes through a Zech-logarithm table, so no vector representation is
needed inside hot loops.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    NonPrimeModulus,
    NotInSubfield,
    NotPrimitive,
    OddCharacteristic,
    SizeLimit,
    ZeroInput,
)

DEFAULT_MAX_Q = 1 << 24

FieldElem = int
ElemLike = Union[int, np.ndarray]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- polynomials over GF(p); internal lists are low-degree first ----------

def _mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(n):
                prod[k - n + j] = (prod[k - n + j] - c * f[j]) % p
    return prod[:n]


def _x_pow_mod(e: int, f: list[int], p: int) -> list[int]:
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    base = ([0, 1] + [0] * (n - 2)) if n > 1 else [(-f[0]) % p]
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive(modulus: Sequence[int], p: int) -> bool:
    """True iff ``modulus`` (highest degree first, monic) is primitive over GF(p).

    x has order p^n - 1 modulo f only when GF(p)[x]/f is a field, so the
    order test also certifies irreducibility.
    """
    if len(modulus) < 2 or modulus[0] != 1:
        return False
    f = [c % p for c in reversed(modulus)]
    if f[0] == 0:
        return False
    n = len(f) - 1
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _x_pow_mod(order, f, p) != one:
        return False
    return all(_x_pow_mod(order // r, f, p) != one for r in prime_factors(order))


def find_primitive_poly(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree ``n``.

    Coefficients are listed from x^n down to the constant term, so the
    lexicographic order is the order of the polynomials read as base-p
    numbers (x^4 + x + 1 before x^4 + x^3 + 1).
    """
    for tail in itertools.product(range(p), repeat=n):
        if tail[-1] == 0:
            continue
        cand = (1,) + tail
        if is_primitive(cand, p):
            return cand
    raise NotPrimitive(f"no primitive polynomial of degree {n} over GF({p})")  # pragma: no cover


def format_poly(coeffs: Sequence[int]) -> str:
    """Render a highest-degree-first coefficient sequence as text."""
    deg = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        e = deg - i
        if c == 0:
            continue
        mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if e == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) if terms else "0"


# --- field context ---------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def q(self) -> int:
        return self.p**self.n


def _digits(v: np.ndarray, p: int, n: int) -> np.ndarray:
    return (v[:, None] // (p ** np.arange(n, dtype=np.int64))) % p


def _undigits(d: np.ndarray, p: int, n: int) -> np.ndarray:
    return d @ (p ** np.arange(n, dtype=np.int64))


def _build_exp(p: int, n: int, modulus: tuple[int, ...]) -> np.ndarray:
    """Vector form of theta^i for i < q-1, filled by block doubling.

    Multiplication by theta^L is GF(p)-linear, so once theta^0..theta^(L-1)
    are known the next block is one (L x n) @ (n x n) product mod p.
    """
    q = p**n
    f_low = [c % p for c in reversed(modulus)][:n]

    def times_theta(v: int) -> int:
        d = [(v // p**i) % p for i in range(n)]
        top = d[-1]
        d = [0] + d[:-1]
        return sum(((d[i] - top * f_low[i]) % p) * p**i for i in range(n))

    out = np.zeros(q - 1, dtype=np.int64)
    out[0] = 1
    filled = 1
    while filled < q - 1:
        v = times_theta(int(out[filled - 1]))
        rows = []
        for _ in range(n):
            rows.append(v)
            v = times_theta(v)
        shift = _digits(np.array(rows, dtype=np.int64), p, n)
        take = min(filled, q - 1 - filled)
        block = (_digits(out[:take], p, n) @ shift) % p
        out[filled:filled + take] = _undigits(block, p, n)
        filled += take
    return out


class FieldCtx:
    """Immutable tables for GF(p) < GF(p^m) < GF(p^2m)."""

    def __init__(self, spec: FieldSpec):
        p, m = spec.p, spec.m
        self.spec = spec
        self.p = p
        self.m = m
        self.n = n = 2 * m
        self.q = q = p**n
        self.order = q - 1
        self.zero = q - 1
        self.one = 0
        self.pm = p**m

        exp = np.empty(q, dtype=np.int64)
        exp[: q - 1] = _build_exp(p, n, spec.modulus)
        exp[q - 1] = 0
        log = np.full(q, -1, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        log[0] = self.zero
        if (log < 0).any():
            raise NotPrimitive(f"modulus {spec.modulus} does not generate GF({q})*")
        self.exp_table = exp
        self.log_table = log

        # zech[k] = log(1 + theta^k); index zero gives log(1)
        v = exp
        bumped = v - v % p + (v % p + 1) % p
        self.zech_table = log[bumped]

        self.minus_one = 0 if p == 2 else (q - 1) // 2

        self.subfield_mask = np.zeros(q, dtype=bool)
        self.subfield_mask[np.arange(0, q - 1, self.pm + 1)] = True
        self.subfield_mask[self.zero] = True

        self.unit_circle = (np.arange(self.pm + 1, dtype=np.int64) * (self.pm - 1)) % self.order

        self.trace_table = self._full_trace_table()
        self.half_trace_table = self._half_trace_table()
        for arr in (self.exp_table, self.log_table, self.zech_table, self.subfield_mask,
                    self.unit_circle, self.trace_table, self.half_trace_table):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={format_poly(self.spec.modulus)})"

    # -- construction helpers ------------------------------------------------
    def _frobenius_sum(self, x: np.ndarray, terms: int) -> np.ndarray:
        s = np.full(x.shape, self.zero, dtype=np.int64)
        y = x
        for _ in range(terms):
            s = self.add(s, y)
            y = self.power(y, self.p)
        return s

    def _full_trace_table(self) -> np.ndarray:
        p, n, q = self.p, self.n, self.q
        basis = self._frobenius_sum(np.arange(n, dtype=np.int64), n)
        basis_tr = [self.residue(int(b)) for b in basis]
        vec = np.arange(q, dtype=np.int64)
        tr_vec = np.zeros(q, dtype=np.int64)
        for j, t in enumerate(basis_tr):
            if t:
                tr_vec = (tr_vec + ((vec // p**j) % p) * t) % p
        return tr_vec[self.exp_table]

    def _half_trace_table(self) -> np.ndarray:
        sub = np.flatnonzero(self.subfield_mask)
        s = self.exp_table[self._frobenius_sum(sub, self.m)]
        if (s >= self.p).any():  # pragma: no cover - would mean broken tables
            raise AssertionError("half trace left GF(p)")
        out = np.full(self.q, -1, dtype=np.int64)
        out[sub] = s
        return out

    # -- conversions -----------------------------------------------------------
    def elements(self) -> np.ndarray:
        """All q elements; index q-1 is zero."""
        return np.arange(self.q, dtype=np.int64)

    def nonzero(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def subfield(self) -> np.ndarray:
        """The p^m elements of GF(p^m), zero included."""
        return np.flatnonzero(self.subfield_mask).astype(np.int64)

    def from_vector(self, v: ElemLike) -> ElemLike:
        return _ret(self.log_table[np.asarray(v)])

    def to_vector(self, x: ElemLike) -> ElemLike:
        return _ret(self.exp_table[np.asarray(x)])

    def from_residue(self, c: int) -> FieldElem:
        """Embed c mod p into the prime field."""
        return int(self.log_table[c % self.p])

    def residue(self, x: FieldElem) -> int:
        v = int(self.exp_table[x])
        if v >= self.p:
            raise ValueError(f"element {x} is not in GF({self.p})")
        return v

    def in_subfield(self, x: ElemLike) -> ElemLike:
        return _ret(self.subfield_mask[np.asarray(x)])

    # -- arithmetic --------------------------------------------------------------
    def mul(self, x: ElemLike, y: ElemLike) -> ElemLike:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        z = self.zero
        return _ret(np.where((x == z) | (y == z), z, (x + y) % self.order))

    def power(self, x: ElemLike, e: int) -> ElemLike:
        """x**e; 0**0 is 1 and negative powers of zero raise."""
        x = np.asarray(x, dtype=np.int64)
        z = self.zero
        if e == 0:
            return _ret(np.zeros_like(x))
        if e < 0 and (x == z).any():
            raise ZeroDivisionError("negative power of zero")
        return _ret(np.where(x == z, z, (x * (e % self.order)) % self.order))

    def inv(self, x: ElemLike) -> ElemLike:
        return self.power(x, -1)

    def div(self, x: ElemLike, y: ElemLike) -> ElemLike:
        return self.mul(x, self.inv(y))

    def add(self, x: ElemLike, y: ElemLike) -> ElemLike:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        z, order = self.zero, self.order
        k = self.zech_table[(y - x) % order]
        s = np.where(k == z, z, (x + k) % order)
        s = np.where(x == z, y, s)
        s = np.where(y == z, x, s)
        return _ret(s)

    def neg(self, x: ElemLike) -> ElemLike:
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return _ret(x.copy())
        return _ret(np.where(x == self.zero, self.zero, (x + self.order // 2) % self.order))

    def sub(self, x: ElemLike, y: ElemLike) -> ElemLike:
        return self.add(x, self.neg(y))

    def conj(self, x: ElemLike) -> ElemLike:
        """x -> x^(p^m)."""
        return self.power(x, self.pm)

    def norm(self, x: ElemLike) -> ElemLike:
        """x * conj(x), an element of GF(p^m)."""
        return self.power(x, self.pm + 1)

    def trace(self, x: ElemLike) -> ElemLike:
        """Absolute trace GF(p^n) -> GF(p) as a residue."""
        return _ret(self.trace_table[np.asarray(x)])

    def half_trace(self, x: ElemLike) -> ElemLike:
        """Absolute trace GF(p^m) -> GF(p); x must lie in the subfield."""
        t = self.half_trace_table[np.asarray(x)]
        if (t < 0).any():
            raise NotInSubfield("half-level trace of an element outside GF(p^m)")
        return _ret(t)

    def sqrt_char2(self, x: ElemLike) -> ElemLike:
        """The unique square root x^(2^(n-1)) in characteristic 2."""
        if self.p != 2:
            raise OddCharacteristic("sqrt_char2 needs p = 2")
        return self.power(x, 2 ** (self.n - 1))


def _ret(a: np.ndarray) -> ElemLike:
    if a.ndim == 0:
        return a.item()
    return a


def build_field(
    p: int,
    m: int,
    modulus: Sequence[int] | None = None,
    max_q: int | None = None,
) -> FieldCtx:
    """Tabulate GF(p^2m).

    ``modulus`` lists the coefficients of a monic degree-2m primitive
    polynomial from the leading 1 down to the constant term.  When omitted the
    lexicographically smallest primitive polynomial is used.  ``max_q``
    defaults to the ``NIHO_MAX_Q`` environment variable, else 2^24.
    """
    if not is_prime(p):
        raise NonPrimeModulus(f"p = {p} is not prime")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if max_q is None:
        max_q = int(os.environ.get("NIHO_MAX_Q", DEFAULT_MAX_Q))
    n = 2 * m
    q = p**n
    if q > max_q:
        raise SizeLimit(f"q = {p}^{n} = {q} exceeds the table bound {max_q}")
    if modulus is None:
        mod = find_primitive_poly(p, n)
    else:
        mod = tuple(int(c) for c in modulus)
        if len(mod) != n + 1 or mod[0] != 1 or any(not 0 <= c < p for c in mod):
            raise NotPrimitive(f"modulus must be monic of degree {n} with coefficients in [0, {p})")
        if not is_primitive(mod, p):
            raise NotPrimitive(f"{format_poly(mod)} is not primitive over GF({p})")
    return FieldCtx(FieldSpec(p, m, mod))


# --- traces, conjugation, polar form ---------------------------------------------------

def trace_abs(ctx: FieldCtx, x: ElemLike, level: str = "full") -> ElemLike:
    if level == "full":
        return ctx.trace(x)
    if level == "half":
        return ctx.half_trace(x)
    raise ValueError(f"level must be 'full' or 'half', got {level!r}")


def conjugate(ctx: FieldCtx, x: ElemLike) -> ElemLike:
    return ctx.conj(x)


def polar_decompose(ctx: FieldCtx, x: FieldElem) -> tuple[FieldElem, FieldElem]:
    """Split nonzero x = y*z with y in GF(2^m)* and z on the unit circle."""
    if ctx.p != 2:
        raise OddCharacteristic("polar decomposition is unique only for p = 2; use square_class")
    if x == ctx.zero:
        raise ZeroInput("zero has no polar decomposition")
    y = ctx.sqrt_char2(ctx.norm(x))
    return y, ctx.div(x, y)


class SquareKind(enum.Enum):
    ZERO = "zero"
    SQUARE = "square"
    NONSQUARE = "nonsquare"


@dataclass(frozen=True)
class SquareClass:
    kind: SquareKind
    roots: tuple[FieldElem, ...] = ()


def square_class(ctx: FieldCtx, x: FieldElem) -> SquareClass:
    """Quadratic character of x with its square roots.

    For odd p a square has the root pair (r, -r).  For p = 2 every element is
    a square with the single root x^(2^(n-1)).
    """
    if x == ctx.zero:
        return SquareClass(SquareKind.ZERO, (ctx.zero,))
    if ctx.p == 2:
        return SquareClass(SquareKind.SQUARE, (ctx.sqrt_char2(x),))
    if x % 2:
        return SquareClass(SquareKind.NONSQUARE)
    r = x // 2
    return SquareClass(SquareKind.SQUARE, (r, ctx.neg(r)))
