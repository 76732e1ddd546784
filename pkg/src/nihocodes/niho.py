"""Niho exponents, the three code families, and cyclotomic coset bookkeeping."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .errors import ConstraintViolation
from .field import is_prime


class Variant(str, enum.Enum):
    BINARY3 = "binary3"
    BINARY4 = "binary4"
    PARY4 = "pary4"


@dataclass(frozen=True)
class NihoFamily:
    """Validated parameters of one code family.

    ``s1``/``s2`` are residues mod p^m + 1 and ``d1``/``d2`` residues mod
    p^n - 1.  For ``BINARY3`` the first exponent is the literal 2^m + 1 from
    the code definition; it lies in the coset of s1*(2^m - 1) + 1 with
    s1 = 1/2 mod 2^m + 1 but is not itself in normalized form.
    """

    variant: Variant
    p: int
    m: int
    s1: int
    s2: int
    d1: int
    d2: int
    l: int
    s2_param: Optional[int] = None
    k: Optional[int] = None
    t: Optional[int] = None

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def params(self) -> dict:
        if self.variant is Variant.BINARY3:
            return {"s2": self.s2_param}
        if self.variant is Variant.BINARY4:
            return {"k": self.k, "t": self.t}
        return {"t": self.t}

    def label(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.variant.value}(p={self.p}, m={self.m}, {inner})"

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "p": self.p,
            "m": self.m,
            "params": self.params,
            "s1": self.s1,
            "s2": self.s2,
            "d1": self.d1,
            "d2": self.d2,
            "l": self.l,
        }


def niho_exponent(p: int, m: int, s: int) -> int:
    """d = s(p^m - 1) + 1 reduced mod p^2m - 1."""
    return (s * (p**m - 1) + 1) % (p ** (2 * m) - 1)


def binary4_exponents(m: int, k: int, t: int) -> tuple[int, int, int, int]:
    """(s1, s2, d1, d2) for the binary four-weight family, without validation."""
    big = 2**m + 1
    s1 = (2 ** (k - 1) * t - (t - 1) // 2) % big
    s2 = (2 ** (k - 1) * t + (t + 1) // 2) % big
    return s1, s2, niho_exponent(2, m, s1), niho_exponent(2, m, s2)


def pary4_exponents(p: int, m: int, t: int) -> tuple[int, int, int, int]:
    big = p**m + 1
    s1 = ((t + 2) // 4) % big
    s2 = ((3 * t + 2) // 4) % big
    return s1, s2, niho_exponent(p, m, s1), niho_exponent(p, m, s2)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstraintViolation(msg)


def make_family(
    p: int,
    m: int,
    variant: Variant | str,
    *,
    s2: int | None = None,
    k: int | None = None,
    t: int | None = None,
) -> NihoFamily:
    variant = Variant(variant)
    _require(is_prime(p), f"p = {p} is not prime")
    _require(m >= 1, f"m = {m} must be positive")
    big = p**m + 1

    if variant is Variant.BINARY3:
        _require(p == 2, "binary3 needs p = 2")
        _require(s2 is not None, "binary3 needs s2")
        _require((2 * s2 - 1) % big != 0, f"s2 = {s2} is congruent to 1/2 mod 2^m+1 = {big}")
        s2r = s2 % big
        return NihoFamily(
            variant, p, m,
            s1=pow(2, -1, big), s2=s2r,
            d1=big, d2=niho_exponent(p, m, s2r),
            l=gcd(2 * s2r - 1, big), s2_param=s2,
        )

    if variant is Variant.BINARY4:
        _require(p == 2, "binary4 needs p = 2")
        _require(k is not None and t is not None, "binary4 needs k and t")
        _require(t % 2 == 1, f"t = {t} must be odd")
        _require(1 <= t <= big, f"t = {t} outside 1..2^m+1 = {big}")
        _require(1 <= k <= m, f"k = {k} outside 1..m = {m}")
        _require((2**k - 1) * t % big != 0, f"(2^k-1)t = {(2**k - 1) * t} is 0 mod {big}")
        _require((2**k + 1) * t % big != 0, f"(2^k+1)t = {(2**k + 1) * t} is 0 mod {big}")
        _require(
            m % k == k - 1 or gcd(k, 2 * m) == 1,
            f"neither m = -1 mod k nor gcd(k, 2m) = 1 holds for k = {k}, m = {m}",
        )
        s1, s2v, d1, d2 = binary4_exponents(m, k, t)
        return NihoFamily(variant, p, m, s1, s2v, d1, d2, l=gcd(t, big), k=k, t=t)

    _require(p % 2 == 1, "pary4 needs an odd prime p")
    _require(t is not None, "pary4 needs t")
    _require(t % 4 == 2, f"t = {t} is not 2 mod 4")
    _require(t % big != 0, f"t = {t} is 0 mod p^m+1 = {big}")
    _require(1 <= t <= 4 * big, f"t = {t} outside 1..4(p^m+1) = {4 * big}")
    s1, s2v, d1, d2 = pary4_exponents(p, m, t)
    return NihoFamily(variant, p, m, s1, s2v, d1, d2, l=gcd(t, big), t=t)


# --- cyclotomic cosets ---------------------------------------------------------

def cyclotomic_coset(p: int, modulus_N: int, d: int) -> list[int]:
    """Orbit of d under multiplication by p mod N, in generation order."""
    d %= modulus_N
    orbit = [d]
    e = d * p % modulus_N
    while e != d:
        orbit.append(e)
        e = e * p % modulus_N
    return orbit


def coset_size(p: int, modulus_N: int, d: int) -> int:
    return len(cyclotomic_coset(p, modulus_N, d))


def coset_leader(p: int, modulus_N: int, d: int) -> int:
    return min(cyclotomic_coset(p, modulus_N, d))


def pairs_equivalent(p: int, m: int, pair_a: tuple[int, int], pair_b: tuple[int, int]) -> bool:
    """Whether two exponent pairs agree up to p-power multiples and swapping."""
    N = p ** (2 * m) - 1
    a1, a2 = (coset_leader(p, N, e) for e in pair_a)
    b1, b2 = (coset_leader(p, N, e) for e in pair_b)
    return (a1, a2) == (b1, b2) or (a1, a2) == (b2, b1)


def pair_key(fam: NihoFamily) -> frozenset:
    """Hashable class key: two families share it iff their pairs are equivalent."""
    N = fam.q - 1
    return frozenset((coset_leader(fam.p, N, fam.d1), coset_leader(fam.p, N, fam.d2)))


# --- canonical parameter ranges ------------------------------------------------

def canonical_families(p: int, m: int, variant: Variant | str) -> list[NihoFamily]:
    """Every valid family in the canonical parameter range, before dedup.

    binary3: 1 <= s2 <= 2^(m-1)+1; binary4: 1 <= k <= m, odd 1 <= t <= 2^m+1;
    pary4: 1 <= t <= 2(p^m+1), since t and 4(p^m+1) - t give equivalent pairs.
    """
    variant = Variant(variant)
    out = []
    if variant is Variant.BINARY3:
        cands: Iterable[dict] = ({"s2": s} for s in range(1, 2 ** (m - 1) + 2))
    elif variant is Variant.BINARY4:
        cands = ({"k": k, "t": t} for k in range(1, m + 1) for t in range(1, 2**m + 2, 2))
    else:
        cands = ({"t": t} for t in range(2, 2 * (p**m + 1) + 1, 4))
    for kw in cands:
        try:
            out.append(make_family(p, m, variant, **kw))
        except ConstraintViolation:
            continue
    return out


def equivalence_classes(families: Iterable[NihoFamily]) -> list[list[NihoFamily]]:
    """Group families whose exponent pairs are equivalent, keeping first-seen order."""
    classes: dict[frozenset, list[NihoFamily]] = {}
    for fam in families:
        classes.setdefault(pair_key(fam), []).append(fam)
    return list(classes.values())
