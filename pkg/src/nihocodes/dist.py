"""Exact value and weight distributions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping


def _clean(entries: Mapping[int, int]) -> dict[int, int]:
    return {int(k): int(v) for k, v in sorted(entries.items(), reverse=True) if v}


@dataclass(frozen=True)
class ValueDist:
    """Histogram of exponential-sum values over a parameter domain."""

    entries: dict[int, int]
    domain_size: int

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))

    @classmethod
    def from_counter(cls, counts: Counter | Mapping[int, int], domain_size: int | None = None) -> "ValueDist":
        total = sum(counts.values())
        return cls(dict(counts), total if domain_size is None else domain_size)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def power_sum(self, k: int) -> int:
        return sum(v**k * f for v, f in self.entries.items())

    def pairs(self) -> list[list[int]]:
        """[value, frequency] pairs, descending by value."""
        return [[v, f] for v, f in self.entries.items()]

    def merge(self, other: "ValueDist") -> "ValueDist":
        c = Counter(self.entries)
        c.update(other.entries)
        return ValueDist(dict(c), self.domain_size + other.domain_size)


@dataclass(frozen=True)
class WeightDist:
    """Weight enumerator of a linear code with its [length, dimension, d] header."""

    entries: dict[int, int]
    length: int
    dimension: int
    p: int = 2
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean(self.entries))

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def min_distance(self) -> int:
        return min(w for w in self.entries if w > 0)

    @property
    def params(self) -> tuple[int, int, int]:
        return self.length, self.dimension, self.min_distance

    def check(self) -> None:
        """Raise AssertionError unless A_0 = 1 and the total is p^dimension."""
        assert self.entries.get(0) == 1, f"A_0 = {self.entries.get(0)}"
        assert self.total == self.p**self.dimension, f"total {self.total} != {self.p}^{self.dimension}"
        assert max(self.entries) <= self.length

    def pairs(self) -> list[list[int]]:
        return [[w, f] for w, f in self.entries.items()]

    def enumerator(self) -> str:
        """Polynomial form, e.g. ``1 + 30x^6 + 15x^8 + 18x^10``."""
        terms = []
        for w, f in sorted(self.entries.items()):
            terms.append(str(f) if w == 0 else f"{f}x^{w}")
        return " + ".join(terms)

    def same_as(self, other: "WeightDist") -> bool:
        return (self.entries, self.length, self.dimension) == (other.entries, other.length, other.dimension)


def weight_from_value(p: int, m: int, value: int) -> int:
    """Hamming weight of the codeword whose exponential sum is ``value``.

    p = 2: w = 2^(2m-1) - T/2.  Odd p: w = (p-1)(p^2m - T)/p, valid because
    the sum is invariant under scaling (a, b) by GF(p)*.
    """
    q = p ** (2 * m)
    num = (p - 1) * (q - value)
    if num % p:
        raise ArithmeticError(f"value {value} does not map to an integral weight")
    return num // p


def value_to_weight_dist(vd: ValueDist, p: int, m: int, dimension: int) -> WeightDist:
    c: Counter = Counter()
    for v, f in vd.entries.items():
        c[weight_from_value(p, m, v)] += f
    return WeightDist(dict(c), p ** (2 * m) - 1, dimension, p)
