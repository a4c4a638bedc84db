"""Irreducible character degree multisets and their power sums."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .groups import (
    Cyclic,
    DirectProduct,
    GroupSpec,
    Symmetric,
    TriangleSymmetric,
    UnsupportedGroup,
    Wreath,
)

MAX_SYMMETRIC_DEGREE = 20


@dataclass(frozen=True)
class DegreeSet:
    """Multiset of irreducible degrees, stored as ``degree -> multiplicity``."""

    order: int
    multiplicities: tuple  # sorted ((degree, count), ...)

    @classmethod
    def from_counts(cls, order: int, counts: dict) -> "DegreeSet":
        ds = cls(order, tuple(sorted((int(d), int(c)) for d, c in counts.items() if c)))
        if sum(c * d * d for d, c in ds.multiplicities) != order:
            raise ValueError("sum of squared degrees must equal the group order")
        return ds

    @property
    def class_number(self) -> int:
        return sum(c for _, c in self.multiplicities)

    @property
    def max_degree(self) -> int:
        return self.multiplicities[-1][0]

    @property
    def is_abelian(self) -> bool:
        return self.max_degree == 1

    def degrees(self) -> Iterator[int]:
        for d, c in self.multiplicities:
            for _ in range(c):
                yield d

    def __mul__(self, other: "DegreeSet") -> "DegreeSet":
        # irreducibles of a direct product are tensor products
        counts = Counter()
        for d1, c1 in self.multiplicities:
            for d2, c2 in other.multiplicities:
                counts[d1 * d2] += c1 * c2
        return DegreeSet.from_counts(self.order * other.order, counts)


def partitions(n: int) -> Iterator[tuple]:
    """Integer partitions of ``n`` in nonincreasing parts."""

    def rec(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in rec(rest - k, k):
                yield (k,) + tail

    return rec(n, n)


def hook_length_degree(shape: tuple) -> int:
    """Dimension of the Specht module of ``shape`` by the hook-length formula."""
    n = sum(shape)
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(n) // hooks


def symmetric_degrees(n: int) -> DegreeSet:
    counts = Counter(hook_length_degree(p) for p in partitions(n))
    return DegreeSet.from_counts(math.factorial(n), counts)


def degree_set(spec: GroupSpec) -> DegreeSet:
    """Character degrees for abelian, symmetric and direct-product groups."""
    if isinstance(spec, Cyclic):
        return DegreeSet.from_counts(spec.n, {1: spec.n})
    if isinstance(spec, (Symmetric, TriangleSymmetric)):
        deg = spec.degree if isinstance(spec, TriangleSymmetric) else spec.n
        if deg > MAX_SYMMETRIC_DEGREE:
            raise UnsupportedGroup(f"symmetric degree {deg} > {MAX_SYMMETRIC_DEGREE}")
        return symmetric_degrees(deg)
    if isinstance(spec, DirectProduct):
        out = degree_set(spec.parts[0])
        for p in spec.parts[1:]:
            out = out * degree_set(p)
        return out
    if isinstance(spec, Wreath):
        raise UnsupportedGroup("wreath degree sets are not computed; use wreath_domega_bound")
    raise UnsupportedGroup(f"no degree set for {spec!r}")


def d_r_sum(ds: DegreeSet, r: float) -> float:
    """``D_r = sum of d^r`` over the irreducible degrees."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return math.fsum(c * float(d) ** r for d, c in ds.multiplicities)


def d_prime(ds: DegreeSet) -> int:
    """Largest irreducible degree."""
    return ds.max_degree


def wreath_domega_bound(h_order: int, n: int, omega: float) -> float:
    """Upper bound ``(n!)^(omega-1) |H|^n`` on ``D_omega(H wr Sym_n)`` for abelian ``H``."""
    return math.factorial(n) ** (omega - 1) * float(h_order) ** n


def is_supported(spec: GroupSpec) -> bool:
    try:
        degree_set(spec)
    except UnsupportedGroup:
        return False
    return True

