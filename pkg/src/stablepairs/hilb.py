"""Torus-fixed points of Hilbert schemes of points on toric surfaces.

A fixed point of ``S^[m]`` is one monomial ideal per chart.  A partition
``lam`` corresponds to the ideal ``(y**lam[0], x*y**lam[1], ..., x**len(lam))``,
so its boxes are ``x**(i-1) * y**(j-1)`` for ``1 <= j <= lam[i-1]``.  The
coordinate ``x`` has weight ``t**m1`` and ``y`` has weight ``t**m2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .ring import Character, ConsistencyError, LinearForm
from .toric import Chart, DivisorClass, SurfaceModel, vertex_character


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def boxes(self) -> Iterator[tuple[int, int]]:
        """Boxes ``(i, j)``, 1-based: row ``i`` has ``self[i-1]`` boxes."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for row in self if row >= j) for j in range(1, self[0] + 1))

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate()[j - 1] - i

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


@lru_cache(maxsize=None)
def partitions(k: int) -> tuple[Partition, ...]:
    """All partitions of ``k`` in lexicographic order."""
    if k < 0:
        return ()

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(sorted(Partition(p) for p in gen(k, k)))


def partition_count(k: int) -> int:
    return len(partitions(k))


@dataclass(frozen=True)
class FixedPoint:
    """One partition per chart, charts in the model's order."""

    partitions: tuple[Partition, ...]

    @property
    def size(self) -> int:
        return sum(p.size for p in self.partitions)


def _compositions(m: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (m,)
        return
    for head in range(m + 1):
        for tail in _compositions(m - head, parts - 1):
            yield (head,) + tail


def enumerate_fixed_points(S: SurfaceModel, m: int) -> list[FixedPoint]:
    if m < 0:
        raise ValueError("m must be non-negative")
    out = []
    for sizes in _compositions(m, len(S.charts)):
        for combo in itertools.product(*(partitions(k) for k in sizes)):
            out.append(FixedPoint(tuple(combo)))
    return out


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=4096)
def _local_character(lam: Partition) -> Character:
    return Character.from_exponents((i - 1, j - 1) for i, j in lam.boxes())


def partition_character(lam: Partition, chart: Chart) -> Character:
    """``Z_lam`` rewritten in the global torus variables."""
    return _local_character(Partition(lam)).substitute(chart.m1, chart.m2)


def taut_weights(S: SurfaceModel, Z: FixedPoint, D: DivisorClass) -> list[LinearForm]:
    """Chern roots of the tautological bundle ``O(D)^[m]`` at ``Z``."""
    out = []
    for chart, lam in zip(S.charts, Z.partitions):
        if lam:
            u = vertex_character(S, chart, D)
            out.extend(partition_character(lam, chart).shift(u).expand_weights())
    return out


@lru_cache(maxsize=65536)
def _local_tangent(lam: Partition) -> Character:
    # in local variables t1, t2 (= tau1, tau2)
    z = _local_character(lam)
    zbar = z.conj()
    inv = Character.monomial(-1, -1)
    one_minus = Character({(0, 0): 1, (1, 0): -1}) * Character({(0, 0): 1, (0, 1): -1})
    return z + zbar * inv - z * zbar * one_minus * inv


def twisted_tangent_character(S: SurfaceModel, Z: FixedPoint, L: DivisorClass) -> Character:
    """Character of the tangent space of ``S^[m]`` at ``Z`` twisted by ``L``."""
    total = Character()
    for chart, lam in zip(S.charts, Z.partitions):
        if lam:
            local = _local_tangent(Partition(lam)).substitute(chart.m1, chart.m2)
            total = total + local.shift(vertex_character(S, chart, L))
    return total


def tangent_weights(S: SurfaceModel, Z: FixedPoint) -> list[LinearForm]:
    chi = twisted_tangent_character(S, Z, S.zero())
    if not chi.is_effective():
        raise ConsistencyError(f"tangent character at {Z} has negative multiplicities")
    weights = chi.expand_weights()
    if any(w.is_zero() for w in weights):
        raise ConsistencyError(f"tangent character at {Z} has a zero weight")
    if len(weights) != 2 * Z.size:
        raise ConsistencyError(f"tangent space at {Z} has dimension {len(weights)}, expected {2 * Z.size}")
    return weights


def arm_leg_character(lam: Partition) -> Character:
    """Tangent character from arms and legs, arm counted along ``t2``."""
    terms: dict[tuple[int, int], int] = {}
    lam = Partition(lam)
    for i, j in lam.boxes():
        a, l = lam.arm(i, j), lam.leg(i, j)
        for key in ((-(l + 1), a), (l, -(a + 1))):
            terms[key] = terms.get(key, 0) + 1
    return Character(terms)


def local_tangent_character(lam: Partition) -> Character:
    """Single-chart tangent character in local variables (untwisted)."""
    return _local_tangent(Partition(lam))
