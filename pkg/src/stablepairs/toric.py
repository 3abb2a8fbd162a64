"""Smooth complete toric surfaces: P2, P1xP1 and the Hirzebruch surfaces F_a.

Divisor classes are integer vectors in the Picard basis ``H`` (P2),
``H1, H2`` (P1xP1) or ``B, F`` (F_a, with ``B**2 = -a``).  Every class also
carries a torus-invariant lift ``sum a_rho * D_rho`` which is what the chart
characters are computed from.

Torus weights live on chart coordinate functions: on the chart of a cone
with rays ``v1, v2`` the coordinates have weights ``t**m1, t**m2`` where
``(m1, m2)`` is the dual basis.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

Vec = tuple[int, int]

KINDS = ("P2", "P1xP1", "Fa")


def _pair(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] + u[1] * v[1]


@dataclass(frozen=True)
class DivisorClass:
    """A class in Pic(S) plus the torus-invariant lift used for characters."""

    coeffs: tuple[int, ...]
    lift: tuple[int, ...] = field(default=(), compare=False)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            tuple(a + b for a, b in zip(self.lift, other.lift)),
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs), tuple(-a for a in self.lift))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.coeffs), tuple(k * a for a in self.lift))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


@dataclass(frozen=True)
class Chart:
    """Affine chart of a two-dimensional cone."""

    rays: tuple[int, int]
    m1: Vec
    m2: Vec

    @property
    def canonical_weight(self) -> Vec:
        return (self.m1[0] + self.m2[0], self.m1[1] + self.m2[1])


@dataclass(frozen=True)
class SurfaceModel:
    kind: str
    a: int | None
    picard_rank: int
    intersection: tuple[tuple[int, ...], ...]
    rays: tuple[Vec, ...]
    ray_classes: tuple[tuple[int, ...], ...]
    canonical_lift_matrix: tuple[tuple[int, ...], ...]
    charts: tuple[Chart, ...]

    @property
    def name(self) -> str:
        return f"F{self.a}" if self.kind == "Fa" else self.kind

    @property
    def euler_number(self) -> int:
        return len(self.charts)

    @property
    def canonical(self) -> DivisorClass:
        lift = tuple(-1 for _ in self.rays)
        return DivisorClass(self.class_of_lift(lift), lift)

    def divisor(self, coeffs: Sequence[int]) -> DivisorClass:
        """Class with the canonical lift."""
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.picard_rank:
            raise ValueError(f"{self.name} needs {self.picard_rank} coefficient(s), got {len(coeffs)}")
        lift = [0] * len(self.rays)
        for c, column in zip(coeffs, self.canonical_lift_matrix):
            for i, x in enumerate(column):
                lift[i] += c * x
        return DivisorClass(coeffs, tuple(lift))

    def zero(self) -> DivisorClass:
        return self.divisor((0,) * self.picard_rank)

    def generators(self) -> list[DivisorClass]:
        return [self.divisor(tuple(int(i == j) for j in range(self.picard_rank))) for i in range(self.picard_rank)]

    def class_of_lift(self, lift: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.picard_rank
        for c, cls in zip(lift, self.ray_classes):
            for i, x in enumerate(cls):
                out[i] += c * x
        return tuple(out)

    def dot(self, d: DivisorClass, e: DivisorClass) -> int:
        x, y = d.coeffs, e.coeffs
        return sum(x[i] * self.intersection[i][j] * y[j] for i in range(self.picard_rank) for j in range(self.picard_rank))

    def ray_divisor(self, i: int) -> DivisorClass:
        lift = tuple(int(j == i) for j in range(len(self.rays)))
        return DivisorClass(self.class_of_lift(lift), lift)


def _ccw_order(rays: Sequence[Vec]) -> list[int]:
    return sorted(range(len(rays)), key=lambda i: math.atan2(rays[i][1], rays[i][0]) % (2 * math.pi))


def _dual_basis(v1: Vec, v2: Vec) -> tuple[Vec, Vec]:
    det = v1[0] * v2[1] - v1[1] * v2[0]
    if abs(det) != 1:
        raise ValueError(f"cone ({v1}, {v2}) is not smooth")
    # rows of the inverse transpose of [v1 v2]
    m1 = (v2[1] * det, -v2[0] * det)
    m2 = (-v1[1] * det, v1[0] * det)
    return m1, m2


def _charts(rays: Sequence[Vec]) -> tuple[Chart, ...]:
    order = _ccw_order(rays)
    out = []
    for k, i in enumerate(order):
        j = order[(k + 1) % len(order)]
        m1, m2 = _dual_basis(rays[i], rays[j])
        out.append(Chart((i, j), m1, m2))
    return tuple(out)


def build_surface(kind: str, a: int | None = None) -> SurfaceModel:
    if kind == "P2":
        rays = ((1, 0), (0, 1), (-1, -1))
        return SurfaceModel(
            "P2", None, 1, ((1,),), rays,
            ray_classes=((1,), (1,), (1,)),
            canonical_lift_matrix=((0, 0, 1),),
            charts=_charts(rays),
        )
    if kind == "P1xP1":
        rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
        return SurfaceModel(
            "P1xP1", None, 2, ((0, 1), (1, 0)), rays,
            ray_classes=((1, 0), (1, 0), (0, 1), (0, 1)),
            canonical_lift_matrix=((1, 0, 0, 0), (0, 0, 1, 0)),
            charts=_charts(rays),
        )
    if kind == "Fa":
        if a is None or isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise ValueError("Hirzebruch surfaces need an integer a >= 1")
        rays = ((1, 0), (0, 1), (-1, a), (0, -1))
        # B = D_(0,1), F = D_(1,0) = D_(-1,a), D_(0,-1) = B + aF
        return SurfaceModel(
            "Fa", a, 2, ((-a, 1), (1, 0)), rays,
            ray_classes=((0, 1), (1, 0), (0, 1), (1, a)),
            canonical_lift_matrix=((0, 1, 0, 0), (1, 0, 0, 0)),
            charts=_charts(rays),
        )
    raise ValueError(f"unknown surface kind {kind!r}")


def parse_surface(text: str) -> SurfaceModel:
    """Accepts ``P2``, ``P1xP1``, ``F<a>`` and ``Fa:<a>``."""
    t = text.strip()
    if t in ("P2", "P1xP1"):
        return build_surface(t)
    if t.startswith("Fa:"):
        body = t[3:]
    elif t.startswith("F") and t[1:].isdigit():
        body = t[1:]
    else:
        raise ValueError(f"cannot parse surface {text!r}")
    try:
        a = int(body)
    except ValueError:
        raise ValueError(f"cannot parse surface {text!r}") from None
    return build_surface("Fa", a)


def parse_class(S: SurfaceModel, text: str) -> DivisorClass:
    try:
        coeffs = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse divisor {text!r}") from None
    return S.divisor(coeffs)


# ---------------------------------------------------------------------------
# numerical invariants


def riemann_roch_chi(S: SurfaceModel, D: DivisorClass) -> int:
    num = S.dot(D, D) - S.dot(D, S.canonical)
    return 1 + num // 2


def point_count_m(S: SurfaceModel, beta: DivisorClass, n: int) -> int:
    return n + (S.dot(beta, beta) + S.dot(beta, S.canonical)) // 2


def arithmetic_genus(S: SurfaceModel, beta: DivisorClass) -> int:
    return 1 + (S.dot(beta, beta) + S.dot(beta, S.canonical)) // 2


def vertex_character(S: SurfaceModel, chart: Chart, D: DivisorClass) -> Vec:
    """Exponent ``u`` with ``<u, v_rho> = -a_rho`` on both rays of the cone."""
    a1 = D.lift[chart.rays[0]]
    a2 = D.lift[chart.rays[1]]
    return (-a1 * chart.m1[0] - a2 * chart.m2[0], -a1 * chart.m1[1] - a2 * chart.m2[1])


def _box(S: SurfaceModel, D: DivisorClass) -> int:
    # vertices of the line arrangement <u, v_rho> = -a_rho lie within this box
    spread = max(max(abs(v[0]), abs(v[1])) for v in S.rays)
    return sum(abs(x) for x in D.lift) * spread + 2


def lattice_points(S: SurfaceModel, D: DivisorClass) -> list[Vec]:
    """Lattice points of the polygon ``<u, v_rho> >= -a_rho``."""
    r = _box(S, D)
    return [
        (x, y)
        for x in range(-r, r + 1)
        for y in range(-r, r + 1)
        if all(_pair((x, y), v) >= -c for v, c in zip(S.rays, D.lift))
    ]


def _arcs(S: SurfaceModel, marked: set[int]) -> int:
    order = _ccw_order(S.rays)
    flags = [i in marked for i in order]
    if all(flags):
        return -1
    # count runs of marked rays, cyclically
    return sum(1 for k in range(len(flags)) if flags[k] and not flags[k - 1])


def cohomology_dims(S: SurfaceModel, D: DivisorClass) -> tuple[int, int, int]:
    """``(h0, h1, h2)`` of O(D) from the sign patterns of lattice points."""
    r = _box(S, D)
    h = [0, 0, 0]
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            marked = {i for i, (v, c) in enumerate(zip(S.rays, D.lift)) if _pair((x, y), v) < -c}
            if not marked:
                h[0] += 1
                continue
            k = _arcs(S, marked)
            if k == -1:
                h[2] += 1
            else:
                h[1] += k - 1
    return tuple(h)


def is_effective(S: SurfaceModel, beta: DivisorClass) -> bool:
    return all(c >= 0 for c in beta.coeffs)


def is_nef(S: SurfaceModel, D: DivisorClass) -> bool:
    return all(S.dot(D, S.ray_divisor(i)) >= 0 for i in range(len(S.rays)))


def effective_classes_below(S: SurfaceModel, beta: DivisorClass) -> Iterator[DivisorClass]:
    """All effective classes ``beta'`` with ``beta' <= beta`` coordinatewise, zero included."""
    for coeffs in itertools.product(*(range(c + 1) for c in beta.coeffs)):
        yield S.divisor(coeffs)


def effective_decompositions(S: SurfaceModel, beta: DivisorClass, k: int) -> list[tuple[DivisorClass, ...]]:
    """Ordered k-tuples of effective classes summing to ``beta``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if not is_effective(S, beta):
        return []

    def rec(rest: tuple[int, ...], parts: int):
        if parts == 1:
            yield (rest,)
            return
        for head in itertools.product(*(range(c + 1) for c in rest)):
            tail = tuple(r - h for r, h in zip(rest, head))
            for more in rec(tail, parts - 1):
                yield (head,) + more

    return [tuple(S.divisor(c) for c in tup) for tup in rec(beta.coeffs, k)]


# ---------------------------------------------------------------------------
# helpers for independence checks


def shifted_lift(S: SurfaceModel, D: DivisorClass, u: Vec) -> DivisorClass:
    """Same class, lift changed by the principal divisor of ``chi**u``."""
    lift = tuple(c + _pair(u, v) for c, v in zip(D.lift, S.rays))
    return DivisorClass(D.coeffs, lift)


def with_chart_order(S: SurfaceModel, perm: Sequence[int]) -> SurfaceModel:
    if sorted(perm) != list(range(len(S.charts))):
        raise ValueError("not a permutation of the charts")
    return replace(S, charts=tuple(S.charts[i] for i in perm))
