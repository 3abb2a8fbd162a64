"""Gopakumar-Vafa type data and the two conjectural formulas relating it to
stable pair invariants.

Curve classes are tuples of non-negative integers in the Picard basis; all
series are truncated to a box ``0 <= beta_i <= cap_i``.

* genus 0: ``P_{n,beta} = sum P_{0,beta_0} * prod_{i=1}^n n_{0,beta_i}`` over
  ordered decompositions ``beta = beta_0 + ... + beta_n``;
* genus 1: ``sum_beta P_{0,beta} q^beta = prod_beta M(q^beta)**n_{1,beta}``
  with ``M(q) = prod_k (1 - q^k)**(-k)``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional

Beta = tuple[int, ...]


class GvInputError(ValueError):
    """Dataset is malformed or does not cover the classes a check needs."""


# ---------------------------------------------------------------------------
# multi-index helpers


def box(cap: Beta) -> list[Beta]:
    """All classes in the box, ordered by total degree then lexicographically."""
    pts = list(itertools.product(*(range(c + 1) for c in cap)))
    return sorted(pts, key=lambda b: (sum(b), b))


def _leq(a: Beta, b: Beta) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: Beta, b: Beta) -> Beta:
    return tuple(x - y for x, y in zip(a, b))


def _divisors_of_class(beta: Beta) -> list[int]:
    g = math.gcd(*beta)
    return [d for d in range(2, g + 1) if g % d == 0]


def sigma2(n: int) -> int:
    return sum(d * d for d in range(1, n + 1) if n % d == 0)


def parse_exact(value) -> Fraction:
    """Exact value from an int or a string such as ``"-3/4"`` or ``"2.5"``; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise GvInputError(f"inexact value {value!r}; write it as a string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise GvInputError(f"cannot parse {value!r} as an exact number") from None
    raise GvInputError(f"unsupported value {value!r}")


def render(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# datasets


@dataclass
class GvDataset:
    kind: str
    a: Optional[int]
    L1: tuple[int, ...]
    L2: tuple[int, ...]
    cap: Beta
    gamma: str = "pt"
    gw0: dict[Beta, Fraction] = field(default_factory=dict)
    gv0: dict[Beta, Fraction] = field(default_factory=dict)
    n1: dict[Beta, Fraction] = field(default_factory=dict)
    provenance: str = ""

    @property
    def surface_name(self) -> str:
        return f"Fa:{self.a}" if self.kind == "Fa" else self.kind

    def validate(self):
        rank = len(self.cap)
        for name, table in (("gw0", self.gw0), ("gv0", self.gv0), ("n1", self.n1)):
            for beta in table:
                if len(beta) != rank:
                    raise GvInputError(f"{name} key {beta} has wrong length")
                if any(c < 0 for c in beta) or not any(beta):
                    raise GvInputError(f"{name} key {beta} is not a nonzero effective class")

    @classmethod
    def from_dict(cls, doc: Mapping) -> "GvDataset":
        try:
            surf = doc["surface"]
            ds = cls(
                kind=surf["kind"],
                a=surf.get("a"),
                L1=tuple(int(x) for x in doc["L1"]),
                L2=tuple(int(x) for x in doc["L2"]),
                cap=tuple(int(x) for x in doc["cap"]),
                gamma=doc.get("gamma", "pt"),
                provenance=doc.get("provenance", ""),
            )
        except (KeyError, TypeError) as exc:
            raise GvInputError(f"malformed dataset: {exc}") from None
        if ds.gamma != "pt":
            raise GvInputError("only the point insertion is supported")
        for name in ("gw0", "gv0", "n1"):
            table = {}
            for row in doc.get(name, []) or []:
                beta = tuple(int(x) for x in row["beta"])
                if beta in table:
                    raise GvInputError(f"duplicate {name} entry for {beta}")
                table[beta] = parse_exact(row["value"])
            setattr(ds, name, table)
        ds.validate()
        return ds

    def to_dict(self) -> dict:
        surf = {"kind": self.kind}
        if self.a is not None:
            surf["a"] = self.a
        doc = {
            "surface": surf,
            "L1": list(self.L1),
            "L2": list(self.L2),
            "gamma": self.gamma,
            "cap": list(self.cap),
        }
        if self.provenance:
            doc["provenance"] = self.provenance
        for name in ("gw0", "gv0", "n1"):
            table = getattr(self, name)
            if table:
                doc[name] = [{"beta": list(b), "value": render(v)} for b, v in sorted(table.items(), key=lambda kv: (sum(kv[0]), kv[0]))]
        return doc


def load_dataset(path) -> GvDataset:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GvInputError(f"{path}: {exc}") from None
    return GvDataset.from_dict(doc)


def save_dataset(ds: GvDataset, path):
    Path(path).write_text(json.dumps(ds.to_dict(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# genus 0


def gv0_from_gw0(gw0: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    """Invert the multiple-cover formula ``GW_beta = sum_{d | beta} d**-2 n_{beta/d}``."""
    out: dict[Beta, Fraction] = {}
    for beta in box(cap):
        if not any(beta):
            continue
        if beta not in gw0:
            raise GvInputError(f"missing gw0 entry for {beta}")
        value = Fraction(gw0[beta])
        for d in _divisors_of_class(beta):
            value -= Fraction(1, d * d) * out[tuple(c // d for c in beta)]
        out[beta] = value
    return out


def gw0_from_gv0(gv0: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    out: dict[Beta, Fraction] = {}
    for beta in box(cap):
        if not any(beta):
            continue
        total = Fraction(0)
        for d in [1] + _divisors_of_class(beta):
            base = tuple(c // d for c in beta)
            if base not in gv0:
                raise GvInputError(f"missing gv0 entry for {base}")
            total += Fraction(1, d * d) * gv0[base]
        out[beta] = total
    return out


def _require(table: Mapping[Beta, Fraction], beta: Beta, name: str) -> Fraction:
    if beta not in table:
        raise GvInputError(f"{name} has no entry for {beta}")
    return Fraction(table[beta])


def predict_P_g0(P0: Mapping[Beta, Fraction], gv0: Mapping[Beta, Fraction], beta: Beta, n: int) -> Fraction:
    """Genus-0 prediction for ``P_{n,beta}``, computed by repeated convolution."""
    if n < 1:
        raise ValueError("n must be at least 1")
    beta = tuple(beta)
    classes = [b for b in box(beta)]
    # G^n restricted to the box below beta; n_{0,0} = 0
    G = {b: (Fraction(0) if not any(b) else _require(gv0, b, "gv0")) for b in classes}
    power = dict(G)
    for _ in range(n - 1):
        nxt = {}
        for b in classes:
            s = Fraction(0)
            for c in classes:
                if _leq(c, b):
                    s += power[c] * G[_sub(b, c)]
            nxt[b] = s
        power = nxt
    return sum((_require(P0, b0, "P0") * power[_sub(beta, b0)] for b0 in classes), Fraction(0))


def predict_P_g0_enumerated(P0, gv0, beta: Beta, n: int) -> Fraction:
    """Same prediction as a literal sum over ordered decompositions."""
    beta = tuple(beta)
    classes = box(beta)
    total = Fraction(0)
    for parts in itertools.product(classes, repeat=n):
        rest = beta
        ok = True
        for p in parts:
            if not _leq(p, rest):
                ok = False
                break
            rest = _sub(rest, p)
        if not ok:
            continue
        term = _require(P0, rest, "P0")
        for p in parts:
            term *= Fraction(0) if not any(p) else _require(gv0, p, "gv0")
        total += term
    return total


def backsolve_gv0(P0: Mapping[Beta, Fraction], P1: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    """The unique ``gv0`` for which the ``n = 1`` prediction reproduces ``P1`` in the box."""
    zero = tuple(0 for _ in cap)
    if Fraction(P0.get(zero, 0)) != 1:
        raise GvInputError("the constant term P_{0,0} must be 1")
    out: dict[Beta, Fraction] = {}
    for beta in box(cap):
        if not any(beta):
            continue
        value = _require(P1, beta, "P1")
        for b0 in box(beta):
            if any(b0) and b0 != beta:
                value -= _require(P0, b0, "P0") * out[_sub(beta, b0)]
        out[beta] = value
    return out


@dataclass(frozen=True)
class CheckRow:
    beta: Beta
    n: int
    computed: Fraction
    predicted: Fraction

    @property
    def ok(self) -> bool:
        return self.computed == self.predicted

    def describe(self) -> str:
        tag = "ok" if self.ok else "FAIL"
        return f"beta={','.join(map(str, self.beta))} n={self.n} computed={render(self.computed)} predicted={render(self.predicted)} {tag}"


@dataclass(frozen=True)
class CheckReport:
    name: str
    rows: tuple[CheckRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def failures(self) -> list[CheckRow]:
        return [r for r in self.rows if not r.ok]

    def summary(self) -> str:
        bad = len(self.failures)
        return f"{self.name}: {len(self.rows) - bad}/{len(self.rows)} rows agree"

    def render(self) -> str:
        return "\n".join([r.describe() for r in self.rows] + [self.summary()])


def _engine_geometry(ds: GvDataset):
    from .toric import parse_surface

    S = parse_surface(ds.surface_name)
    return S, S.divisor(ds.L1), S.divisor(ds.L2)


def engine_P(ds: GvDataset, beta: Beta, n: int) -> Fraction:
    from .localization import make_request, stable_pair_invariant

    S, L1, L2 = _engine_geometry(ds)
    return stable_pair_invariant(make_request(S, L1, L2, beta, n)).value


def engine_P0(ds: GvDataset, cap: Beta) -> dict[Beta, Fraction]:
    return {b: engine_P(ds, b, 0) for b in box(cap)}


def default_requests(ds: GvDataset, n_max: int = 2) -> list[tuple[Beta, int]]:
    return [(b, n) for b in box(ds.cap) if any(b) for n in range(1, n_max + 1)]


def check_conj_g0(
    ds: GvDataset,
    requests: Iterable[tuple[Beta, int]],
    P0: Optional[Mapping[Beta, Fraction]] = None,
    computed: Optional[Mapping[tuple[Beta, int], Fraction]] = None,
) -> CheckReport:
    """Compare the genus-0 prediction with invariants for each ``(beta, n)``.

    ``P0`` and ``computed`` default to values from the localization engine.
    """
    gv0 = ds.gv0 if ds.gv0 else (gv0_from_gw0(ds.gw0, ds.cap) if ds.gw0 else {})
    if not gv0:
        raise GvInputError("dataset has neither gv0 nor gw0 entries")
    if P0 is None:
        P0 = engine_P0(ds, ds.cap)
    rows = []
    for beta, n in requests:
        beta = tuple(beta)
        got = computed[(beta, n)] if computed is not None else engine_P(ds, beta, n)
        rows.append(CheckRow(beta, n, Fraction(got), predict_P_g0(P0, gv0, beta, n)))
    return CheckReport("genus-0 check", tuple(rows))


# ---------------------------------------------------------------------------
# genus 1


def series_log(P: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    """Formal logarithm of a series with constant term 1."""
    zero = tuple(0 for _ in cap)
    if Fraction(P.get(zero, 0)) != 1:
        raise GvInputError("the constant term P_{0,0} must be 1")
    classes = box(cap)
    L: dict[Beta, Fraction] = {}
    for g in classes:
        if not any(g):
            continue
        deg = sum(g)
        acc = deg * Fraction(P.get(g, 0))
        for d in classes:
            if any(d) and d != g and _leq(d, g):
                acc -= sum(d) * L[d] * Fraction(P.get(_sub(g, d), 0))
        L[g] = acc / deg
    return L


def series_exp(A: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    """Formal exponential of a series without constant term."""
    classes = box(cap)
    E: dict[Beta, Fraction] = {}
    for g in classes:
        if not any(g):
            E[g] = Fraction(1)
            continue
        acc = Fraction(0)
        for d in classes:
            if any(d) and _leq(d, g):
                acc += sum(d) * Fraction(A.get(d, 0)) * E[_sub(g, d)]
        E[g] = acc / sum(g)
    return E


def macmahon(N: int) -> list[int]:
    """Coefficients of ``prod_k (1 - q^k)**(-k)`` up to ``q**N``."""
    logc = {(k,): Fraction(sigma2(k), k) for k in range(1, N + 1)}
    E = series_exp(logc, (N,))
    return [int(E[(k,)]) for k in range(N + 1)]


def solve_n1(P0: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    """Exponents ``n_{1,beta}`` with ``sum P_{0,beta} q^beta = prod M(q^beta)**n_{1,beta}`` in the box."""
    L = series_log(P0, cap)
    n1: dict[Beta, Fraction] = {}
    for g in box(cap):
        if not any(g):
            continue
        value = L[g]
        for N in _divisors_of_class(g):
            value -= n1[tuple(c // N for c in g)] * Fraction(sigma2(N), N)
        n1[g] = value
    return n1


def macmahon_product(n1: Mapping[Beta, Fraction], cap: Beta) -> dict[Beta, Fraction]:
    A: dict[Beta, Fraction] = {}
    for beta, e in n1.items():
        if not any(beta) or not e:
            continue
        N = 1
        while True:
            target = tuple(N * c for c in beta)
            if not _leq(target, cap):
                break
            A[target] = A.get(target, Fraction(0)) + Fraction(e) * Fraction(sigma2(N), N)
            N += 1
    return series_exp(A, cap)


def check_conj_g1(P0: Mapping[Beta, Fraction], n1: Mapping[Beta, Fraction], cap: Beta) -> CheckReport:
    predicted = macmahon_product(n1, cap)
    rows = tuple(CheckRow(b, 0, Fraction(P0.get(b, 0)), predicted[b]) for b in box(cap))
    return CheckReport("genus-1 check", rows)


def integrality_audit(table: Mapping[Beta, Fraction]) -> list[Beta]:
    """Classes whose value is not an integer (flagged, not rejected)."""
    return [b for b, v in sorted(table.items()) if Fraction(v).denominator != 1]
