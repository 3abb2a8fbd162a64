"""Bundled reference values and the regression check over them."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .localization import make_request, stable_pair_invariant
from .toric import DivisorClass, SurfaceModel, parse_surface


@dataclass(frozen=True)
class GoldenEntry:
    geometry: str
    beta: tuple[int, ...]
    n: int
    value: int
    star: bool
    dagger: bool
    source: str

    @property
    def computable(self) -> bool:
        return not self.star

    def display(self) -> str:
        marks = ("★" if self.star else "") + ("†" if self.dagger else "")
        return f"{self.value}{marks}"


@lru_cache(maxsize=1)
def _raw() -> dict:
    return json.loads(resources.files("stablepairs").joinpath("data/golden.json").read_text(encoding="utf-8"))


def geometry_ids() -> list[str]:
    return list(_raw()["geometries"])


def geometry(gid: str) -> tuple[SurfaceModel, DivisorClass, DivisorClass]:
    g = _raw()["geometries"][gid]
    S = parse_surface(g["surface"])
    return S, S.divisor(g["L1"]), S.divisor(g["L2"])


def find_geometry_id(S: SurfaceModel, L1: DivisorClass, L2: DivisorClass) -> str | None:
    for gid, g in _raw()["geometries"].items():
        if parse_surface(g["surface"]).name == S.name and tuple(g["L1"]) == L1.coeffs and tuple(g["L2"]) == L2.coeffs:
            return gid
    return None


def entries(gid: str | None = None, computable_only: bool = False) -> list[GoldenEntry]:
    out = []
    for e in _raw()["entries"]:
        entry = GoldenEntry(e["geometry"], tuple(e["beta"]), e["n"], e["value"], e["star"], e["dagger"], e["source"])
        if gid is not None and entry.geometry != gid:
            continue
        if computable_only and not entry.computable:
            continue
        out.append(entry)
    return out


def lookup(gid: str, beta, n: int) -> GoldenEntry | None:
    for e in entries(gid):
        if e.beta == tuple(beta) and e.n == n:
            return e
    return None


def local_p3_entries() -> list[dict]:
    return list(_raw()["local_P3"]["entries"])


def compute(entry: GoldenEntry) -> Fraction:
    S, L1, L2 = geometry(entry.geometry)
    return stable_pair_invariant(make_request(S, L1, L2, entry.beta, entry.n)).value


@dataclass(frozen=True)
class SelftestRow:
    entry: GoldenEntry
    computed: Fraction | None
    ok: bool


def selftest(gid: str | None = None) -> list[SelftestRow]:
    """Recompute every computable entry; starred entries are reported but skipped."""
    rows = []
    for e in entries(gid):
        if not e.computable:
            rows.append(SelftestRow(e, None, True))
            continue
        value = compute(e)
        rows.append(SelftestRow(e, value, value == e.value))
    return rows
