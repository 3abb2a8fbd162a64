"""Moduli-space status of stable pairs on local toric surfaces.

Two kinds of information live here.  Sufficient criteria that can be
evaluated directly (negativity of ``L1``, ``L2`` on curves, the properness
window from a splitting ``beta = C1 + C2`` and the iso bounds for the two
ample geometries), and reference lists for six geometries stored in
``data/classification.json``.  The lists decide the reported status; the
formulas are cross-checked against them in the tests.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from .toric import (
    DivisorClass,
    SurfaceModel,
    effective_classes_below,
    is_effective,
    parse_surface,
    point_count_m,
)


class Status(str, enum.Enum):
    ISO_PROPER = "IsoProper"
    PROPER_NOT_ISO = "ProperNotIso"
    NON_PROPER = "NonProper"
    EMPTY = "EmptyModuli"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    status: Status
    note: str = ""


# ---------------------------------------------------------------------------
# formula-based criteria


def properness_by_negativity(S: SurfaceModel, L1: DivisorClass, L2: DivisorClass, beta: DivisorClass) -> bool:
    """True when every effective ``0 != b <= beta`` has ``b.L1 < 0`` and ``b.L2 < 0``."""
    for b in effective_classes_below(S, beta):
        if b.is_zero():
            continue
        if S.dot(b, L1) >= 0 or S.dot(b, L2) >= 0:
            return False
    return True


def properness_window(S, L1, L2, beta, C1, C2) -> Optional[tuple[int, int]]:
    """Necessary window ``[n_min, n_max]`` for properness, or None if the split does not apply."""
    if (C1 + C2).coeffs != beta.coeffs:
        return None
    if C1.coeffs not in {g.coeffs for g in S.generators()}:
        return None
    if S.dot(L1, C1) != 0 and S.dot(L2, C1) != 0:
        return None
    if not is_effective(S, C2):
        return None
    K = S.canonical
    lo = -(S.dot(beta, beta) + S.dot(beta, K)) // 2
    hi = -(S.dot(C2, C2) + S.dot(C2, K)) // 2
    return lo, hi


def _geometry_key(S: SurfaceModel, L1: DivisorClass, L2: DivisorClass):
    return (S.name, L1.coeffs, L2.coeffs)


def iso_bound(S, L1, L2, beta) -> Optional[int]:
    """Sufficient bound ``n <= n_max`` for the two ample geometries, else None."""
    key = _geometry_key(S, L1, L2)
    if key == ("P2", (-1,), (-2,)) or key == ("P2", (-2,), (-1,)):
        (d,) = beta.coeffs
        if d < 2:
            return None
        # floor of -d^2/2 + 5d/2 - 1
        return (-d * d + 5 * d - 2) // 2
    if key == ("P1xP1", (-1, -1), (-1, -1)):
        d1, d2 = beta.coeffs
        if d1 < 2 or d2 < 2:
            return None
        if (d1, d2) == (3, 3):
            return 0
        return d1 + d2 - d1 * d2 + 2
    return None


# ---------------------------------------------------------------------------
# reference lists


@lru_cache(maxsize=1)
def reference_data() -> dict:
    text = resources.files("stablepairs").joinpath("data/classification.json").read_text()
    return json.loads(text)


def _match_value(pattern, value: int, env: dict) -> bool:
    if isinstance(pattern, int):
        return value == pattern
    if pattern == "any":
        return True
    var = pattern.get("var")
    if var is not None:
        env[var] = value

    def resolve(x):
        return env[x] if isinstance(x, str) else x

    if "in" in pattern and value not in pattern["in"]:
        return False
    if "min" in pattern and value < resolve(pattern["min"]):
        return False
    if "max" in pattern and value > resolve(pattern["max"]):
        return False
    return True


def rule_matches(rule: dict, beta: tuple[int, ...], n: int) -> bool:
    if len(rule["beta"]) != len(beta):
        return False
    env: dict = {}
    for pattern, value in zip(rule["beta"], beta):
        if not _match_value(pattern, value, env):
            return False
    return _match_value(rule["n"], n, env)


def find_geometry(S: SurfaceModel, L1: DivisorClass, L2: DivisorClass) -> Optional[dict]:
    """Reference entry for the geometry, treating ``L1``/``L2`` as unordered."""
    pairs = {(L1.coeffs, L2.coeffs), (L2.coeffs, L1.coeffs)}
    for geo in reference_data()["geometries"]:
        if parse_surface(geo["surface"]).name != S.name:
            continue
        if (tuple(geo["L1"]), tuple(geo["L2"])) in pairs:
            return geo
    return None


def classify_reference(S, L1, L2, beta, n) -> Classification:
    geo = find_geometry(S, L1, L2)
    if geo is None:
        return Classification(Status.UNKNOWN, "geometry not in reference data")
    b = beta.coeffs
    for rule in geo["iso"]:
        if rule_matches(rule, b, n):
            return Classification(Status.ISO_PROPER, f"{geo['id']}: iso list")
    if geo["proper_all"]:
        return Classification(Status.PROPER_NOT_ISO, f"{geo['id']}: proper for all classes")
    for rule in geo["proper"]:
        if rule_matches(rule, b, n):
            return Classification(Status.PROPER_NOT_ISO, f"{geo['id']}: proper list")
    return Classification(Status.NON_PROPER, f"{geo['id']}: not in proper list")


def classify(S, L1, L2, beta, n) -> Classification:
    """Status of ``P_n(X, beta)``; emptiness is decided before the lists."""
    if beta.is_zero():
        if n == 0:
            return Classification(Status.ISO_PROPER, "empty curve")
        return Classification(Status.EMPTY, "beta = 0 with n > 0")
    if not is_effective(S, beta):
        return Classification(Status.EMPTY, "beta not effective")
    if point_count_m(S, beta, n) < 0:
        return Classification(Status.EMPTY, "m < 0")
    return classify_reference(S, L1, L2, beta, n)
