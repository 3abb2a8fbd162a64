"""Stable pair invariants of local surfaces via localization on Hilbert schemes."""
from .toric import build_surface, parse_surface, DivisorClass, SurfaceModel
from .localization import (
    InvariantRequest,
    InvariantResult,
    make_request,
    stable_pair_invariant,
    invariant_value,
    carlsson_okounkov,
)
from .classify import Status, classify

__version__ = "0.1.0"

__all__ = [
    "build_surface",
    "parse_surface",
    "DivisorClass",
    "SurfaceModel",
    "InvariantRequest",
    "InvariantResult",
    "make_request",
    "stable_pair_invariant",
    "invariant_value",
    "carlsson_okounkov",
    "Status",
    "classify",
]
