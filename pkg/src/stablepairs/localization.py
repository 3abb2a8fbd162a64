"""Stable pair invariants of local surfaces by torus localization on S^[m].

For ``X = Tot_S(L1 + L2)`` with ``L1 + L2 = K_S`` the invariant
``P_{n,beta}([pt])`` is an integral over ``S^[m] x P^{chi(beta)-1}``.  Here
``h`` is the hyperplane class of the projective factor and carries no torus
weight.  Each fixed point contributes the ``(h**(chi-1), t-degree 2m)`` part
of the integrand divided by the tangent Euler class.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import classify as _classify
from .hilb import FixedPoint, enumerate_fixed_points, taut_weights, tangent_weights, twisted_tangent_character
from .ring import (
    BiSeries,
    HomogeneousPoly,
    LinearFraction,
    binomial_h_series,
    extract,
    h_poly_product,
    sum_linear_fractions,
)
from .toric import (
    DivisorClass,
    SurfaceModel,
    is_effective,
    point_count_m,
    riemann_roch_chi,
)

VANISHING_REASONS = ("beta_zero", "beta_not_effective", "beta_sq_negative", "chi_nonpositive", "m_negative")


@dataclass(frozen=True)
class InvariantRequest:
    S: SurfaceModel
    L1: DivisorClass
    L2: DivisorClass
    beta: DivisorClass
    n: int

    def __post_init__(self):
        if (self.L1 + self.L2).coeffs != self.S.canonical.coeffs:
            raise ValueError(
                f"L1 + L2 = ({self.L1 + self.L2}) is not the canonical class ({self.S.canonical}) of {self.S.name}"
            )
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("n must be a non-negative integer")

    @property
    def key(self):
        return (
            self.S,
            self.L1.coeffs, self.L1.lift,
            self.L2.coeffs, self.L2.lift,
            self.beta.coeffs, self.beta.lift,
            self.n,
        )

    @property
    def m(self) -> int:
        return point_count_m(self.S, self.beta, self.n)

    @property
    def chi(self) -> int:
        return riemann_roch_chi(self.S, self.beta)


@dataclass(frozen=True)
class InvariantResult:
    value: Fraction
    m: int
    chi: int
    beta_sq: int
    beta_L2: int
    sign: int
    vanishing_reason: Optional[str] = None
    classification: Optional[str] = None
    fixed_points: int = 0
    contributions: tuple = field(default=(), compare=False, repr=False)


def make_request(S: SurfaceModel, L1, L2, beta, n: int) -> InvariantRequest:
    """Convenience constructor taking coefficient tuples or classes."""

    def cls(x):
        return x if isinstance(x, DivisorClass) else S.divisor(x)

    return InvariantRequest(S, cls(L1), cls(L2), cls(beta), n)


def _h_prefactor(req: InvariantRequest, h_cap: int) -> list:
    S = req.S
    a = riemann_roch_chi(S, req.beta + req.L1)
    b = riemann_roch_chi(S, req.beta + req.L2)
    hn = [0] * (h_cap + 1)
    if req.n <= h_cap:
        hn[req.n] = 1
    out = h_poly_product(hn, binomial_h_series(a, 1, h_cap), h_cap)
    return h_poly_product(out, binomial_h_series(b, -1, h_cap), h_cap)


def fixed_point_contribution(req: InvariantRequest, Z: FixedPoint) -> LinearFraction:
    S = req.S
    m = Z.size
    chi = req.chi
    if chi < 1:
        raise ValueError("chi(beta) must be positive")
    h_cap, t_cap = chi - 1, 2 * m
    denominator = tuple(tangent_weights(S, Z))
    if req.n > h_cap:
        return LinearFraction(HomogeneousPoly.zero(t_cap), denominator)

    s = BiSeries.from_h_poly(_h_prefactor(req, h_cap), h_cap, t_cap)
    for w in taut_weights(S, Z, req.beta):
        s = s.mul_affine(0, 1, w)
    for w, mult in twisted_tangent_character(S, Z, req.L1).weights():
        if w.is_zero():
            continue
        for _ in range(abs(mult)):
            s = s.mul_affine(1, 0, w) if mult > 0 else s.div_affine(0, w)
    for w in taut_weights(S, Z, req.beta + req.L1):
        s = s.div_affine(1, w)
    for w in taut_weights(S, Z, req.beta + req.L2):
        # 1 - h - w
        s = s.div_affine(-1, -w)
    return LinearFraction(extract(s, h_cap, t_cap), denominator)


def vanishing_reason(req: InvariantRequest) -> Optional[str]:
    S, beta = req.S, req.beta
    if beta.is_zero():
        return None if req.n == 0 else "beta_zero"
    if not is_effective(S, beta):
        return "beta_not_effective"
    if S.dot(beta, beta) < 0:
        return "beta_sq_negative"
    if req.chi <= 0:
        return "chi_nonpositive"
    if req.m < 0:
        return "m_negative"
    return None


_memo: dict = {}
_memo_lock = threading.Lock()


def clear_cache():
    with _memo_lock:
        _memo.clear()


def stable_pair_invariant(req: InvariantRequest, keep_contributions: bool = False) -> InvariantResult:
    if not keep_contributions:
        with _memo_lock:
            hit = _memo.get(req.key)
        if hit is not None:
            return hit

    S, beta = req.S, req.beta
    beta_sq = S.dot(beta, beta)
    beta_l2 = S.dot(beta, req.L2)
    sign = -1 if (beta_l2 + req.n) % 2 else 1
    status = _classify.classify(S, req.L1, req.L2, beta, req.n).status
    reason = vanishing_reason(req)
    common = dict(m=req.m, chi=req.chi, beta_sq=beta_sq, beta_L2=beta_l2, sign=sign, classification=status)

    if beta.is_zero():
        result = InvariantResult(Fraction(1 if req.n == 0 else 0), vanishing_reason=reason, **common)
    elif reason is not None:
        result = InvariantResult(Fraction(0), vanishing_reason=reason, **common)
    else:
        points = enumerate_fixed_points(S, req.m)
        terms = tuple(fixed_point_contribution(req, Z) for Z in points)
        total = sum_linear_fractions(terms)
        result = InvariantResult(
            sign * total,
            fixed_points=len(points),
            contributions=terms if keep_contributions else (),
            **common,
        )
    if not keep_contributions:
        with _memo_lock:
            _memo[req.key] = result
    return result


def invariant_value(S: SurfaceModel, L1, L2, beta, n: int) -> Fraction:
    return stable_pair_invariant(make_request(S, L1, L2, beta, n)).value


# ---------------------------------------------------------------------------
# Euler numbers of twisted tangent bundles


def carlsson_okounkov(S: SurfaceModel, L1: DivisorClass, m: int) -> Fraction:
    """``int_{S^[m]} e(T_{S^[m]}(L1))`` by localization."""
    if m < 0:
        raise ValueError("m must be non-negative")
    terms = []
    for Z in enumerate_fixed_points(S, m):
        s = BiSeries.one(0, 2 * m)
        for w, mult in twisted_tangent_character(S, Z, L1).weights():
            if w.is_zero():
                continue
            for _ in range(abs(mult)):
                s = s.mul_affine(1, 0, w) if mult > 0 else s.div_affine(0, w)
        terms.append(LinearFraction(extract(s, 0, 2 * m), tuple(tangent_weights(S, Z))))
    return sum_linear_fractions(terms)


def co_series(S: SurfaceModel, L1: DivisorClass, m_max: int) -> list[Fraction]:
    return [carlsson_okounkov(S, L1, m) for m in range(m_max + 1)]


def co_product_series(exponent: int, m_max: int) -> list[int]:
    """Coefficients of ``prod_k (1 - q**k)**(-exponent)`` up to ``q**m_max``."""
    coeffs = [1] + [0] * m_max
    for k in range(1, m_max + 1):
        factor = [0] * (m_max + 1)
        for j, c in enumerate(binomial_h_series(-exponent, -1, m_max // k)):
            factor[j * k] = c
        coeffs = h_poly_product(coeffs, factor, m_max)
    return coeffs


def co_exponent(S: SurfaceModel, L1: DivisorClass, L2: DivisorClass) -> int:
    return S.euler_number - S.dot(L1, L2)


@dataclass(frozen=True)
class CoReport:
    value: Fraction
    m: int
    co_number: Optional[Fraction]
    agree: Optional[bool]
    note: str


def co_coincidence_report(req: InvariantRequest) -> CoReport:
    """Compare ``|P|`` with the Euler number of ``T_{S^[m]}(L1)``; diagnostic only."""
    res = stable_pair_invariant(req)
    if res.vanishing_reason is not None or req.m < 0:
        return CoReport(res.value, req.m, None, None, "vanishing case")
    co = carlsson_okounkov(req.S, req.L1, req.m)
    agree = abs(res.value) == abs(co)
    return CoReport(res.value, req.m, co, agree, "agree" if agree else "differ")
