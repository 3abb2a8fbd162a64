"""Exact arithmetic kernels.

Everything here is exact: integers and :class:`fractions.Fraction` only.

* :class:`Character` -- Laurent polynomials in ``t1, t2`` with integer
  multiplicities (virtual torus representations).
* :class:`LinearForm` -- a cohomological weight ``a*t1 + b*t2``.
* :class:`HomogeneousPoly` -- a homogeneous polynomial in ``t1, t2``.
* :class:`BiSeries` -- polynomials in a nilpotent ``h`` whose coefficients are
  polynomials in ``t1, t2``, truncated at ``h**h_cap`` and total ``t``-degree
  ``t_cap``.
* :func:`sum_linear_fractions` -- adds fractions whose denominators are
  products of linear forms and checks that the sum is a constant.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Sequence


class CapMismatchError(ValueError):
    """Series with different truncation caps were combined."""


class ConsistencyError(ArithmeticError):
    """A localization sum failed to reduce to a number."""


def _exact_div(num, den):
    if isinstance(num, int) and isinstance(den, int) and num % den == 0:
        return num // den
    q = Fraction(num) / den
    return q.numerator if q.denominator == 1 else q


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------------
# Linear forms


@dataclass(frozen=True, order=True)
class LinearForm:
    """The weight ``a*t1 + b*t2``."""

    a: int
    b: int

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def normalized(self) -> tuple[int, "LinearForm"]:
        """Split off ``(scale, primitive)`` with the first nonzero entry positive."""
        if self.is_zero():
            raise ZeroDivisionError("the zero linear form has no normalization")
        g = gcd(self.a, self.b)
        if self.a < 0 or (self.a == 0 and self.b < 0):
            g = -g
        return g, LinearForm(self.a // g, self.b // g)

    def __neg__(self) -> "LinearForm":
        return LinearForm(-self.a, -self.b)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a + other.a, self.b + other.b)

    def __call__(self, t1, t2):
        return self.a * t1 + self.b * t2

    def __str__(self) -> str:
        parts = []
        for c, name in ((self.a, "t1"), (self.b, "t2")):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}{name}"))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# Characters


class Character:
    """Finitely supported map ``(p, q) -> multiplicity`` standing for
    ``sum mult * t1**p * t2**q``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for key, mult in terms.items():
                if mult:
                    clean[(int(key[0]), int(key[1]))] = int(mult)
        self._terms = clean

    @classmethod
    def monomial(cls, p: int, q: int, mult: int = 1) -> "Character":
        return cls({(p, q): mult})

    @classmethod
    def from_exponents(cls, exponents: Iterable[tuple[int, int]]) -> "Character":
        return cls(Counter(tuple(e) for e in exponents))

    def items(self):
        return sorted(self._terms.items())

    def multiplicity(self, p: int, q: int) -> int:
        return self._terms.get((p, q), 0)

    @property
    def rank(self) -> int:
        return sum(self._terms.values())

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Character):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "Character") -> "Character":
        out = dict(self._terms)
        for key, mult in other._terms.items():
            out[key] = out.get(key, 0) + mult
        return Character(out)

    def __neg__(self) -> "Character":
        return Character({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, other) -> "Character":
        if isinstance(other, int):
            return Character({k: other * v for k, v in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (p1, q1), m1 in self._terms.items():
            for (p2, q2), m2 in other._terms.items():
                key = (p1 + p2, q1 + q2)
                out[key] = out.get(key, 0) + m1 * m2
        return Character(out)

    __rmul__ = __mul__

    def conj(self) -> "Character":
        """Dual representation: every monomial inverted."""
        return Character({(-p, -q): m for (p, q), m in self._terms.items()})

    def shift(self, u: Sequence[int]) -> "Character":
        """Multiply by the monomial ``t**u``."""
        return Character({(p + u[0], q + u[1]): m for (p, q), m in self._terms.items()})

    def substitute(self, m1: Sequence[int], m2: Sequence[int]) -> "Character":
        """Rewrite ``t1 -> t**m1``, ``t2 -> t**m2``."""
        out: dict[tuple[int, int], int] = {}
        for (p, q), mult in self._terms.items():
            key = (p * m1[0] + q * m2[0], p * m1[1] + q * m2[1])
            out[key] = out.get(key, 0) + mult
        return Character(out)

    def weights(self) -> list[tuple[LinearForm, int]]:
        return [(LinearForm(p, q), m) for (p, q), m in self.items()]

    def expand_weights(self) -> list[LinearForm]:
        """Weights repeated by multiplicity; requires an honest representation."""
        if not self.is_effective():
            raise ValueError("character has negative multiplicities")
        out = []
        for form, mult in self.weights():
            out.extend([form] * mult)
        return out

    def evaluate(self, t1, t2):
        return sum(m * Fraction(t1) ** p * Fraction(t2) ** q for (p, q), m in self._terms.items())

    def __repr__(self) -> str:
        if not self._terms:
            return "Character(0)"
        body = " + ".join(f"{m}*t^({p},{q})" for (p, q), m in self.items())
        return f"Character({body})"


# ---------------------------------------------------------------------------
# Homogeneous polynomials


@dataclass(frozen=True)
class HomogeneousPoly:
    """``sum coeffs[i] * t1**(degree - i) * t2**i``."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly":
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def constant(cls, c) -> "HomogeneousPoly":
        return cls(0, (c,))

    @classmethod
    def from_form(cls, form: LinearForm) -> "HomogeneousPoly":
        return cls(1, (form.a, form.b))

    @classmethod
    def from_monomials(cls, degree: int, terms: Mapping[tuple[int, int], object]) -> "HomogeneousPoly":
        coeffs = [0] * (degree + 1)
        for (p, q), c in terms.items():
            if p + q != degree or p < 0 or q < 0:
                raise ValueError(f"monomial t1^{p} t2^{q} is not of degree {degree}")
            coeffs[q] += c
        return cls(degree, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def monomials(self) -> dict[tuple[int, int], object]:
        d = self.degree
        return {(d - i, i): c for i, c in enumerate(self.coeffs) if c}

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return HomogeneousPoly(self.degree, tuple(_simplify(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + (-other)

    def __mul__(self, other) -> "HomogeneousPoly":
        if isinstance(other, HomogeneousPoly):
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return HomogeneousPoly(self.degree + other.degree, tuple(_simplify(c) for c in out))
        if isinstance(other, Rational):
            return HomogeneousPoly(self.degree, tuple(_simplify(c * other) for c in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def times_form(self, form: LinearForm) -> "HomogeneousPoly":
        a, b = form.a, form.b
        c = self.coeffs
        out = [a * c[0]] + [a * c[i] + b * c[i - 1] for i in range(1, len(c))] + [b * c[-1]]
        return HomogeneousPoly(self.degree + 1, tuple(out))

    def divide_form(self, form: LinearForm) -> "HomogeneousPoly":
        """Exact quotient by a linear form; raises if it does not divide."""
        a, b = form.a, form.b
        c = self.coeffs
        if self.degree == 0:
            if c[0] == 0:
                return self
            raise ConsistencyError("linear form does not divide a nonzero constant")
        q = []
        if a != 0:
            prev = 0
            for i in range(self.degree):
                prev = _exact_div(c[i] - b * prev, a)
                q.append(prev)
            if c[-1] != b * prev:
                raise ConsistencyError(f"{form} does not divide the polynomial")
        else:
            if c[0] != 0:
                raise ConsistencyError(f"{form} does not divide the polynomial")
            q = [_exact_div(x, b) for x in c[1:]]
        return HomogeneousPoly(self.degree - 1, tuple(q))

    def evaluate(self, t1, t2):
        d = self.degree
        t1, t2 = Fraction(t1), Fraction(t2)
        return sum(c * t1 ** (d - i) * t2**i for i, c in enumerate(self.coeffs) if c)

    def __str__(self) -> str:
        terms = []
        for (p, q), c in self.monomials().items():
            mono = "*".join(x for x in (f"t1^{p}" if p > 1 else "t1" if p else "", f"t2^{q}" if q > 1 else "t2" if q else "") if x)
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms) if terms else "0"


def expand_forms(forms: Iterable[LinearForm]) -> HomogeneousPoly:
    """Product of linear forms as a homogeneous polynomial."""
    out = HomogeneousPoly.constant(1)
    for form in forms:
        out = out.times_form(form)
    return out


@dataclass(frozen=True)
class GradedPoly:
    """Homogeneous pieces of degrees ``0..t_cap``; ``buckets[d]`` has degree ``d``."""

    buckets: tuple[HomogeneousPoly, ...]

    @property
    def t_cap(self) -> int:
        return len(self.buckets) - 1

    def __getitem__(self, d: int) -> HomogeneousPoly:
        return self.buckets[d]


# ---------------------------------------------------------------------------
# Truncated series in h, t1, t2


def _zero_block(h_cap: int, t_cap: int):
    return [[[0] * (d + 1) for d in range(t_cap + 1)] for _ in range(h_cap + 1)]


class BiSeries:
    """Element of ``Q[h, t1, t2] / (h**(h_cap+1), (t1, t2)**(t_cap+1))``.

    Stored densely as ``c[k][d][i]`` = coefficient of
    ``h**k * t1**(d-i) * t2**i``.  Instances are treated as immutable.
    """

    __slots__ = ("h_cap", "t_cap", "_c")

    def __init__(self, h_cap: int, t_cap: int, _coeffs=None):
        if h_cap < 0 or t_cap < 0:
            raise ValueError("caps must be non-negative")
        self.h_cap = h_cap
        self.t_cap = t_cap
        self._c = _coeffs if _coeffs is not None else _zero_block(h_cap, t_cap)

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, h_cap: int, t_cap: int) -> "BiSeries":
        return cls(h_cap, t_cap)

    @classmethod
    def constant(cls, c, h_cap: int, t_cap: int) -> "BiSeries":
        s = cls(h_cap, t_cap)
        s._c[0][0][0] = c
        return s

    @classmethod
    def one(cls, h_cap: int, t_cap: int) -> "BiSeries":
        return cls.constant(1, h_cap, t_cap)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int, int], object], h_cap: int, t_cap: int) -> "BiSeries":
        """Build from ``{(k, p, q): coeff}`` meaning ``coeff * h**k t1**p t2**q``.
        Terms beyond the caps are dropped."""
        s = cls(h_cap, t_cap)
        for (k, p, q), c in terms.items():
            if p < 0 or q < 0 or k < 0:
                raise ValueError("exponents must be non-negative")
            if k <= h_cap and p + q <= t_cap:
                s._c[k][p + q][q] += c
        return s

    @classmethod
    def from_h_poly(cls, coeffs: Sequence, h_cap: int, t_cap: int) -> "BiSeries":
        s = cls(h_cap, t_cap)
        for k, c in enumerate(coeffs[: h_cap + 1]):
            s._c[k][0][0] = c
        return s

    @classmethod
    def h(cls, h_cap: int, t_cap: int) -> "BiSeries":
        return cls.from_terms({(1, 0, 0): 1}, h_cap, t_cap)

    @classmethod
    def t1(cls, h_cap: int, t_cap: int) -> "BiSeries":
        return cls.from_terms({(0, 1, 0): 1}, h_cap, t_cap)

    @classmethod
    def t2(cls, h_cap: int, t_cap: int) -> "BiSeries":
        return cls.from_terms({(0, 0, 1): 1}, h_cap, t_cap)

    # access ---------------------------------------------------------------
    def coefficient(self, k: int, p: int, q: int):
        if k > self.h_cap or p + q > self.t_cap or min(k, p, q) < 0:
            raise IndexError("outside the truncation caps")
        return self._c[k][p + q][q]

    def graded(self, k: int) -> GradedPoly:
        return GradedPoly(tuple(HomogeneousPoly(d, tuple(self._c[k][d])) for d in range(self.t_cap + 1)))

    def terms(self) -> dict[tuple[int, int, int], object]:
        out = {}
        for k, block in enumerate(self._c):
            for d, row in enumerate(block):
                for i, c in enumerate(row):
                    if c:
                        out[(k, d - i, i)] = c
        return out

    def _check_caps(self, other: "BiSeries"):
        if (self.h_cap, self.t_cap) != (other.h_cap, other.t_cap):
            raise CapMismatchError(
                f"caps ({self.h_cap}, {self.t_cap}) vs ({other.h_cap}, {other.t_cap})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.h_cap, self.t_cap) == (other.h_cap, other.t_cap) and self._c == other._c

    def __repr__(self) -> str:
        return f"BiSeries(h_cap={self.h_cap}, t_cap={self.t_cap}, terms={self.terms()})"

    # ring operations --------------------------------------------------------
    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check_caps(other)
        c = [[[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(b1, b2)] for b1, b2 in zip(self._c, other._c)]
        return BiSeries(self.h_cap, self.t_cap, c)

    def __neg__(self) -> "BiSeries":
        return self.scale(-1)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def scale(self, x) -> "BiSeries":
        c = [[[x * v for v in row] for row in block] for block in self._c]
        return BiSeries(self.h_cap, self.t_cap, c)

    def __mul__(self, other) -> "BiSeries":
        if not isinstance(other, BiSeries):
            return self.scale(other)
        self._check_caps(other)
        H, T = self.h_cap, self.t_cap
        out = _zero_block(H, T)
        a, b = self._c, other._c
        for k1 in range(H + 1):
            for d1 in range(T + 1):
                r1 = a[k1][d1]
                if not any(r1):
                    continue
                for k2 in range(H + 1 - k1):
                    for d2 in range(T + 1 - d1):
                        r2 = b[k2][d2]
                        if not any(r2):
                            continue
                        dst = out[k1 + k2][d1 + d2]
                        for i, x in enumerate(r1):
                            if x:
                                for j, y in enumerate(r2):
                                    if y:
                                        dst[i + j] += x * y
        return BiSeries(H, T, out)

    __rmul__ = __mul__

    def mul_affine(self, const, h_coeff, form: LinearForm | None = None) -> "BiSeries":
        """``self * (const + h_coeff*h + form)``."""
        H, T = self.h_cap, self.t_cap
        a, b = (form.a, form.b) if form is not None else (0, 0)
        src = self._c
        out = _zero_block(H, T)
        for k in range(H + 1):
            for d in range(T + 1):
                dst = out[k][d]
                if const:
                    row = src[k][d]
                    for i in range(d + 1):
                        dst[i] += const * row[i]
                if h_coeff and k:
                    row = src[k - 1][d]
                    for i in range(d + 1):
                        dst[i] += h_coeff * row[i]
                if d and (a or b):
                    row = src[k][d - 1]
                    for i in range(d):
                        dst[i] += a * row[i]
                        dst[i + 1] += b * row[i]
        return BiSeries(H, T, out)

    def div_affine(self, h_coeff, form: LinearForm | None = None) -> "BiSeries":
        """``self / (1 + h_coeff*h + form)``, solved degree by degree."""
        H, T = self.h_cap, self.t_cap
        a, b = (form.a, form.b) if form is not None else (0, 0)
        src = self._c
        out = _zero_block(H, T)
        for k in range(H + 1):
            for d in range(T + 1):
                dst = out[k][d]
                row = src[k][d]
                for i in range(d + 1):
                    dst[i] = row[i]
                if h_coeff and k:
                    prev = out[k - 1][d]
                    for i in range(d + 1):
                        dst[i] -= h_coeff * prev[i]
                if d and (a or b):
                    prev = out[k][d - 1]
                    for i in range(d):
                        dst[i] -= a * prev[i]
                        dst[i + 1] -= b * prev[i]
        return BiSeries(H, T, out)


def series_product(factors: Sequence[BiSeries], h_cap: int, t_cap: int) -> BiSeries:
    """Truncated product of ``factors``; all must carry the given caps."""
    out = BiSeries.one(h_cap, t_cap)
    for f in factors:
        if (f.h_cap, f.t_cap) != (h_cap, t_cap):
            raise CapMismatchError(f"factor has caps ({f.h_cap}, {f.t_cap}), expected ({h_cap}, {t_cap})")
        out = out * f
    return out


def series_reciprocal(s: BiSeries) -> BiSeries:
    """Inverse of a series with constant term 1."""
    if s._c[0][0][0] != 1:
        raise ZeroDivisionError("constant term must be 1")
    H, T = s.h_cap, s.t_cap
    tail = s - BiSeries.one(H, T)
    # 1/(1+u) = sum (-u)^j; u is nilpotent in the truncated ring
    out = BiSeries.one(H, T)
    power = BiSeries.one(H, T)
    for _ in range(H + T):
        power = power * tail
        power = power.scale(-1)
        out = out + power
    return out


def extract(s: BiSeries, h_power: int, t_degree: int) -> HomogeneousPoly:
    """Coefficient of ``h**h_power`` restricted to ``t``-degree ``t_degree``."""
    if not (0 <= h_power <= s.h_cap and 0 <= t_degree <= s.t_cap):
        raise IndexError(f"(h^{h_power}, deg {t_degree}) outside caps ({s.h_cap}, {s.t_cap})")
    return HomogeneousPoly(t_degree, tuple(_simplify(c) for c in s._c[h_power][t_degree]))


def binomial_h_series(exponent: int, sign: int, h_cap: int) -> list[int]:
    """Coefficients of ``(1 + sign*h)**exponent`` up to ``h**h_cap``; any integer exponent."""
    out = [1]
    c = 1
    for k in range(1, h_cap + 1):
        # c * (e - k + 1) equals k * binom(e, k), so the division is exact
        c = c * (exponent - k + 1) // k
        out.append(c * sign**k)
    return out


def h_poly_product(a: Sequence, b: Sequence, h_cap: int) -> list:
    out = [0] * (h_cap + 1)
    for i, x in enumerate(a[: h_cap + 1]):
        if x:
            for j, y in enumerate(b[: h_cap + 1 - i]):
                out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# Fractions with linear-form denominators


@dataclass(frozen=True)
class LinearFraction:
    """``scalar * numerator / prod(denominator)``, homogeneous of degree 0."""

    numerator: HomogeneousPoly
    denominator: tuple[LinearForm, ...]
    scalar: Fraction = Fraction(1)

    def __post_init__(self):
        if self.numerator.degree != len(self.denominator):
            raise ValueError(
                f"numerator degree {self.numerator.degree} != denominator degree {len(self.denominator)}"
            )
        if any(f.is_zero() for f in self.denominator):
            raise ZeroDivisionError("zero linear form in a denominator")

    def normalized(self) -> "LinearFraction":
        scale = Fraction(self.scalar)
        forms = []
        for f in self.denominator:
            g, prim = f.normalized()
            scale /= g
            forms.append(prim)
        return LinearFraction(self.numerator, tuple(sorted(forms)), scale)

    def evaluate(self, t1, t2) -> Fraction:
        den = Fraction(1)
        for f in self.denominator:
            den *= f(t1, t2)
        if den == 0:
            raise ZeroDivisionError("evaluation point lies on a denominator")
        return Fraction(self.scalar) * self.numerator.evaluate(t1, t2) / den


def sum_linear_fractions(terms: Iterable[LinearFraction]) -> Fraction:
    """Exact sum of degree-zero fractions, required to be a constant.

    All terms are put over the least common multiple of their normalized
    denominators.  The summed numerator must be a rational multiple ``c`` of
    the expanded common denominator; ``c`` is returned.
    """
    normed = [t.normalized() for t in terms if not t.numerator.is_zero()]
    lcm: Counter = Counter()
    for t in normed:
        for form, mult in Counter(t.denominator).items():
            if mult > lcm[form]:
                lcm[form] = mult
    common = expand_forms(sorted(lcm.elements()))
    total = HomogeneousPoly.zero(common.degree)
    for t in normed:
        cofactor = common
        for form in t.denominator:
            cofactor = cofactor.divide_form(form)
        total = total + (t.numerator * cofactor) * t.scalar
    pivot = next(i for i, c in enumerate(common.coeffs) if c)
    c = Fraction(total.coeffs[pivot]) / common.coeffs[pivot]
    for x, y in zip(total.coeffs, common.coeffs):
        if x != c * y:
            raise ConsistencyError("localization sum is not a constant; integrand conventions are inconsistent")
    return c


def evaluate_linear_fractions(terms: Iterable[LinearFraction], t1, t2) -> Fraction:
    """Numeric sum at the point ``(t1, t2)``."""
    return sum((t.evaluate(t1, t2) for t in terms), Fraction(0))
