"""Directed-rounding interval arithmetic and certified inequality verdicts.

Every analytic estimate in this package is evaluated as an IntervalValue:
a pair of binary64 endpoints guaranteed to bracket the true real value.
Endpoint arithmetic rounds outward (nextafter steps sized to the worst-case
rounding of the underlying operation), so a comparison decided from two
intervals is a theorem about the exact quantities, not about floats.

When the two intervals overlap, the comparison is INDETERMINATE and can be
retried through `evaluate(..., precise=True)`, which re-runs the same
expression under mpmath's interval type at 55 significant digits.  Both
evaluation contexts expose the same constructor surface (`decimal`,
`integer`, `real`, `log`, `exp`, `sqrt`, `power`), so each formula is
written exactly once.

Decimal constants must enter through `decimal("...")`: the literal 1.3132
has no exact binary64 representation, and only the string constructor
brackets it correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

__all__ = [
    "IntervalValue",
    "Verdict",
    "HOLDS",
    "FAILS",
    "INDETERMINATE",
    "FloatContext",
    "PreciseContext",
    "PRECISE_DIGITS",
    "evaluate",
    "enclose_float",
    "compare_less",
    "certified_less",
]

HOLDS = "HOLDS"
FAILS = "FAILS"
INDETERMINATE = "INDETERMINATE"

# mpmath.iv working precision for the fallback pass
PRECISE_DIGITS = 55

_INF = math.inf


def _dn(x: float, steps: int) -> float:
    for _ in range(steps):
        x = math.nextafter(x, -_INF)
    return x


def _up(x: float, steps: int) -> float:
    for _ in range(steps):
        x = math.nextafter(x, _INF)
    return x


def _float_below(fr: Fraction) -> float:
    f = float(fr)
    return f if Fraction(f) <= fr else math.nextafter(f, -_INF)


def _float_above(fr: Fraction) -> float:
    f = float(fr)
    return f if Fraction(f) >= fr else math.nextafter(f, _INF)


Coercible = Union[int, float, str, Fraction, "IntervalValue"]


@dataclass(frozen=True, slots=True)
class IntervalValue:
    """Closed interval [lo, hi] certified to contain the exact value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"IntervalValue endpoints must be finite: [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"IntervalValue endpoints out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "IntervalValue":
        return cls(float(x), float(x))

    @classmethod
    def from_int(cls, n: int) -> "IntervalValue":
        if abs(n) <= 2**53:
            return cls.point(float(n))
        return cls(_float_below(Fraction(n)), _float_above(Fraction(n)))

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "IntervalValue":
        return cls(_float_below(fr), _float_above(fr))

    @classmethod
    def from_decimal(cls, text: str) -> "IntervalValue":
        return cls.from_fraction(Fraction(text))

    @classmethod
    def of(cls, value: Coercible) -> "IntervalValue":
        if isinstance(value, IntervalValue):
            return value
        if isinstance(value, bool):
            raise TypeError("IntervalValue.of does not accept bool")
        if isinstance(value, int):
            return cls.from_int(value)
        if isinstance(value, float):
            return cls.point(value)
        if isinstance(value, (str, Fraction)):
            return cls.from_fraction(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to IntervalValue")

    # -- inspection ---------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: Union[int, float, Fraction]) -> bool:
        fr = Fraction(x)
        return Fraction(self.lo) <= fr <= Fraction(self.hi)

    def strictly_positive(self) -> bool:
        return self.lo > 0.0

    def strictly_negative(self) -> bool:
        return self.hi < 0.0

    # -- ring operations (one outward step: IEEE round-nearest is 0.5 ulp) --

    def __add__(self, other: Coercible) -> "IntervalValue":
        o = IntervalValue.of(other)
        return IntervalValue(_dn(self.lo + o.lo, 1), _up(self.hi + o.hi, 1))

    __radd__ = __add__

    def __neg__(self) -> "IntervalValue":
        return IntervalValue(-self.hi, -self.lo)

    def __sub__(self, other: Coercible) -> "IntervalValue":
        return self + (-IntervalValue.of(other))

    def __rsub__(self, other: Coercible) -> "IntervalValue":
        return (-self) + IntervalValue.of(other)

    def __mul__(self, other: Coercible) -> "IntervalValue":
        o = IntervalValue.of(other)
        products = (
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        )
        return IntervalValue(_dn(min(products), 1), _up(max(products), 1))

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "IntervalValue":
        o = IntervalValue.of(other)
        if o.lo <= 0.0 <= o.hi:
            raise ZeroDivisionError(f"interval division by [{o.lo}, {o.hi}] containing zero")
        recip = IntervalValue(_dn(1.0 / o.hi, 1), _up(1.0 / o.lo, 1))
        return self * recip

    def __rtruediv__(self, other: Coercible) -> "IntervalValue":
        return IntervalValue.of(other) / self

    # -- libm functions (two outward steps: faithful rounding not assumed) --

    def log(self) -> "IntervalValue":
        if self.lo <= 0.0:
            raise ValueError(f"interval log needs a strictly positive argument, got lo={self.lo}")
        return IntervalValue(_dn(math.log(self.lo), 2), _up(math.log(self.hi), 2))

    def exp(self) -> "IntervalValue":
        return IntervalValue(_dn(math.exp(self.lo), 2), _up(math.exp(self.hi), 2))

    def sqrt(self) -> "IntervalValue":
        if self.lo < 0.0:
            raise ValueError(f"interval sqrt needs a nonnegative argument, got lo={self.lo}")
        return IntervalValue(_dn(math.sqrt(self.lo), 1), _up(math.sqrt(self.hi), 1))

    def power(self, exponent: Coercible) -> "IntervalValue":
        """self**exponent for strictly positive self, via exp(e log self)."""
        return (IntervalValue.of(exponent) * self.log()).exp()

    def __repr__(self) -> str:
        return f"IntervalValue({self.lo!r}, {self.hi!r})"


@dataclass(frozen=True, slots=True)
class Verdict:
    """Outcome of a certified comparison.

    state is HOLDS, FAILS, or INDETERMINATE.  margin is the certified gap
    between the intervals: positive for a decided verdict, nonpositive when
    the intervals overlap.
    """

    state: str
    margin: float

    @property
    def holds(self) -> bool:
        return self.state == HOLDS

    @property
    def fails(self) -> bool:
        return self.state == FAILS

    @property
    def decided(self) -> bool:
        return self.state != INDETERMINATE


def enclose_float(x: float, ulps: int = 2) -> IntervalValue:
    """Interval around a float known to be within `ulps` ulps of the true value.

    For converting scalars produced by an external high-precision source
    (e.g. an mpmath sum rounded to binary64) into certified intervals.
    """
    return IntervalValue(_dn(x, ulps), _up(x, ulps))


def compare_less(lhs: IntervalValue, rhs: IntervalValue, strict: bool = True) -> Verdict:
    """Verdict for the claim lhs < rhs (or lhs <= rhs when strict=False)."""
    if lhs.hi < rhs.lo or (not strict and lhs.hi <= rhs.lo):
        return Verdict(HOLDS, rhs.lo - lhs.hi)
    if lhs.lo > rhs.hi or (strict and lhs.lo >= rhs.hi):
        return Verdict(FAILS, lhs.lo - rhs.hi)
    return Verdict(INDETERMINATE, rhs.lo - lhs.hi)


class FloatContext:
    """Binary64 evaluation context: everything is an IntervalValue."""

    name = "binary64"

    _decimal_cache: dict[str, IntervalValue] = {}

    def decimal(self, text: str) -> IntervalValue:
        got = self._decimal_cache.get(text)
        if got is None:
            got = IntervalValue.from_decimal(text)
            self._decimal_cache[text] = got
        return got

    def integer(self, n: int) -> IntervalValue:
        return IntervalValue.from_int(n)

    def fraction(self, fr: Fraction) -> IntervalValue:
        return IntervalValue.from_fraction(fr)

    def real(self, x: float) -> IntervalValue:
        return IntervalValue.point(float(x))

    def log(self, v):
        return IntervalValue.of(v).log()

    def exp(self, v):
        return IntervalValue.of(v).exp()

    def sqrt(self, v):
        return IntervalValue.of(v).sqrt()

    def power(self, v, exponent):
        return IntervalValue.of(v).power(exponent)

    def pi(self) -> IntervalValue:
        # math.pi is the correctly rounded double, so one ulp out each way encloses
        return IntervalValue(_dn(math.pi, 1), _up(math.pi, 1))


class PreciseContext:
    """mpmath interval context at PRECISE_DIGITS significant digits."""

    name = f"mp-interval-{PRECISE_DIGITS}"

    def __init__(self) -> None:
        from mpmath import iv

        self.iv = iv

    def decimal(self, text: str):
        return self.iv.mpf(text)

    def integer(self, n: int):
        return self.iv.mpf(n)

    def fraction(self, fr: Fraction):
        return self.iv.mpf(fr.numerator) / self.iv.mpf(fr.denominator)

    def real(self, x: float):
        return self.iv.mpf(float(x))

    def log(self, v):
        return self.iv.log(v)

    def exp(self, v):
        return self.iv.exp(v)

    def sqrt(self, v):
        return self.iv.sqrt(v)

    def power(self, v, exponent):
        if isinstance(exponent, int):
            return v ** exponent
        if isinstance(exponent, str):
            exponent = self.iv.mpf(exponent)
        elif isinstance(exponent, Fraction):
            exponent = self.fraction(exponent)
        return self.iv.exp(exponent * self.iv.log(v))

    def pi(self):
        return self.iv.pi


def _from_iv(r) -> IntervalValue:
    import mpmath

    lo = _dn(float(mpmath.mpf(r.a)), 2)
    hi = _up(float(mpmath.mpf(r.b)), 2)
    return IntervalValue(lo, hi)


def evaluate(build: Callable, precise: bool = False) -> IntervalValue:
    """Run an expression builder under one of the two contexts.

    build(ctx) must construct its result from ctx constructors and interval
    arithmetic only; the same callable then works in both contexts.
    """
    if not precise:
        out = build(FloatContext())
        return IntervalValue.of(out)
    from mpmath import iv

    saved = iv.dps
    iv.dps = PRECISE_DIGITS
    try:
        out = build(PreciseContext())
    finally:
        iv.dps = saved
    return _from_iv(out)


def certified_less(
    lhs_build: Callable,
    rhs_build: Callable,
    strict: bool = True,
) -> tuple[Verdict, IntervalValue, IntervalValue]:
    """Decide lhs < rhs, escalating precision when binary64 cannot decide.

    The escalated comparison happens on the raw high-precision endpoints;
    collapsing to binary64 first would forfeit exactly the resolution the
    escalation exists to buy.  The returned intervals are binary64
    enclosures for reporting and may overlap even when the verdict is
    decided.
    """
    lhs = evaluate(lhs_build)
    rhs = evaluate(rhs_build)
    verdict = compare_less(lhs, rhs, strict)
    if verdict.decided:
        return verdict, lhs, rhs
    import mpmath
    from mpmath import iv

    saved = iv.dps
    iv.dps = PRECISE_DIGITS
    try:
        lhs_raw = lhs_build(PreciseContext())
        rhs_raw = rhs_build(PreciseContext())
    finally:
        iv.dps = saved
    # read endpoints at a working precision above the evaluation's, so the
    # conversion itself cannot merge values the escalation separated
    with mpmath.mp.workdps(PRECISE_DIGITS + 10):
        lhs_lo, lhs_hi = mpmath.mpf(lhs_raw.a), mpmath.mpf(lhs_raw.b)
        rhs_lo, rhs_hi = mpmath.mpf(rhs_raw.a), mpmath.mpf(rhs_raw.b)
        if lhs_hi < rhs_lo or (not strict and lhs_hi <= rhs_lo):
            verdict = Verdict(HOLDS, float(rhs_lo - lhs_hi))
        elif lhs_lo > rhs_hi or (strict and lhs_lo >= rhs_hi):
            verdict = Verdict(FAILS, float(lhs_lo - rhs_hi))
        else:
            verdict = Verdict(INDETERMINATE, float(rhs_lo - lhs_hi))
    return verdict, _from_iv(lhs_raw), _from_iv(rhs_raw)
