"""Exact integer arithmetic for the collision laboratory.

Naturals are plain Python ints, so every product, factorial and binomial
here is computed without rounding.  On top of that this module provides:

  * big binomial coefficients and Fibonacci numbers,
  * deterministic Miller-Rabin primality testing,
  * smoothness splitting (B-smooth part vs cofactor) by trial division,
  * exact largest prime factor for trial-division-reachable inputs,
  * Legendre valuations v_p(nu!),
  * high-precision log(nu!) and log C(N, r) oracles used to test the
    analytic bounds elsewhere in the package.

The log oracles run on mpmath at a caller-chosen number of significant
decimals and deliberately use direct summation (not Stirling) so they
stay independent of the formulas they are used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

__all__ = [
    "binomial",
    "fibonacci",
    "is_prime",
    "SmoothFactorization",
    "smooth_split",
    "largest_prime_factor",
    "prime_factor_above",
    "legendre_valuation",
    "log_factorial_exact",
    "log_factorial_table",
    "log_binomial_exact",
]


def binomial(x: int, r: int) -> int:
    """Exact C(x, r); zero outside 0 <= r <= x.  Requires x >= 0."""
    if x < 0:
        raise ValueError(f"binomial: upper index must be >= 0, got {x}")
    if r < 0 or r > x:
        return 0
    return math.comb(x, r)


def fibonacci(i: int) -> int:
    """F_i with F_0 = 0, F_1 = 1."""
    if i < 0:
        raise ValueError(f"fibonacci: index must be >= 0, got {i}")
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


# Deterministic Miller-Rabin witness tiers.  Each entry (limit, bases)
# certifies every n < limit; the final tier is exact below 3.3e24 which
# covers all inputs this package feeds through is_prime.
_MR_TIERS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (3215031751, (2, 3, 5, 7)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
    (3825123056546413051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318665857834031151167461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (3317044064679887385961981, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)
_MR_FALLBACK = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for every n < 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for limit, bases in _MR_TIERS:
        if n < limit:
            witnesses = bases
            break
    else:
        witnesses = _MR_FALLBACK
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, slots=True)
class SmoothFactorization:
    """Split of `base` into its B-smooth part and a cofactor.

    Every prime in `factors` is <= `bound`; the cofactor carries exactly
    the prime factors above the bound (so cofactor == 1 means B-smooth).
    """

    base: int
    bound: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int

    @property
    def is_smooth(self) -> bool:
        return self.cofactor == 1

    @property
    def smooth_part(self) -> int:
        part = 1
        for p, e in self.factors:
            part *= p**e
        return part


def smooth_split(value: int, bound: int) -> SmoothFactorization:
    """Trial-divide `value` by every prime <= bound.

    The scan stops early once p * p exceeds the remaining cofactor; at
    that point the remainder is prime, and it joins the smooth part or
    the cofactor depending on its size.
    """
    if value < 2:
        raise ValueError(f"smooth_split: value must be >= 2, got {value}")
    if bound < 2:
        raise ValueError(f"smooth_split: bound must be >= 2, got {bound}")
    from . import sieve

    rem = value
    factors: list[tuple[int, int]] = []
    for p in sieve.prime_list(bound):
        if p * p > rem:
            break
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            factors.append((p, e))
    if 1 < rem <= bound:
        # no factor up to sqrt(rem) survived the scan, so rem is prime
        factors.append((rem, 1))
        rem = 1
    return SmoothFactorization(value, bound, tuple(factors), rem)


def largest_prime_factor(value: int) -> int:
    """Exact P(value) by trial division with a primality-test early exit.

    Intended for inputs whose factors are reachable by trial division
    (everything the certificate and the small oracles produce, 128-bit
    scale); cryptographic semiprimes are out of scope.
    """
    if value < 2:
        raise ValueError(f"largest_prime_factor: value must be >= 2, got {value}")
    from . import sieve

    rem = value
    largest = 1
    if is_prime(rem):
        return rem
    for p in sieve.primes_unbounded():
        if p * p > rem:
            break
        if rem % p == 0:
            largest = p
            while rem % p == 0:
                rem //= p
            if rem == 1:
                return largest
            if is_prime(rem):
                return max(largest, rem)
    # rem > 1 here means the remainder is prime (no factor <= sqrt survived)
    return max(largest, rem) if rem > 1 else largest


def prime_factor_above(value: int, bound: int) -> int | None:
    """Some prime factor of `value` exceeding `bound`, or None.

    Used to name a concrete witness prime once smooth_split reports a
    nontrivial cofactor; the cofactor's factors all exceed the bound,
    so its smallest prime factor qualifies.
    """
    cof = smooth_split(value, bound).cofactor if value >= 2 else 1
    if cof == 1:
        return None
    if is_prime(cof):
        return cof
    from . import sieve

    for p in sieve.primes_unbounded():
        if p * p > cof:
            break
        if cof % p == 0:
            return p
    return cof


def legendre_valuation(p: int, nu: int) -> int:
    """v_p(nu!) = sum over a >= 1 of floor(nu / p^a)."""
    if not is_prime(p):
        raise ValueError(f"legendre_valuation: p must be prime, got {p}")
    if nu < 0:
        raise ValueError(f"legendre_valuation: nu must be >= 0, got {nu}")
    total = 0
    q = p
    while q <= nu:
        total += nu // q
        q *= p
    return total


def _work_dps(digits: int, magnitude_hint: int) -> int:
    # guard digits cover both the term count and the result magnitude
    return digits + len(str(max(magnitude_hint, 2))) + 6


def log_factorial_exact(nu: int, digits: int = 30) -> mpmath.mpf:
    """log(nu!) by direct summation of logarithms.

    Correct to `digits` significant decimals; plain summation keeps this
    independent of any Stirling-type formula it is used to audit.
    """
    if nu < 0:
        raise ValueError(f"log_factorial_exact: nu must be >= 0, got {nu}")
    if digits < 15:
        raise ValueError(f"log_factorial_exact: digits must be >= 15, got {digits}")
    with mpmath.workdps(_work_dps(digits, nu)):
        total = mpmath.fsum(mpmath.log(i) for i in range(2, nu + 1))
        return +total


def log_factorial_table(n_max: int, digits: int = 30) -> list[mpmath.mpf]:
    """Cumulative [log 0!, log 1!, ..., log n_max!] by one summation pass."""
    if n_max < 0:
        raise ValueError(f"log_factorial_table: n_max must be >= 0, got {n_max}")
    with mpmath.workdps(_work_dps(digits, n_max)):
        out = [mpmath.mpf(0)] * (n_max + 1)
        acc = mpmath.mpf(0)
        for i in range(2, n_max + 1):
            acc += mpmath.log(i)
            out[i] = +acc
        return out


def log_binomial_exact(n: int, r: int, digits: int = 30) -> mpmath.mpf:
    """log C(n, r) to `digits` significant decimals.

    Small r sums the telescoping ratio log((n-r+i)/i) directly; large r
    switches to the prime factorization of C(n, r) (Legendre valuations
    over all primes <= n), which costs one log per prime instead of one
    per index.  Both routes are exact summations.
    """
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"log_binomial_exact: need 0 <= r <= n, got ({n}, {r})")
    r = min(r, n - r)
    if r == 0:
        return mpmath.mpf(0)
    if r <= 20000:
        with mpmath.workdps(_work_dps(digits, n)):
            total = mpmath.fsum(
                mpmath.log(mpmath.mpf(n - r + i) / i) for i in range(1, r + 1)
            )
            return +total
    from . import sieve

    with mpmath.workdps(_work_dps(digits, n)):
        total = mpmath.mpf(0)
        for p in sieve.prime_list(n):
            v = 0
            q = p
            while q <= n:
                v += n // q - r // q - (n - r) // q
                q *= p
            if v:
                total += v * mpmath.log(p)
        return +total
