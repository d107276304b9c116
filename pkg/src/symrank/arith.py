"""Exact rational arithmetic and the q-series building blocks.

Everything here is exact: values are `fractions.Fraction` throughout, and
the only non-point result is `BoundedValue`, a rigorous rational enclosure
used for infinite products and limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

# All probabilities, q-powers and product values live in this type.
Rational = Fraction


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimePower:
    """A factor p**mu of a modulus, with p prime and mu >= 1."""

    p: int
    mu: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.mu < 1:
            raise ValueError(f"mu = {self.mu} must be >= 1")

    @property
    def value(self) -> int:
        return self.p**self.mu


@dataclass(frozen=True)
class BoundedValue:
    """Closed rational interval [lower, upper] guaranteed to contain a value."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError("empty enclosure: lower > upper")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper

    def intersects(self, other: "BoundedValue") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def complement_from_one(self) -> "BoundedValue":
        """Enclosure of 1 - x for x in this interval."""
        return BoundedValue(1 - self.upper, 1 - self.lower)


def pochhammer(n: int, q: Fraction) -> Fraction:
    """Finite product prod_{j=1..n} (1 - q**j); empty product is 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q = Fraction(q)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        power *= q
        out *= 1 - power
    return out


def pochhammer_infinite(q: Fraction, eps: Fraction) -> BoundedValue:
    """Enclosure of prod_{j>=1} (1 - q**j) with width <= eps, for 0 < q < 1.

    Truncates at N and bounds the tail with
    1 >= prod_{j>N} (1 - q**j) >= 1 - sum_{j>N} q**j = 1 - q**(N+1)/(1-q).
    """
    q = Fraction(q)
    eps = Fraction(eps)
    if not 0 < q < 1:
        raise ValueError("q must satisfy 0 < q < 1")
    if eps <= 0:
        raise ValueError("eps must be > 0")
    prod = Fraction(1)
    power = Fraction(1)
    n = 0
    while True:
        n += 1
        power *= q
        prod *= 1 - power
        tail = power * q / (1 - q)  # q**(n+1)/(1-q)
        if tail <= eps:
            return BoundedValue(prod * (1 - tail), prod)


def t_beta(beta: int, k: int, s: int, q: Fraction) -> Fraction:
    """Auxiliary sum T_beta(k, s) at base q.

    T_beta(0, s) = 1.  For k >= 1,
    T_beta(k, s) = sum_{j=0..s} q**(beta*j) * P(k+j-1) / (P(j) * P(k-1))
    with P(i) = pochhammer(i, q**2).  The product ratio is updated
    incrementally: step j multiplies by (1 - q**(2(k+j-1))) / (1 - q**(2j)).
    """
    if beta < 1:
        raise ValueError("beta must be >= 1")
    if k < 0 or s < 0:
        raise ValueError("k and s must be >= 0")
    if k == 0:
        return Fraction(1)
    q = Fraction(q)
    q2 = q * q
    total = Fraction(0)
    ratio = Fraction(1)
    for j in range(s + 1):
        if j > 0:
            ratio *= (1 - q2 ** (k + j - 1)) / (1 - q2**j)
        total += q ** (beta * j) * ratio
    return total


def t1_alt(k: int, s: int, q: Fraction) -> Fraction:
    """Alternate closed form for T_1(k, s):

    (P(k) / Pi_{2k}(q)) * (1 - q**(s+1) * sum_{j=0..k-1}
        q**(2j) * Pi_{2j}(q) * P(j+s) / (P(j)**2 * P(s)))
    with P(i) = pochhammer(i, q**2).  Must agree exactly with t_beta(1,...).
    """
    q = Fraction(q)
    _check_alt_args(k, s, q)
    q2 = q * q
    total = Fraction(0)
    for j in range(k):
        total += (
            q ** (2 * j)
            * pochhammer(2 * j, q)
            * pochhammer(j + s, q2)
            / (pochhammer(j, q2) ** 2 * pochhammer(s, q2))
        )
    return pochhammer(k, q2) / pochhammer(2 * k, q) * (1 - q ** (s + 1) * total)


def t3_alt(k: int, s: int, q: Fraction) -> Fraction:
    """Alternate closed form for T_3(k, s), the odd-index sibling of t1_alt:

    (P(k) / Pi_{2k+1}(q)) * (1 - q - q**(3s+3) * sum_{j=0..k-1}
        q**(2j) * Pi_{2j+1}(q) * P(j+s) / (P(j)**2 * P(s)))
    """
    q = Fraction(q)
    _check_alt_args(k, s, q)
    q2 = q * q
    total = Fraction(0)
    for j in range(k):
        total += (
            q ** (2 * j)
            * pochhammer(2 * j + 1, q)
            * pochhammer(j + s, q2)
            / (pochhammer(j, q2) ** 2 * pochhammer(s, q2))
        )
    return (
        pochhammer(k, q2)
        / pochhammer(2 * k + 1, q)
        * (1 - q - q ** (3 * s + 3) * total)
    )


def _check_alt_args(k: int, s: int, q: Fraction) -> None:
    if k < 0 or s < 0:
        raise ValueError("k and s must be >= 0")
    if not 0 < q < 1:
        raise ValueError("q must satisfy 0 < q < 1")


def legendre(d: int, p: int) -> int:
    """Legendre symbol (d|p) for an odd prime p: 0, +1 or -1."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p = {p} must be an odd prime")
    r = pow(d % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def factorize(m: int) -> list[PrimePower]:
    """Prime-power factorization of m >= 2, primes strictly increasing."""
    if m < 2:
        raise ValueError(f"m = {m} must be >= 2")
    out: list[PrimePower] = []
    rest = m
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            mu = 0
            while rest % d == 0:
                rest //= d
                mu += 1
            out.append(PrimePower(d, mu))
        d += 1 if d == 2 else 2
    if rest > 1:
        out.append(PrimePower(rest, 1))
    return out
