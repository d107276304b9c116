"""Probability that a random n x n symmetric matrix over Z_m is nonsingular
mod m, through four independent routes.

P(n, m) is the probability of full m-rank, Q(n, m) = 1 - P(n, m) the
probability that det(A) = 0 mod m.  For a prime power p**mu we write
q = 1/p, k = floor(n/2) and s = floor((mu-1)/2); Q is multiplicative over
coprime factors of m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import (
    BoundedValue,
    factorize,
    is_prime,
    legendre,
    pochhammer,
    pochhammer_infinite,
    t_beta,
)

ROUTES = ("recurrence5", "recurrence3", "explicit", "genfun")


@dataclass(frozen=True)
class ProbQuery:
    """A (n, p, mu) query point with its derived quantities."""

    n: int
    p: int
    mu: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")

    @property
    def q(self) -> Fraction:
        return Fraction(1, self.p)

    @property
    def k_floor(self) -> int:
        return self.n // 2

    @property
    def k_ceil(self) -> int:
        # the determinant-value distribution uses this variant of k
        return (self.n + 1) // 2

    @property
    def s(self) -> int:
        return (self.mu - 1) // 2


@dataclass(frozen=True)
class ProbResult:
    value_P: Fraction
    value_Q: Fraction
    route: str

    def __post_init__(self) -> None:
        if self.value_P + self.value_Q != 1:
            raise ValueError("P + Q must equal 1 exactly")
        if not 0 <= self.value_P <= 1:
            raise ValueError("P must lie in [0, 1]")


def p_boundary(n: int, mu: int) -> Fraction | None:
    """Boundary values: 1 for n = 0 with mu > 0, 0 for mu <= 0, else None."""
    if mu <= 0:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    return None


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")


@lru_cache(maxsize=None)
def _p5(n: int, p: int, mu: int) -> Fraction:
    b = p_boundary(n, mu)
    if b is not None:
        return b
    q = Fraction(1, p)
    total = (1 - q) * _p5(n - 1, p, mu)
    if n >= 2:  # the (n-2) term has coefficient 0 at n = 1
        total += q * (1 - q ** (n - 1)) * _p5(n - 2, p, mu)
    total += q**n * (1 - q) * _p5(n - 1, p, mu - 1)
    total += q ** (n + 1) * _p5(n, p, mu - 2)
    return total


def p_recurrence5(n: int, p: int, mu: int) -> Fraction:
    """P(n, p**mu) by the five-term recurrence

    P(n,mu) = (1-q) P(n-1,mu) + q(1-q^(n-1)) P(n-2,mu)
            + q^n (1-q) P(n-1,mu-1) + q^(n+1) P(n,mu-2),

    memoized over the O(n*mu) distinct subproblems.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_prime(p)
    return _p5(n, p, mu)


@lru_cache(maxsize=None)
def _p3_odd(n: int, p: int, mu: int) -> Fraction:
    # odd n only; P(1, p**mu) = 1 - q**mu seeds the chain
    if mu <= 0:
        return Fraction(0)
    q = Fraction(1, p)
    if n == 1:
        return 1 - q**mu
    return (1 - q**n) * _p3_odd(n - 2, p, mu) + q**n * _p3_odd(n, p, mu - 2)


def p_recurrence3(n: int, p: int, mu: int) -> Fraction:
    """P(n, p**mu) by the three-term odd-n recurrence

    P(n,mu) = (1-q^n) P(n-2,mu) + q^n P(n,mu-2)       (n odd, >= 3)

    with even n recovered from the next odd value:
    P(n,mu) = (P(n+1,mu) - q^(n+1) P(n+1,mu-1)) / (1 - q^(n+1)).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_prime(p)
    b = p_boundary(n, mu)
    if b is not None:
        return b
    if n % 2 == 1:
        return _p3_odd(n, p, mu)
    q = Fraction(1, p)
    return (_p3_odd(n + 1, p, mu) - q ** (n + 1) * _p3_odd(n + 1, p, mu - 1)) / (
        1 - q ** (n + 1)
    )


def _check_interior(n: int, p: int, mu: int) -> None:
    _check_prime(p)
    if n < 1 or mu < 1:
        raise ValueError("explicit formulas need n >= 1 and mu >= 1")


def p_explicit(n: int, p: int, mu: int) -> Fraction:
    """Explicit solution, valid for either parity of n:

    P = Pi_{2k}(q) / ((1-q) Pi_k(q^2))
        * ((1-q^(2k+1)) T_3(k,s) - q^mu (1-q^n) T_1(k,s)).
    """
    _check_interior(n, p, mu)
    q = Fraction(1, p)
    k = n // 2
    s = (mu - 1) // 2
    return (
        pochhammer(2 * k, q)
        / ((1 - q) * pochhammer(k, q * q))
        * (
            (1 - q ** (2 * k + 1)) * t_beta(3, k, s, q)
            - q**mu * (1 - q**n) * t_beta(1, k, s, q)
        )
    )


def r_term(n: int, p: int, mu: int) -> Fraction:
    """The correction term R in Q = (q^mu (1-q^n) - R) / (1-q):

    R = q^(s+1) * sum_{j=0..k-1} (q^mu (1-q^n) - q^(2s+2) (1-q^(2j+1)))
        * q^(2j) * Pi_{2j}(q) Pi_{j+s}(q^2) / (Pi_j(q^2)^2 Pi_s(q^2)).

    Satisfies 0 <= R < q^(3mu/2), with R = 0 exactly when k = 0.
    """
    _check_interior(n, p, mu)
    q = Fraction(1, p)
    q2 = q * q
    k = n // 2
    s = (mu - 1) // 2
    total = Fraction(0)
    for j in range(k):
        total += (
            (q**mu * (1 - q**n) - q ** (2 * s + 2) * (1 - q ** (2 * j + 1)))
            * q ** (2 * j)
            * pochhammer(2 * j, q)
            * pochhammer(j + s, q2)
            / (pochhammer(j, q2) ** 2 * pochhammer(s, q2))
        )
    return q ** (s + 1) * total


def q_explicit(n: int, p: int, mu: int) -> Fraction:
    """Q(n, p**mu) = (q^mu (1-q^n) - R) / (1-q), numerically convenient
    because it avoids the cancellation in 1 - P."""
    _check_interior(n, p, mu)
    q = Fraction(1, p)
    return (q**mu * (1 - q**n) - r_term(n, p, mu)) / (1 - q)


def q_general(n: int, m: int) -> Fraction:
    """Q(n, m) for any m >= 2: the product of Q over prime-power factors."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 2:
        raise ValueError("m must be >= 2")
    if n == 0:
        return Fraction(0)
    out = Fraction(1)
    for pp in factorize(m):
        out *= q_explicit(n, pp.p, pp.mu)
    return out


def p_limit(p: int, mu: int, eps: Fraction) -> BoundedValue:
    """Enclosure of lim_{n->inf} P(n, p**mu), width <= eps:

    lim P = Pi_inf(q) / ((1-q) Pi_inf(q^2)) * sum_{j=0..s} (q^(3j) - q^(mu+j)) / Pi_j(q^2)

    evaluated with rigorous product enclosures; the finite sum is exact.
    """
    _check_prime(p)
    if mu < 1:
        raise ValueError("mu must be >= 1")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    q = Fraction(1, p)
    q2 = q * q
    s = (mu - 1) // 2
    total = Fraction(0)
    for j in range(s + 1):
        total += (q ** (3 * j) - q ** (mu + j)) / pochhammer(j, q2)
    scale = total / (1 - q)  # positive: 3j < mu + j for j <= s
    inner = eps / 4
    while True:
        num = pochhammer_infinite(q, inner)
        den = pochhammer_infinite(q2, inner)
        lower = scale * num.lower / den.upper
        upper = scale * num.upper / den.lower
        if upper - lower <= eps:
            return BoundedValue(lower, upper)
        inner /= 4


def q_limit(p: int, mu: int, eps: Fraction) -> BoundedValue:
    """Enclosure of lim_{n->inf} Q(n, p**mu); lies in [q^mu, q^mu/(1-q)]."""
    return p_limit(p, mu, eps).complement_from_one()


def limit_interval(p: int, mu: int) -> BoundedValue:
    """The a-priori interval [q^mu, q^mu/(1-q)] bracketing lim Q(n, p**mu)."""
    _check_prime(p)
    if mu < 1:
        raise ValueError("mu must be >= 1")
    q = Fraction(1, p)
    return BoundedValue(q**mu, q**mu / (1 - q))


def det_value_prob(n: int, p: int, d: int) -> Fraction:
    """Probability that det(A) = d mod p (mu = 1) for a nonzero residue d:

    (q/(1-q)) * Pi_{2k}(q) / Pi_k(q^2) * (1 + sign_s * q^k),  k = ceil(n/2),

    where sign_s = 0 if p = 2 or n is odd, else (d|p) * (-1)^(k(p-1)/2).
    Note k here is the ceiling, unlike the floor used by the P/Q formulas.
    """
    _check_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    if d % p == 0:
        raise ValueError("d must be nonzero mod p; residue 0 carries mass Q(n, p)")
    q = Fraction(1, p)
    k = (n + 1) // 2
    if p == 2 or n % 2 == 1:
        sign_s = 0
    else:
        sign_s = legendre(d, p) * (-1) ** (k * (p - 1) // 2)
    return q / (1 - q) * pochhammer(2 * k, q) / pochhammer(k, q * q) * (1 + sign_s * q**k)


def monotonicity_check(n_max: int, p: int, mu_max: int) -> bool:
    """True iff P(n+1, p^mu) <= P(n, p^mu) <= P(n, p^(mu+1)) holds at every
    grid point with n <= n_max, mu <= mu_max."""
    if n_max < 1 or mu_max < 1:
        raise ValueError("grid bounds must be >= 1")
    for n in range(n_max + 1):
        for mu in range(mu_max + 1):
            here = p_recurrence5(n, p, mu)
            if p_recurrence5(n + 1, p, mu) > here:
                return False
            if here > p_recurrence5(n, p, mu + 1):
                return False
    return True


def _p_prime_power(n: int, p: int, mu: int, route: str) -> Fraction:
    if route == "recurrence5":
        return p_recurrence5(n, p, mu)
    if route == "recurrence3":
        return p_recurrence3(n, p, mu)
    if route == "explicit":
        return 1 - q_explicit(n, p, mu)
    if route == "genfun":
        from . import genfun

        return genfun.coefficient(n, p, mu)
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")


def probability(n: int, m: int, route: str = "explicit") -> ProbResult:
    """P and Q for any modulus m >= 2, computed factor-wise: Q(n, m) is the
    product of the prime-power Q values, and P = 1 - Q."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 2:
        raise ValueError("m must be >= 2")
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    factors = factorize(m)
    if n == 0:
        return ProbResult(Fraction(1), Fraction(0), route)
    value_q = Fraction(1)
    for pp in factors:
        value_q *= 1 - _p_prime_power(n, pp.p, pp.mu, route)
    result_route = route if len(factors) == 1 else "multiplicative"
    return ProbResult(1 - value_q, value_q, result_route)
