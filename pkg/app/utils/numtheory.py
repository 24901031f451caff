"""Integer arithmetic shared by the realizability rules."""

import logging
import math

from sympy import divisors as _divisors
from sympy import factorint, isprime, n_order, totient

# Set up logger
logger = logging.getLogger(__name__)

# Ascending (prime, exponent) pairs.
Factorization = tuple[tuple[int, int], ...]


def gcd_lcm(x: int, y: int) -> tuple[int, int]:
    if x < 1 or y < 1:
        raise ValueError(f"gcd_lcm needs positive integers, got ({x}, {y})")
    g = math.gcd(x, y)
    return g, x // g * y


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    return int(totient(n))


def factorize(n: int) -> Factorization:
    """Prime factorization; n = 1 gives the empty factorization."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors = factorint(n)
    return tuple(sorted((int(p), int(e)) for p, e in factors.items()))


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    return [int(d) for d in _divisors(n)]


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def q_binomial(n: int, d: int, q: int) -> int:
    """Gaussian binomial coefficient, the number of d-subspaces of F_q^n.

    Each partial product is itself a Gaussian binomial, so multiplying the
    numerator factor first keeps every quotient exact.
    """
    if n < 0 or d < 0 or d > n:
        raise ValueError(f"q_binomial needs 0 <= d <= n, got n={n}, d={d}")
    if q < 1:
        raise ValueError(f"q_binomial needs q >= 1, got {q}")
    if q == 1:
        return math.comb(n, d)
    result = 1
    for i in range(1, d + 1):
        result = result * (q ** (n - d + i) - 1) // (q**i - 1)
    return result


def multiplicative_order(u: int, n: int) -> int:
    if n < 1:
        raise ValueError(f"multiplicative_order needs n >= 1, got {n}")
    if math.gcd(u, n) != 1:
        raise ValueError(f"{u} is not a unit modulo {n}")
    if n == 1:
        return 1
    return int(n_order(u % n, n))


def smallest_unit_of_order(n: int, p: int) -> int | None:
    """Least u in [2, n) with multiplicative order exactly p mod n."""
    for u in range(2, n):
        if math.gcd(u, n) == 1 and multiplicative_order(u, n) == p:
            logger.debug(f"Unit of order {p} modulo {n}: {u}")
            return u
    return None
