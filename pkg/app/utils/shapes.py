"""Arithmetic shape matching for the triple families the decider knows.

Every matcher takes a triple with a <= b and returns the family parameters
when the triple has that exact shape, or None. Matchers never decide
anything themselves; the *_realizable predicates carry the criteria.
"""

from dataclasses import dataclass

from utils.numtheory import binomial, euler_phi, gcd_lcm, is_prime, q_binomial
from utils.triple import Triple


@dataclass(frozen=True)
class Sandwich:
    e: int
    f: int
    m: int
    n: int


def match_divisor_sandwich(t: Triple) -> Sandwich | None:
    """lcm(a, b) | c | ab, split as (e, e, e²)·(f, f, f)·(m, n, mn).

    With d = gcd(a, b), a = dm and b = dn, c = demn for some e | d, and f = d/e.
    """
    d, lcm = gcd_lcm(t.a, t.b)
    if t.c % lcm or (t.a * t.b) % t.c:
        return None
    m, n = t.a // d, t.b // d
    e = t.c // (d * m * n)
    return Sandwich(e=e, f=d // e, m=m, n=n)


def match_nminus1(t: Triple) -> tuple[int, int] | None:
    """(n, e) with t = (n, ne, n(n-1)e), n >= 2."""
    n = t.a
    if n < 2 or t.b % n:
        return None
    e = t.b // n
    if t.c != n * (n - 1) * e:
        return None
    return n, e


def match_phi_prime(t: Triple) -> tuple[int, int, int] | None:
    """(n, p, e) with t = (n, ne, npe), p prime, p | phi(n) and p not dividing n."""
    n = t.a
    if t.b % n:
        return None
    e = t.b // n
    if t.c % (n * e):
        return None
    p = t.c // (n * e)
    if not is_prime(p) or euler_phi(n) % p or n % p == 0:
        return None
    return n, p, e


def match_nminus2(t: Triple) -> tuple[int, int] | None:
    """(n, l) with t = (n, nl, n(n-2)l), n > 2."""
    n = t.a
    if n <= 2 or t.b % n:
        return None
    l = t.b // n
    if t.c != n * (n - 2) * l:
        return None
    return n, l


def nminus2_realizable(n: int, l: int) -> bool:
    return n % 2 == 0 or (2 * l) % (n - 1) == 0


def match_prime_window(t: Triple) -> tuple[int, int, int] | None:
    """(n, p, l) with t = (n, nl, npl), p prime and p + 1 < n < 2p."""
    n = t.a
    if t.b % n:
        return None
    l = t.b // n
    if t.c % (n * l):
        return None
    p = t.c // (n * l)
    if not is_prime(p) or not p + 1 < n < 2 * p:
        return None
    return n, p, l


def prime_window_realizable(n: int, p: int, l: int) -> bool:
    return (n * l) % binomial(n, p) == 0


def match_geometric(t: Triple, q_max: int, n_max: int) -> tuple[int, int, int] | None:
    """(q, n, d) with a = b = [n, d]_q and c = q^(d(n-d)) a, scanning primes q <= q_max
    and 2 <= n <= n_max; the first match in (q, n, d) order wins."""
    if t.a != t.b:
        return None
    for q in range(2, q_max + 1):
        if not is_prime(q):
            continue
        for n in range(2, n_max + 1):
            for d in range(1, n):
                size = q_binomial(n, d, q)
                if size == t.a and t.c == q ** (d * (n - d)) * size:
                    return q, n, d
    return None
